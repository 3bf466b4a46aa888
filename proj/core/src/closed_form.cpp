#include "pbtlab/closed_form.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace pbtlab {

namespace {

constexpr int kPascalMax = 64;
constexpr int kExactMax = 62;

// C(n, k) / 2^n in floating point.
const std::array<std::array<double, kPascalMax + 1>, kPascalMax + 1>& pascal_halves() {
  static const auto table = [] {
    std::array<std::array<double, kPascalMax + 1>, kPascalMax + 1> t{};
    t[0][0] = 1.0;
    for (int n = 1; n <= kPascalMax; ++n) {
      t[n][0] = t[n - 1][0] / 2;
      for (int k = 1; k <= n; ++k) t[n][k] = (t[n - 1][k - 1] + t[n - 1][k]) / 2;
    }
    return t;
  }();
  return table;
}

double binom_over_pow2(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  if (n <= kPascalMax) return pascal_halves()[n][k];
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) -
                  n * std::numbers::ln2);
}

std::uint64_t binom_exact(int n, int k) {
  if (k < 0 || k > n) return 0;
  static const auto table = [] {
    std::array<std::array<std::uint64_t, kExactMax + 1>, kExactMax + 1> t{};
    for (int m = 0; m <= kExactMax; ++m) {
      t[m][0] = t[m][m] = 1;
      for (int j = 1; j < m; ++j) t[m][j] = t[m - 1][j - 1] + t[m - 1][j];
    }
    return t;
  }();
  return table[n][k];
}

void require_ports(int n, const char* who) {
  if (n < 1) throw std::domain_error(std::string(who) + ": n must be >= 1");
}

// g(n, s), zero when s is not admissible
std::uint64_t degeneracy_or_zero(int n, Spin s) { return admissible(n, s) ? degeneracy(n, s) : 0; }

}  // namespace

bool admissible(int n, Spin s) {
  return n >= 0 && s.twice >= 0 && s.twice <= n && (n - s.twice) % 2 == 0;
}

std::uint64_t degeneracy(int n, Spin s) {
  if (!admissible(n, s)) {
    throw std::domain_error("degeneracy: spin " + std::to_string(s.value()) +
                            " not admissible for " + std::to_string(n) + " qubits");
  }
  if (n > kExactMax) throw std::domain_error("degeneracy: n exceeds 64-bit range");
  const int k = (n - s.twice) / 2;
  return binom_exact(n, k) - binom_exact(n, k - 1);
}

double f_ih(int n) {
  require_ports(n, "f_ih");
  const double nn = n;
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double t = (nn - 2 * k - 1) / std::sqrt(k + 1.0) + (nn - 2 * k + 1) / std::sqrt(nn - k + 1);
    sum += t * t * binom_over_pow2(n, k);
  }
  return sum / 8;
}

double f_corr(int n) {
  require_ports(n, "f_corr");
  const double nn = n;
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double d = 1 / std::sqrt(k + 1.0) - 1 / std::sqrt(nn - k + 1);
    const double w = (nn - 2 * k) * (nn - 2 * k) - 1;
    sum += binom_over_pow2(n, k) * w * d * d;
  }
  return sum / 3;
}

double correction_fidelity(int n) {
  require_ports(n, "correction_fidelity");
  // Spins of the N-1 remaining ports: s = M/2 - k, k = 0..floor(M/2).
  const int m = n - 1;
  const double nn = n;
  double sum = 0.0;
  for (int k = 0; 2 * k <= m; ++k) {
    const double s = m / 2.0 - k;
    if (s <= 0) continue;  // s(s+1) vanishes
    const double g_over = binom_over_pow2(m, k) * (2 * s + 1) / (m / 2.0 + s + 1);
    const double d = 1 / std::sqrt(nn - 2 * s + 1) - 1 / std::sqrt(nn + 2 * s + 3);
    sum += g_over * s * (s + 1) / (2 * s + 1) * d * d;
  }
  // N/2^{2N-2} * 2^{N+1} * (1/3) * sum, times the 1/4 of the fidelity.
  return nn * 4 * sum / 3 / 4;
}

double fidelity_noiseless_povm(int n, const DephasingParams& params) {
  const double c = params.projected();
  return (1 + c) / 2 * f_ih(n) + (1 - c) / 2 * correction_fidelity(n);
}

double teleport_fidelity(double ent_fidelity) {
  if (!(ent_fidelity >= 0.0 && ent_fidelity <= 1.0)) {
    throw std::domain_error("teleport_fidelity: entanglement fidelity outside [0, 1]");
  }
  return (2 * ent_fidelity + 1) / 3;
}

std::map<int, std::uint64_t> SpinBlockSpectrum::multiplicities() const {
  std::map<int, std::uint64_t> out;
  for (const auto& b : blocks) {
    if (b.has_minus() && b.degeneracy_minus() > 0) {
      out[n_ports - b.s.twice + 1] += b.degeneracy_minus();
    }
    if (b.degeneracy_plus() > 0) out[n_ports + b.s.twice + 3] += b.degeneracy_plus();
  }
  return out;
}

std::uint64_t SpinBlockSpectrum::support_dimension() const {
  std::uint64_t total = 0;
  for (const auto& [unit, mult] : multiplicities()) total += mult;
  return total;
}

double SpinBlockSpectrum::trace() const {
  double total = 0.0;
  for (const auto& [unit, mult] : multiplicities()) {
    total += std::ldexp(static_cast<double>(unit), -(n_ports + 1)) * static_cast<double>(mult);
  }
  return total;
}

SpinBlockSpectrum spin_block_spectrum(int n) {
  require_ports(n, "spin_block_spectrum");
  if (n - 1 > kExactMax) throw std::domain_error("spin_block_spectrum: n exceeds 64-bit range");
  SpinBlockSpectrum out;
  out.n_ports = n;
  const int m = n - 1;
  for (int twice = m % 2; twice <= m; twice += 2) {
    SpinBlock b;
    b.s = Spin::from_twice(twice);
    const std::uint64_t mult = static_cast<std::uint64_t>(twice + 1);
    b.lambda_minus = std::ldexp(static_cast<double>(n - twice + 1), -(n + 1));
    b.lambda_plus = std::ldexp(static_cast<double>(n + twice + 3), -(n + 1));
    if (b.has_minus()) {
      b.degeneracy_minus_i = mult * degeneracy_or_zero(m, b.s);
      b.degeneracy_minus_ii = mult * degeneracy_or_zero(m, Spin::from_twice(twice - 2));
    }
    b.degeneracy_plus_i = mult * degeneracy_or_zero(m, Spin::from_twice(twice + 2));
    b.degeneracy_plus_ii = mult * degeneracy_or_zero(m, b.s);
    out.blocks.push_back(b);
  }
  return out;
}

double kim_fidelity(int n, double gamma_abs) {
  if (!(gamma_abs >= 0.0 && gamma_abs <= 1.0)) {
    throw std::domain_error("kim_fidelity: gamma_abs must lie in [0, 1]");
  }
  return (2 * gamma_abs + 1) / 3 * f_ih(n) + (1 - gamma_abs) / 6;
}

double beigi_konig_bound(int n, double gamma_abs) {
  require_ports(n, "beigi_konig_bound");
  return 0.5 * (1 - (1 + 2 * gamma_abs * gamma_abs) / n);
}

double knill_barnum_bound(int n) {
  require_ports(n, "knill_barnum_bound");
  return 1 - (n - 1) / 4.0;
}

double helstrom_bound_n2(double gamma_abs) {
  if (!(gamma_abs >= 0.0 && gamma_abs <= 1.0)) {
    throw std::domain_error("helstrom_bound_n2: gamma_abs must lie in [0, 1]");
  }
  return 0.25 * (1 + std::sqrt(1 + 2 * gamma_abs * gamma_abs) / 2);
}

double average_purity(int n, double gamma_abs) {
  require_ports(n, "average_purity");
  return (gamma_abs * gamma_abs + (n + 1) / 2.0) / (std::ldexp(1.0, n) * n);
}

}  // namespace pbtlab
