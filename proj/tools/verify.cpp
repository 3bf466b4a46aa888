#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "pbtlab/closed_form.hpp"
#include "pbtlab/fidelity.hpp"
#include "pbtlab/spin_boson.hpp"

namespace pbtlab::cli {

namespace {

class Suite {
 public:
  void check(std::string name, double value, double tol, bool passed, std::string detail = {}) {
    report.checks.push_back({std::move(name), passed, value, tol, std::move(detail)});
  }
  // |value| <= tol
  void small(std::string name, double value, double tol) {
    check(std::move(name), value, tol, std::abs(value) <= tol);
  }
  VerifyReport report;
};

std::string tag(const char* base, int n) { return std::string(base) + "[n=" + std::to_string(n) + "]"; }

Povm random_povm(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  const Eigen::Index d = Eigen::Index{1} << (n + 1);
  std::vector<Matrix> raw;
  Matrix total = Matrix::Zero(d, d);
  for (int i = 0; i < n; ++i) {
    Matrix m(d, d);
    for (Eigen::Index r = 0; r < d; ++r)
      for (Eigen::Index c = 0; c < d; ++c) m(r, c) = Complex(gauss(rng), gauss(rng));
    raw.push_back(m * m.adjoint());
    total += raw.back();
  }
  const HermitianOp inv_root =
      func_on_support(HermitianOp::hermitian_part(total), [](double x) { return 1 / std::sqrt(x); });
  Povm p;
  for (const auto& r : raw) {
    p.elements.push_back(HermitianOp::hermitian_part(inv_root.matrix() * r * inv_root.matrix()));
  }
  p.defect = HermitianOp::zero(n + 1);
  return p;
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

nlohmann::json VerifyReport::to_json() const {
  nlohmann::json list = nlohmann::json::array();
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& c : checks) {
    list.push_back({{"name", c.name}, {"passed", c.passed}, {"value", c.value},
                    {"tolerance", c.tolerance}, {"detail", c.detail}});
    if (!c.passed) failures.push_back(c.name);
  }
  return {{"passed", passed()}, {"checks", list}, {"failures", failures}};
}

VerifyReport run_verify(const SweepConfig& config) {
  Suite s;
  const double pi = std::numbers::pi;
  const std::vector<double> grid3 = {0.0, 0.5, 1.0};

  for (int n : config.n_ports) {
    if (n < 2) continue;
    const Povm nl = noiseless_povm(n);
    double worst = 0.0;
    for (double g : grid3) {
      for (double th : {0.0, pi / 2, pi}) {
        const DephasingParams p(g, th);
        const double direct = ent_fidelity(nl, make_ensemble(SignalKind::eta, n, p)).ent_fidelity;
        worst = std::max(worst, std::abs(direct - fidelity_noiseless_povm(n, p)));
      }
    }
    s.small(tag("closed_form_vs_direct", n), worst, 1e-9);

    double mixed = 0.0;
    for (int i = 1; i <= n; ++i) mixed = std::max(mixed, mixed_term(nl, i, n));
    s.small(tag("mixed_term_vanishes", n), mixed, 1e-10);

    const PovmReport rep = validate(nl, make_ensemble(SignalKind::sigma, n));
    s.check(tag("noiseless_povm_valid", n), rep.completeness_residual, kCompletenessTol, rep.ok());

    const SpectralDecomposition eig = eig_hermitian(make_ensemble(SignalKind::sigma, n).average_unnormalized);
    std::map<long, long> dense;
    const double unit = std::ldexp(1.0, n + 1);
    double off = 0.0;
    for (Eigen::Index k = 0; k < eig.eigenvalues.size(); ++k) {
      const double scaled = eig.eigenvalues(k) * unit;
      const long r = std::lround(scaled);
      off = std::max(off, std::abs(scaled - r) / unit);
      if (r != 0) ++dense[r];
    }
    std::map<long, long> formula;
    for (const auto& [u, m] : spin_block_spectrum(n).multiplicities()) formula[u] = static_cast<long>(m);
    s.check(tag("spin_block_spectrum", n), off, 1e-10, off <= 1e-10 && dense == formula);

    for (double g : grid3) {
      const SignalEnsemble e = make_ensemble(SignalKind::eta, n, DephasingParams(g, 0.0));
      const double f = ent_fidelity(pgm(e), e).ent_fidelity;
      const double bk = beigi_konig_bound(n, g);
      std::ostringstream name;
      name << "beigi_konig_below_pgm[n=" << n << ",gamma=" << g << "]";
      s.check(name.str(), f - bk, 0.0, f >= bk);
    }

    if (n <= 4) {
      double worst_pair = 0.0;
      for (double g : {0.3, 1.0}) {
        const SignalEnsemble e = make_ensemble(SignalKind::eta, n, DephasingParams(g, pi / 2));
        worst_pair = std::max(worst_pair, std::abs(state_fidelity(e.states[0], e.states[1]) - 0.5));
      }
      s.small(tag("pairwise_fidelity_half", n), worst_pair, 1e-9);
    }
  }

  {
    double worst = 0.0;
    for (double g : grid3) {
      const SignalEnsemble e = make_ensemble(SignalKind::eta, 2, DephasingParams(g, 1.0));
      worst = std::max(worst, std::abs(trace_norm(e.states[0] - e.states[1]) - std::sqrt(1 + 2 * g * g)));
    }
    s.small("helstrom_trace_norm", worst, 1e-10);
  }
  {
    const SignalEnsemble e = make_ensemble(SignalKind::eta, 2, DephasingParams(0.5, 0.0));
    const double gap = ent_fidelity(pgm(e), e).ent_fidelity -
                       ent_fidelity(pgm_taylor(e, config.taylor_order), e).ent_fidelity;
    s.small("taylor_matches_eigensolver[n=2,gamma=0.5]", gap, 1e-6);
  }
  s.small("f_corr_landmark", f_corr(6) - 0.2327, 5e-4);
  s.small("correction_is_f_corr_over_8", f_corr(9) / correction_fidelity(9) - 8, 1e-12);
  {
    const Povm p = random_povm(2, config.seed);
    const double m = mixed_term(p, 1, 2);
    s.check("mixed_term_random_control", m, 1e-6, m > 1e-6);
  }
  {
    const SpinBosonParams cold(2.0, 0.1, 3.0), hot(2.0, 0.9, 3.0);
    s.small("chi_at_zero", chi(0.0, cold), 0.0);
    s.small("phase_temperature_independent", phase(3.0, cold) - phase(3.0, hot), 1e-12);
    QuadratureSettings wide = cold.quad;
    wide.upper_cutoff *= 2;
    const SpinBosonParams cold_wide(2.0, 0.1, 3.0, wide);
    s.small("chi_tail_converged", chi(5.0, cold) - chi(5.0, cold_wide), 1e-8);
  }

  if (config.inject_fault) {
    Povm p = noiseless_povm(2);
    Matrix m = p.elements[0].matrix();
    m(0, 0) += 0.1;
    p.elements[0] = HermitianOp::from_matrix(m);
    const PovmReport rep = validate(p);
    s.check("injected_fault", rep.completeness_residual, kCompletenessTol, rep.ok(),
            "element 1 entry (0,0) shifted by 0.1");
  }
  return s.report;
}

}  // namespace pbtlab::cli
