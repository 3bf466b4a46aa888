#include "pbtlab/spin_boson.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "pbtlab/closed_form.hpp"
#include "pbtlab/povm.hpp"
#include "pbtlab/fidelity.hpp"

namespace pbtlab {

namespace {

constexpr double kSeriesCutoff = 1e-6;

struct Panel {
  double a, b, value, error, l1;
  bool operator<(const Panel& o) const { return error < o.error; }
};

// Adaptive Gauss-Kronrod over [a, b], starting from panels of width at
// most h, always splitting the panel with the largest error estimate.
template <class F>
double integrate(F f, double a, double b, double h, const QuadratureSettings& q) {
  using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;
  auto eval = [&](double lo, double hi) {
    Panel p{lo, hi, 0.0, 0.0, 0.0};
    p.value = Rule::integrate(f, lo, hi, 0, 0.0, &p.error, &p.l1);
    return p;
  };
  std::priority_queue<Panel> heap;
  const int initial = std::max(1, static_cast<int>(std::ceil((b - a) / h)));
  double value = 0.0, error = 0.0, l1 = 0.0;
  for (int k = 0; k < initial; ++k) {
    const double lo = a + (b - a) * k / initial;
    const double hi = k + 1 == initial ? b : a + (b - a) * (k + 1) / initial;
    Panel p = eval(lo, hi);
    value += p.value;
    error += p.error;
    l1 += p.l1;
    heap.push(p);
  }
  int splits = 0;
  while (error > std::max(q.abs_tol, q.rel_tol * l1)) {
    if (splits >= q.max_subdivisions) {
      throw NumericalError("spin-boson quadrature did not converge; error estimate " +
                               std::to_string(error),
                           error);
    }
    const Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = eval(worst.a, mid), right = eval(mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    l1 += left.l1 + right.l1 - worst.l1;
    heap.push(left);
    heap.push(right);
    ++splits;
  }
  return value;
}

double panel_width(double tau, double ell) {
  const double scale = std::max({tau, ell, 1.0});
  return std::numbers::pi / scale;
}

double one_minus_cos(double x) {
  const double s = std::sin(x / 2);
  return 2 * s * s;
}

void require_tau(double tau) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) throw std::domain_error("tau must be >= 0");
}

}  // namespace

QuadratureSettings QuadratureSettings::for_ohmicity(double s) {
  QuadratureSettings q;
  q.upper_cutoff = 40 + 10 * s;
  return q;
}

SpinBosonParams::SpinBosonParams(double s, double temp, double ell)
    : SpinBosonParams(s, temp, ell, QuadratureSettings::for_ohmicity(s)) {}

SpinBosonParams::SpinBosonParams(double s, double temp, double ell, QuadratureSettings q)
    : ohmicity(s), temperature_ratio(temp), separation(ell), quad(q) {
  validate();
}

void SpinBosonParams::validate() const {
  if (!(ohmicity > 1.0) || !std::isfinite(ohmicity)) {
    throw std::domain_error("SpinBosonParams: ohmicity must be > 1");
  }
  if (!(temperature_ratio >= 0.0) || !std::isfinite(temperature_ratio)) {
    throw std::domain_error("SpinBosonParams: temperature ratio must be >= 0");
  }
  if (!(separation >= 0.0) || !std::isfinite(separation)) {
    throw std::domain_error("SpinBosonParams: separation must be >= 0");
  }
  if (!(quad.rel_tol > 0.0 && quad.abs_tol > 0.0 && quad.max_subdivisions > 0)) {
    throw std::domain_error("QuadratureSettings: tolerances must be positive");
  }
  const double w = quad.upper_cutoff;
  if (!(w > kSeriesCutoff) || std::exp(-w) * std::pow(w, ohmicity + 1) >= quad.abs_tol) {
    throw std::domain_error("QuadratureSettings: upper cutoff " + std::to_string(w) +
                            " leaves a tail above abs_tol");
  }
}

DephasingParams DecoherenceFactor::as_params() const {
  double t = std::fmod(phase, 2 * std::numbers::pi);
  if (t < 0) t += 2 * std::numbers::pi;
  return DephasingParams(gamma_abs(), t);
}

double chi(double tau, const SpinBosonParams& p) {
  require_tau(tau);
  p.validate();
  const double s = p.ohmicity, temp = p.temperature_ratio, ell = p.separation;
  if (tau == 0.0 || ell == 0.0) return 0.0;
  auto coth_factor = [temp](double w) {
    if (temp == 0.0) return 1.0;
    const double x = w / (2 * temp);
    return x > 40 ? 1.0 : 1 / std::tanh(x);
  };
  auto f = [&](double w) {
    return std::pow(w, s - 2) * std::exp(-w) * one_minus_cos(w * tau) * coth_factor(w) *
           one_minus_cos(w * ell);
  };
  const double eps = kSeriesCutoff;
  double head;
  if (temp > 0.0 && eps < 0.01 * 2 * temp) {
    head = tau * tau * ell * ell * temp / 2 * std::pow(eps, s + 2) / (s + 2);
  } else {
    head = tau * tau * ell * ell / 4 * std::pow(eps, s + 3) / (s + 3);
  }
  const double body = integrate(f, eps, p.quad.upper_cutoff, panel_width(tau, ell), p.quad);
  return 2 * (head + body);
}

double phase(double tau, const SpinBosonParams& p) {
  require_tau(tau);
  p.validate();
  const double s = p.ohmicity, ell = p.separation;
  if (tau == 0.0 || ell == 0.0) return 0.0;
  auto f = [&](double w) {
    return std::pow(w, s - 2) * std::exp(-w) * one_minus_cos(w * tau) * std::sin(w * ell);
  };
  const double eps = kSeriesCutoff;
  const double head = tau * tau * ell / 2 * std::pow(eps, s + 2) / (s + 2);
  const double body = integrate(f, eps, p.quad.upper_cutoff, panel_width(tau, ell), p.quad);
  return 0.5 * (head + body);
}

DecoherenceFactor decoherence_factor(double tau, const SpinBosonParams& params) {
  return DecoherenceFactor{chi(tau, params), phase(tau, params)};
}

std::vector<FidelityPoint> fidelity_vs_time(int n, const SpinBosonParams& params,
                                            std::span<const double> taus, PovmMode mode) {
  if (!std::is_sorted(taus.begin(), taus.end())) {
    throw std::domain_error("fidelity_vs_time: taus must be sorted ascending");
  }
  std::vector<FidelityPoint> out;
  out.reserve(taus.size());
  for (double tau : taus) {
    FidelityPoint pt;
    pt.tau = tau;
    pt.factor = decoherence_factor(tau, params);
    const DephasingParams dp = pt.factor.as_params();
    if (mode == PovmMode::closed_form) {
      pt.ent_fidelity = fidelity_noiseless_povm(n, dp);
    } else {
      const SignalEnsemble e = make_ensemble(SignalKind::eta, n, dp);
      pt.ent_fidelity = ent_fidelity(pgm(e), e).ent_fidelity;
    }
    pt.teleport_fidelity = teleport_fidelity(pt.ent_fidelity);
    out.push_back(pt);
  }
  return out;
}

}  // namespace pbtlab
