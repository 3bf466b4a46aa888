#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "pbtlab/ensemble.hpp"

namespace pbtlab {

struct QuadratureSettings {
  double upper_cutoff = 60.0;  // Omega_max, dimensionless frequency
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_subdivisions = 20000;

  // Omega_max = 40 + 10 s
  static QuadratureSettings for_ohmicity(double s);
};

struct SpinBosonParams {
  double ohmicity = 2.0;           // s > 1
  double temperature_ratio = 0.1;  // T / Lambda >= 0
  double separation = 3.0;         // r Lambda / c >= 0
  QuadratureSettings quad = QuadratureSettings::for_ohmicity(2.0);

  SpinBosonParams() = default;
  SpinBosonParams(double ohmicity, double temperature_ratio, double separation);
  SpinBosonParams(double ohmicity, double temperature_ratio, double separation,
                  QuadratureSettings quad);

  void validate() const;
};

struct DecoherenceFactor {
  double chi = 0.0;
  double phase = 0.0;

  double gamma_abs() const { return std::exp(-chi); }
  DephasingParams as_params() const;
};

// 2 int w^{s-2} e^{-w} (1 - cos w tau) coth(w / 2 theta) (1 - cos w l) dw
double chi(double tau, const SpinBosonParams& params);
// (1/2) int w^{s-2} e^{-w} (1 - cos w tau) sin(w l) dw
double phase(double tau, const SpinBosonParams& params);
DecoherenceFactor decoherence_factor(double tau, const SpinBosonParams& params);

enum class PovmMode { closed_form, noise_adapted };

struct FidelityPoint {
  double tau = 0.0;
  DecoherenceFactor factor;
  double ent_fidelity = 0.0;
  double teleport_fidelity = 0.0;
};

std::vector<FidelityPoint> fidelity_vs_time(int n, const SpinBosonParams& params,
                                            std::span<const double> taus, PovmMode mode);

}  // namespace pbtlab
