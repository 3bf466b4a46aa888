#pragma once

#include <vector>

#include "pbtlab/ensemble.hpp"

namespace pbtlab {

enum class PovmSource { noiseless, noise_adapted, taylor };

const char* to_string(PovmSource source);

struct Povm {
  std::vector<HermitianOp> elements;
  HermitianOp defect;  // I - sum of elements; assigned to no port
  double rank_tol = kDefaultRankTol;
  PovmSource source = PovmSource::noise_adapted;

  int size() const { return static_cast<int>(elements.size()); }
};

struct PgmOptions {
  double rank_tol = kDefaultRankTol;
  // Adds defect / N to every element so the elements alone sum to I.
  bool merge_defect = false;
};

// Pi_i = S^{-1/2} eta_i S^{-1/2} with S the unnormalized average.
Povm pgm(const SignalEnsemble& ensemble, const PgmOptions& options = {});
Povm noiseless_povm(int n, const PgmOptions& options = {});
// Pi_i(theta) = R_B Pi_i R_B^dagger, which undoes the phase of eta_i.
Povm rotated_noiseless_povm(int n, double theta, const PgmOptions& options = {});

// Inverse square root of the normalized average replaced by the binomial
// series of (I + Y)^{-1/2}, Y = average - I, truncated after `order` terms.
Povm pgm_taylor(const SignalEnsemble& ensemble, int order);

Povm merge_defect(Povm povm);

struct PovmReport {
  std::vector<double> min_eigenvalues;  // one per element
  double defect_min_eigenvalue = 0.0;
  double completeness_residual = 0.0;   // ||sum Pi + Delta - I||_F
  double defect_support_overlap = 0.0;  // max_i tr(Delta eta_i); 0 without ensemble
  bool positive = true;
  bool complete = true;
  bool orthogonal_defect = true;

  bool ok() const { return positive && complete && orthogonal_defect; }
};

inline constexpr double kPositivityTol = 1e-10;
inline constexpr double kCompletenessTol = 1e-8;
inline constexpr double kDefectOverlapTol = 1e-9;

PovmReport validate(const Povm& povm);
PovmReport validate(const Povm& povm, const SignalEnsemble& ensemble);

}  // namespace pbtlab
