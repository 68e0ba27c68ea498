#pragma once

#include "tcopo/cavity.hpp"
#include "tcopo/noise.hpp"

namespace tcopo {

struct StokesMean {
  double s0 = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
  double s3 = 0.0;
};

// Mean Stokes vectors of the two output beams: each is circularly polarized
// with s0 = s3 = 2 |J|^2, so the linear components carry pure fluctuations.
struct StokesMeanPair {
  StokesMean beam_a;
  StokesMean beam_b;
  double j_squared = 0.0;
};

StokesMeanPair stokes_means(const FieldState& state);

// Quadrature coefficient vectors of the linearized Stokes fluctuations,
// in units of 2 |J| (the common scale drops out of normalized spectra).
// s1_u = p_u1 - p_u2 and s2_u = -(q_u1 - q_u2) for each beam u.
struct StokesCombinations {
  Vector8d s1_a;
  Vector8d s1_b;
  Vector8d s2_a;
  Vector8d s2_b;
  Vector8d s1_plus;   // s1_a + s1_b
  Vector8d s2_minus;  // s2_a - s2_b
};

StokesCombinations stokes_combinations();

// Shot-normalized spectra of the Stokes fluctuations at one frequency.
struct StokesSpectra {
  double s1_plus = 1.0;
  double s2_minus = 1.0;
  double var_s1_a = 1.0;
  double var_s1_b = 1.0;
  double cross_s1_ab = 0.0;
  double var_s2_a = 1.0;
  double var_s2_b = 1.0;
  double cross_s2_ab = 0.0;
};

StokesSpectra stokes_fluctuation_spectra(const SpectralMatrix& s);

// Closed forms for the two nonclassical combinations.
struct StokesClosedForm {
  double s1_plus = 1.0;
  double s2_minus = 1.0;
};

StokesClosedForm analytic_stokes_spectra(double omega, double sigma, double c);

struct Criterion {
  double value = 1.0;
  bool flag = false;
};

// Two-beam inseparability, sum form: (S1+ + S2-) / 2 < 1.
Criterion sum_criterion(double s1_plus, double s2_minus);

// Product form with its published threshold of 2. Note the threshold admits
// uncorrelated vacuum (value 1), so the flag alone is not conclusive there;
// the sum form has no such corner.
Criterion product_criterion(double s1_plus, double s2_minus);

// The same product before shot normalization: lhs = V(S1+) V(S2-) in raw
// units, rhs = the summed commutator bound 8 |J|^2 whose square over 4 a
// separable state cannot beat.
struct RawMancini {
  double lhs = 0.0;
  double rhs = 0.0;
};

RawMancini raw_product_criterion(double s1_plus, double s2_minus,
                                 double j_squared);

// Product of the conditional variances V(S1_a|S1_b) V(S2_a|S2_b) in shot
// units: below 1 the inferred beam-a observables beat the uncertainty bound.
// Throws std::runtime_error when a conditioning variance is not positive.
Criterion epr_criterion(const StokesSpectra& s);

// Raw-unit uncertainty bound (2 |J|^2)^2 the conditional product is held to.
double heisenberg_bound(double j_squared);

}  // namespace tcopo
