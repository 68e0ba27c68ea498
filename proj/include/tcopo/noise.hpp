#pragma once

#include <vector>

#include "tcopo/types.hpp"

namespace tcopo {

// Quadrature layout: (p_a1, q_a1, p_a2, q_a2, p_b1, q_b1, p_b2, q_b2), each
// mode's quadratures taken relative to its own mean phase.
enum class Mode { a1, a2, b1, b2 };
enum class Quad { p, q };

constexpr int index(Mode m, Quad q) {
  int base = 0;
  switch (m) {
    case Mode::a1: base = 0; break;
    case Mode::a2: base = 2; break;
    case Mode::b1: base = 4; break;
    case Mode::b2: base = 6; break;
  }
  return base + (q == Quad::q ? 1 : 0);
}

// Linearized drift of the eight quadrature fluctuations around the locked
// bright state, in cavity-loss units (frequencies measured in kappa). Valid
// at and above threshold; c = epsilon0 / kappa is the plate-loss ratio.
struct DriftMatrix8 {
  Matrix8d m;
  double sigma = 1.0;
  double c = 0.0;
};

DriftMatrix8 drift_matrix(double sigma, double c);

// Orthogonal change of basis splitting the drift into two decoupled 4x4
// blocks: the phase-sum sector (p_alpha, p_beta, q_alpha, q_beta) and the
// phase-difference sector (r_alpha, r_beta, s_alpha, s_beta). Only the sum
// sector is pump-driven, and only it depends on sigma.
struct BlockDecomposition {
  Matrix8d transform;            // orthogonal, rows are the new combinations
  Eigen::Matrix4d sum_block;     // transform * m * transform^T, upper left
  Eigen::Matrix4d diff_block;    // lower right
};

BlockDecomposition block_decomposition(const DriftMatrix8& drift);

// Injection pattern of the four pump quadratures (p_0x, q_0x, p_0y, q_0y)
// into the eight mode quadratures: the x pump feeds the first crystal's pair
// (a1, b2), the y pump the second's (a2, b1).
Matrix84d pump_injection_map();

// Frequency response of the intracavity fluctuations seen at the output,
// input = 2 (2 i omega - M)^-1 - I for the vacuum inputs and
// pump = sqrt(2 (sigma - 1)) (2 i omega - M)^-1 P for the pump quadratures.
// The pump channel switches off at threshold, where the mean field vanishes.
struct TransferFunctions {
  Matrix8c input;
  Matrix84c pump;
};

TransferFunctions transfer_functions(double omega, const DriftMatrix8& drift);
TransferFunctions transfer_functions(double omega, double sigma, double c);

// Output spectral matrix at one analysis frequency, normalized to shot noise.
// s is the symmetrized real part; the transfer factors are kept so quadratic
// forms can be evaluated without the cancellation the assembled matrix
// suffers when strongly squeezed and anti-squeezed channels mix.
struct SpectralMatrix {
  Matrix8d s;
  double omega = 0.0;
  double sigma = 1.0;
  double c = 0.0;
  double pump_variance = 2.0;
  Matrix8c t_input;
  Matrix84c t_pump;
  bool has_transfer = false;

  // Vacuum at every port: the calibration point for all normalized spectra.
  static SpectralMatrix identity();
};

SpectralMatrix spectral_matrix(double omega, double sigma, double c,
                               double pump_variance = 2.0);

// Spectrum of the normalized combination u^T x / |u|: exactly 1 on vacuum.
double combination_spectrum(const SpectralMatrix& s, const Vector8d& u);

// Symmetrized cross spectrum of two normalized combinations.
double cross_spectrum(const SpectralMatrix& s, const Vector8d& u,
                      const Vector8d& w);

// Closed-form spectra of the first crystal's phase-sum (p), its conjugate
// (q), the phase-difference (r) and its conjugate (s); the second crystal's
// set is identical by symmetry.
struct QuadSpectra {
  double p = 0.0;
  double q = 0.0;
  double r = 0.0;
  double s = 0.0;
};

QuadSpectra analytic_spectra(double omega, double sigma, double c);

// Coefficient vectors of those four combinations for each crystal pair.
struct CombinationSet {
  Vector8d p;
  Vector8d q;
  Vector8d r;
  Vector8d s;
};

CombinationSet alpha_combinations();
CombinationSet beta_combinations();

// Analysis frequencies must stay within the supported band.
inline constexpr double kOmegaMin = 1e-6;
inline constexpr double kOmegaMax = 1e6;

std::vector<double> log_spaced(double min, double max, int n);
std::vector<double> lin_spaced(double min, double max, int n);

struct SweepGrid {
  std::vector<double> omegas;
  std::vector<double> sigmas;
  std::vector<double> couplings;
};

}  // namespace tcopo
