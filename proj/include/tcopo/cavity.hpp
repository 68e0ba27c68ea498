#pragma once

#include <optional>

#include "tcopo/types.hpp"

namespace tcopo {

// Physical constants of the ring cavity: two nonlinear crystals of length l
// separated by wave plates of thickness e, free propagation L, mirror
// amplitude reflectivity r, plate rotation rho (signal/idler basis mixing
// angle), and nonlinear gain g per pass. Wave numbers k_a, k_b are the
// signal/idler carriers, k_0 the pump; n, n_0 are the plate indices at the
// down-converted and pump frequencies, n_1/n_2 the crystal indices along the
// two eigenaxes.
struct OpticalConstants {
  double k_a = 0.0;
  double k_b = 0.0;
  double k_0 = 0.0;
  double n = 1.0;
  double n_0 = 1.0;
  double n_1 = 1.0;
  double n_2 = 1.0;
  double e = 0.0;
  double l = 0.0;
  double L = 0.0;
  double rho = 0.0;
  double r = 1.0;
  double g = 0.0;

  // Throws std::invalid_argument on non-physical values (negative lengths,
  // r outside (0, 1], non-positive wave numbers or indices).
  void validate() const;
};

// Reduced cavity description: loss rate kappa = 1 - r, plate coupling
// epsilon0 = sin(2 rho), detunings delta_a/delta_b (round-trip phase misfits,
// radians per round trip), relative crystal phase psi, and pump strength
// sigma in units of the lowest threshold.
struct ReducedParams {
  double kappa = 0.0;
  double g = 0.0;
  double epsilon0 = 0.0;
  double delta_a = 0.0;
  double delta_b = 0.0;
  double psi = 0.0;
  double sigma = 1.0;

  // Common detunings equal to the plate coupling: the configuration with the
  // lowest threshold, used as the operating point throughout.
  static ReducedParams working_point(double kappa, double g, double epsilon0,
                                     double sigma);
};

// One-pass Jones matrices over the field vector (a1, b2*, a2, b1*).
struct ElementMatrices {
  Matrix4c plate_l1;
  Matrix4c crystal_alpha;
  Matrix4c crystal_beta;
  Matrix4c plate_l2;
  Matrix4c propagation;
};

ElementMatrices element_matrices(const OpticalConstants& oc, Complex pump);

// Full product propagation * l2 * beta * alpha * l1.
Matrix4c round_trip_exact(const OpticalConstants& oc, Complex pump);

// First-order round trip I + A valid for small kappa, detunings, epsilon0
// and pump. The pump argument is the reduced amplitude (plate propagation
// phase already absorbed, see reduced_from_constants).
Matrix4c round_trip_reduced(const ReducedParams& p, Complex pump);

// |det(M - I)| for the reduced round trip: zero exactly on the oscillation
// threshold manifold.
double stationarity_residual(const ReducedParams& p, Complex pump);

// Threshold intensity branches (2/g^2)(kappa^2 + (delta -+ epsilon0)^2);
// lower is the branch that reaches 2 kappa^2 / g^2 at delta = epsilon0.
struct ThresholdBranches {
  double lower = 0.0;
  double upper = 0.0;
};

ThresholdBranches threshold_branches(double delta, double epsilon0,
                                     double kappa, double g);

// Above-threshold steady state of the degenerate bright solution. The four
// mode amplitudes are amplitude * (phase pattern); vector() packs them in the
// (a1, b2*, a2, b1*) order used by the round-trip matrices.
struct FieldState {
  double amplitude = 0.0;  // |J| = sqrt(kappa (sigma - 1)) / g
  double phi1 = 0.0;       // free common phase

  Vector4c vector() const;
};

// Requires delta_a = delta_b = epsilon0 (the working point) and psi = 0
// mod 2 pi; throws std::invalid_argument otherwise or for sigma < 0.
// Below threshold (sigma < 1) the amplitude is zero.
FieldState steady_state(const ReducedParams& p, double phi1 = 0.0);

// Pump amplitude at which the intracavity pump clamps above threshold.
double threshold_pump_amplitude(double kappa, double g);

// Pump ratio from injected pump intensity; checks the depletion identity
// 2 (kappa/g + g |J|^2)^2 = I_in to 1e-9 relative.
double sigma_from_pump(double pump_intensity, double kappa, double g);

// Reduced parameters extracted from the physical constants, plus the phase
// factor relating the physical pump amplitude to the reduced one:
// pump_reduced = pump * exp(-i (k_a + k_b) n e).
struct ReducedExtraction {
  ReducedParams params;
  Complex pump_phase_shift{1.0, 0.0};
};

ReducedExtraction reduced_from_constants(const OpticalConstants& oc,
                                         std::optional<double> sigma = {});

}  // namespace tcopo
