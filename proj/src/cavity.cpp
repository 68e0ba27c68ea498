#include "tcopo/cavity.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tcopo {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

// Principal value in [-pi, pi]; round-trip phases enter only mod 2 pi.
double wrap_phase(double x) { return std::remainder(x, kTwoPi); }

}  // namespace

void OpticalConstants::validate() const {
  require(k_a > 0.0, "k_a must be positive");
  require(k_b > 0.0, "k_b must be positive");
  require(k_0 >= 0.0, "k_0 must be non-negative");
  require(n > 0.0 && n_0 > 0.0 && n_1 > 0.0 && n_2 > 0.0,
          "refractive indices must be positive");
  require(e >= 0.0 && l >= 0.0 && L >= 0.0,
          "element lengths must be non-negative");
  require(r > 0.0 && r <= 1.0, "mirror reflectivity must lie in (0, 1]");
  require(g >= 0.0, "gain must be non-negative");
}

ReducedParams ReducedParams::working_point(double kappa, double g,
                                           double epsilon0, double sigma) {
  ReducedParams p;
  p.kappa = kappa;
  p.g = g;
  p.epsilon0 = epsilon0;
  p.delta_a = epsilon0;
  p.delta_b = epsilon0;
  p.psi = 0.0;
  p.sigma = sigma;
  return p;
}

ElementMatrices element_matrices(const OpticalConstants& oc, Complex pump) {
  oc.validate();

  const double theta_a = oc.k_a * oc.n * oc.e;
  const double theta_b = oc.k_b * oc.n * oc.e;
  const double eps = std::sin(2.0 * oc.rho);
  const Complex ea = std::exp(kI * theta_a);
  const Complex eb = std::exp(-kI * theta_b);
  const Complex pump_half = oc.g * pump / std::numbers::sqrt2;

  ElementMatrices m;

  // First plate: axis swap, no residual mixing.
  m.plate_l1.setZero();
  m.plate_l1(0, 0) = kI * ea;
  m.plate_l1(1, 1) = kI * eb;
  m.plate_l1(2, 2) = -kI * ea;
  m.plate_l1(3, 3) = -kI * eb;

  // Second plate: axis swap plus the small rotation that couples the two
  // crystals' modes, to first order in eps.
  m.plate_l2.setZero();
  m.plate_l2(0, 0) = -kI * ea;
  m.plate_l2(0, 2) = kI * eps * ea;
  m.plate_l2(1, 1) = -kI * eb;
  m.plate_l2(1, 3) = -kI * eps * eb;
  m.plate_l2(2, 0) = kI * eps * ea;
  m.plate_l2(2, 2) = kI * ea;
  m.plate_l2(3, 1) = -kI * eps * eb;
  m.plate_l2(3, 3) = kI * eb;

  // Crystal passes: diagonal dispersion along the crystal eigenaxes plus the
  // parametric coupling, first order in g * pump. The first crystal couples
  // (a1, b2*), the second (a2, b1*); the a modes see swapped axes in the
  // second crystal because of the plate in between.
  const Complex pa1 = std::exp(kI * (oc.k_a * oc.n_1 * oc.l));
  const Complex pa2 = std::exp(kI * (oc.k_a * oc.n_2 * oc.l));
  const Complex pb1 = std::exp(-kI * (oc.k_b * oc.n_1 * oc.l));
  const Complex pb2 = std::exp(-kI * (oc.k_b * oc.n_2 * oc.l));

  m.crystal_alpha.setZero();
  m.crystal_alpha(0, 0) = pa1;
  m.crystal_alpha(0, 1) = pump_half * pa1;
  m.crystal_alpha(1, 0) = std::conj(pump_half) * pb2;
  m.crystal_alpha(1, 1) = pb2;
  m.crystal_alpha(2, 2) = pa2;
  m.crystal_alpha(3, 3) = pb1;

  m.crystal_beta.setZero();
  m.crystal_beta(0, 0) = pa2;
  m.crystal_beta(1, 1) = pb1;
  m.crystal_beta(2, 2) = pa1;
  m.crystal_beta(2, 3) = pump_half * pa1;
  m.crystal_beta(3, 2) = std::conj(pump_half) * pb2;
  m.crystal_beta(3, 3) = pb2;

  m.propagation.setZero();
  const Complex fa = oc.r * std::exp(kI * (oc.k_a * oc.L));
  const Complex fb = oc.r * std::exp(-kI * (oc.k_b * oc.L));
  m.propagation(0, 0) = fa;
  m.propagation(1, 1) = fb;
  m.propagation(2, 2) = fa;
  m.propagation(3, 3) = fb;

  return m;
}

Matrix4c round_trip_exact(const OpticalConstants& oc, Complex pump) {
  const ElementMatrices m = element_matrices(oc, pump);
  return m.propagation * m.plate_l2 * m.crystal_beta * m.crystal_alpha *
         m.plate_l1;
}

Matrix4c round_trip_reduced(const ReducedParams& p, Complex pump) {
  const Complex G = p.g * pump / std::numbers::sqrt2;
  const Complex da = kI * p.delta_a - p.kappa;
  const Complex db = -kI * p.delta_b - p.kappa;

  Matrix4c m = Matrix4c::Identity();
  m(0, 0) += da;
  m(0, 1) += G;
  m(0, 2) += p.epsilon0;
  m(1, 0) += std::conj(G);
  m(1, 1) += db;
  m(1, 3) += -p.epsilon0;
  m(2, 0) += -p.epsilon0;
  m(2, 2) += da;
  m(2, 3) += G * std::exp(-kI * p.psi);
  m(3, 1) += p.epsilon0;
  m(3, 2) += std::conj(G) * std::exp(kI * p.psi);
  m(3, 3) += db;
  return m;
}

double stationarity_residual(const ReducedParams& p, Complex pump) {
  const Matrix4c a = round_trip_reduced(p, pump) - Matrix4c::Identity();
  return std::abs(a.partialPivLu().determinant());
}

ThresholdBranches threshold_branches(double delta, double epsilon0,
                                     double kappa, double g) {
  require(g > 0.0, "gain must be positive");
  require(kappa >= 0.0, "loss must be non-negative");
  ThresholdBranches t;
  const double dm = delta - epsilon0;
  const double dp = delta + epsilon0;
  t.lower = 2.0 * (kappa * kappa + dm * dm) / (g * g);
  t.upper = 2.0 * (kappa * kappa + dp * dp) / (g * g);
  return t;
}

Vector4c FieldState::vector() const {
  const Complex j = amplitude * std::exp(kI * phi1);
  Vector4c v;
  v << j, j, -kI * j, -kI * j;
  return v;
}

FieldState steady_state(const ReducedParams& p, double phi1) {
  require(p.sigma >= 0.0, "pump ratio must be non-negative");
  require(p.g > 0.0, "gain must be positive");
  require(p.kappa > 0.0, "loss must be positive");
  constexpr double tol = 1e-12;
  require(std::abs(p.delta_a - p.epsilon0) <= tol &&
              std::abs(p.delta_b - p.epsilon0) <= tol,
          "steady state requires detunings equal to the plate coupling");
  require(std::abs(wrap_phase(p.psi)) <= tol,
          "steady state requires zero relative crystal phase");

  FieldState s;
  s.phi1 = phi1;
  s.amplitude =
      p.sigma > 1.0 ? std::sqrt(p.kappa * (p.sigma - 1.0)) / p.g : 0.0;
  return s;
}

double threshold_pump_amplitude(double kappa, double g) {
  require(g > 0.0, "gain must be positive");
  require(kappa >= 0.0, "loss must be non-negative");
  return std::numbers::sqrt2 * kappa / g;
}

double sigma_from_pump(double pump_intensity, double kappa, double g) {
  require(pump_intensity >= 0.0, "pump intensity must be non-negative");
  require(kappa > 0.0, "loss must be positive");
  require(g > 0.0, "gain must be positive");

  const double sigma = std::sqrt(pump_intensity * g * g / (2.0 * kappa * kappa));

  // Above threshold the intracavity pump clamps; each polarization component
  // carries half the injected intensity, so 2 (kappa/g + g |J|^2)^2 must
  // reproduce the input intensity.
  if (sigma >= 1.0) {
    const double j2 = kappa * (sigma - 1.0) / (g * g);
    const double back = kappa / g + g * j2;
    const double residual = std::abs(2.0 * back * back - pump_intensity);
    if (residual > 1e-9 * pump_intensity)
      throw std::domain_error("pump depletion identity violated");
  }
  return sigma;
}

ReducedExtraction reduced_from_constants(const OpticalConstants& oc,
                                         std::optional<double> sigma) {
  oc.validate();
  const double path = oc.L + 2.0 * oc.n * oc.e + (oc.n_1 + oc.n_2) * oc.l;

  ReducedExtraction out;
  out.params.kappa = 1.0 - oc.r;
  out.params.g = oc.g;
  out.params.epsilon0 = std::sin(2.0 * oc.rho);
  out.params.delta_a = wrap_phase(oc.k_a * path);
  out.params.delta_b = wrap_phase(oc.k_b * path);
  out.params.psi = wrap_phase((oc.k_b * oc.n_1 + oc.k_a * oc.n_2) * oc.l);
  out.params.sigma = sigma.value_or(1.0);
  out.pump_phase_shift =
      std::exp(-kI * ((oc.k_a + oc.k_b) * oc.n * oc.e));
  return out;
}

}  // namespace tcopo
