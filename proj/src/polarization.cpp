#include "tcopo/polarization.hpp"

#include <cmath>
#include <stdexcept>

namespace tcopo {

namespace {

StokesMean beam_stokes(Complex u1, Complex u2) {
  StokesMean s;
  s.s0 = std::norm(u1) + std::norm(u2);
  s.s1 = std::norm(u1) - std::norm(u2);
  s.s2 = 2.0 * std::real(std::conj(u1) * u2);
  s.s3 = 2.0 * std::imag(u1 * std::conj(u2));
  return s;
}

}  // namespace

StokesMeanPair stokes_means(const FieldState& state) {
  const Vector4c v = state.vector();  // (a1, b2*, a2, b1*)
  StokesMeanPair out;
  out.beam_a = beam_stokes(v(0), v(2));
  out.beam_b = beam_stokes(std::conj(v(3)), std::conj(v(1)));
  out.j_squared = state.amplitude * state.amplitude;
  return out;
}

StokesCombinations stokes_combinations() {
  StokesCombinations s;
  s.s1_a.setZero();
  s.s1_a(index(Mode::a1, Quad::p)) = 1.0;
  s.s1_a(index(Mode::a2, Quad::p)) = -1.0;
  s.s1_b.setZero();
  s.s1_b(index(Mode::b1, Quad::p)) = 1.0;
  s.s1_b(index(Mode::b2, Quad::p)) = -1.0;
  s.s2_a.setZero();
  s.s2_a(index(Mode::a1, Quad::q)) = -1.0;
  s.s2_a(index(Mode::a2, Quad::q)) = 1.0;
  s.s2_b.setZero();
  s.s2_b(index(Mode::b1, Quad::q)) = -1.0;
  s.s2_b(index(Mode::b2, Quad::q)) = 1.0;
  s.s1_plus = s.s1_a + s.s1_b;
  s.s2_minus = s.s2_a - s.s2_b;
  return s;
}

StokesSpectra stokes_fluctuation_spectra(const SpectralMatrix& s) {
  const StokesCombinations c = stokes_combinations();
  StokesSpectra out;
  out.s1_plus = combination_spectrum(s, c.s1_plus);
  out.s2_minus = combination_spectrum(s, c.s2_minus);
  out.var_s1_a = combination_spectrum(s, c.s1_a);
  out.var_s1_b = combination_spectrum(s, c.s1_b);
  out.cross_s1_ab = cross_spectrum(s, c.s1_a, c.s1_b);
  out.var_s2_a = combination_spectrum(s, c.s2_a);
  out.var_s2_b = combination_spectrum(s, c.s2_b);
  out.cross_s2_ab = cross_spectrum(s, c.s2_a, c.s2_b);
  return out;
}

StokesClosedForm analytic_stokes_spectra(double omega, double sigma,
                                         double c) {
  if (!(omega >= kOmegaMin && omega <= kOmegaMax))
    throw std::domain_error("analysis frequency outside supported band");
  if (!(std::isfinite(sigma) && sigma >= 1.0))
    throw std::invalid_argument("closed forms hold at and above threshold");
  if (!(std::isfinite(c) && c >= 0.0))
    throw std::invalid_argument("plate-loss ratio must be non-negative");

  const double k = omega * omega;
  const double e = c * c;
  const double u = sigma - 1.0;
  const double dd = (e + sigma * u) * (e + sigma * u) + k -
                    2.0 * (e - sigma * u) * k + k * k;
  const double dm = k + (k - e) * (k - e);

  StokesClosedForm out;
  out.s1_plus = 1.0 - (k - e) / dm;
  out.s2_minus = 1.0 - (u * u + k - e) / dd;
  return out;
}

Criterion sum_criterion(double s1_plus, double s2_minus) {
  Criterion c;
  c.value = 0.5 * (s1_plus + s2_minus);
  c.flag = c.value < 1.0;
  return c;
}

Criterion product_criterion(double s1_plus, double s2_minus) {
  Criterion c;
  c.value = s1_plus * s2_minus;
  c.flag = c.value < 2.0;
  return c;
}

RawMancini raw_product_criterion(double s1_plus, double s2_minus,
                                 double j_squared) {
  if (!(j_squared >= 0.0))
    throw std::invalid_argument("mean intensity must be non-negative");
  RawMancini r;
  r.lhs = 16.0 * j_squared * j_squared * s1_plus * s2_minus;
  r.rhs = 8.0 * j_squared;
  return r;
}

Criterion epr_criterion(const StokesSpectra& s) {
  if (!(s.var_s1_b > 0.0) || !(s.var_s2_b > 0.0))
    throw std::runtime_error("conditioning variance must be positive");
  const double cond1 =
      s.var_s1_a - s.cross_s1_ab * s.cross_s1_ab / s.var_s1_b;
  const double cond2 =
      s.var_s2_a - s.cross_s2_ab * s.cross_s2_ab / s.var_s2_b;
  Criterion c;
  c.value = cond1 * cond2;
  c.flag = c.value < 1.0;
  return c;
}

double heisenberg_bound(double j_squared) {
  return 4.0 * j_squared * j_squared;
}

}  // namespace tcopo
