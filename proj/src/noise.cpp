#include "tcopo/noise.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tcopo {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

void check_domain(double omega) {
  if (!(omega >= kOmegaMin && omega <= kOmegaMax))
    throw std::domain_error("analysis frequency outside supported band");
}

}  // namespace

DriftMatrix8 drift_matrix(double sigma, double c) {
  require(std::isfinite(sigma) && sigma >= 1.0,
          "drift is linearized around the bright state, needs sigma >= 1");
  require(std::isfinite(c) && c >= 0.0,
          "plate-loss ratio must be non-negative");

  Eigen::Matrix4d a;
  a << -sigma, -c, 0.0, c,
       c, -sigma, -c, 0.0,
       0.0, c, -sigma, -c,
       -c, 0.0, c, -sigma;

  Eigen::Matrix4d b = Eigen::Matrix4d::Zero();
  b(0, 2) = -(sigma - 2.0);
  b(1, 3) = -sigma;
  b(2, 0) = -(sigma - 2.0);
  b(3, 1) = -sigma;

  DriftMatrix8 d;
  d.sigma = sigma;
  d.c = c;
  d.m.topLeftCorner<4, 4>() = a;
  d.m.topRightCorner<4, 4>() = b;
  d.m.bottomLeftCorner<4, 4>() = b;
  d.m.bottomRightCorner<4, 4>() = a;
  return d;
}

BlockDecomposition block_decomposition(const DriftMatrix8& drift) {
  const double h = 1.0 / std::numbers::sqrt2;

  Matrix8d t = Matrix8d::Zero();
  t(0, 0) = h; t(0, 6) = h;    // p_alpha
  t(1, 2) = h; t(1, 4) = h;    // p_beta
  t(2, 1) = h; t(2, 7) = h;    // q_alpha
  t(3, 3) = h; t(3, 5) = h;    // q_beta
  t(4, 0) = h; t(4, 6) = -h;   // r_alpha
  t(5, 4) = h; t(5, 2) = -h;   // r_beta
  t(6, 1) = h; t(6, 7) = -h;   // s_alpha
  t(7, 5) = h; t(7, 3) = -h;   // s_beta

  BlockDecomposition out;
  out.transform = t;
  const Matrix8d rotated = t * drift.m * t.transpose();
  out.sum_block = rotated.topLeftCorner<4, 4>();
  out.diff_block = rotated.bottomRightCorner<4, 4>();
  return out;
}

Matrix84d pump_injection_map() {
  Matrix84d p = Matrix84d::Zero();
  p(index(Mode::a1, Quad::p), 0) = 1.0;
  p(index(Mode::a1, Quad::q), 1) = 1.0;
  p(index(Mode::b2, Quad::p), 0) = 1.0;
  p(index(Mode::b2, Quad::q), 1) = 1.0;
  p(index(Mode::a2, Quad::p), 2) = 1.0;
  p(index(Mode::a2, Quad::q), 3) = 1.0;
  p(index(Mode::b1, Quad::p), 2) = 1.0;
  p(index(Mode::b1, Quad::q), 3) = 1.0;
  return p;
}

TransferFunctions transfer_functions(double omega, const DriftMatrix8& drift) {
  check_domain(omega);

  Matrix8c shifted = -drift.m.cast<Complex>();
  shifted.diagonal().array() += 2.0 * kI * omega;
  const auto lu = shifted.partialPivLu();

  TransferFunctions t;
  t.input = 2.0 * lu.solve(Matrix8c::Identity()) - Matrix8c::Identity();
  const double drive = 2.0 * (drift.sigma - 1.0);
  t.pump = std::sqrt(drive) * lu.solve(pump_injection_map().cast<Complex>());
  return t;
}

TransferFunctions transfer_functions(double omega, double sigma, double c) {
  return transfer_functions(omega, drift_matrix(sigma, c));
}

SpectralMatrix SpectralMatrix::identity() {
  SpectralMatrix s;
  s.s = Matrix8d::Identity();
  s.t_input.setZero();
  s.t_pump.setZero();
  return s;
}

SpectralMatrix spectral_matrix(double omega, double sigma, double c,
                               double pump_variance) {
  require(std::isfinite(pump_variance) && pump_variance >= 0.0,
          "pump quadrature variance must be non-negative");
  const TransferFunctions t = transfer_functions(omega, sigma, c);

  SpectralMatrix out;
  out.omega = omega;
  out.sigma = sigma;
  out.c = c;
  out.pump_variance = pump_variance;
  out.t_input = t.input;
  out.t_pump = t.pump;
  out.has_transfer = true;

  const Matrix8c full = t.input * t.input.adjoint() +
                        pump_variance * t.pump * t.pump.adjoint();
  const Matrix8d re = full.real();
  out.s = 0.5 * (re + re.transpose());
  return out;
}

double combination_spectrum(const SpectralMatrix& s, const Vector8d& u) {
  const double norm2 = u.squaredNorm();
  require(norm2 > 0.0, "combination vector must be non-zero");

  if (s.has_transfer) {
    // u^T Re(S) u as a sum of squares: immune to the cancellation between
    // large anti-squeezed and small squeezed contributions.
    const Eigen::Matrix<Complex, 8, 1> uc = u.cast<Complex>();
    const double in = (s.t_input.transpose() * uc).squaredNorm();
    const double pump = (s.t_pump.transpose() * uc).squaredNorm();
    return (in + s.pump_variance * pump) / norm2;
  }
  return u.dot(s.s * u) / norm2;
}

double cross_spectrum(const SpectralMatrix& s, const Vector8d& u,
                      const Vector8d& w) {
  const double nu = u.squaredNorm();
  const double nw = w.squaredNorm();
  require(nu > 0.0 && nw > 0.0, "combination vectors must be non-zero");
  const double scale = std::sqrt(nu * nw);

  if (s.has_transfer) {
    const Eigen::Matrix<Complex, 8, 1> uc = u.cast<Complex>();
    const Eigen::Matrix<Complex, 8, 1> wc = w.cast<Complex>();
    const Eigen::Matrix<Complex, 8, 1> xu = s.t_input.transpose() * uc;
    const Eigen::Matrix<Complex, 8, 1> xw = s.t_input.transpose() * wc;
    const Eigen::Vector4cd pu = s.t_pump.transpose() * uc;
    const Eigen::Vector4cd pw = s.t_pump.transpose() * wc;
    return (xu.dot(xw).real() + s.pump_variance * pu.dot(pw).real()) / scale;
  }
  return u.dot(s.s * w) / scale;
}

QuadSpectra analytic_spectra(double omega, double sigma, double c) {
  check_domain(omega);
  require(std::isfinite(sigma) && sigma >= 1.0,
          "closed forms hold at and above threshold");
  require(std::isfinite(c) && c >= 0.0,
          "plate-loss ratio must be non-negative");

  const double k = omega * omega;
  const double e = c * c;
  const double u = sigma - 1.0;
  const double s2 = sigma * sigma;

  // |denominator|^2 of the pump-driven coupled pair and of the pump-free one.
  const double dd = (e + sigma * u) * (e + sigma * u) + k -
                    2.0 * (e - sigma * u) * k + k * k;
  const double dm = k + (k - e) * (k - e);

  QuadSpectra out;
  out.p = 1.0 + 0.5 / (k + u * u) + 0.5 * (s2 + k - e) / dd;
  out.q = 1.0 - 0.5 / (k + s2) - 0.5 * (u * u + k - e) / dd;
  out.r = 1.0 - 0.5 / (1.0 + k) - 0.5 * (k - e) / dm;
  out.s = 1.0 + 0.5 / k + 0.5 * (1.0 + k - e) / dm;
  return out;
}

namespace {

Vector8d unit_pair(int i, int j, double sign_j) {
  Vector8d v = Vector8d::Zero();
  v(i) = 1.0;
  v(j) = sign_j;
  return v;
}

}  // namespace

CombinationSet alpha_combinations() {
  CombinationSet s;
  s.p = unit_pair(index(Mode::a1, Quad::p), index(Mode::b2, Quad::p), 1.0);
  s.q = unit_pair(index(Mode::a1, Quad::q), index(Mode::b2, Quad::q), 1.0);
  s.r = unit_pair(index(Mode::a1, Quad::p), index(Mode::b2, Quad::p), -1.0);
  s.s = unit_pair(index(Mode::a1, Quad::q), index(Mode::b2, Quad::q), -1.0);
  return s;
}

CombinationSet beta_combinations() {
  CombinationSet s;
  s.p = unit_pair(index(Mode::a2, Quad::p), index(Mode::b1, Quad::p), 1.0);
  s.q = unit_pair(index(Mode::a2, Quad::q), index(Mode::b1, Quad::q), 1.0);
  s.r = unit_pair(index(Mode::b1, Quad::p), index(Mode::a2, Quad::p), -1.0);
  s.s = unit_pair(index(Mode::b1, Quad::q), index(Mode::a2, Quad::q), -1.0);
  return s;
}

std::vector<double> log_spaced(double min, double max, int n) {
  require(n >= 1, "grid needs at least one point");
  require(min > 0.0 && max >= min, "log grid needs 0 < min <= max");
  std::vector<double> out(static_cast<size_t>(n));
  if (n == 1) {
    out[0] = min;
    return out;
  }
  const double lmin = std::log(min);
  const double lmax = std::log(max);
  for (int i = 0; i < n; ++i)
    out[static_cast<size_t>(i)] =
        std::exp(lmin + (lmax - lmin) * i / (n - 1));
  out.front() = min;
  out.back() = max;
  return out;
}

std::vector<double> lin_spaced(double min, double max, int n) {
  require(n >= 1, "grid needs at least one point");
  require(max >= min, "grid needs min <= max");
  std::vector<double> out(static_cast<size_t>(n));
  if (n == 1) {
    out[0] = min;
    return out;
  }
  for (int i = 0; i < n; ++i)
    out[static_cast<size_t>(i)] = min + (max - min) * i / (n - 1);
  out.front() = min;
  out.back() = max;
  return out;
}

}  // namespace tcopo
