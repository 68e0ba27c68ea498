#pragma once

#include <complex>

#include <Eigen/Dense>

namespace tcopo {

using Complex = std::complex<double>;

using Matrix4c = Eigen::Matrix4cd;
using Vector4c = Eigen::Vector4cd;

using Matrix8d = Eigen::Matrix<double, 8, 8>;
using Matrix8c = Eigen::Matrix<std::complex<double>, 8, 8>;
using Matrix84d = Eigen::Matrix<double, 8, 4>;
using Matrix84c = Eigen::Matrix<std::complex<double>, 8, 4>;
using Vector8d = Eigen::Matrix<double, 8, 1>;

inline constexpr Complex kI{0.0, 1.0};

}  // namespace tcopo
