#pragma once

#include <complex>

#include <Eigen/Dense>

namespace pbg {

using cplx = std::complex<double>;

inline constexpr cplx kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

using Matrix3c = Eigen::Matrix<cplx, 3, 3>;
using Matrix6c = Eigen::Matrix<cplx, 6, 6>;
using Matrix12c = Eigen::Matrix<cplx, 12, 12>;
using Vector6c = Eigen::Matrix<cplx, 6, 1>;
using Vector12c = Eigen::Matrix<cplx, 12, 1>;

// Extended precision, used where transfer-matrix entries grow large enough for
// double rounding to swamp the commutator identities.
using cplx_ext = std::complex<long double>;
using Matrix3e = Eigen::Matrix<cplx_ext, 3, 3>;
using Matrix6e = Eigen::Matrix<cplx_ext, 6, 6>;
using Matrix12e = Eigen::Matrix<cplx_ext, 12, 12>;

}  // namespace pbg
