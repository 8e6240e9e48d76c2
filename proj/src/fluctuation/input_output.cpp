#include <algorithm>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include "pbg/core/error.hpp"
#include "pbg/fluctuation/propagator.hpp"

namespace pbg {

namespace {

Matrix6e eta() {
  Matrix6e e = Matrix6e::Identity();
  e.bottomRightCorner<3, 3>() *= -1.0L;
  return e;
}

template <typename M>
double max_abs(const M& m) {
  return static_cast<double>(m.cwiseAbs().maxCoeff());
}

}  // namespace

Matrix6e BogoliubovBlocks::u() const {
  Matrix6e out;
  out << u11, u12, u21, u22;
  return out;
}

Matrix6e BogoliubovBlocks::v() const {
  Matrix6e out;
  out << v11, v12, v21, v22;
  return out;
}

BogoliubovBlocks bogoliubov_blocks(const Matrix12e& m) {
  // Row/column 2k is the annihilation component of mode k, 2k+1 its conjugate.
  Matrix6e u, v;
  for (int j = 0; j < 6; ++j)
    for (int k = 0; k < 6; ++k) {
      u(j, k) = m(2 * j, 2 * k);
      v(j, k) = m(2 * j, 2 * k + 1);
    }
  BogoliubovBlocks b;
  b.u11 = u.topLeftCorner<3, 3>();
  b.u12 = u.topRightCorner<3, 3>();
  b.u21 = u.bottomLeftCorner<3, 3>();
  b.u22 = u.bottomRightCorner<3, 3>();
  b.v11 = v.topLeftCorner<3, 3>();
  b.v12 = v.topRightCorner<3, 3>();
  b.v21 = v.bottomLeftCorner<3, 3>();
  b.v22 = v.bottomRightCorner<3, 3>();
  return b;
}

BogoliubovBlocks bogoliubov_blocks(const Matrix12c& m) {
  return bogoliubov_blocks(Matrix12e(m.cast<cplx_ext>()));
}

Matrix6c InputOutputMap::U() const {
  Matrix6c u;
  for (int j = 0; j < 6; ++j)
    for (int k = 0; k < 6; ++k) u(j, k) = matrix(2 * j, 2 * k);
  return u;
}

Matrix6c InputOutputMap::V() const {
  Matrix6c v;
  for (int j = 0; j < 6; ++j)
    for (int k = 0; k < 6; ++k) v(j, k) = matrix(2 * j, 2 * k + 1);
  return v;
}

InputOutputMap InputOutputMap::identity() {
  InputOutputMap map;
  map.matrix = Matrix12c::Identity();
  map.transfer_blocks = bogoliubov_blocks(Matrix12e(Matrix12e::Identity()));
  map.backward_condition = 1.0;
  return map;
}

InputOutputMap rearrange_input_output(const TransferMatrix& transfer, double max_condition) {
  const Matrix12e& m = transfer.extended;
  const Matrix6e uff = m.topLeftCorner<6, 6>();
  const Matrix6e ufb = m.topRightCorner<6, 6>();
  const Matrix6e ubf = m.bottomLeftCorner<6, 6>();
  const Matrix6e ubb = m.bottomRightCorner<6, 6>();

  const Eigen::JacobiSVD<Matrix6c> svd(ubb.cast<cplx>().eval());
  const auto& sv = svd.singularValues();
  const double condition = sv(5) > 0 ? sv(0) / sv(5) : std::numeric_limits<double>::infinity();
  if (!(condition <= max_condition)) {
    std::ostringstream msg;
    msg << "backward block of the transfer matrix is near singular (condition " << condition
        << " > " << max_condition << "), likely a band-edge resonance";
    throw IllConditioned(msg.str(), condition);
  }

  const Eigen::PartialPivLU<Matrix6e> lu(ubb);
  const Matrix6e ubb_inv = lu.inverse();
  const Matrix6e ubb_inv_ubf = lu.solve(ubf);

  Matrix12e s;
  s.topLeftCorner<6, 6>() = uff - ufb * ubb_inv_ubf;
  s.topRightCorner<6, 6>() = ufb * ubb_inv;
  s.bottomLeftCorner<6, 6>() = -ubb_inv_ubf;
  s.bottomRightCorner<6, 6>() = ubb_inv;

  InputOutputMap out;
  out.matrix = s.cast<cplx>();
  out.transfer_blocks = bogoliubov_blocks(m);
  out.backward_condition = condition;
  return out;
}

double commutation_residual(const BogoliubovBlocks& b) {
  // The forward/backward and backward/forward blocks of each identity are
  // adjoint (or transposed) copies of each other, so the full 6x6 forms cover
  // all six families exactly once or twice.
  const Matrix6e u = b.u();
  const Matrix6e v = b.v();
  const Matrix6e e = eta();
  const Matrix6e hermitian = u * e * u.adjoint() - v * e * v.adjoint() - e;
  const Matrix6e antisymmetric = u * e * v.transpose() - v * e * u.transpose();
  return std::max(max_abs(hermitian), max_abs(antisymmetric));
}

double commutation_residual(const InputOutputMap& map) {
  return commutation_residual(map.transfer_blocks);
}

double output_commutation_residual(const InputOutputMap& map) {
  const Matrix6c u = map.U();
  const Matrix6c v = map.V();
  const Matrix6c hermitian = u * u.adjoint() - v * v.adjoint() - Matrix6c::Identity();
  const Matrix6c antisymmetric = u * v.transpose() - v * u.transpose();
  return std::max(max_abs(hermitian), max_abs(antisymmetric));
}

void write_matrix_csv(std::ostream& out, const Matrix12c& matrix) {
  out << "# 24x24 real form [[Re M, -Im M], [Im M, Re M]]; index k < 12 is component k\n"
      << "# (sF sF+ iF iF+ pF pF+ sB sB+ iB iB+ pB pB+), k >= 12 its imaginary part\n";
  char buf[40];
  for (int r = 0; r < 24; ++r) {
    for (int c = 0; c < 24; ++c) {
      const cplx v = matrix(r % 12, c % 12);
      double x;
      if (r < 12 && c < 12) x = v.real();
      else if (r < 12) x = -v.imag();
      else if (c < 12) x = v.imag();
      else x = v.real();
      std::snprintf(buf, sizeof buf, "%s%.17g", c ? "," : "", x);
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace pbg
