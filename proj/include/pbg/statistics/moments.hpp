#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "pbg/core/modes.hpp"
#include "pbg/core/state.hpp"
#include "pbg/core/types.hpp"
#include "pbg/fluctuation/propagator.hpp"

namespace pbg {

using Vector6d = Eigen::Matrix<double, 6, 1>;
using InputStates = std::array<InputModeState, 6>;

/// Normally ordered Gaussian moments of the six output corrections.
///   B_j = <dA_j^+ dA_j>, C_j = <dA_j^2>,
///   D_jk = <dA_j dA_k>, Dbar_jk = -<dA_j^+ dA_k>  (j != k, zero diagonal)
/// where dA = A - <A>.
struct GaussianMoments {
  Vector6c means = Vector6c::Zero();
  Vector6d B = Vector6d::Zero();
  Vector6c C = Vector6c::Zero();
  Matrix6c D = Matrix6c::Zero();
  Matrix6c Dbar = Matrix6c::Zero();
};

/// Means transform like the operators: xi_out = U xi + V conj(xi).
Vector6c propagate_means(const Matrix6c& U, const Matrix6c& V, const Vector6c& in);
Vector6c propagate_means(const InputOutputMap& map, const Vector6c& in);

/// Six independent input modes through out = U in + V in^+. Means included.
GaussianMoments propagate_second_moments(const Matrix6c& U, const Matrix6c& V,
                                         const InputStates& inputs);
GaussianMoments propagate_second_moments(const InputOutputMap& map, const InputStates& inputs);

struct SqueezingReport {
  ModeSet modes;
  double var_q = 0;
  double var_p = 0;
  double lambda = 0;  // principal squeeze variance
};

SqueezingReport squeeze_single(const GaussianMoments& m, ModeId j);
/// Throws InvalidInput when j == k.
SqueezingReport squeeze_compound(const GaussianMoments& m, ModeId j, ModeId k);
SqueezingReport squeeze(const GaussianMoments& m, const ModeSet& modes);

/// Integrated intensity statistics of one mode or of W_j + W_k.
/// fano and reduced_moment are empty when mean_W is zero.
struct PhotonStatsReport {
  ModeSet modes;
  double mean_W = 0;
  double var_W_N = 0;
  std::optional<double> fano;
  std::optional<double> reduced_moment;  // R_W = <W^2>_N / <W>_N^2
};

PhotonStatsReport intensity_moments(const GaussianMoments& m, const ModeSet& modes);

/// Sampling estimate with standard errors.
struct McEstimate {
  double value = 0;
  double error = 0;
};

struct McPhotonStats {
  ModeSet modes;
  std::uint64_t samples = 0;
  McEstimate mean_W;
  McEstimate var_W_N;
  std::optional<McEstimate> fano;
  std::optional<McEstimate> reduced_moment;
};

struct McOptions {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0x5eed;
  int workers = 1;  // shards are fixed, so results do not depend on this
};

/// Samples the Husimi (antinormally ordered) Gaussian of the selected modes and
/// converts antinormal moments to normal ordering. Deterministic given the seed.
/// Throws UnphysicalState when the Husimi covariance is not positive definite.
McPhotonStats mc_oracle(const GaussianMoments& m, const ModeSet& modes,
                        const McOptions& options = {});

}  // namespace pbg
