#include <algorithm>
#include <array>
#include <cmath>
#include <thread>
#include <vector>

#include "pbg/core/error.hpp"
#include "pbg/statistics/moments.hpp"

namespace pbg {

namespace {

constexpr int kShards = 64;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// SplitMix64 evaluated at an explicit counter: draw n of a stream depends only
// on (key, n).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  double uniform() {
    const std::uint64_t bits = mix64(key_ + (++counter_) * 0x9e3779b97f4a7c15ULL);
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
  }

  // Box-Muller, both outputs used.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 == 0.0) u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    spare_ = radius * std::sin(2 * kPi * u2);
    has_spare_ = true;
    return radius * std::cos(2 * kPi * u2);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0;
  bool has_spare_ = false;
};

// Power sums of (S - shift), k = 0..4.
using PowerSums = std::array<double, 5>;

struct Sampler {
  int n = 1;
  Eigen::Matrix<double, 4, 1> mean;
  Eigen::Matrix<double, 4, 4> chol;  // lower factor of the (x..., y...) covariance
};

Sampler build_sampler(const GaussianMoments& m, const std::vector<int>& idx) {
  const int n = static_cast<int>(idx.size());
  // Husimi moments: P_jk = <da_j* da_k>, Q_jk = <da_j da_k>.
  Eigen::MatrixXcd P(n, n), Q(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int j = idx[a], k = idx[b];
      P(a, b) = j == k ? cplx(m.B(j) + 1.0) : -m.Dbar(j, k);
      Q(a, b) = j == k ? m.C(j) : m.D(j, k);
    }
  Eigen::MatrixXd sigma(2 * n, 2 * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      sigma(a, b) = 0.5 * (P(a, b) + Q(a, b)).real();
      sigma(n + a, n + b) = 0.5 * (P(a, b) - Q(a, b)).real();
      sigma(a, n + b) = 0.5 * (Q(a, b) + P(a, b)).imag();
      sigma(n + a, b) = 0.5 * (Q(a, b) - P(a, b)).imag();
    }
  sigma = 0.5 * (sigma + sigma.transpose()).eval();
  Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  const double scale = std::max(1.0, sigma.diagonal().maxCoeff());
  Eigen::MatrixXd L;
  if (llt.info() == Eigen::Success) {
    L = llt.matrixL();
  } else {
    // Semi-definite boundary (pure states) is fine; anything else is not.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sigma);
    if (eig.eigenvalues().minCoeff() < -1e-12 * scale)
      throw UnphysicalState("Husimi covariance of the selected modes is not positive definite");
    const Eigen::VectorXd root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    L = eig.eigenvectors() * root.asDiagonal();
  }
  if (!L.allFinite())
    throw UnphysicalState("Husimi covariance of the selected modes is not positive definite");

  Sampler s;
  s.n = n;
  s.mean.setZero();
  s.chol.setZero();
  for (int a = 0; a < n; ++a) {
    s.mean(a) = m.means(idx[a]).real();
    s.mean(n + a) = m.means(idx[a]).imag();
  }
  s.chol.topLeftCorner(2 * n, 2 * n) = L;
  return s;
}

PowerSums run_shard(const Sampler& s, std::uint64_t key, std::uint64_t count, double shift) {
  CounterRng rng(key);
  PowerSums sums{};
  const int dim = 2 * s.n;
  Eigen::Matrix<double, 4, 1> g = Eigen::Matrix<double, 4, 1>::Zero();
  for (std::uint64_t i = 0; i < count; ++i) {
    for (int d = 0; d < dim; ++d) g(d) = rng.normal();
    const Eigen::Matrix<double, 4, 1> v = s.mean + s.chol * g;
    double total = 0;
    for (int d = 0; d < dim; ++d) total += v(d) * v(d);
    const double x = total - shift;
    double p = 1;
    for (double& acc : sums) {
      acc += p;
      p *= x;
    }
  }
  return sums;
}

}  // namespace

McPhotonStats mc_oracle(const GaussianMoments& m, const ModeSet& modes, const McOptions& options) {
  if (options.samples < 2) throw InvalidInput("Monte-Carlo oracle needs at least two samples");
  std::vector<int> idx{index(modes.first)};
  if (modes.is_pair()) {
    if (*modes.second == modes.first) throw InvalidInput("compound mode needs two different modes");
    idx.push_back(index(*modes.second));
  }
  const Sampler sampler = build_sampler(m, idx);
  const int n = sampler.n;

  // Centre the power sums near the expected value of S to keep them well scaled.
  double shift = 0;
  for (int j : idx) shift += m.B(j) + 1.0 + std::norm(m.means(j));

  std::vector<PowerSums> shard_sums(kShards);
  const int workers = std::clamp(options.workers, 1, kShards);
  auto work = [&](int first) {
    for (int shard = first; shard < kShards; shard += workers) {
      const std::uint64_t begin = options.samples * shard / kShards;
      const std::uint64_t end = options.samples * (shard + 1) / kShards;
      const std::uint64_t key = mix64(options.seed ^ mix64(static_cast<std::uint64_t>(shard) + 1));
      shard_sums[shard] = run_shard(sampler, key, end - begin, shift);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  PowerSums total{};
  for (const PowerSums& s : shard_sums)
    for (int k = 0; k < 5; ++k) total[k] += s[k];

  const double N = total[0];
  const double r1 = total[1] / N, r2 = total[2] / N, r3 = total[3] / N, r4 = total[4] / N;
  // Central moments of S.
  const double mu = shift + r1;
  const double m2 = r2 - r1 * r1;
  const double m3 = r3 - 3 * r1 * r2 + 2 * r1 * r1 * r1;
  const double m4 = r4 - 4 * r1 * r3 + 6 * r1 * r1 * r2 - 3 * r1 * r1 * r1 * r1;

  const double mean_w = mu - n;
  const double var_w = m2 - 2 * mu + n;

  // Influence functions in terms of e = S - mu:
  //   psi_mean = e,  psi_var = e^2 - m2 - 2e.
  // E[psi_var^2] and E[psi_var e] from the central moments.
  const double e_var2 = m4 - m2 * m2 - 4 * m3 + 4 * m2;
  const double e_var_e = m3 - 2 * m2;
  auto se = [N](double second_moment) { return std::sqrt(std::max(second_moment, 0.0) / N); };

  McPhotonStats out;
  out.modes = modes;
  out.samples = options.samples;
  out.mean_W = {mean_w, se(m2)};
  out.var_W_N = {var_w, se(e_var2)};
  if (mean_w != 0.0) {
    // fano = 1 + v/w: psi = psi_var/w - v/w^2 e
    const double a = 1 / mean_w, b = -var_w / (mean_w * mean_w);
    out.fano = McEstimate{1 + var_w / mean_w, se(a * a * e_var2 + 2 * a * b * e_var_e + b * b * m2)};
    // R = 1 + v/w^2: psi = psi_var/w^2 - 2v/w^3 e
    const double c = 1 / (mean_w * mean_w), d = -2 * var_w / (mean_w * mean_w * mean_w);
    out.reduced_moment = McEstimate{1 + var_w / (mean_w * mean_w),
                                    se(c * c * e_var2 + 2 * c * d * e_var_e + d * d * m2)};
  }
  return out;
}

}  // namespace pbg
