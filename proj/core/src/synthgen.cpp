#include "rescalk/synthgen.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "rescalk/errors.hpp"
#include "rescalk/rng.hpp"

namespace rescalk {
namespace {

std::size_t numerical_rank(const FactorMatrix& A) {
  Eigen::MatrixXd m(A.rows(), A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = A(i, j);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double tol =
      static_cast<double>(std::max(A.rows(), A.cols())) * sv(0) * 1e-12;
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > tol) ++rank;
  }
  return rank;
}

}  // namespace

SynthInstance generate(const SynthConfig& cfg) {
  if (cfg.k_true == 0 || cfg.k_true > cfg.n) {
    throw InvalidRankError("k_true must satisfy 1 <= k_true <= n");
  }
  if (cfg.T == 0) throw ConfigError("need at least one time slice");
  if (cfg.value_hi <= 0.0) throw ConfigError("value_hi must be positive");
  if (cfg.thresh_A < 0.0 || cfg.thresh_R < 0.0) {
    throw ConfigError("thresholds must be nonnegative");
  }
  if (cfg.noise_factor < 0.0) throw ConfigError("noise_factor must be nonnegative");

  const std::size_t n = cfg.n, k = cfg.k_true, T = cfg.T;
  UniformStream factors(derive_seed(cfg.seed, SeedDomain::SynthFactors, 0));

  // Draw A, sparsify, and keep only full-rank samples.
  SynthInstance inst;
  FactorMatrix A(n, k);
  bool accepted = false;
  for (std::size_t attempt = 0; attempt <= cfg.max_rank_retries; ++attempt) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        double v = cfg.value_hi * factors.next();
        if (v < cfg.thresh_A) v = 0.0;
        A(i, j) = v;
      }
    }
    if (numerical_rank(A) == k) {
      accepted = true;
      break;
    }
    ++inst.regen_count;
  }
  if (!accepted) {
    throw GenerationError("no rank-" + std::to_string(k) +
                          " factor found within " +
                          std::to_string(cfg.max_rank_retries) + " retries");
  }

  CoreTensor R(k, k, T);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t t = 0; t < T; ++t) {
        double v = cfg.value_hi * factors.next();
        if (v < cfg.thresh_R) v = 0.0;
        R(i, j, t) = v;
      }
    }
  }

  DenseTensor3 X = reconstruct(A, R);
  if (frobenius_norm(X) == 0.0) {
    throw GenerationError("thresholding produced an all-zero reconstruction");
  }

  // Noise comes from its own stream so the ground truth is stable across
  // noise_factor sweeps at a fixed seed.
  UniformStream noise(derive_seed(cfg.seed, SeedDomain::SynthNoise, 0));
  double* xv = X.data();
  for (std::size_t i = 0; i < X.size(); ++i) {
    xv[i] += cfg.noise_factor * noise.next();
  }

  inst.noise_level = noise_level(X, A, R);
  inst.X = std::move(X);
  inst.A_true = std::move(A);
  inst.R_true = std::move(R);
  return inst;
}

double noise_level(const DenseTensor3& X, const FactorMatrix& A,
                   const CoreTensor& R) {
  const DenseTensor3 recon = reconstruct(A, R);
  const double denom = frobenius_norm(recon);
  if (denom == 0.0) {
    throw DegenerateInputError("noise level undefined for a zero reconstruction");
  }
  if (X.n1() != recon.n1() || X.n2() != recon.n2() || X.n3() != recon.n3()) {
    throw ShapeError("tensor dims do not match the reconstruction");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < X.size(); ++i) {
    const double d = X.values()[i] - recon.values()[i];
    acc += d * d;
  }
  return std::sqrt(acc) / denom;
}

}  // namespace rescalk
