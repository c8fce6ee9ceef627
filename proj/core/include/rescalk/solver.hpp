#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rescalk/tensor.hpp"

namespace rescalk {

struct SolverConfig {
  double tol = 1e-8;            // relative change of relative error per sweep
  std::size_t max_iters = 5000; // full multiplicative sweeps
  double eps = 1e-9;            // denominator guard of the update rules
  std::uint64_t seed = 0;
};

/// One solved (A, R) pair, normalized so columns of A sum to one.
struct Decomposition {
  FactorMatrix A;
  CoreTensor R;
  double rel_error = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  std::uint64_t seed = 0;
};

/// A (n x r) and R (r x r x T) filled with uniform (0,1) draws, deterministic
/// in `seed`.
std::pair<FactorMatrix, CoreTensor> init_factors(std::size_t n, std::size_t r,
                                                 std::size_t T,
                                                 std::uint64_t seed);

/// Multiplicative core update, slice-wise:
///   R_t <- R_t .* (A^T X_t A) ./ (A^T A R_t A^T A + eps)
CoreTensor update_core(const DenseTensor3& X, const FactorMatrix& A,
                       const CoreTensor& R, double eps);

/// Multiplicative feature update:
///   A <- A .* sum_t(X_t A R_t^T + X_t^T A R_t)
///          ./ (A sum_t(R_t A^T A R_t^T + R_t^T A^T A R_t) + eps)
FactorMatrix update_features(const DenseTensor3& X, const FactorMatrix& A,
                             const CoreTensor& R, double eps);

/// Rescales so each column of A sums to one: A' = A D^-1, R'_t = D R_t D
/// with D = diag(column sums). Leaves the reconstruction unchanged.
/// Throws DegenerateFactorError if a column sum is not positive.
std::pair<FactorMatrix, CoreTensor> normalize(const FactorMatrix& A,
                                              const CoreTensor& R);

/// Fits X ~ A R A^T at latent dimension r by alternating update_core and
/// update_features until the relative error stalls (|e_prev - e|/e_prev <
/// tol) or max_iters sweeps. The returned decomposition is normalized.
Decomposition solve(const DenseTensor3& X, std::size_t r,
                    const SolverConfig& cfg);

/// Runs `restarts` independent solves with seeds derived from cfg.seed and
/// the restart index, returning the lowest-error one (ties: lowest index).
/// Restarts whose factors degenerate are skipped; a note per skip is
/// appended to `warnings` when given. Throws if every restart degenerates.
Decomposition best_of(const DenseTensor3& X, std::size_t r,
                      std::size_t restarts, const SolverConfig& cfg,
                      std::vector<std::string>* warnings = nullptr);

}  // namespace rescalk
