#include "rescalk/solver.hpp"

#include <Eigen/Dense>

#include <cassert>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "rescalk/errors.hpp"
#include "rescalk/parallel.hpp"
#include "rescalk/rng.hpp"

namespace rescalk {
namespace {

using RowMat =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using SliceStride = Eigen::Stride<Eigen::Dynamic, Eigen::Dynamic>;
using ConstSliceMap = Eigen::Map<const RowMat, Eigen::Unaligned, SliceStride>;
using SliceMap = Eigen::Map<RowMat, Eigen::Unaligned, SliceStride>;

ConstSliceMap slice_of(const DenseTensor3& X, std::size_t t) {
  return ConstSliceMap(
      X.data() + t, static_cast<Eigen::Index>(X.n1()),
      static_cast<Eigen::Index>(X.n2()),
      SliceStride(static_cast<Eigen::Index>(X.n2() * X.n3()),
                  static_cast<Eigen::Index>(X.n3())));
}

SliceMap slice_of(DenseTensor3& X, std::size_t t) {
  return SliceMap(X.data() + t, static_cast<Eigen::Index>(X.n1()),
                  static_cast<Eigen::Index>(X.n2()),
                  SliceStride(static_cast<Eigen::Index>(X.n2() * X.n3()),
                              static_cast<Eigen::Index>(X.n3())));
}

void check_update_shapes(const DenseTensor3& X, const FactorMatrix& A,
                         const CoreTensor& R, double eps) {
  if (eps <= 0.0) throw ConfigError("eps must be positive");
  if (X.n1() != X.n2()) throw ShapeError("data tensor slices must be square");
  if (R.n1() != R.n2()) throw ShapeError("core tensor slices must be square");
  if (A.rows() != X.n1() || A.cols() != R.n1() || X.n3() != R.n3()) {
    throw ShapeError("factor/core dims do not match the data tensor");
  }
}

// Shared by the public ops and solve() so both take the same arithmetic
// path. Mutates R in place.
void update_core_inplace(const DenseTensor3& X, const FactorMatrix& A,
                         CoreTensor& R, double eps) {
  const auto n = static_cast<Eigen::Index>(A.rows());
  const auto r = static_cast<Eigen::Index>(A.cols());
  Eigen::Map<const RowMat> a(A.data(), n, r);
  const RowMat gram = a.transpose() * a;  // r x r

  RowMat xa(n, r), num(r, r), den(r, r);
  for (std::size_t t = 0; t < R.n3(); ++t) {
    SliceMap rt = slice_of(R, t);
    xa.noalias() = slice_of(X, t) * a;
    num.noalias() = a.transpose() * xa;
    den.noalias() = gram * rt * gram;
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < r; ++j)
        rt(i, j) *= num(i, j) / (den(i, j) + eps);
  }
}

void update_features_inplace(const DenseTensor3& X, FactorMatrix& A,
                             const CoreTensor& R, double eps) {
  const auto n = static_cast<Eigen::Index>(A.rows());
  const auto r = static_cast<Eigen::Index>(A.cols());
  Eigen::Map<RowMat> a(A.data(), n, r);
  const RowMat gram = a.transpose() * a;

  RowMat num = RowMat::Zero(n, r);
  RowMat mix = RowMat::Zero(r, r);  // sum_t R_t G R_t^T + R_t^T G R_t
  RowMat xa(n, r), xta(n, r);
  for (std::size_t t = 0; t < R.n3(); ++t) {
    ConstSliceMap xt = slice_of(X, t);
    ConstSliceMap rt = slice_of(R, t);
    xa.noalias() = xt * a;
    xta.noalias() = xt.transpose() * a;
    num.noalias() += xa * rt.transpose();
    num.noalias() += xta * rt;
    mix.noalias() += rt * gram * rt.transpose();
    mix.noalias() += rt.transpose() * gram * rt;
  }
  const RowMat den = a * mix;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < r; ++j)
      a(i, j) *= num(i, j) / (den(i, j) + eps);
}

#ifndef NDEBUG
bool all_nonnegative(const std::vector<double>& v) {
  for (double x : v)
    if (x < 0.0) return false;
  return true;
}
#endif

}  // namespace

std::pair<FactorMatrix, CoreTensor> init_factors(std::size_t n, std::size_t r,
                                                 std::size_t T,
                                                 std::uint64_t seed) {
  if (r == 0 || r > n) {
    throw InvalidRankError("latent dimension must satisfy 1 <= r <= n, got r=" +
                           std::to_string(r) + ", n=" + std::to_string(n));
  }
  if (T == 0) throw ConfigError("need at least one time slice");

  UniformStream stream(seed);
  FactorMatrix A(n, r);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < r; ++j) A(i, j) = stream.next();
  CoreTensor R(r, r, T);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t t = 0; t < T; ++t) R(i, j, t) = stream.next();
  return {std::move(A), std::move(R)};
}

CoreTensor update_core(const DenseTensor3& X, const FactorMatrix& A,
                       const CoreTensor& R, double eps) {
  check_update_shapes(X, A, R, eps);
  CoreTensor out = R;
  update_core_inplace(X, A, out, eps);
  return out;
}

FactorMatrix update_features(const DenseTensor3& X, const FactorMatrix& A,
                             const CoreTensor& R, double eps) {
  check_update_shapes(X, A, R, eps);
  FactorMatrix out = A;
  update_features_inplace(X, out, R, eps);
  return out;
}

std::pair<FactorMatrix, CoreTensor> normalize(const FactorMatrix& A,
                                              const CoreTensor& R) {
  if (A.cols() != R.n1() || R.n1() != R.n2()) {
    throw ShapeError("factor/core dims do not match");
  }
  const std::size_t n = A.rows(), r = A.cols(), T = R.n3();

  std::vector<double> colsum(r, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < r; ++j) colsum[j] += A(i, j);
  for (std::size_t j = 0; j < r; ++j) {
    if (!(colsum[j] > 0.0)) {
      throw DegenerateFactorError("factor column sum is not positive", j);
    }
  }

  FactorMatrix An(n, r);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < r; ++j) An(i, j) = A(i, j) / colsum[j];
  CoreTensor Rn(r, r, T);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t t = 0; t < T; ++t)
        Rn(i, j, t) = colsum[i] * R(i, j, t) * colsum[j];
  return {std::move(An), std::move(Rn)};
}

Decomposition solve(const DenseTensor3& X, std::size_t r,
                    const SolverConfig& cfg) {
  if (cfg.tol <= 0.0) throw ConfigError("tol must be positive");
  if (cfg.max_iters == 0) throw ConfigError("max_iters must be at least 1");
  if (cfg.eps <= 0.0) throw ConfigError("eps must be positive");
  if (X.n1() != X.n2()) {
    throw ShapeError("data tensor must be square in modes 1-2, got " +
                     std::to_string(X.n1()) + "x" + std::to_string(X.n2()));
  }
  if (frobenius_norm(X) == 0.0) {
    throw DegenerateInputError("cannot decompose a zero tensor");
  }

  auto [A, R] = init_factors(X.n1(), r, X.n3(), cfg.seed);
  double e_prev = relative_error(X, A, R);
  std::size_t iterations = 0;
  bool converged = false;
  while (iterations < cfg.max_iters) {
    ++iterations;
    update_core_inplace(X, A, R, cfg.eps);
    update_features_inplace(X, A, R, cfg.eps);
    assert(all_nonnegative(A.values()) && all_nonnegative(R.values()));
    const double e = relative_error(X, A, R);
    if (e_prev == 0.0 || std::abs(e_prev - e) / e_prev < cfg.tol) {
      converged = true;
      break;
    }
    e_prev = e;
  }

  auto [An, Rn] = normalize(A, R);
  Decomposition dec;
  dec.rel_error = relative_error(X, An, Rn);
  dec.A = std::move(An);
  dec.R = std::move(Rn);
  dec.iterations = iterations;
  dec.converged = converged;
  dec.seed = cfg.seed;
  return dec;
}

Decomposition best_of(const DenseTensor3& X, std::size_t r,
                      std::size_t restarts, const SolverConfig& cfg,
                      std::vector<std::string>* warnings) {
  if (restarts == 0) throw ConfigError("restarts must be at least 1");

  std::vector<std::optional<Decomposition>> results(restarts);
  std::vector<std::string> notes(restarts);
  parallel_for(restarts, [&](std::size_t i) {
    SolverConfig child = cfg;
    child.seed = derive_seed(cfg.seed, SeedDomain::Restart, i);
    try {
      results[i] = solve(X, r, child);
    } catch (const DegenerateFactorError& e) {
      notes[i] = "restart " + std::to_string(i) + " skipped: " + e.what();
    }
  });

  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < restarts; ++i) {
    if (!results[i]) {
      if (warnings) warnings->push_back(notes[i]);
      continue;
    }
    if (!best || results[i]->rel_error < results[*best]->rel_error) best = i;
  }
  if (!best) {
    throw DegenerateFactorError(
        "all " + std::to_string(restarts) + " restarts degenerated", 0);
  }
  return std::move(*results[*best]);
}

}  // namespace rescalk
