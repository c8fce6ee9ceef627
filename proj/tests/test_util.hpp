#pragma once

// Shared helpers for the test suites. The naive evaluators here are kept
// independent of the library's computation paths on purpose: they are the
// oracles the implementation is checked against.

#include <cmath>
#include <cstdint>
#include <vector>

#include "rescalk/rng.hpp"
#include "rescalk/tensor.hpp"

namespace testutil {

inline rescalk::DenseTensor3 random_tensor(std::size_t n1, std::size_t n2,
                                           std::size_t n3, std::uint64_t seed,
                                           double scale = 1.0) {
  rescalk::UniformStream stream(seed);
  rescalk::DenseTensor3 X(n1, n2, n3);
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n2; ++j)
      for (std::size_t k = 0; k < n3; ++k) X(i, j, k) = scale * stream.next();
  return X;
}

inline rescalk::Matrix random_matrix(std::size_t rows, std::size_t cols,
                                     std::uint64_t seed, double scale = 1.0) {
  rescalk::UniformStream stream(seed);
  rescalk::Matrix M(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) M(i, j) = scale * stream.next();
  return M;
}

// Objective sum_t ||X_t - A R_t A^T||_F^2 by plain index loops.
inline double naive_objective(const rescalk::DenseTensor3& X,
                              const rescalk::Matrix& A,
                              const rescalk::DenseTensor3& R) {
  const std::size_t n = A.rows(), r = A.cols(), T = X.n3();
  double total = 0.0;
  for (std::size_t t = 0; t < T; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        double recon = 0.0;
        for (std::size_t a = 0; a < r; ++a)
          for (std::size_t b = 0; b < r; ++b)
            recon += A(i, a) * R(a, b, t) * A(j, b);
        const double d = X(i, j, t) - recon;
        total += d * d;
      }
    }
  }
  return total;
}

inline double naive_relative_error(const rescalk::DenseTensor3& X,
                                   const rescalk::Matrix& A,
                                   const rescalk::DenseTensor3& R) {
  double xnorm2 = 0.0;
  for (double v : X.values()) xnorm2 += v * v;
  return std::sqrt(naive_objective(X, A, R)) / std::sqrt(xnorm2);
}

}  // namespace testutil
