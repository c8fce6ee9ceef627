#pragma once

#include <cstddef>
#include <vector>

#include "rescalk/errors.hpp"

namespace rescalk {

/// Dense row-major matrix of finite reals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), values_(rows * cols, 0.0) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return values_.size(); }

  double operator()(std::size_t i, std::size_t j) const {
    return values_[i * cols_ + j];
  }
  double& operator()(std::size_t i, std::size_t j) {
    return values_[i * cols_ + j];
  }

  const std::vector<double>& values() const { return values_; }
  const double* data() const { return values_.data(); }
  double* data() { return values_.data(); }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

/// Dense order-3 tensor, row-major: element (i,j,k) at (i*n2 + j)*n3 + k.
class DenseTensor3 {
 public:
  DenseTensor3() = default;
  DenseTensor3(std::size_t n1, std::size_t n2, std::size_t n3)
      : n1_(n1), n2_(n2), n3_(n3), values_(n1 * n2 * n3, 0.0) {}
  DenseTensor3(std::size_t n1, std::size_t n2, std::size_t n3,
               std::vector<double> values);

  /// Constructs a data tensor, additionally rejecting negative elements.
  static DenseTensor3 data_tensor(std::size_t n1, std::size_t n2,
                                  std::size_t n3, std::vector<double> values);

  std::size_t n1() const { return n1_; }
  std::size_t n2() const { return n2_; }
  std::size_t n3() const { return n3_; }
  std::size_t size() const { return values_.size(); }

  double operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return values_[(i * n2_ + j) * n3_ + k];
  }
  double& operator()(std::size_t i, std::size_t j, std::size_t k) {
    return values_[(i * n2_ + j) * n3_ + k];
  }

  /// Copy of frontal slice k as an n1 x n2 matrix.
  Matrix slice(std::size_t k) const;

  const std::vector<double>& values() const { return values_; }
  const double* data() const { return values_.data(); }
  double* data() { return values_.data(); }

  bool operator==(const DenseTensor3&) const = default;

 private:
  std::size_t n1_ = 0;
  std::size_t n2_ = 0;
  std::size_t n3_ = 0;
  std::vector<double> values_;
};

// Semantic roles from the RESCAL model: A is n x r with one latent group per
// column, R is r x r x T with one group-interaction slice per time step.
using FactorMatrix = Matrix;
using CoreTensor = DenseTensor3;

/// Mode-n product: contracts dim `mode` (1, 2 or 3) of X with the columns
/// of M. Result dim along `mode` becomes M.rows().
DenseTensor3 mode_multiply(const DenseTensor3& X, const Matrix& M, int mode);

double frobenius_norm(const DenseTensor3& X);
double frobenius_norm(const Matrix& M);

/// X_t = A * R_t * A^T for every slice t.
DenseTensor3 reconstruct(const FactorMatrix& A, const CoreTensor& R);

/// ||X - A R A^T||_F / ||X||_F. Throws DegenerateInputError on zero X.
double relative_error(const DenseTensor3& X, const FactorMatrix& A,
                      const CoreTensor& R);

}  // namespace rescalk
