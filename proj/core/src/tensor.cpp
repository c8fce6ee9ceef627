#include "rescalk/tensor.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <utility>

namespace rescalk {
namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MapRM = Eigen::Map<RowMat>;
using ConstMapRM = Eigen::Map<const RowMat>;
using SliceStride = Eigen::Stride<Eigen::Dynamic, Eigen::Dynamic>;
using ConstSliceMap = Eigen::Map<const RowMat, Eigen::Unaligned, SliceStride>;

// Frontal slice k of a row-major (i,j,k) tensor, viewed without copying.
ConstSliceMap slice_map(const DenseTensor3& X, std::size_t k) {
  return ConstSliceMap(
      X.data() + k, static_cast<Eigen::Index>(X.n1()),
      static_cast<Eigen::Index>(X.n2()),
      SliceStride(static_cast<Eigen::Index>(X.n2() * X.n3()),
                  static_cast<Eigen::Index>(X.n3())));
}

void check_finite(const std::vector<double>& values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw DomainError(std::string(what) + " contains a non-finite value", 0);
    }
  }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (values_.size() != rows_ * cols_) {
    throw ShapeError("matrix value count " + std::to_string(values_.size()) +
                     " does not match dims " + std::to_string(rows_) + "x" +
                     std::to_string(cols_));
  }
  check_finite(values_, "matrix");
}

DenseTensor3::DenseTensor3(std::size_t n1, std::size_t n2, std::size_t n3,
                           std::vector<double> values)
    : n1_(n1), n2_(n2), n3_(n3), values_(std::move(values)) {
  if (values_.size() != n1_ * n2_ * n3_) {
    throw ShapeError("tensor value count " + std::to_string(values_.size()) +
                     " does not match dims " + std::to_string(n1_) + "x" +
                     std::to_string(n2_) + "x" + std::to_string(n3_));
  }
  check_finite(values_, "tensor");
}

DenseTensor3 DenseTensor3::data_tensor(std::size_t n1, std::size_t n2,
                                       std::size_t n3,
                                       std::vector<double> values) {
  for (double v : values) {
    if (v < 0.0) {
      throw DomainError("data tensor contains a negative value", 0);
    }
  }
  return DenseTensor3(n1, n2, n3, std::move(values));
}

Matrix DenseTensor3::slice(std::size_t k) const {
  Matrix out(n1_, n2_);
  for (std::size_t i = 0; i < n1_; ++i) {
    for (std::size_t j = 0; j < n2_; ++j) {
      out(i, j) = (*this)(i, j, k);
    }
  }
  return out;
}

DenseTensor3 mode_multiply(const DenseTensor3& X, const Matrix& M, int mode) {
  if (mode < 1 || mode > 3) {
    throw ShapeError("mode must be 1, 2 or 3");
  }
  const std::size_t dims[3] = {X.n1(), X.n2(), X.n3()};
  const std::size_t contracted = dims[mode - 1];
  if (M.cols() != contracted) {
    throw ShapeError("mode-" + std::to_string(mode) + " mismatch: matrix has " +
                     std::to_string(M.cols()) + " columns, tensor dim is " +
                     std::to_string(contracted));
  }

  const std::size_t m = M.rows();
  switch (mode) {
    case 1: {
      DenseTensor3 out(m, X.n2(), X.n3());
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t l = 0; l < contracted; ++l) {
          const double w = M(i, l);
          for (std::size_t j = 0; j < X.n2(); ++j)
            for (std::size_t k = 0; k < X.n3(); ++k)
              out(i, j, k) += w * X(l, j, k);
        }
      return out;
    }
    case 2: {
      DenseTensor3 out(X.n1(), m, X.n3());
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t l = 0; l < contracted; ++l) {
          const double w = M(j, l);
          for (std::size_t i = 0; i < X.n1(); ++i)
            for (std::size_t k = 0; k < X.n3(); ++k)
              out(i, j, k) += w * X(i, l, k);
        }
      return out;
    }
    default: {
      DenseTensor3 out(X.n1(), X.n2(), m);
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < contracted; ++l) {
          const double w = M(k, l);
          for (std::size_t i = 0; i < X.n1(); ++i)
            for (std::size_t j = 0; j < X.n2(); ++j)
              out(i, j, k) += w * X(i, j, l);
        }
      return out;
    }
  }
}

namespace {
double root_sum_of_squares(const std::vector<double>& values) {
  double acc = 0.0;
  for (double v : values) acc += v * v;
  return std::sqrt(acc);
}
}  // namespace

double frobenius_norm(const DenseTensor3& X) {
  return root_sum_of_squares(X.values());
}

double frobenius_norm(const Matrix& M) {
  return root_sum_of_squares(M.values());
}

DenseTensor3 reconstruct(const FactorMatrix& A, const CoreTensor& R) {
  if (R.n1() != R.n2()) {
    throw ShapeError("core tensor slices must be square, got " +
                     std::to_string(R.n1()) + "x" + std::to_string(R.n2()));
  }
  if (A.cols() != R.n1()) {
    throw ShapeError("factor has " + std::to_string(A.cols()) +
                     " columns but core slices are " + std::to_string(R.n1()) +
                     "x" + std::to_string(R.n1()));
  }
  const std::size_t n = A.rows(), r = A.cols(), T = R.n3();
  DenseTensor3 out(n, n, T);
  ConstMapRM a(A.data(), static_cast<Eigen::Index>(n),
               static_cast<Eigen::Index>(r));
  RowMat slice(n, n), rt(r, r);
  for (std::size_t t = 0; t < T; ++t) {
    rt = slice_map(R, t);
    slice.noalias() = a * rt * a.transpose();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        out(i, j, t) = slice(static_cast<Eigen::Index>(i),
                             static_cast<Eigen::Index>(j));
  }
  return out;
}

double relative_error(const DenseTensor3& X, const FactorMatrix& A,
                      const CoreTensor& R) {
  const double denom = frobenius_norm(X);
  if (denom == 0.0) {
    throw DegenerateInputError("relative error undefined for a zero tensor");
  }
  if (X.n1() != A.rows() || X.n2() != A.rows() || X.n3() != R.n3()) {
    throw ShapeError("tensor dims do not match the decomposition");
  }
  const DenseTensor3 recon = reconstruct(A, R);
  double acc = 0.0;
  const std::vector<double>& xv = X.values();
  const std::vector<double>& rv = recon.values();
  for (std::size_t i = 0; i < xv.size(); ++i) {
    const double d = xv[i] - rv[i];
    acc += d * d;
  }
  return std::sqrt(acc) / denom;
}

}  // namespace rescalk
