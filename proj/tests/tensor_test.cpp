#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rescalk/errors.hpp"
#include "rescalk/tensor.hpp"
#include "test_util.hpp"

using namespace rescalk;

namespace {

Matrix identity(std::size_t n) {
  Matrix I(n, n);
  for (std::size_t i = 0; i < n; ++i) I(i, i) = 1.0;
  return I;
}

}  // namespace

TEST_CASE("construction validates sizes and finiteness") {
  CHECK_THROWS_AS(Matrix(2, 2, {1.0, 2.0, 3.0}), ShapeError);
  CHECK_THROWS_AS(DenseTensor3(2, 2, 2, {1.0}), ShapeError);
  CHECK_THROWS_AS(Matrix(1, 2, {1.0, std::nan("")}), DomainError);
  CHECK_THROWS_AS(DenseTensor3::data_tensor(1, 1, 2, {1.0, -0.5}), DomainError);
  CHECK_NOTHROW(DenseTensor3(1, 1, 2, {1.0, -0.5}));  // general tensors may go negative
}

TEST_CASE("mode_multiply by the identity is the identity map") {
  const DenseTensor3 X = testutil::random_tensor(3, 4, 5, 42);
  CHECK(mode_multiply(X, identity(3), 1) == X);
  CHECK(mode_multiply(X, identity(4), 2) == X);
  CHECK(mode_multiply(X, identity(5), 3) == X);
}

TEST_CASE("mode_multiply matches hand-computed slices") {
  // One 2x2 slice [[1,2],[3,4]].
  const DenseTensor3 X(2, 2, 1, {1.0, 2.0, 3.0, 4.0});

  SUBCASE("mode 1 with diag(2,1)") {
    const Matrix M(2, 2, {2.0, 0.0, 0.0, 1.0});
    const DenseTensor3 Y = mode_multiply(X, M, 1);
    CHECK(Y(0, 0, 0) == 2.0);
    CHECK(Y(0, 1, 0) == 4.0);
    CHECK(Y(1, 0, 0) == 3.0);
    CHECK(Y(1, 1, 0) == 4.0);
  }

  SUBCASE("mode 2 with the 1x2 summing matrix") {
    const Matrix M(1, 2, {1.0, 1.0});
    const DenseTensor3 Y = mode_multiply(X, M, 2);
    CHECK(Y.n1() == 2);
    CHECK(Y.n2() == 1);
    CHECK(Y.n3() == 1);
    CHECK(Y(0, 0, 0) == 3.0);
    CHECK(Y(1, 0, 0) == 7.0);
  }
}

TEST_CASE("mode_multiply rejects mismatched dims naming the mode") {
  const DenseTensor3 X = testutil::random_tensor(3, 4, 5, 7);
  const Matrix M(2, 2);
  for (int mode : {1, 2, 3}) {
    try {
      mode_multiply(X, M, mode);
      FAIL("expected ShapeError for mode " << mode);
    } catch (const ShapeError& e) {
      CHECK(std::string(e.what()).find("mode-" + std::to_string(mode)) !=
            std::string::npos);
    }
  }
}

TEST_CASE("mode_multiply is linear in the matrix argument") {
  const DenseTensor3 X = testutil::random_tensor(4, 3, 2, 11);
  for (int mode : {1, 2, 3}) {
    const std::size_t d = mode == 1 ? 4 : (mode == 2 ? 3 : 2);
    const Matrix M1 = testutil::random_matrix(5, d, 100 + mode);
    const Matrix M2 = testutil::random_matrix(5, d, 200 + mode);
    const double alpha = 0.7, beta = -1.3;
    Matrix combo(5, d);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < d; ++j)
        combo(i, j) = alpha * M1(i, j) + beta * M2(i, j);

    const DenseTensor3 lhs = mode_multiply(X, combo, mode);
    const DenseTensor3 y1 = mode_multiply(X, M1, mode);
    const DenseTensor3 y2 = mode_multiply(X, M2, mode);
    for (std::size_t f = 0; f < lhs.size(); ++f) {
      CHECK(lhs.values()[f] ==
            doctest::Approx(alpha * y1.values()[f] + beta * y2.values()[f])
                .epsilon(1e-12));
    }
  }
}

TEST_CASE("frobenius_norm fixed values") {
  CHECK(frobenius_norm(DenseTensor3(3, 3, 3)) == 0.0);

  DenseTensor3 ones(2, 2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k) ones(i, j, k) = 1.0;
  CHECK(frobenius_norm(ones) == doctest::Approx(std::sqrt(8.0)).epsilon(1e-15));

  CHECK(frobenius_norm(Matrix(1, 2, {3.0, 4.0})) == 5.0);
}

TEST_CASE("frobenius_norm triangle inequality on random pairs") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const DenseTensor3 A = testutil::random_tensor(3, 2, 4, 1000 + s);
    const DenseTensor3 B = testutil::random_tensor(3, 2, 4, 2000 + s);
    DenseTensor3 sum(3, 2, 4), negb(3, 2, 4);
    for (std::size_t f = 0; f < sum.size(); ++f) {
      negb.data()[f] = -2.0 * B.values()[f];
      sum.data()[f] = A.values()[f] + negb.values()[f];
    }
    CHECK(frobenius_norm(sum) <=
          frobenius_norm(A) + frobenius_norm(negb) + 1e-12);
  }
}

TEST_CASE("reconstruct with identity factors returns the core slices") {
  const DenseTensor3 R = testutil::random_tensor(3, 3, 4, 5);
  const DenseTensor3 X = reconstruct(identity(3), R);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t t = 0; t < 4; ++t)
        CHECK(X(i, j, t) == doctest::Approx(R(i, j, t)).epsilon(1e-15));
}

TEST_CASE("reconstruct of a rank-1 all-ones factor broadcasts the core") {
  const Matrix A(2, 1, {1.0, 1.0});
  const DenseTensor3 R(1, 1, 3, {2.5, 0.0, 7.0});
  const DenseTensor3 X = reconstruct(A, R);
  CHECK(X.n1() == 2);
  CHECK(X.n2() == 2);
  CHECK(X.n3() == 3);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t t = 0; t < 3; ++t) CHECK(X(i, j, t) == R(0, 0, t));
}

TEST_CASE("reconstruct output dims follow factor rows and core slices") {
  const Matrix A = testutil::random_matrix(23, 5, 3);
  const DenseTensor3 R = testutil::random_tensor(5, 5, 420, 4);
  const DenseTensor3 X = reconstruct(A, R);
  CHECK(X.n1() == 23);
  CHECK(X.n2() == 23);
  CHECK(X.n3() == 420);
}

TEST_CASE("reconstruct equals the composed mode products") {
  const Matrix A = testutil::random_matrix(6, 3, 21);
  const DenseTensor3 R = testutil::random_tensor(3, 3, 5, 22);
  const DenseTensor3 direct = reconstruct(A, R);
  const DenseTensor3 composed = mode_multiply(mode_multiply(R, A, 1), A, 2);
  REQUIRE(direct.n1() == composed.n1());
  for (std::size_t f = 0; f < direct.size(); ++f) {
    CHECK(direct.values()[f] ==
          doctest::Approx(composed.values()[f]).epsilon(1e-12));
  }
}

TEST_CASE("reconstruct rejects mismatched dims") {
  CHECK_THROWS_AS(reconstruct(Matrix(4, 2), DenseTensor3(3, 3, 2)), ShapeError);
  CHECK_THROWS_AS(reconstruct(Matrix(4, 2), DenseTensor3(2, 3, 2)), ShapeError);
}

TEST_CASE("relative_error fixed values") {
  const Matrix A = testutil::random_matrix(4, 2, 31);
  const DenseTensor3 R = testutil::random_tensor(2, 2, 3, 32);

  SUBCASE("perfect fit gives zero") {
    const DenseTensor3 X = reconstruct(A, R);
    CHECK(relative_error(X, A, R) == 0.0);
  }

  SUBCASE("zero model gives one") {
    const DenseTensor3 X = testutil::random_tensor(4, 4, 3, 33);
    const DenseTensor3 zeroR(2, 2, 3);
    CHECK(relative_error(X, A, zeroR) == doctest::Approx(1.0).epsilon(1e-15));
  }

  SUBCASE("1x1x1 hand value") {
    const DenseTensor3 X(1, 1, 1, {2.0});
    const Matrix A1(1, 1, {1.0});
    const DenseTensor3 R1(1, 1, 1, {1.0});
    CHECK(relative_error(X, A1, R1) == doctest::Approx(0.5).epsilon(1e-15));
  }

  SUBCASE("zero data tensor is rejected") {
    CHECK_THROWS_AS(relative_error(DenseTensor3(4, 4, 3), A, R),
                    DegenerateInputError);
  }
}

TEST_CASE("relative_error matches the naive oracle on random instances") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Matrix A = testutil::random_matrix(5, 2, 500 + s);
    const DenseTensor3 R = testutil::random_tensor(2, 2, 4, 600 + s);
    const DenseTensor3 X = testutil::random_tensor(5, 5, 4, 700 + s);
    CHECK(relative_error(X, A, R) ==
          doctest::Approx(testutil::naive_relative_error(X, A, R))
              .epsilon(1e-12));
  }
}

TEST_CASE("slice copies one frontal slice") {
  const DenseTensor3 X = testutil::random_tensor(3, 4, 2, 9);
  const Matrix S = X.slice(1);
  CHECK(S.rows() == 3);
  CHECK(S.cols() == 4);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(S(i, j) == X(i, j, 1));
}
