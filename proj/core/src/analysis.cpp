#include "rescalk/analysis.hpp"

#include "rescalk/errors.hpp"

namespace rescalk {

Matrix group_activity(const CoreTensor& R, bool include_diagonal) {
  if (R.n1() != R.n2()) {
    throw ShapeError("core tensor slices must be square");
  }
  const std::size_t r = R.n1(), T = R.n3();
  Matrix activity(r, T);
  for (std::size_t g = 0; g < r; ++g) {
    for (std::size_t t = 0; t < T; ++t) {
      double sum = 0.0;
      for (std::size_t j = 0; j < r; ++j) {
        if (j == g && !include_diagonal) continue;
        sum += R(g, j, t);
      }
      activity(g, t) = sum;
    }
  }
  return activity;
}

Matrix interaction_summary(const CoreTensor& R) {
  if (R.n1() != R.n2()) {
    throw ShapeError("core tensor slices must be square");
  }
  const std::size_t r = R.n1(), T = R.n3();
  Matrix S(r, r);
  double max = 0.0;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      double sum = 0.0;
      for (std::size_t t = 0; t < T; ++t) sum += R(i, j, t);
      S(i, j) = sum;
      if (sum > max) max = sum;
    }
  }
  if (max <= 0.0) {
    throw DegenerateInputError("interaction summary of an all-zero core tensor");
  }
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) S(i, j) /= max;
  }
  return S;
}

}  // namespace rescalk
