#pragma once

#include <cstdint>

#include "rescalk/tensor.hpp"

namespace rescalk {

struct SynthConfig {
  std::size_t n = 10;
  std::size_t T = 100;
  std::size_t k_true = 4;
  double value_hi = 10.0;   // factors drawn from U[0, value_hi)
  double thresh_A = 0.0;    // A entries below this are zeroed
  double thresh_R = 0.0;
  double noise_factor = 0.0;  // additive noise from U[0, noise_factor)
  std::uint64_t seed = 0;
  std::size_t max_rank_retries = 1000;
};

struct SynthInstance {
  DenseTensor3 X;
  FactorMatrix A_true;  // ground truth at generation scale (not normalized)
  CoreTensor R_true;
  double noise_level = 0.0;  // ||X - A R A^T||_F / ||A R A^T||_F
  std::size_t regen_count = 0;  // draws rejected by the rank condition
};

/// Draws A until its numerical rank (after thresholding) equals k_true,
/// draws R, and sets X = reconstruct(A, R) + E with E ~ U[0, noise_factor).
/// The noise stream is independent of the factor stream, so A_true/R_true
/// are identical across noise_factor values at a fixed seed.
SynthInstance generate(const SynthConfig& cfg);

/// ||X - A R A^T||_F / ||A R A^T||_F. Throws DegenerateInputError when the
/// reconstruction has zero norm.
double noise_level(const DenseTensor3& X, const FactorMatrix& A,
                   const CoreTensor& R);

}  // namespace rescalk
