#pragma once

#include <cstdint>
#include <vector>

#include "rescalk/solver.hpp"
#include "rescalk/tensor.hpp"

namespace rescalk {

struct EnsembleConfig {
  std::size_t replicas = 50;            // P
  double perturb = 0.1;                 // half-width of U(1-eps, 1+eps)
  std::uint64_t seed = 0;
  std::size_t restarts_per_replica = 1;
};

/// P decompositions, index-aligned with the replica seeds.
struct EnsembleResult {
  std::vector<Decomposition> decompositions;
};

/// Multiplies every element by an independent U(1-perturb, 1+perturb) draw.
/// Zeros stay zero; deterministic in `seed`.
DenseTensor3 resample(const DenseTensor3& X, double perturb,
                      std::uint64_t seed);

/// Resamples X once per replica and decomposes each replica at dimension r.
/// Replica p's noise and solver seeds derive from (ecfg.seed, p), so the
/// result is a pure function of its arguments regardless of scheduling.
EnsembleResult decompose_ensemble(const DenseTensor3& X, std::size_t r,
                                  const EnsembleConfig& ecfg,
                                  const SolverConfig& scfg);

}  // namespace rescalk
