#include "rescalk/ensemble.hpp"

#include <string>
#include <utility>

#include "rescalk/errors.hpp"
#include "rescalk/parallel.hpp"
#include "rescalk/rng.hpp"

namespace rescalk {

DenseTensor3 resample(const DenseTensor3& X, double perturb,
                      std::uint64_t seed) {
  if (perturb < 0.0 || perturb >= 1.0) {
    throw ConfigError("perturbation half-width must lie in [0, 1), got " +
                      std::to_string(perturb));
  }
  DenseTensor3 out = X;
  UniformStream stream(seed);
  const double lo = 1.0 - perturb;
  const double width = 2.0 * perturb;
  double* v = out.data();
  for (std::size_t i = 0; i < out.size(); ++i) {
    v[i] *= lo + width * stream.next();
  }
  return out;
}

EnsembleResult decompose_ensemble(const DenseTensor3& X, std::size_t r,
                                  const EnsembleConfig& ecfg,
                                  const SolverConfig& scfg) {
  if (ecfg.replicas < 2) throw ConfigError("need at least 2 replicas");
  if (ecfg.perturb < 0.0 || ecfg.perturb >= 1.0) {
    throw ConfigError("perturbation half-width must lie in [0, 1)");
  }
  if (ecfg.restarts_per_replica == 0) {
    throw ConfigError("restarts_per_replica must be at least 1");
  }

  EnsembleResult result;
  result.decompositions.resize(ecfg.replicas);
  parallel_for(ecfg.replicas, [&](std::size_t p) {
    const std::uint64_t base = derive_seed(ecfg.seed, SeedDomain::Replica, p);
    const DenseTensor3 Xp =
        resample(X, ecfg.perturb, derive_seed(base, SeedDomain::Resample, 0));
    SolverConfig child = scfg;
    child.seed = derive_seed(base, SeedDomain::Solver, 0);
    try {
      result.decompositions[p] =
          best_of(Xp, r, ecfg.restarts_per_replica, child);
    } catch (const DegenerateFactorError& e) {
      throw DegenerateFactorError(
          "replica " + std::to_string(p) + ": " + e.what(), e.column());
    }
  });
  return result;
}

}  // namespace rescalk
