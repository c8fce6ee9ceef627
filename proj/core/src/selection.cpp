#include "rescalk/selection.hpp"

#include <algorithm>
#include <string>

#include "rescalk/errors.hpp"
#include "rescalk/rng.hpp"

namespace rescalk {

SelectionCurve sweep(const DenseTensor3& X,
                     const std::vector<std::size_t>& k_range,
                     const EnsembleConfig& ecfg, const SolverConfig& scfg,
                     std::vector<PerKDetail>* details) {
  if (k_range.empty()) throw ConfigError("empty k range");
  std::vector<std::size_t> ks = k_range;
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  for (std::size_t k : ks) {
    if (k < 2 || k > X.n1()) {
      throw InvalidRankError("sweep dimension must satisfy 2 <= k <= n, got " +
                             std::to_string(k));
    }
  }

  SelectionCurve curve;
  curve.rows.reserve(ks.size());
  for (std::size_t k : ks) {
    // Each k gets its own seed, so adding a k never changes the others.
    EnsembleConfig ek = ecfg;
    ek.seed = derive_seed(ecfg.seed, SeedDomain::Sweep, k);

    EnsembleResult ensemble;
    try {
      ensemble = decompose_ensemble(X, k, ek, scfg);
    } catch (const DegenerateFactorError& e) {
      throw DegenerateFactorError("k=" + std::to_string(k) + ": " + e.what(),
                                  e.column());
    } catch (const NumericError& e) {
      throw NumericError("k=" + std::to_string(k) + ": " + e.what());
    }

    std::vector<FactorMatrix> factors;
    factors.reserve(ensemble.decompositions.size());
    double error_sum = 0.0;
    for (const Decomposition& dec : ensemble.decompositions) {
      factors.push_back(dec.A);
      error_sum += dec.rel_error;
    }
    auto [assignment, stats] = cluster_features(FeatureCloud::from_factors(factors));

    CurveRow row;
    row.k = k;
    row.rel_error = error_sum / static_cast<double>(ensemble.decompositions.size());
    row.mean_silhouette = stats.mean_silhouette;
    row.min_cluster_silhouette = stats.min_cluster_silhouette;
    curve.rows.push_back(row);

    if (details) {
      details->push_back(PerKDetail{k, std::move(ensemble),
                                    std::move(assignment), std::move(stats)});
    }
  }
  return curve;
}

SelectionResult choose_k(const SelectionCurve& curve,
                         const SelectionThresholds& th) {
  if (curve.rows.empty()) throw ConfigError("empty selection curve");
  if (th.min_sil_floor < 0.0 || th.min_sil_floor > 1.0 ||
      th.mean_sil_floor < 0.0 || th.mean_sil_floor > 1.0) {
    throw ConfigError("silhouette floors must lie in [0, 1]");
  }

  SelectionResult result;
  result.curve = curve;
  std::sort(result.curve.rows.begin(), result.curve.rows.end(),
            [](const CurveRow& a, const CurveRow& b) { return a.k < b.k; });
  for (std::size_t i = 1; i < result.curve.rows.size(); ++i) {
    if (result.curve.rows[i].k == result.curve.rows[i - 1].k) {
      throw ConfigError("duplicate k in selection curve: " +
                        std::to_string(result.curve.rows[i].k));
    }
  }
  result.rule = th;

  bool found = false;
  for (const CurveRow& row : result.curve.rows) {
    const bool ok = row.min_cluster_silhouette >= th.min_sil_floor &&
                    row.mean_silhouette >= th.mean_sil_floor &&
                    row.rel_error <= th.max_rel_error;
    if (ok) {
      result.chosen_k = row.k;  // rows ascend, so this ends at the largest
      found = true;
    }
  }
  if (!found) {
    result.fallback = true;
    const CurveRow* best = &result.curve.rows.front();
    for (const CurveRow& row : result.curve.rows) {
      if (row.min_cluster_silhouette > best->min_cluster_silhouette) {
        best = &row;  // strict: ties keep the smaller k
      }
    }
    result.chosen_k = best->k;
  }
  return result;
}

}  // namespace rescalk
