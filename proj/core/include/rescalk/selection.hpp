#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "rescalk/clustering.hpp"
#include "rescalk/ensemble.hpp"
#include "rescalk/tensor.hpp"

namespace rescalk {

struct CurveRow {
  std::size_t k = 0;
  double rel_error = 0.0;            // mean over replicas
  double mean_silhouette = 0.0;
  double min_cluster_silhouette = 0.0;
};

/// Per-k stability curve, rows in ascending k.
struct SelectionCurve {
  std::vector<CurveRow> rows;
};

struct SelectionThresholds {
  double min_sil_floor = 0.75;
  double mean_sil_floor = 0.90;
  /// Optional gate; k with mean relative error above this never qualifies.
  double max_rel_error = std::numeric_limits<double>::infinity();
};

struct SelectionResult {
  SelectionCurve curve;
  std::size_t chosen_k = 0;
  bool fallback = false;  // no k met the floors; chosen_k maximizes min sil
  SelectionThresholds rule;
};

/// Ensemble + clustering artifacts of one k, collected when a sink is
/// passed to sweep().
struct PerKDetail {
  std::size_t k = 0;
  EnsembleResult ensemble;
  ClusterAssignment assignment;
  ClusterStats stats;
};

/// For each k: decompose a bootstrap ensemble (seeded per k from ecfg.seed),
/// cluster the factor columns, and record mean relative error plus both
/// silhouette statistics.
SelectionCurve sweep(const DenseTensor3& X,
                     const std::vector<std::size_t>& k_range,
                     const EnsembleConfig& ecfg, const SolverConfig& scfg,
                     std::vector<PerKDetail>* details = nullptr);

/// Largest k whose silhouettes clear both floors (and the optional error
/// gate). If none qualifies, falls back to the k maximizing the minimum
/// cluster silhouette (ties: smaller k) and sets the fallback flag.
SelectionResult choose_k(const SelectionCurve& curve,
                         const SelectionThresholds& th);

}  // namespace rescalk
