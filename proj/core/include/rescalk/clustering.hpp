#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "rescalk/tensor.hpp"

namespace rescalk {

/// The r feature columns of each of P replica factor matrices, flattened as
/// columns[p*r + j] (length-n vectors).
struct FeatureCloud {
  std::size_t replicas = 0;  // P
  std::size_t r = 0;
  std::size_t n = 0;
  std::vector<std::vector<double>> columns;

  /// Splits each factor matrix into its columns. Throws
  /// DegenerateVectorError naming (replica, column) on an all-zero column.
  static FeatureCloud from_factors(const std::vector<FactorMatrix>& factors);

  const std::vector<double>& column(std::size_t p, std::size_t j) const {
    return columns[p * r + j];
  }
};

/// perm[p][c] = which column of replica p belongs to cluster c; a bijection
/// on {0..r-1} for every p.
struct ClusterAssignment {
  std::vector<std::vector<std::size_t>> perm;
  bool converged = true;
  std::size_t passes = 0;
};

struct ClusterStats {
  double mean_silhouette = 0.0;
  /// Minimum over clusters of the per-cluster mean silhouette.
  double min_cluster_silhouette = 0.0;
  /// Global minimum over points, kept for sensitivity checks.
  double min_point_silhouette = 0.0;
  /// One value per point, aligned with the point order handed to
  /// silhouette() (for cluster_features: index p*r + column).
  std::vector<double> per_point;
  std::vector<std::vector<double>> centroids;  // unit-L2, length n
};

/// <u,v>/(|u||v|), clamped to [-1,1]. Returns exactly 1 for identical
/// inputs, so coincident points get cosine distance 0. Throws
/// DegenerateVectorError on a zero vector.
double cosine_similarity(const std::vector<double>& u,
                         const std::vector<double>& v);

/// Greedily pairs centroids with columns: repeatedly takes the largest
/// remaining cosine similarity, ties broken by lowest (centroid, column)
/// index. Returns perm with perm[centroid] = column.
std::vector<std::size_t> greedy_match(
    const std::vector<std::vector<double>>& centroids,
    const std::vector<std::vector<double>>& columns);

/// Silhouette statistics under cosine distance d = 1 - cos. For each point,
/// a = mean distance to its co-cluster points, b = smallest mean distance
/// to another cluster, s = (b-a)/max(a,b) (0 when max(a,b)=0). With a
/// single cluster every s is 1 by convention. Centroids are left empty.
ClusterStats silhouette(const std::vector<std::vector<double>>& points,
                        const std::vector<std::size_t>& labels,
                        std::size_t num_clusters);

/// Constrained k-means over the replica columns: exactly one column per
/// replica lands in each cluster. Centroids start as replica 0's columns;
/// each pass greedily matches every replica, then recenters (mean, unit-L2
/// rescale) until assignments repeat or max_passes is hit.
std::pair<ClusterAssignment, ClusterStats> cluster_features(
    const FeatureCloud& clouds, std::size_t max_passes = 100);

}  // namespace rescalk
