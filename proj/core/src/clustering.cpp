#include "rescalk/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rescalk/errors.hpp"

namespace rescalk {
namespace {

double dot(const std::vector<double>& u, const std::vector<double>& v) {
  double acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) acc += u[i] * v[i];
  return acc;
}

// Cosine from cached dot products. Returns exactly +-1 for parallel inputs
// (num^2 >= |u|^2 |v|^2 can only happen at equality or from rounding), so
// the distance of a point to an identical point is exactly zero.
double cosine_from_dots(double uv, double uu, double vv) {
  if (uv * uv >= uu * vv) return uv > 0.0 ? 1.0 : (uv < 0.0 ? -1.0 : 0.0);
  return std::clamp(uv / std::sqrt(uu * vv), -1.0, 1.0);
}

}  // namespace

double cosine_similarity(const std::vector<double>& u,
                         const std::vector<double>& v) {
  if (u.size() != v.size()) {
    throw ShapeError("cosine similarity needs equal-length vectors");
  }
  const double uu = dot(u, u);
  const double vv = dot(v, v);
  if (uu == 0.0 || vv == 0.0) {
    throw DegenerateVectorError("cosine similarity of a zero vector");
  }
  return cosine_from_dots(dot(u, v), uu, vv);
}

FeatureCloud FeatureCloud::from_factors(
    const std::vector<FactorMatrix>& factors) {
  if (factors.empty()) throw ConfigError("empty factor ensemble");
  FeatureCloud cloud;
  cloud.replicas = factors.size();
  cloud.r = factors[0].cols();
  cloud.n = factors[0].rows();
  cloud.columns.reserve(cloud.replicas * cloud.r);
  for (std::size_t p = 0; p < factors.size(); ++p) {
    const FactorMatrix& A = factors[p];
    if (A.rows() != cloud.n || A.cols() != cloud.r) {
      throw ShapeError("replica " + std::to_string(p) +
                       " has mismatched factor dims");
    }
    for (std::size_t j = 0; j < cloud.r; ++j) {
      std::vector<double> col(cloud.n);
      bool nonzero = false;
      for (std::size_t i = 0; i < cloud.n; ++i) {
        col[i] = A(i, j);
        if (col[i] < 0.0) {
          throw DegenerateVectorError("negative entry in replica " +
                                      std::to_string(p) + ", column " +
                                      std::to_string(j));
        }
        nonzero = nonzero || col[i] != 0.0;
      }
      if (!nonzero) {
        throw DegenerateVectorError("all-zero column in replica " +
                                    std::to_string(p) + ", column " +
                                    std::to_string(j));
      }
      cloud.columns.push_back(std::move(col));
    }
  }
  return cloud;
}

std::vector<std::size_t> greedy_match(
    const std::vector<std::vector<double>>& centroids,
    const std::vector<std::vector<double>>& columns) {
  const std::size_t r = centroids.size();
  if (columns.size() != r) {
    throw ShapeError("greedy match needs as many columns as centroids");
  }

  std::vector<std::vector<double>> sim(r, std::vector<double>(r));
  for (std::size_t c = 0; c < r; ++c)
    for (std::size_t j = 0; j < r; ++j)
      sim[c][j] = cosine_similarity(centroids[c], columns[j]);

  std::vector<std::size_t> perm(r, r);
  std::vector<bool> row_used(r, false), col_used(r, false);
  for (std::size_t round = 0; round < r; ++round) {
    double best = -std::numeric_limits<double>::infinity();
    std::size_t bc = r, bj = r;
    for (std::size_t c = 0; c < r; ++c) {
      if (row_used[c]) continue;
      for (std::size_t j = 0; j < r; ++j) {
        if (col_used[j]) continue;
        if (sim[c][j] > best) {  // strict: ties keep the lowest (c, j)
          best = sim[c][j];
          bc = c;
          bj = j;
        }
      }
    }
    perm[bc] = bj;
    row_used[bc] = true;
    col_used[bj] = true;
  }
  return perm;
}

ClusterStats silhouette(const std::vector<std::vector<double>>& points,
                        const std::vector<std::size_t>& labels,
                        std::size_t num_clusters) {
  const std::size_t m = points.size();
  if (labels.size() != m) {
    throw ShapeError("one label per point required");
  }
  if (num_clusters == 0 || m == 0) {
    throw ConfigError("silhouette needs at least one cluster and one point");
  }

  std::vector<std::size_t> cluster_size(num_clusters, 0);
  for (std::size_t lbl : labels) {
    if (lbl >= num_clusters) throw InternalError("label out of range");
    ++cluster_size[lbl];
  }
  for (std::size_t c = 0; c < num_clusters; ++c) {
    if (cluster_size[c] == 0) {
      throw InternalError("empty cluster " + std::to_string(c));
    }
  }

  ClusterStats stats;
  stats.per_point.assign(m, 1.0);

  if (num_clusters > 1) {
    std::vector<double> self(m);
    for (std::size_t i = 0; i < m; ++i) {
      self[i] = dot(points[i], points[i]);
      if (self[i] == 0.0) {
        throw DegenerateVectorError("zero point " + std::to_string(i));
      }
    }
    // Cosine distances, symmetric with zero diagonal.
    std::vector<std::vector<double>> dist(m, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        const double d =
            1.0 - cosine_from_dots(dot(points[i], points[j]), self[i], self[j]);
        dist[i][j] = d;
        dist[j][i] = d;
      }
    }

    for (std::size_t i = 0; i < m; ++i) {
      std::vector<double> total(num_clusters, 0.0);
      for (std::size_t j = 0; j < m; ++j) {
        if (j != i) total[labels[j]] += dist[i][j];
      }
      const std::size_t own = labels[i];
      const double a = cluster_size[own] > 1
                           ? total[own] / static_cast<double>(cluster_size[own] - 1)
                           : 0.0;
      double b = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < num_clusters; ++c) {
        if (c == own) continue;
        b = std::min(b, total[c] / static_cast<double>(cluster_size[c]));
      }
      const double denom = std::max(a, b);
      stats.per_point[i] = denom == 0.0 ? 0.0 : (b - a) / denom;
    }
  }
  // num_clusters == 1: every s stays 1 by convention.

  double sum = 0.0;
  for (double s : stats.per_point) sum += s;
  stats.mean_silhouette = sum / static_cast<double>(m);

  std::vector<double> cluster_sum(num_clusters, 0.0);
  for (std::size_t i = 0; i < m; ++i) cluster_sum[labels[i]] += stats.per_point[i];
  double min_cluster = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < num_clusters; ++c) {
    min_cluster =
        std::min(min_cluster, cluster_sum[c] / static_cast<double>(cluster_size[c]));
  }
  stats.min_cluster_silhouette = min_cluster;
  stats.min_point_silhouette =
      *std::min_element(stats.per_point.begin(), stats.per_point.end());
  return stats;
}

std::pair<ClusterAssignment, ClusterStats> cluster_features(
    const FeatureCloud& clouds, std::size_t max_passes) {
  const std::size_t P = clouds.replicas, r = clouds.r, n = clouds.n;
  if (P < 2) throw ConfigError("need at least 2 replicas to cluster");
  if (r == 0 || n == 0 || clouds.columns.size() != P * r) {
    throw ShapeError("feature cloud dims are inconsistent");
  }
  if (max_passes == 0) throw ConfigError("max_passes must be at least 1");
  for (std::size_t p = 0; p < P; ++p) {
    for (std::size_t j = 0; j < r; ++j) {
      const std::vector<double>& col = clouds.column(p, j);
      if (col.size() != n) throw ShapeError("column length mismatch");
      bool nonzero = false;
      for (double v : col) nonzero = nonzero || v != 0.0;
      if (!nonzero) {
        throw DegenerateVectorError("all-zero column in replica " +
                                    std::to_string(p) + ", column " +
                                    std::to_string(j));
      }
    }
  }

  // Centroids start as replica 0's columns; cosine matching is scale-free
  // so the initial scale does not matter.
  std::vector<std::vector<double>> centroids(r);
  for (std::size_t j = 0; j < r; ++j) centroids[j] = clouds.column(0, j);

  ClusterAssignment assignment;
  assignment.perm.assign(P, {});
  assignment.converged = false;

  std::vector<std::vector<double>> replica_cols(r);
  std::vector<std::vector<std::size_t>> prev;
  for (std::size_t pass = 1; pass <= max_passes; ++pass) {
    for (std::size_t p = 0; p < P; ++p) {
      for (std::size_t j = 0; j < r; ++j) replica_cols[j] = clouds.column(p, j);
      assignment.perm[p] = greedy_match(centroids, replica_cols);
    }

    // Recenter: arithmetic mean of each cluster's columns, unit-L2 rescale.
    for (std::size_t c = 0; c < r; ++c) {
      std::vector<double> mean(n, 0.0);
      for (std::size_t p = 0; p < P; ++p) {
        const std::vector<double>& col = clouds.column(p, assignment.perm[p][c]);
        for (std::size_t i = 0; i < n; ++i) mean[i] += col[i];
      }
      double norm2 = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        mean[i] /= static_cast<double>(P);
        norm2 += mean[i] * mean[i];
      }
      if (norm2 == 0.0) throw InternalError("centroid collapsed to zero");
      const double inv = 1.0 / std::sqrt(norm2);
      for (double& v : mean) v *= inv;
      centroids[c] = std::move(mean);
    }

    assignment.passes = pass;
    if (assignment.perm == prev) {
      assignment.converged = true;
      break;
    }
    prev = assignment.perm;
  }

  // Silhouettes over the induced partition; point p*r + j is column j of
  // replica p, its label found by inverting the cluster -> column map.
  std::vector<std::size_t> labels(P * r);
  for (std::size_t p = 0; p < P; ++p) {
    for (std::size_t c = 0; c < r; ++c) labels[p * r + assignment.perm[p][c]] = c;
  }
  ClusterStats stats = silhouette(clouds.columns, labels, r);
  stats.centroids = std::move(centroids);
  return {std::move(assignment), std::move(stats)};
}

}  // namespace rescalk
