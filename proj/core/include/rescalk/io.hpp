#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "rescalk/selection.hpp"
#include "rescalk/solver.hpp"
#include "rescalk/tensor.hpp"

namespace rescalk {

/// Per-axis entity names; an empty vector means the axis is unlabeled.
struct TensorLabels {
  std::array<std::vector<std::string>, 3> axis;

  bool empty() const {
    return axis[0].empty() && axis[1].empty() && axis[2].empty();
  }
};

// Tensor file format (UTF-8 text):
//   dims,<n1>,<n2>,<n3>
//   label,<axis 1|2|3>,<index>,<name>     (optional, any number)
//   <i>,<j>,<k>,<value>                   (0-based; unlisted entries are 0)
// Duplicate coordinates, out-of-range indices and negative or non-finite
// values are rejected. Values are written with 17 significant digits so a
// save/load round trip is bit-exact.

std::pair<DenseTensor3, TensorLabels> load_tensor(
    const std::filesystem::path& path);

void save_tensor(const std::filesystem::path& path, const DenseTensor3& X,
                 const TensorLabels& labels = {});

/// Decomposition JSON: A row-major, R as one r*r row-major array per slice,
/// plus rel_error/iterations/converged/seed. `config_json`, when non-empty,
/// is embedded verbatim under "config" (must be a JSON object).
void save_decomposition(const std::filesystem::path& path,
                        const Decomposition& dec,
                        const TensorLabels& labels = {},
                        const std::string& config_json = "");

Decomposition load_decomposition(const std::filesystem::path& path,
                                 TensorLabels* labels = nullptr);

/// Curve CSV, fixed column order: k,rel_error,mean_silhouette,
/// min_cluster_silhouette.
void save_curve_csv(const std::filesystem::path& path,
                    const SelectionCurve& curve);

void save_selection_json(const std::filesystem::path& path,
                         const SelectionResult& result,
                         const std::string& config_json = "");

/// Activity CSV: one row per group, one column per time step.
void save_activity_csv(const std::filesystem::path& path,
                       const Matrix& activity,
                       const std::vector<std::string>& time_labels = {});

/// Interaction-summary CSV: square group-by-group matrix.
void save_summary_csv(const std::filesystem::path& path,
                      const Matrix& summary);

/// Writes content to path atomically (temp file + rename).
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content);

}  // namespace rescalk
