#include "rescalk/io.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "rescalk/errors.hpp"

namespace rescalk {
namespace {

using nlohmann::json;

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// One line split on commas; the last field may keep embedded commas when
// `max_fields` is reached (used for label names).
std::vector<std::string> split_fields(const std::string& line,
                                      std::size_t max_fields) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (fields.size() + 1 < max_fields) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) break;
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  fields.push_back(line.substr(start));
  return fields;
}

std::size_t parse_index(const std::string& s, std::size_t line_no,
                        const char* what) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(std::string("bad ") + what + " '" + s + "'", line_no);
  }
  return value;
}

double parse_value(const std::string& s, std::size_t line_no) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("bad value '" + s + "'", line_no);
  }
  return value;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

json parse_config_json(const std::string& config_json) {
  if (config_json.empty()) return json();
  json parsed = json::parse(config_json, nullptr, false);
  if (parsed.is_discarded()) {
    throw ConfigError("config echo is not valid JSON");
  }
  return parsed;
}

json labels_to_json(const TensorLabels& labels) {
  json out = json::object();
  const char* keys[3] = {"axis1", "axis2", "axis3"};
  for (int a = 0; a < 3; ++a) {
    if (!labels.axis[a].empty()) out[keys[a]] = labels.axis[a];
  }
  return out;
}

TensorLabels labels_from_json(const json& j) {
  TensorLabels labels;
  const char* keys[3] = {"axis1", "axis2", "axis3"};
  for (int a = 0; a < 3; ++a) {
    if (j.contains(keys[a])) {
      labels.axis[a] = j[keys[a]].get<std::vector<std::string>>();
    }
  }
  return labels;
}

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) {
    throw ParseError("not valid JSON: " + path.string(), 0);
  }
  return j;
}

}  // namespace

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw InputError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw InputError("cannot move " + tmp.string() + " to " + path.string() +
                     ": " + ec.message());
  }
}

std::pair<DenseTensor3, TensorLabels> load_tensor(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());

  std::string line;
  std::size_t line_no = 0;

  // Header: dims,<n1>,<n2>,<n3>
  std::size_t dims[3] = {0, 0, 0};
  for (;;) {
    if (!std::getline(in, line)) throw ParseError("missing dims header", 1);
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;
    const auto fields = split_fields(line, 4);
    if (fields.size() != 4 || fields[0] != "dims") {
      throw ParseError("expected 'dims,<n1>,<n2>,<n3>'", line_no);
    }
    for (int a = 0; a < 3; ++a) {
      dims[a] = parse_index(fields[a + 1], line_no, "dimension");
      if (dims[a] == 0) throw ParseError("zero dimension", line_no);
    }
    break;
  }

  DenseTensor3 tensor(dims[0], dims[1], dims[2]);
  TensorLabels labels;
  std::vector<bool> seen(tensor.size(), false);

  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;

    if (line.rfind("label,", 0) == 0) {
      const auto fields = split_fields(line, 4);
      if (fields.size() != 4) {
        throw ParseError("expected 'label,<axis>,<index>,<name>'", line_no);
      }
      const std::size_t axis = parse_index(fields[1], line_no, "axis");
      if (axis < 1 || axis > 3) {
        throw ParseError("label axis must be 1, 2 or 3", line_no);
      }
      const std::size_t index = parse_index(fields[2], line_no, "label index");
      if (index >= dims[axis - 1]) {
        throw BoundsError("label index " + std::to_string(index) +
                              " outside axis of size " +
                              std::to_string(dims[axis - 1]),
                          line_no);
      }
      auto& axis_labels = labels.axis[axis - 1];
      if (axis_labels.empty()) axis_labels.resize(dims[axis - 1]);
      if (!axis_labels[index].empty()) {
        throw ParseError("duplicate label for axis " + std::to_string(axis) +
                             ", index " + std::to_string(index),
                         line_no);
      }
      axis_labels[index] = fields[3];
      continue;
    }

    const auto fields = split_fields(line, 4);
    if (fields.size() != 4) {
      throw ParseError("expected '<i>,<j>,<k>,<value>'", line_no);
    }
    const std::size_t i = parse_index(fields[0], line_no, "index");
    const std::size_t j = parse_index(fields[1], line_no, "index");
    const std::size_t k = parse_index(fields[2], line_no, "index");
    if (i >= dims[0] || j >= dims[1] || k >= dims[2]) {
      throw BoundsError("coordinate (" + fields[0] + "," + fields[1] + "," +
                            fields[2] + ") outside dims",
                        line_no);
    }
    const double value = parse_value(fields[3], line_no);
    if (!std::isfinite(value)) throw DomainError("non-finite value", line_no);
    if (value < 0.0) throw DomainError("negative value", line_no);
    const std::size_t flat = (i * dims[1] + j) * dims[2] + k;
    if (seen[flat]) {
      throw ParseError("duplicate coordinate (" + fields[0] + "," + fields[1] +
                           "," + fields[2] + ")",
                       line_no);
    }
    seen[flat] = true;
    tensor(i, j, k) = value;
  }
  return {std::move(tensor), std::move(labels)};
}

void save_tensor(const std::filesystem::path& path, const DenseTensor3& X,
                 const TensorLabels& labels) {
  std::ostringstream out;
  out << "dims," << X.n1() << ',' << X.n2() << ',' << X.n3() << '\n';
  for (int a = 0; a < 3; ++a) {
    for (std::size_t i = 0; i < labels.axis[a].size(); ++i) {
      if (!labels.axis[a][i].empty()) {
        out << "label," << a + 1 << ',' << i << ',' << labels.axis[a][i]
            << '\n';
      }
    }
  }
  for (std::size_t i = 0; i < X.n1(); ++i) {
    for (std::size_t j = 0; j < X.n2(); ++j) {
      for (std::size_t k = 0; k < X.n3(); ++k) {
        const double v = X(i, j, k);
        if (v != 0.0) {
          out << i << ',' << j << ',' << k << ',' << fmt17(v) << '\n';
        }
      }
    }
  }
  write_file_atomic(path, out.str());
}

void save_decomposition(const std::filesystem::path& path,
                        const Decomposition& dec, const TensorLabels& labels,
                        const std::string& config_json) {
  const std::size_t r = dec.A.cols(), T = dec.R.n3();
  json j;
  j["format"] = "rescalk-decomposition-v1";
  j["n"] = dec.A.rows();
  j["r"] = r;
  j["T"] = T;
  j["A"] = dec.A.values();  // row-major
  json slices = json::array();
  for (std::size_t t = 0; t < T; ++t) {
    std::vector<double> slice(r * r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t jj = 0; jj < r; ++jj) slice[i * r + jj] = dec.R(i, jj, t);
    slices.push_back(std::move(slice));
  }
  j["R"] = std::move(slices);
  j["rel_error"] = dec.rel_error;
  j["iterations"] = dec.iterations;
  j["converged"] = dec.converged;
  j["seed"] = dec.seed;
  if (!labels.empty()) j["labels"] = labels_to_json(labels);
  if (!config_json.empty()) j["config"] = parse_config_json(config_json);
  write_file_atomic(path, j.dump(2) + "\n");
}

Decomposition load_decomposition(const std::filesystem::path& path,
                                 TensorLabels* labels) {
  const json j = load_json_file(path);
  try {
    const auto n = j.at("n").get<std::size_t>();
    const auto r = j.at("r").get<std::size_t>();
    const auto T = j.at("T").get<std::size_t>();

    Decomposition dec;
    dec.A = FactorMatrix(n, r, j.at("A").get<std::vector<double>>());
    const json& slices = j.at("R");
    if (slices.size() != T) {
      throw ParseError("expected " + std::to_string(T) + " core slices", 0);
    }
    dec.R = CoreTensor(r, r, T);
    for (std::size_t t = 0; t < T; ++t) {
      const auto slice = slices[t].get<std::vector<double>>();
      if (slice.size() != r * r) {
        throw ParseError("core slice " + std::to_string(t) + " has " +
                             std::to_string(slice.size()) + " values",
                         0);
      }
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t jj = 0; jj < r; ++jj) dec.R(i, jj, t) = slice[i * r + jj];
    }
    dec.rel_error = j.at("rel_error").get<double>();
    dec.iterations = j.at("iterations").get<std::size_t>();
    dec.converged = j.at("converged").get<bool>();
    dec.seed = j.at("seed").get<std::uint64_t>();
    if (labels) {
      *labels = j.contains("labels") ? labels_from_json(j["labels"])
                                     : TensorLabels{};
    }
    return dec;
  } catch (const json::exception& e) {
    throw ParseError("bad decomposition file " + path.string() + ": " +
                         e.what(),
                     0);
  }
}

void save_curve_csv(const std::filesystem::path& path,
                    const SelectionCurve& curve) {
  std::ostringstream out;
  out << "k,rel_error,mean_silhouette,min_cluster_silhouette\n";
  for (const CurveRow& row : curve.rows) {
    out << row.k << ',' << fmt17(row.rel_error) << ','
        << fmt17(row.mean_silhouette) << ','
        << fmt17(row.min_cluster_silhouette) << '\n';
  }
  write_file_atomic(path, out.str());
}

void save_selection_json(const std::filesystem::path& path,
                         const SelectionResult& result,
                         const std::string& config_json) {
  json j;
  j["format"] = "rescalk-selection-v1";
  j["chosen_k"] = result.chosen_k;
  j["fallback"] = result.fallback;
  json rule;
  rule["min_sil_floor"] = result.rule.min_sil_floor;
  rule["mean_sil_floor"] = result.rule.mean_sil_floor;
  if (std::isfinite(result.rule.max_rel_error)) {
    rule["max_rel_error"] = result.rule.max_rel_error;
  }
  j["thresholds"] = std::move(rule);
  json rows = json::array();
  for (const CurveRow& row : result.curve.rows) {
    rows.push_back({{"k", row.k},
                    {"rel_error", row.rel_error},
                    {"mean_silhouette", row.mean_silhouette},
                    {"min_cluster_silhouette", row.min_cluster_silhouette}});
  }
  j["curve"] = std::move(rows);
  if (!config_json.empty()) j["config"] = parse_config_json(config_json);
  write_file_atomic(path, j.dump(2) + "\n");
}

void save_activity_csv(const std::filesystem::path& path,
                       const Matrix& activity,
                       const std::vector<std::string>& time_labels) {
  std::ostringstream out;
  out << "group";
  for (std::size_t t = 0; t < activity.cols(); ++t) {
    if (t < time_labels.size() && !time_labels[t].empty()) {
      out << ',' << time_labels[t];
    } else {
      out << ",t" << t;
    }
  }
  out << '\n';
  for (std::size_t g = 0; g < activity.rows(); ++g) {
    out << "g" << g + 1;
    for (std::size_t t = 0; t < activity.cols(); ++t) {
      out << ',' << fmt17(activity(g, t));
    }
    out << '\n';
  }
  write_file_atomic(path, out.str());
}

void save_summary_csv(const std::filesystem::path& path,
                      const Matrix& summary) {
  std::ostringstream out;
  out << "group";
  for (std::size_t j = 0; j < summary.cols(); ++j) out << ",g" << j + 1;
  out << '\n';
  for (std::size_t i = 0; i < summary.rows(); ++i) {
    out << "g" << i + 1;
    for (std::size_t j = 0; j < summary.cols(); ++j) {
      out << ',' << fmt17(summary(i, j));
    }
    out << '\n';
  }
  write_file_atomic(path, out.str());
}

}  // namespace rescalk
