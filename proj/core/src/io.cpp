#include "srvt/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "srvt/errors.hpp"

namespace srvt {
namespace {

using nlohmann::json;

constexpr double kUnitDriftTolerance = 1e-6;

[[noreturn]] void fail(const std::filesystem::path& path, const std::string& msg) {
  throw CurveFileError(path.string() + ": " + msg);
}

[[noreturn]] void fail_at(const std::filesystem::path& path, int index,
                          const std::string& msg) {
  throw CurveFileError(path.string() + ": sample " + std::to_string(index) + ": " + msg);
}

json parse_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(path, "cannot open file");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(path, std::string("invalid JSON: ") + e.what());
  }
}

// Extracts "samples" as a matrix with one column per grid point, each row
// array holding exactly `arity` finite numbers.
Eigen::MatrixXd extract_samples(const std::filesystem::path& path, const json& doc,
                                int arity) {
  if (!doc.contains("samples") || !doc["samples"].is_array()) {
    fail(path, "missing \"samples\" array");
  }
  const json& samples = doc["samples"];
  const int count = static_cast<int>(samples.size());
  if (count < 2) fail(path, "need at least 2 samples (one grid subinterval)");
  Eigen::MatrixXd out(arity, count);
  for (int i = 0; i < count; ++i) {
    const json& row = samples[static_cast<size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != arity) {
      fail_at(path, i, "expected an array of " + std::to_string(arity) + " numbers");
    }
    for (int k = 0; k < arity; ++k) {
      const json& v = row[static_cast<size_t>(k)];
      if (!v.is_number()) fail_at(path, i, "entries must be numbers");
      const double d = v.get<double>();
      if (!std::isfinite(d)) fail_at(path, i, "entries must be finite");
      out(k, i) = d;
    }
  }
  return out;
}

double parse_csv_number(const std::filesystem::path& path, int row,
                        const std::string& token) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    fail_at(path, row, "invalid numeric field '" + token + "'");
  }
  return value;
}

CurveFile read_euclidean_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(path, "cannot open file");
  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string token;
    while (std::getline(ss, token, ',')) {
      row.push_back(parse_csv_number(path, lineno, token));
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      fail_at(path, lineno, "inconsistent column count");
    }
    rows.push_back(std::move(row));
    ++lineno;
  }
  if (rows.size() < 2) fail(path, "need at least 2 samples (one grid subinterval)");
  Eigen::MatrixXd values(rows.front().size(), rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t k = 0; k < rows.front().size(); ++k) {
      values(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) = rows[i][k];
    }
  }
  try {
    return euclidean_file(SampledCurve(std::move(values)));
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

GroupCurve rows_to_group(const std::filesystem::path& path, const Eigen::MatrixXd& raw,
                         GroupKind kind) {
  std::vector<GroupElement> elements;
  elements.reserve(static_cast<size_t>(raw.cols()));
  for (int i = 0; i < raw.cols(); ++i) {
    const Eigen::Vector4d q = raw.col(i).head<4>();
    if (std::abs(q.norm() - 1.0) > kUnitDriftTolerance) {
      fail_at(path, i, "quaternion norm drifts more than 1e-6 from 1");
    }
    try {
      if (kind == GroupKind::SO3) {
        elements.push_back(so3_from_quaternion(q));
      } else {
        elements.push_back(se3_from_quaternion_translation(q, raw.col(i).tail<3>()));
      }
    } catch (const std::invalid_argument& e) {
      fail_at(path, i, e.what());
    }
  }
  return GroupCurve(std::move(elements));
}

std::string format_full(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::Euclidean: return "euclidean";
    case CurveKind::Sphere2: return "sphere2";
    case CurveKind::SO3: return "so3";
    case CurveKind::SE3: return "se3";
    case CurveKind::Chart: return "chart";
  }
  return "unknown";
}

CurveFile read_curve_file(const std::filesystem::path& path) {
  if (path.extension() == ".csv") {
    return read_euclidean_csv(path);
  }
  const json doc = parse_json(path);
  if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string()) {
    fail(path, "missing \"kind\" field");
  }
  const std::string kind = doc["kind"].get<std::string>();
  if (kind == "euclidean") {
    if (!doc.contains("dim") || !doc["dim"].is_number_integer()) {
      fail(path, "missing integer \"dim\" field");
    }
    const int dim = doc["dim"].get<int>();
    if (dim < 1) fail(path, "\"dim\" must be >= 1");
    Eigen::MatrixXd values = extract_samples(path, doc, dim);
    try {
      return euclidean_file(SampledCurve(std::move(values)));
    } catch (const std::invalid_argument& e) {
      fail(path, e.what());
    }
  }
  if (kind == "sphere2") {
    Eigen::MatrixXd points = extract_samples(path, doc, 3);
    for (int i = 0; i < points.cols(); ++i) {
      const double norm = points.col(i).norm();
      if (std::abs(norm - 1.0) > kUnitDriftTolerance) {
        fail_at(path, i, "point norm drifts more than 1e-6 from 1");
      }
      points.col(i) /= norm;
    }
    return sphere2_file(std::move(points));
  }
  if (kind == "so3") {
    const Eigen::MatrixXd raw = extract_samples(path, doc, 4);
    return group_file(rows_to_group(path, raw, GroupKind::SO3));
  }
  if (kind == "se3") {
    const Eigen::MatrixXd raw = extract_samples(path, doc, 7);
    return group_file(rows_to_group(path, raw, GroupKind::SE3));
  }
  if (kind == "chart") {
    if (!doc.contains("dim") || !doc["dim"].is_number_integer()) {
      fail(path, "missing integer \"dim\" field");
    }
    const int dim = doc["dim"].get<int>();
    if (dim < 1) fail(path, "\"dim\" must be >= 1");
    Eigen::MatrixXd points = extract_samples(path, doc, dim);
    CurveFile out = chart_file(std::move(points));
    return out;
  }
  fail(path, "unknown curve kind \"" + kind + "\"");
}

namespace {

json samples_to_json(const Eigen::MatrixXd& columns) {
  json samples = json::array();
  for (int i = 0; i < columns.cols(); ++i) {
    json row = json::array();
    for (int k = 0; k < columns.rows(); ++k) {
      row.push_back(columns(k, i));
    }
    samples.push_back(std::move(row));
  }
  return samples;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CurveFileError(path.string() + ": cannot open file for writing");
  out << text;
  if (!out) throw CurveFileError(path.string() + ": write failed");
}

}  // namespace

void write_curve_file(const std::filesystem::path& path, const CurveFile& file) {
  json doc;
  doc["kind"] = to_string(file.kind);
  switch (file.kind) {
    case CurveKind::Euclidean: {
      const SampledCurve& c = std::get<SampledCurve>(file.payload);
      if (path.extension() == ".csv") {
        std::string text;
        for (int i = 0; i < c.samples(); ++i) {
          for (int k = 0; k < c.dim(); ++k) {
            if (k > 0) text += ',';
            text += format_full(c.values()(k, i));
          }
          text += '\n';
        }
        write_text(path, text);
        return;
      }
      doc["dim"] = c.dim();
      doc["samples"] = samples_to_json(c.values());
      break;
    }
    case CurveKind::Sphere2:
    case CurveKind::Chart: {
      const Eigen::MatrixXd& points = std::get<Eigen::MatrixXd>(file.payload);
      if (file.kind == CurveKind::Chart) doc["dim"] = static_cast<int>(points.rows());
      doc["samples"] = samples_to_json(points);
      break;
    }
    case CurveKind::SO3: {
      const GroupCurve& c = std::get<GroupCurve>(file.payload);
      Eigen::MatrixXd rows(4, c.samples());
      for (int i = 0; i < c.samples(); ++i) {
        rows.col(i) = quaternion_from_so3(c.element(i));
      }
      doc["samples"] = samples_to_json(rows);
      break;
    }
    case CurveKind::SE3: {
      const GroupCurve& c = std::get<GroupCurve>(file.payload);
      Eigen::MatrixXd rows(7, c.samples());
      for (int i = 0; i < c.samples(); ++i) {
        const Eigen::Matrix3d r = c.element(i).matrix().topLeftCorner<3, 3>();
        rows.col(i).head<4>() =
            quaternion_from_so3(GroupElement(GroupKind::SO3, r));
        rows.col(i).tail<3>() = c.element(i).matrix().topRightCorner<3, 1>();
      }
      doc["samples"] = samples_to_json(rows);
      break;
    }
  }
  write_text(path, doc.dump() + "\n");
}

CurveFile euclidean_file(SampledCurve curve) {
  return CurveFile{CurveKind::Euclidean, std::move(curve), 0};
}

CurveFile sphere2_file(Eigen::MatrixXd points) {
  return CurveFile{CurveKind::Sphere2, std::move(points), 0};
}

CurveFile chart_file(Eigen::MatrixXd points) {
  const int dim = static_cast<int>(points.rows());
  return CurveFile{CurveKind::Chart, std::move(points), dim};
}

CurveFile group_file(GroupCurve curve) {
  const CurveKind kind =
      curve.kind() == GroupKind::SO3 ? CurveKind::SO3 : CurveKind::SE3;
  return CurveFile{kind, std::move(curve), 0};
}

WarpingFunction read_warp_file(const std::filesystem::path& path) {
  const json doc = parse_json(path);
  if (!doc.is_object() || !doc.contains("phi") || !doc["phi"].is_array()) {
    fail(path, "missing \"phi\" array");
  }
  std::vector<double> phi;
  phi.reserve(doc["phi"].size());
  for (size_t i = 0; i < doc["phi"].size(); ++i) {
    const json& v = doc["phi"][i];
    if (!v.is_number()) fail_at(path, static_cast<int>(i), "entries must be numbers");
    phi.push_back(v.get<double>());
  }
  try {
    return WarpingFunction(std::move(phi));
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

void write_warp_file(const std::filesystem::path& path, const WarpingFunction& phi) {
  json doc;
  doc["phi"] = phi.values();
  write_text(path, doc.dump() + "\n");
}

void write_matrix_csv(const std::filesystem::path& path,
                      const std::vector<std::string>& names,
                      const Eigen::MatrixXd& matrix) {
  if (matrix.rows() != matrix.cols() ||
      matrix.rows() != static_cast<Eigen::Index>(names.size())) {
    throw std::invalid_argument("matrix and name list sizes disagree");
  }
  std::string text;
  for (size_t k = 0; k < names.size(); ++k) {
    if (k > 0) text += ',';
    text += names[k];
  }
  text += '\n';
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
      if (j > 0) text += ',';
      text += format_distance(matrix(i, j));
    }
    text += '\n';
  }
  write_text(path, text);
}

std::string format_distance(double value) {
  if (value == 0.0) return "0.000000000000";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

}  // namespace srvt
