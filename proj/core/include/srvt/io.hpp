#pragma once

#include <Eigen/Core>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "srvt/alignment.hpp"
#include "srvt/curve.hpp"
#include "srvt/lie.hpp"

namespace srvt {

enum class CurveKind { Euclidean, Sphere2, SO3, SE3, Chart };

std::string to_string(CurveKind kind);

/// Parsed curve file.  Euclidean curves load as SampledCurve, group curves as
/// GroupCurve (quaternions converted to matrices), manifold curves as a raw
/// point matrix (one column per grid point) to be paired with a geometry
/// backend by the caller.
struct CurveFile {
  CurveKind kind;
  std::variant<SampledCurve, GroupCurve, Eigen::MatrixXd> payload;
  int chart_dim = 0;  // set for CurveKind::Chart
};

/// Reads a curve file; `.csv` loads as a Euclidean sample table, anything
/// else as JSON with an embedded "kind".  Throws CurveFileError naming the
/// file and the offending grid index on any format violation.
CurveFile read_curve_file(const std::filesystem::path& path);

void write_curve_file(const std::filesystem::path& path, const CurveFile& file);

CurveFile euclidean_file(SampledCurve curve);
CurveFile sphere2_file(Eigen::MatrixXd points);
CurveFile chart_file(Eigen::MatrixXd points);
CurveFile group_file(GroupCurve curve);

/// Warp files: {"phi": [N+1 weakly increasing scalars from 0 to 1]}.
WarpingFunction read_warp_file(const std::filesystem::path& path);
void write_warp_file(const std::filesystem::path& path, const WarpingFunction& phi);

/// Symmetric distance matrix as CSV: a header row with the column names,
/// then one numeric row per curve, entries formatted like format_distance.
void write_matrix_csv(const std::filesystem::path& path,
                      const std::vector<std::string>& names,
                      const Eigen::MatrixXd& matrix);

/// Locale-independent distance formatting with 12 significant digits
/// (zero prints as 0.000000000000).
std::string format_distance(double value);

}  // namespace srvt
