// srvt: command-line front-end for square root velocity transform distances,
// geodesics, and reparametrization alignment on curve files.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "srvt/alignment.hpp"
#include "srvt/curve.hpp"
#include "srvt/errors.hpp"
#include "srvt/euclidean.hpp"
#include "srvt/io.hpp"
#include "srvt/lie.hpp"
#include "srvt/manifold.hpp"

namespace fs = std::filesystem;

namespace {

enum class Metric { Plain, Based, Shape };

struct ResolvedKind {
  bool specified = false;
  srvt::CurveKind kind = srvt::CurveKind::Euclidean;
  std::string chart_name;  // set when kind == Chart
};

struct Options {
  ResolvedKind kind;
  Metric metric = Metric::Based;
  int samples = 0;  // 0: keep the grids found in the files
  std::vector<double> star;
  std::vector<double> slopes;
  std::shared_ptr<const srvt::Manifold> geometry;  // sphere2 / chart backend
  Eigen::VectorXd star_point;                      // validated reference point
};

/// One ingested curve of any supported kind; exactly one member is engaged.
struct AnyCurve {
  srvt::CurveKind kind = srvt::CurveKind::Euclidean;
  std::optional<srvt::SampledCurve> euclidean;
  std::optional<srvt::GroupCurve> group;
  std::optional<srvt::ManifoldCurve> manifold;
  std::string extension;  // of the source file, for format-preserving output
};

double parse_double_strict(const std::string& text, const std::string& flag) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw std::invalid_argument(flag + ": '" + text + "' is not a finite number");
  }
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string::size_type start = 0;
  while (true) {
    auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string::npos ? pos : pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<double> parse_number_list(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  for (const auto& token : split(text, ',')) {
    out.push_back(parse_double_strict(token, flag));
  }
  return out;
}

/// Slope tokens accept plain decimals and fractions like "2/3".
std::vector<double> parse_slope_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& token : split(text, ',')) {
    auto slash = token.find('/');
    if (slash == std::string::npos) {
      out.push_back(parse_double_strict(token, "--slopes"));
    } else {
      double num = parse_double_strict(token.substr(0, slash), "--slopes");
      double den = parse_double_strict(token.substr(slash + 1), "--slopes");
      if (den == 0.0) throw std::invalid_argument("--slopes: zero denominator in '" + token + "'");
      out.push_back(num / den);
    }
  }
  return out;
}

ResolvedKind parse_kind_flag(const std::string& flag) {
  ResolvedKind rk;
  if (flag.empty()) return rk;
  rk.specified = true;
  if (flag == "euclidean") {
    rk.kind = srvt::CurveKind::Euclidean;
  } else if (flag == "sphere2") {
    rk.kind = srvt::CurveKind::Sphere2;
  } else if (flag == "so3") {
    rk.kind = srvt::CurveKind::SO3;
  } else if (flag == "se3") {
    rk.kind = srvt::CurveKind::SE3;
  } else if (flag.rfind("chart:", 0) == 0) {
    rk.kind = srvt::CurveKind::Chart;
    rk.chart_name = flag.substr(6);
  } else {
    throw std::invalid_argument(
        "--kind: expected euclidean, sphere2, so3, se3, or chart:<name>; got '" + flag + "'");
  }
  return rk;
}

std::shared_ptr<const srvt::Manifold> make_chart_geometry(const std::string& name) {
  if (name == "stereographic-sphere") {
    return std::make_shared<srvt::ChartManifold>(srvt::stereographic_sphere());
  }
  if (name == "hyperbolic-halfplane") {
    return std::make_shared<srvt::ChartManifold>(srvt::hyperbolic_halfplane());
  }
  throw std::invalid_argument("--kind: unknown chart geometry '" + name +
                              "' (available: stereographic-sphere, hyperbolic-halfplane)");
}

/// Builds the geometry backend and validated reference point for manifold
/// kinds; a no-op for euclidean and group kinds.
void resolve_geometry(Options& opt) {
  if (!opt.kind.specified) return;
  if (opt.kind.kind == srvt::CurveKind::Sphere2) {
    opt.geometry = std::make_shared<srvt::Sphere2>();
  } else if (opt.kind.kind == srvt::CurveKind::Chart) {
    opt.geometry = make_chart_geometry(opt.kind.chart_name);
  } else {
    return;
  }
  if (opt.star.empty()) {
    throw std::invalid_argument("--star is required for kind " + srvt::to_string(opt.kind.kind));
  }
  int want = opt.geometry->coord_size();
  if (static_cast<int>(opt.star.size()) != want) {
    throw std::invalid_argument("--star: expected " + std::to_string(want) +
                                " coordinates, got " + std::to_string(opt.star.size()));
  }
  Eigen::VectorXd star = Eigen::Map<const Eigen::VectorXd>(opt.star.data(),
                                                           static_cast<long>(opt.star.size()));
  if (opt.kind.kind == srvt::CurveKind::Sphere2) {
    double norm = star.norm();
    if (std::abs(norm - 1.0) > 1e-6) {
      throw std::invalid_argument("--star: sphere reference point must be a unit vector");
    }
    star /= norm;
  }
  try {
    opt.geometry->validate_point(star);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("--star: ") + e.what());
  }
  opt.star_point = std::move(star);
}

AnyCurve load_curve(const fs::path& path, const Options& opt) {
  srvt::CurveFile file = srvt::read_curve_file(path);
  if (opt.kind.specified && file.kind != opt.kind.kind) {
    throw srvt::CurveFileError(path.string() + ": file kind " + srvt::to_string(file.kind) +
                               " does not match --kind " + srvt::to_string(opt.kind.kind));
  }
  AnyCurve out;
  out.kind = file.kind;
  out.extension = path.extension().string();
  switch (file.kind) {
    case srvt::CurveKind::Euclidean: {
      auto curve = std::get<srvt::SampledCurve>(std::move(file.payload));
      if (opt.samples > 0) curve = srvt::resample_uniform(curve, opt.samples);
      out.euclidean = std::move(curve);
      break;
    }
    case srvt::CurveKind::SO3:
    case srvt::CurveKind::SE3: {
      auto curve = std::get<srvt::GroupCurve>(std::move(file.payload));
      if (opt.samples > 0) curve = srvt::resample_uniform(curve, opt.samples);
      out.group = std::move(curve);
      break;
    }
    case srvt::CurveKind::Sphere2:
    case srvt::CurveKind::Chart: {
      if (!opt.geometry) {
        throw srvt::CurveFileError(path.string() + ": " + srvt::to_string(file.kind) +
                                   " curves require --kind and --star (for charts: --kind chart:<name>)");
      }
      auto points = std::get<Eigen::MatrixXd>(std::move(file.payload));
      if (file.kind == srvt::CurveKind::Chart &&
          file.chart_dim != opt.geometry->coord_size()) {
        throw srvt::CurveFileError(path.string() + ": chart dimension " +
                                   std::to_string(file.chart_dim) + " does not match geometry '" +
                                   opt.kind.chart_name + "' (dimension " +
                                   std::to_string(opt.geometry->coord_size()) + ")");
      }
      srvt::ManifoldCurve curve(opt.geometry, std::move(points));
      if (opt.samples > 0) curve = srvt::resample_uniform(curve, opt.samples);
      out.manifold = std::move(curve);
      break;
    }
  }
  return out;
}

void check_same_kind_and_dim(const AnyCurve& a, const AnyCurve& c,
                             const std::string& name_a, const std::string& name_c) {
  if (a.kind != c.kind) {
    throw srvt::CurveFileError(name_a + " (" + srvt::to_string(a.kind) + ") and " + name_c +
                               " (" + srvt::to_string(c.kind) + ") have different kinds");
  }
  if (a.euclidean && a.euclidean->dim() != c.euclidean->dim()) {
    throw srvt::CurveFileError(name_a + " (dimension " + std::to_string(a.euclidean->dim()) +
                               ") and " + name_c + " (dimension " +
                               std::to_string(c.euclidean->dim()) + ") have different dimensions");
  }
}

srvt::AlignmentOptions alignment_options(const Options& opt) {
  srvt::AlignmentOptions ao;
  if (!opt.slopes.empty()) ao.slopes = opt.slopes;
  return ao;
}

double compute_distance(const AnyCurve& a, const AnyCurve& c, const Options& opt) {
  switch (a.kind) {
    case srvt::CurveKind::Euclidean:
      switch (opt.metric) {
        case Metric::Plain: return srvt::distance(*a.euclidean, *c.euclidean);
        case Metric::Based: return srvt::distance_with_basepoint(*a.euclidean, *c.euclidean);
        case Metric::Shape: return srvt::shape_distance(*a.euclidean, *c.euclidean,
                                                        alignment_options(opt));
      }
      break;
    case srvt::CurveKind::SO3:
    case srvt::CurveKind::SE3:
      switch (opt.metric) {
        case Metric::Plain: return srvt::lie_distance(*a.group, *c.group);
        case Metric::Based: return srvt::lie_distance_with_basepoint(*a.group, *c.group);
        case Metric::Shape: return srvt::shape_distance(*a.group, *c.group,
                                                        alignment_options(opt));
      }
      break;
    case srvt::CurveKind::Sphere2:
    case srvt::CurveKind::Chart:
      switch (opt.metric) {
        case Metric::Plain:
          return srvt::manifold_distance(*a.manifold, *c.manifold, opt.star_point, false);
        case Metric::Based:
          return srvt::manifold_distance(*a.manifold, *c.manifold, opt.star_point, true);
        case Metric::Shape:
          return srvt::shape_distance(*a.manifold, *c.manifold, opt.star_point,
                                      alignment_options(opt));
      }
      break;
  }
  throw std::logic_error("unreachable metric dispatch");
}

srvt::CurveFile to_curve_file(const AnyCurve& curve) {
  switch (curve.kind) {
    case srvt::CurveKind::Euclidean: return srvt::euclidean_file(*curve.euclidean);
    case srvt::CurveKind::SO3:
    case srvt::CurveKind::SE3: return srvt::group_file(*curve.group);
    case srvt::CurveKind::Sphere2: return srvt::sphere2_file(curve.manifold->points());
    case srvt::CurveKind::Chart: return srvt::chart_file(curve.manifold->points());
  }
  throw std::logic_error("unreachable kind dispatch");
}

std::string output_extension(const AnyCurve& source) {
  if (source.kind == srvt::CurveKind::Euclidean && source.extension == ".csv") return ".csv";
  return ".json";
}

int cmd_distance(const fs::path& path_a, const fs::path& path_c, const Options& opt) {
  AnyCurve a = load_curve(path_a, opt);
  AnyCurve c = load_curve(path_c, opt);
  check_same_kind_and_dim(a, c, path_a.string(), path_c.string());
  double d = compute_distance(a, c, opt);
  std::cout << srvt::format_distance(d) << "\n";
  return 0;
}

int cmd_matrix(const fs::path& dir, const fs::path& out, const Options& opt) {
  if (!fs::is_directory(dir)) {
    throw std::invalid_argument(dir.string() + " is not a directory");
  }
  std::vector<fs::path> paths;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    auto ext = entry.path().extension().string();
    if (ext == ".json" || ext == ".csv") paths.push_back(entry.path());
  }
  std::sort(paths.begin(), paths.end(),
            [](const fs::path& x, const fs::path& y) { return x.filename() < y.filename(); });
  if (paths.size() < 2) {
    throw std::invalid_argument(dir.string() + ": need at least two curve files (.json/.csv)");
  }

  std::vector<AnyCurve> curves;
  std::vector<std::string> names;
  std::vector<std::string> load_errors;
  for (const auto& path : paths) {
    try {
      curves.push_back(load_curve(path, opt));
      names.push_back(path.filename().string());
    } catch (const std::exception& e) {
      load_errors.push_back(e.what());
    }
  }
  for (const auto& message : load_errors) std::cerr << "error: " << message << "\n";
  if (!load_errors.empty()) return 2;
  for (size_t i = 1; i < curves.size(); ++i) {
    check_same_kind_and_dim(curves[0], curves[i], names[0], names[i]);
  }

  const int n = static_cast<int>(curves.size());
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }

  Eigen::MatrixXd matrix = Eigen::MatrixXd::Zero(n, n);
  std::atomic<size_t> next{0};
  std::mutex error_mutex;
  // (pair index, message, geometry?) so the report order is deterministic.
  std::vector<std::tuple<size_t, std::string, bool>> pair_errors;

  auto worker = [&]() {
    while (true) {
      size_t index = next.fetch_add(1);
      if (index >= pairs.size()) return;
      auto [i, j] = pairs[index];
      std::string label = names[i] + " vs " + names[j] + ": ";
      try {
        double d = compute_distance(curves[i], curves[j], opt);
        matrix(i, j) = d;
        matrix(j, i) = d;
      } catch (const srvt::AngleNearPiError& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        pair_errors.emplace_back(index, label + e.what(), true);
      } catch (const srvt::CutLocusError& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        pair_errors.emplace_back(index, label + e.what(), true);
      } catch (const srvt::ChartDomainError& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        pair_errors.emplace_back(index, label + e.what(), true);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        pair_errors.emplace_back(index, label + e.what(), false);
      }
    }
  };

  size_t thread_count = std::min<size_t>(
      std::max(1u, std::thread::hardware_concurrency()), pairs.size());
  std::vector<std::thread> threads;
  threads.reserve(thread_count);
  for (size_t t = 0; t < thread_count; ++t) threads.emplace_back(worker);
  for (auto& thread : threads) thread.join();

  if (!pair_errors.empty()) {
    std::sort(pair_errors.begin(), pair_errors.end(),
              [](const auto& x, const auto& y) { return std::get<0>(x) < std::get<0>(y); });
    bool any_validation = false;
    for (const auto& [index, message, geometry] : pair_errors) {
      std::cerr << "error: " << message << "\n";
      if (!geometry) any_validation = true;
    }
    return any_validation ? 2 : 3;
  }

  srvt::write_matrix_csv(out, names, matrix);
  return 0;
}

int cmd_geodesic(const fs::path& path_a, const fs::path& path_c, int steps,
                 const fs::path& out, const Options& opt) {
  AnyCurve a = load_curve(path_a, opt);
  AnyCurve c = load_curve(path_c, opt);
  check_same_kind_and_dim(a, c, path_a.string(), path_c.string());
  fs::create_directories(out);
  std::string ext = output_extension(a);

  auto emit = [&](int index, const srvt::CurveFile& file) {
    char name[32];
    std::snprintf(name, sizeof(name), "geodesic_%03d", index);
    srvt::write_curve_file(out / (std::string(name) + ext), file);
  };

  switch (a.kind) {
    case srvt::CurveKind::Euclidean: {
      auto path = srvt::geodesic(*a.euclidean, *c.euclidean, steps);
      for (int s = 0; s <= steps; ++s) emit(s, srvt::euclidean_file(path[static_cast<size_t>(s)]));
      break;
    }
    case srvt::CurveKind::SO3:
    case srvt::CurveKind::SE3: {
      int segments = std::max(a.group->segments(), c.group->segments());
      srvt::GroupCurve ga = srvt::resample_uniform(*a.group, segments);
      srvt::GroupCurve gc = srvt::resample_uniform(*c.group, segments);
      srvt::AlgebraStepFunction qa = srvt::srvt_lie(ga);
      srvt::AlgebraStepFunction qc = srvt::srvt_lie(gc);
      srvt::AlgebraElement delta = srvt::group_log(gc.element(0) * ga.element(0).inverse());
      for (int s = 0; s <= steps; ++s) {
        double t = static_cast<double>(s) / static_cast<double>(steps);
        srvt::StepFunction values = (1.0 - t) * qa.values + t * qc.values;
        srvt::GroupElement start = srvt::group_exp(delta, t) * ga.element(0);
        srvt::GroupCurve interpolant = srvt::srvt_lie_inverse(
            srvt::AlgebraStepFunction(ga.kind(), values), start);
        emit(s, srvt::group_file(interpolant));
      }
      break;
    }
    case srvt::CurveKind::Sphere2:
    case srvt::CurveKind::Chart: {
      int segments = std::max(a.manifold->segments(), c.manifold->segments());
      srvt::ManifoldCurve ma = srvt::resample_uniform(*a.manifold, segments);
      srvt::ManifoldCurve mc = srvt::resample_uniform(*c.manifold, segments);
      srvt::ManifoldSrvtImage qa = srvt::srvt_manifold(ma, opt.star_point);
      srvt::ManifoldSrvtImage qc = srvt::srvt_manifold(mc, opt.star_point);
      const srvt::Manifold& m = *opt.geometry;
      Eigen::VectorXd to_start = m.log(qa.start, qc.start);
      for (int s = 0; s <= steps; ++s) {
        double t = static_cast<double>(s) / static_cast<double>(steps);
        srvt::StepFunction values = (1.0 - t) * qa.values + t * qc.values;
        Eigen::VectorXd start = m.exp(qa.start, to_start, t);
        // The one-step-per-cell scheme exactly undoes the forward transform,
        // so the endpoint interpolants reproduce the inputs.
        srvt::ManifoldCurve interpolant = srvt::srvt_manifold_inverse(
            values, start, opt.star_point, opt.geometry, srvt::InverseScheme::GeodesicEuler);
        emit(s, a.kind == srvt::CurveKind::Sphere2
                    ? srvt::sphere2_file(interpolant.points())
                    : srvt::chart_file(interpolant.points()));
      }
      break;
    }
  }
  return 0;
}

int cmd_align(const fs::path& path_a, const fs::path& path_c, const fs::path& out,
              const Options& opt) {
  AnyCurve a = load_curve(path_a, opt);
  AnyCurve c = load_curve(path_c, opt);
  check_same_kind_and_dim(a, c, path_a.string(), path_c.string());

  // SRVT images on a shared grid, plus the harmonized second curve the warp
  // applies to.
  std::optional<srvt::StepFunction> qa;
  std::optional<srvt::StepFunction> qc;
  AnyCurve harmonized_c = c;
  switch (a.kind) {
    case srvt::CurveKind::Euclidean: {
      auto [ha, hc] = srvt::harmonize(*a.euclidean, *c.euclidean);
      qa = srvt::srvt(ha);
      qc = srvt::srvt(hc);
      harmonized_c.euclidean = std::move(hc);
      break;
    }
    case srvt::CurveKind::SO3:
    case srvt::CurveKind::SE3: {
      int segments = std::max(a.group->segments(), c.group->segments());
      srvt::GroupCurve ga = srvt::resample_uniform(*a.group, segments);
      srvt::GroupCurve gc = srvt::resample_uniform(*c.group, segments);
      qa = srvt::srvt_lie(ga).values;
      qc = srvt::srvt_lie(gc).values;
      harmonized_c.group = std::move(gc);
      break;
    }
    case srvt::CurveKind::Sphere2:
    case srvt::CurveKind::Chart: {
      int segments = std::max(a.manifold->segments(), c.manifold->segments());
      srvt::ManifoldCurve ma = srvt::resample_uniform(*a.manifold, segments);
      srvt::ManifoldCurve mc = srvt::resample_uniform(*c.manifold, segments);
      qa = srvt::srvt_manifold(ma, opt.star_point).values;
      qc = srvt::srvt_manifold(mc, opt.star_point).values;
      harmonized_c.manifold = std::move(mc);
      break;
    }
  }

  double unaligned = srvt::lp_norm(*qa - *qc, srvt::PExponent(2.0));
  srvt::AlignmentResult result = srvt::optimal_warp(*qa, *qc, alignment_options(opt));

  fs::create_directories(out);
  AnyCurve warped = harmonized_c;
  switch (a.kind) {
    case srvt::CurveKind::Euclidean:
      warped.euclidean = srvt::warp(*harmonized_c.euclidean, result.phi);
      break;
    case srvt::CurveKind::SO3:
    case srvt::CurveKind::SE3:
      warped.group = srvt::warp(*harmonized_c.group, result.phi);
      break;
    case srvt::CurveKind::Sphere2:
    case srvt::CurveKind::Chart:
      warped.manifold = srvt::warp(*harmonized_c.manifold, result.phi);
      break;
  }
  srvt::write_curve_file(out / (std::string("aligned") + output_extension(c)),
                         to_curve_file(warped));
  srvt::write_warp_file(out / "warp.json", result.phi);

  std::cout << "unaligned=" << srvt::format_distance(unaligned) << "\n";
  std::cout << "aligned=" << srvt::format_distance(result.cost) << "\n";
  return 0;
}

int run(int argc, char** argv) {
  CLI::App app{"Square root velocity transform distances, geodesics, and alignment "
               "for sampled curves in R^d, SO(3)/SE(3), and Riemannian manifolds"};
  app.require_subcommand(1);

  std::string kind_flag;
  std::string metric_flag = "based";
  int samples = 0;
  std::string star_flag;
  std::string slopes_flag;

  auto add_common = [&](CLI::App* cmd, bool with_metric) {
    cmd->add_option("--kind", kind_flag,
                    "curve kind: euclidean, sphere2, so3, se3, or chart:<name>");
    cmd->add_option("--samples", samples, "resample every curve to this many grid segments")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--star", star_flag,
                    "reference point coordinates (comma separated); required for sphere2/chart");
    cmd->add_option("--slopes", slopes_flag,
                    "admissible warp slopes, comma separated (fractions like 2/3 allowed)");
    if (with_metric) {
      cmd->add_option("--metric", metric_flag, "distance flavor: plain, based, or shape")
          ->check(CLI::IsMember({"plain", "based", "shape"}));
    }
  };

  std::string path_a, path_c, dir, out;
  int steps = 8;

  CLI::App* distance = app.add_subcommand("distance", "distance between two curve files");
  distance->add_option("a", path_a, "first curve file")->required();
  distance->add_option("c", path_c, "second curve file")->required();
  add_common(distance, true);

  CLI::App* matrix = app.add_subcommand("matrix", "pairwise distance matrix of a directory");
  matrix->add_option("dir", dir, "directory of curve files (.json/.csv)")->required();
  matrix->add_option("--out", out, "output CSV path")->required();
  add_common(matrix, true);

  CLI::App* geodesic = app.add_subcommand("geodesic", "interpolating curves between two files");
  geodesic->add_option("a", path_a, "first curve file")->required();
  geodesic->add_option("c", path_c, "second curve file")->required();
  geodesic->add_option("--steps", steps, "number of interpolation steps (emits steps+1 files)")
      ->check(CLI::PositiveNumber);
  geodesic->add_option("--out", out, "output directory")->required();
  add_common(geodesic, false);

  CLI::App* align = app.add_subcommand("align", "align the second curve to the first by warping");
  align->add_option("a", path_a, "first curve file")->required();
  align->add_option("c", path_c, "second curve file (gets warped)")->required();
  align->add_option("--out", out, "output directory")->required();
  add_common(align, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  Options opt;
  opt.kind = parse_kind_flag(kind_flag);
  opt.samples = samples;
  if (metric_flag == "plain") opt.metric = Metric::Plain;
  else if (metric_flag == "shape") opt.metric = Metric::Shape;
  else opt.metric = Metric::Based;
  if (!star_flag.empty()) opt.star = parse_number_list(star_flag, "--star");
  if (!slopes_flag.empty()) opt.slopes = parse_slope_list(slopes_flag);
  resolve_geometry(opt);

  if (distance->parsed()) return cmd_distance(path_a, path_c, opt);
  if (matrix->parsed()) return cmd_matrix(dir, out, opt);
  if (geodesic->parsed()) return cmd_geodesic(path_a, path_c, steps, out, opt);
  if (align->parsed()) return cmd_align(path_a, path_c, out, opt);
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const srvt::AngleNearPiError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const srvt::CutLocusError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const srvt::ChartDomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
