// Shared helpers for the test binaries: deterministic random curve builders
// and a small process runner for CLI tests.
#pragma once

#include <sys/wait.h>
#include <unistd.h>

#include <Eigen/Core>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "srvt/curve.hpp"
#include "srvt/lie.hpp"
#include "srvt/manifold.hpp"

namespace testutil {

using Rng = std::mt19937_64;

/// Smooth vector-valued trigonometric polynomial with decaying coefficients;
/// the workhorse behind all "random smooth curve" fixtures.
class SmoothPath {
 public:
  SmoothPath(int dim, Rng& rng, double amplitude = 1.0, int modes = 3)
      : a_(dim, modes), b_(dim, modes), linear_(dim) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int d = 0; d < dim; ++d) {
      linear_(d) = amplitude * u(rng);
      for (int k = 0; k < modes; ++k) {
        const double decay = amplitude / ((k + 1.0) * (k + 1.0));
        a_(d, k) = decay * u(rng);
        b_(d, k) = decay * u(rng);
      }
    }
  }

  Eigen::VectorXd operator()(double t) const {
    Eigen::VectorXd out = t * linear_;
    for (int k = 0; k < a_.cols(); ++k) {
      const double w = 2.0 * std::numbers::pi * (k + 1);
      out += std::sin(w * t) * a_.col(k) + (std::cos(w * t) - 1.0) * b_.col(k);
    }
    return out;
  }

 private:
  Eigen::MatrixXd a_;
  Eigen::MatrixXd b_;
  Eigen::VectorXd linear_;
};

inline Eigen::MatrixXd sample_path(const std::function<Eigen::VectorXd(double)>& f,
                                   int dim, int segments) {
  Eigen::MatrixXd values(dim, segments + 1);
  for (int i = 0; i <= segments; ++i) {
    values.col(i) = f(static_cast<double>(i) / segments);
  }
  return values;
}

inline srvt::SampledCurve random_euclidean_curve(int dim, int segments, Rng& rng,
                                                 double amplitude = 1.0) {
  SmoothPath path(dim, rng, amplitude);
  return srvt::SampledCurve(sample_path(path, dim, segments));
}

inline srvt::StepFunction random_step_function(int dim, int segments, Rng& rng,
                                               double amplitude = 1.0) {
  std::uniform_real_distribution<double> u(-amplitude, amplitude);
  Eigen::MatrixXd values(dim, segments);
  for (int i = 0; i < segments; ++i) {
    for (int d = 0; d < dim; ++d) values(d, i) = u(rng);
  }
  return srvt::StepFunction(std::move(values));
}

/// Random smooth group curve built by evolving a smooth algebra-valued path;
/// per-step rotation angles stay far below the branch cut.
inline srvt::GroupCurve random_group_curve(srvt::GroupKind kind, int segments,
                                           Rng& rng, double amplitude = 1.0) {
  const int m = srvt::algebra_dim(kind);
  SmoothPath xi(m, rng, amplitude);
  std::uniform_real_distribution<double> u(-0.8, 0.8);
  Eigen::VectorXd start_coords(m);
  for (int d = 0; d < m; ++d) start_coords(d) = u(rng);
  srvt::GroupElement g0 = srvt::group_exp(srvt::AlgebraElement(kind, start_coords));
  Eigen::MatrixXd values(m, segments);
  for (int i = 0; i < segments; ++i) {
    values.col(i) = xi((i + 0.5) / segments);
  }
  return srvt::evolve(
      srvt::AlgebraStepFunction(kind, srvt::StepFunction(std::move(values))), g0);
}

/// Smooth curve on S^2 staying within ~40 degrees of the north pole
/// (0,0,1): graph-style points normalize((x(t), y(t), 1)).
class HemispherePath {
 public:
  HemispherePath(Rng& rng, double amplitude = 0.5) : xy_(2, rng, amplitude) {}

  Eigen::VectorXd operator()(double t) const {
    const Eigen::VectorXd xy = xy_(t);
    Eigen::Vector3d p(xy(0), xy(1), 1.0);
    return p.normalized();
  }

 private:
  SmoothPath xy_;
};

inline Eigen::MatrixXd hemisphere_points(const HemispherePath& path, int segments) {
  return sample_path([&](double t) { return path(t); }, 3, segments);
}

inline double max_column_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  double worst = 0.0;
  for (int i = 0; i < a.cols(); ++i) {
    worst = std::max(worst, (a.col(i) - b.col(i)).norm());
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Process helpers for CLI tests

struct CommandResult {
  int exit_code = -1;
  std::string output;  // captured stdout (stderr only when the caller redirects)
};

inline CommandResult run_command(const std::string& command) {
  CommandResult result;
  FILE* pipe = ::popen(command.c_str(), "r");
  if (pipe == nullptr) return result;
  char buffer[4096];
  size_t got = 0;
  while ((got = std::fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
    result.output.append(buffer, got);
  }
  const int status = ::pclose(pipe);
  if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  return result;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Per-process scratch directory; wiped on construction so reruns are clean.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const std::filesystem::path dir = std::filesystem::temp_directory_path() /
                                    ("srvt_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace testutil
