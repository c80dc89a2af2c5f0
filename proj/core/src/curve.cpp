#include "srvt/curve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace srvt {
namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

void require_same_shape(const StepFunction& f, const StepFunction& g) {
  require(f.dim() == g.dim(), "step functions have different dimensions");
  require(f.segments() == g.segments(), "step functions have different grids");
}

}  // namespace

PExponent::PExponent(double p) : p_(p) {
  require(std::isfinite(p) && p >= 1.0, "integrability exponent must satisfy p >= 1");
}

SampledCurve::SampledCurve(Eigen::MatrixXd values) : values_(std::move(values)) {
  require(values_.rows() >= 1, "curve dimension must be >= 1");
  require(values_.cols() >= 2, "curve needs at least one grid subinterval");
  require(values_.allFinite(), "curve samples must be finite");
}

Eigen::VectorXd SampledCurve::at(double t) const {
  require(std::isfinite(t) && t >= 0.0 && t <= 1.0, "evaluation time outside [0,1]");
  const int n = segments();
  const double u = t * n;
  const int i = std::min(static_cast<int>(std::floor(u)), n - 1);
  const double s = u - i;
  return (1.0 - s) * values_.col(i) + s * values_.col(i + 1);
}

StepFunction::StepFunction(Eigen::MatrixXd values) : values_(std::move(values)) {
  require(values_.rows() >= 1, "step function dimension must be >= 1");
  require(values_.cols() >= 1, "step function needs at least one cell");
  require(values_.allFinite(), "step function values must be finite");
}

StepFunction operator+(const StepFunction& f, const StepFunction& g) {
  require_same_shape(f, g);
  return StepFunction(f.values() + g.values());
}

StepFunction operator-(const StepFunction& f, const StepFunction& g) {
  require_same_shape(f, g);
  return StepFunction(f.values() - g.values());
}

StepFunction operator*(double s, const StepFunction& f) {
  require(std::isfinite(s), "scalar factor must be finite");
  return StepFunction(s * f.values());
}

StepFunction derivative(const SampledCurve& c) {
  const int n = c.segments();
  Eigen::MatrixXd d(c.dim(), n);
  for (int i = 0; i < n; ++i) {
    d.col(i) = static_cast<double>(n) * (c.value(i + 1) - c.value(i));
  }
  return StepFunction(std::move(d));
}

SampledCurve antiderivative(const StepFunction& f, const Eigen::VectorXd& start) {
  require(start.size() == f.dim(), "start point dimension mismatch");
  require(start.allFinite(), "start point must be finite");
  const int n = f.segments();
  const double h = 1.0 / n;
  Eigen::MatrixXd c(f.dim(), n + 1);
  c.col(0) = start;
  for (int i = 0; i < n; ++i) {
    c.col(i + 1) = c.col(i) + h * f.value(i);
  }
  return SampledCurve(std::move(c));
}

double lp_norm(const StepFunction& f, PExponent p,
               std::optional<std::span<const double>> weights) {
  const int n = f.segments();
  const double pv = p.value();
  if (weights) {
    require(static_cast<int>(weights->size()) == n,
            "weights must hold one entry per grid cell");
    for (double w : *weights) {
      require(std::isfinite(w) && w > 0.0, "weights must be strictly positive");
    }
  }
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double ni = weights ? (*weights)[static_cast<size_t>(i)] : f.value(i).norm();
    acc += (pv == 2.0) ? ni * ni : std::pow(ni, pv);
  }
  acc /= n;
  return (pv == 2.0) ? std::sqrt(acc) : std::pow(acc, 1.0 / pv);
}

double l2_inner(const StepFunction& f, const StepFunction& g) {
  require_same_shape(f, g);
  double acc = 0.0;
  for (int i = 0; i < f.segments(); ++i) {
    acc += f.value(i).dot(g.value(i));
  }
  return acc / f.segments();
}

double ac_norm(const SampledCurve& c, PExponent p) {
  return c.value(0).norm() + lp_norm(derivative(c), p);
}

double sup_norm(const SampledCurve& c) {
  double best = 0.0;
  for (int i = 0; i < c.samples(); ++i) {
    best = std::max(best, c.value(i).norm());
  }
  return best;
}

Eigen::MatrixXd resample(const SampledCurve& c, std::span<const double> times) {
  Eigen::MatrixXd out(c.dim(), static_cast<Eigen::Index>(times.size()));
  double prev = 0.0;
  for (size_t k = 0; k < times.size(); ++k) {
    const double t = times[k];
    if (k > 0 && t < prev) throw std::invalid_argument("evaluation times must be sorted");
    out.col(static_cast<Eigen::Index>(k)) = c.at(t);
    prev = t;
  }
  return out;
}

SampledCurve resample_uniform(const SampledCurve& c, int segments) {
  if (segments < 1) throw std::invalid_argument("resampling needs >= 1 segment");
  if (segments == c.segments()) return c;
  std::vector<double> times(static_cast<size_t>(segments) + 1);
  for (int i = 0; i <= segments; ++i) {
    times[static_cast<size_t>(i)] = static_cast<double>(i) / segments;
  }
  return SampledCurve(resample(c, times));
}

std::pair<SampledCurve, SampledCurve> harmonize(const SampledCurve& a,
                                                const SampledCurve& c) {
  if (a.dim() != c.dim()) throw std::invalid_argument("curves have different dimensions");
  const int n = std::max(a.segments(), c.segments());
  return {resample_uniform(a, n), resample_uniform(c, n)};
}

}  // namespace srvt
