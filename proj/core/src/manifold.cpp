#include "srvt/manifold.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "srvt/errors.hpp"
#include "srvt/scaling.hpp"

namespace srvt {
namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

// ---------------------------------------------------------------------------
// Manifold base

double Manifold::norm(const Eigen::VectorXd& p, const Eigen::VectorXd& v) const {
  return std::sqrt(std::max(0.0, inner(p, v, v)));
}

double Manifold::distance(const Eigen::VectorXd& p, const Eigen::VectorXd& q) const {
  const Eigen::VectorXd v = log(p, q);
  return norm(p, v);
}

std::vector<Eigen::MatrixXd> Manifold::transport_frame_along(
    const Eigen::MatrixXd& points) const {
  const int n = static_cast<int>(points.cols()) - 1;
  require(n >= 1, "frame transport needs at least one grid subinterval");
  std::vector<Eigen::MatrixXd> frames;
  frames.reserve(static_cast<size_t>(n) + 1);
  frames.push_back(frame(points.col(0)));
  for (int i = 0; i < n; ++i) {
    const Eigen::MatrixXd& prev = frames.back();
    Eigen::MatrixXd next(prev.rows(), prev.cols());
    for (int k = 0; k < prev.cols(); ++k) {
      try {
        next.col(k) = transport(points.col(i), points.col(i + 1), prev.col(k));
      } catch (const CutLocusError& e) {
        throw CutLocusError(e.what(), i);
      }
    }
    frames.push_back(std::move(next));
  }
  return frames;
}

// ---------------------------------------------------------------------------
// Sphere2

Sphere2::Sphere2(double cut_tolerance) : cut_tolerance_(cut_tolerance) {
  require(cut_tolerance > 0.0 && cut_tolerance < std::numbers::pi,
          "cut tolerance must lie in (0, pi)");
}

void Sphere2::validate_point(const Eigen::VectorXd& p) const {
  require(p.size() == 3, "sphere point must have 3 coordinates");
  require(p.allFinite(), "sphere point must be finite");
  require(std::abs(p.norm() - 1.0) <= 1e-10, "sphere point must have unit norm");
}

Eigen::VectorXd Sphere2::exp(const Eigen::VectorXd& p, const Eigen::VectorXd& v,
                             double t) const {
  validate_point(p);
  require(v.size() == 3 && v.allFinite(), "tangent vector must be finite 3-vector");
  require(std::abs(p.dot(v)) <= 1e-10 * std::max(1.0, v.norm()),
          "tangent vector must be orthogonal to the base point");
  const double n = v.norm();
  const double a = t * n;
  if (a == 0.0) return p;
  Eigen::VectorXd out = std::cos(a) * p + (std::sin(a) / n) * v;
  out.normalize();
  return out;
}

bool Sphere2::connectable(const Eigen::VectorXd& p, const Eigen::VectorXd& q) const {
  const Eigen::Vector3d pv = p, qv = q;
  const double angle = std::atan2(pv.cross(qv).norm(), pv.dot(qv));
  return angle < std::numbers::pi - cut_tolerance_;
}

Eigen::VectorXd Sphere2::log(const Eigen::VectorXd& p, const Eigen::VectorXd& q) const {
  validate_point(p);
  validate_point(q);
  if (!connectable(p, q)) {
    throw CutLocusError("point lies within the cut tolerance of the antipode");
  }
  // Exactly equal points must map to an exactly zero velocity; the general
  // formula would amplify the ~1 ulp residual of p.dot(q) under sqrt-scaling.
  if ((q - p).isZero(0.0)) return Eigen::VectorXd::Zero(3);
  const double d = std::clamp(p.dot(q), -1.0, 1.0);
  Eigen::VectorXd w = q - d * p;
  const double s = w.norm();
  if (s == 0.0) return Eigen::VectorXd::Zero(3);
  const double theta = std::atan2(s, d);
  return (theta / s) * w;
}

Eigen::VectorXd Sphere2::transport(const Eigen::VectorXd& p, const Eigen::VectorXd& q,
                                   const Eigen::VectorXd& v) const {
  validate_point(p);
  validate_point(q);
  if (!connectable(p, q)) {
    throw CutLocusError("transport target lies within the cut tolerance of the antipode");
  }
  const double d = p.dot(q);
  Eigen::VectorXd out = v - (v.dot(q) / (1.0 + d)) * (p + q);
  out -= out.dot(q) * q;  // numerical tangency hygiene
  return out;
}

double Sphere2::inner(const Eigen::VectorXd& /*p*/, const Eigen::VectorXd& u,
                      const Eigen::VectorXd& v) const {
  return u.dot(v);
}

Eigen::MatrixXd Sphere2::frame(const Eigen::VectorXd& p) const {
  validate_point(p);
  int k = 0;
  for (int j = 1; j < 3; ++j) {
    if (std::abs(p(j)) < std::abs(p(k))) k = j;
  }
  Eigen::Vector3d e1 = Eigen::Vector3d::Unit(k) - p(k) * Eigen::Vector3d(p);
  e1.normalize();
  Eigen::Vector3d e2 = Eigen::Vector3d(p).cross(e1);
  e2.normalize();
  Eigen::MatrixXd f(3, 2);
  f.col(0) = e1;
  f.col(1) = e2;
  return f;
}

// ---------------------------------------------------------------------------
// ChartManifold

ChartManifold::ChartManifold(int dim, MetricFn metric, ChristoffelFn christoffel,
                             DomainFn domain, ChartOptions options)
    : dim_(dim),
      metric_(std::move(metric)),
      christoffel_(std::move(christoffel)),
      domain_(std::move(domain)),
      options_(options) {
  require(dim_ >= 1, "chart dimension must be >= 1");
  require(static_cast<bool>(metric_), "chart metric callback must be set");
  require(static_cast<bool>(christoffel_), "chart Christoffel callback must be set");
  require(options_.steps_per_unit > 0.0 && options_.min_steps >= 1 &&
              options_.max_steps >= options_.min_steps,
          "chart integrator options are inconsistent");
  require(options_.shooting_tolerance > 0.0 && options_.shooting_max_iterations >= 1,
          "chart shooting options are inconsistent");
}

bool ChartManifold::in_domain(const Eigen::VectorXd& x) const {
  return !domain_ || domain_(x);
}

void ChartManifold::validate_point(const Eigen::VectorXd& p) const {
  require(p.size() == dim_, "chart point has wrong coordinate count");
  require(p.allFinite(), "chart point must be finite");
  require(in_domain(p), "chart point lies outside the chart domain");
}

Eigen::MatrixXd ChartManifold::metric_at(const Eigen::VectorXd& x) const {
  Eigen::MatrixXd g = metric_(x);
  require(g.rows() == dim_ && g.cols() == dim_, "metric has wrong dimensions");
  require(g.allFinite(), "metric must be finite");
  require((g - g.transpose()).norm() <= 1e-10 * std::max(1.0, g.norm()),
          "metric must be symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
  require(es.eigenvalues().minCoeff() > 1e-12, "metric must be positive definite");
  return g;
}

Eigen::VectorXd ChartManifold::christoffel_at(const Eigen::VectorXd& x,
                                              const Eigen::VectorXd& u,
                                              const Eigen::VectorXd& v) const {
  Eigen::VectorXd guv = christoffel_(x, u, v);
  require(guv.size() == dim_ && guv.allFinite(),
          "Christoffel contraction must be a finite vector of chart dimension");
  if (u != v) {
    const Eigen::VectorXd gvu = christoffel_(x, v, u);
    require((guv - gvu).norm() <= 1e-10 * std::max(1.0, guv.norm()),
            "Christoffel contraction must be symmetric in its arguments");
  }
  return guv;
}

namespace {

int chart_step_count(const ChartOptions& opt, double path_length) {
  const double raw = std::ceil(opt.steps_per_unit * path_length);
  const double capped = std::min(raw, static_cast<double>(opt.max_steps));
  return std::max(opt.min_steps, static_cast<int>(capped));
}

}  // namespace

Eigen::VectorXd ChartManifold::exp(const Eigen::VectorXd& p, const Eigen::VectorXd& v,
                                   double t) const {
  validate_point(p);
  require(v.size() == dim_ && v.allFinite(), "tangent vector has wrong coordinate count");
  require(std::isfinite(t), "exponential time must be finite");
  const double length = std::abs(t) * v.norm();
  if (length == 0.0) return p;
  const int steps = chart_step_count(options_, length);
  const double h = t / steps;
  Eigen::VectorXd u = p;
  Eigen::VectorXd w = v;
  for (int k = 0; k < steps; ++k) {
    // explicit midpoint on u' = w, w' = -Gamma(u)(w, w)
    const Eigen::VectorXd k1u = w;
    const Eigen::VectorXd k1w = -christoffel_at(u, w, w);
    const Eigen::VectorXd um = u + 0.5 * h * k1u;
    if (!in_domain(um)) throw ChartDomainError("geodesic left the chart domain");
    const Eigen::VectorXd wm = w + 0.5 * h * k1w;
    u += h * wm;
    w += h * (-christoffel_at(um, wm, wm));
    if (!in_domain(u)) throw ChartDomainError("geodesic left the chart domain");
  }
  return u;
}

bool ChartManifold::connectable(const Eigen::VectorXd& p, const Eigen::VectorXd& q) const {
  return in_domain(p) && in_domain(q);
}

Eigen::VectorXd ChartManifold::log(const Eigen::VectorXd& p, const Eigen::VectorXd& q) const {
  validate_point(p);
  validate_point(q);
  const double tol = options_.shooting_tolerance * std::max(1.0, (q - p).norm());
  Eigen::VectorXd v = q - p;
  double residual_norm = std::numeric_limits<double>::infinity();
  Eigen::VectorXd residual;

  auto eval_residual = [&](const Eigen::VectorXd& vv) -> Eigen::VectorXd {
    return exp(p, vv, 1.0) - q;
  };

  residual = eval_residual(v);
  residual_norm = residual.norm();
  for (int iter = 0; iter < options_.shooting_max_iterations; ++iter) {
    if (residual_norm <= tol) return v;
    // Finite-difference Jacobian of v -> exp_p(v).
    const double fd = 1e-6 * std::max(1.0, v.norm());
    Eigen::MatrixXd jac(dim_, dim_);
    for (int k = 0; k < dim_; ++k) {
      Eigen::VectorXd vp = v, vm = v;
      vp(k) += fd;
      vm(k) -= fd;
      jac.col(k) = (eval_residual(vp) - eval_residual(vm)) / (2.0 * fd);
    }
    const Eigen::VectorXd delta = jac.fullPivLu().solve(residual);
    // Damped update: backtrack when the residual grows or the trial geodesic
    // leaves the chart.
    double lambda = 1.0;
    bool accepted = false;
    for (int bt = 0; bt < 10; ++bt) {
      const Eigen::VectorXd trial = v - lambda * delta;
      try {
        const Eigen::VectorXd r = eval_residual(trial);
        if (r.norm() < residual_norm || r.norm() <= tol) {
          v = trial;
          residual = r;
          residual_norm = r.norm();
          accepted = true;
          break;
        }
      } catch (const ChartDomainError&) {
        // shrink the step and retry
      }
      lambda *= 0.5;
    }
    if (!accepted) break;
  }
  if (residual_norm <= tol) return v;
  throw CutLocusError("logarithm shooting did not converge inside the chart");
}

Eigen::VectorXd ChartManifold::transport(const Eigen::VectorXd& p, const Eigen::VectorXd& q,
                                         const Eigen::VectorXd& v) const {
  require(v.size() == dim_ && v.allFinite(), "tangent vector has wrong coordinate count");
  const Eigen::VectorXd w0 = log(p, q);
  const double length = w0.norm();
  if (length == 0.0) return v;
  const int steps = chart_step_count(options_, length);
  const double h = 1.0 / steps;
  Eigen::VectorXd u = p;
  Eigen::VectorXd w = w0;
  Eigen::VectorXd z = v;
  for (int k = 0; k < steps; ++k) {
    // explicit midpoint on the coupled geodesic + transport system
    // u' = w, w' = -Gamma(u)(w, w), z' = -Gamma(u)(w, z)
    const Eigen::VectorXd k1w = -christoffel_at(u, w, w);
    const Eigen::VectorXd k1z = -christoffel_at(u, w, z);
    const Eigen::VectorXd um = u + 0.5 * h * w;
    if (!in_domain(um)) throw ChartDomainError("transport path left the chart domain");
    const Eigen::VectorXd wm = w + 0.5 * h * k1w;
    const Eigen::VectorXd zm = z + 0.5 * h * k1z;
    u += h * wm;
    w += h * (-christoffel_at(um, wm, wm));
    z += h * (-christoffel_at(um, wm, zm));
    if (!in_domain(u)) throw ChartDomainError("transport path left the chart domain");
  }
  return z;
}

double ChartManifold::inner(const Eigen::VectorXd& p, const Eigen::VectorXd& u,
                            const Eigen::VectorXd& v) const {
  return u.dot(metric_at(p) * v);
}

Eigen::MatrixXd ChartManifold::frame(const Eigen::VectorXd& p) const {
  validate_point(p);
  const Eigen::MatrixXd g = metric_at(p);
  const Eigen::LLT<Eigen::MatrixXd> llt(g);
  require(llt.info() == Eigen::Success, "metric Cholesky factorization failed");
  // Columns of L^{-T} are G-orthonormal.
  const Eigen::MatrixXd lt = llt.matrixU();
  return lt.triangularView<Eigen::Upper>().solve(
      Eigen::MatrixXd::Identity(dim_, dim_));
}

std::vector<Eigen::MatrixXd> ChartManifold::transport_frame_along(
    const Eigen::MatrixXd& points) const {
  const int n = static_cast<int>(points.cols()) - 1;
  require(n >= 1, "frame transport needs at least one grid subinterval");
  const double h = 1.0 / n;
  std::vector<Eigen::MatrixXd> frames;
  frames.reserve(static_cast<size_t>(n) + 1);
  frames.push_back(frame(points.col(0)));
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd ui = points.col(i);
    const Eigen::VectorXd du = static_cast<double>(n) * (points.col(i + 1) - ui);
    const Eigen::VectorXd um = 0.5 * (ui + points.col(i + 1));
    if (!in_domain(ui) || !in_domain(um)) {
      throw ChartDomainError("curve left the chart domain", i);
    }
    const Eigen::MatrixXd& prev = frames.back();
    Eigen::MatrixXd next(prev.rows(), prev.cols());
    for (int k = 0; k < prev.cols(); ++k) {
      const Eigen::VectorXd k1 = -christoffel_at(ui, du, prev.col(k));
      const Eigen::VectorXd zm = prev.col(k) + 0.5 * h * k1;
      next.col(k) = prev.col(k) + h * (-christoffel_at(um, du, zm));
    }
    frames.push_back(std::move(next));
  }
  return frames;
}

// ---------------------------------------------------------------------------
// Chart builders

ChartManifold flat_chart(int dim, ChartOptions options) {
  require(dim >= 1, "chart dimension must be >= 1");
  MetricFn metric = [dim](const Eigen::VectorXd&) {
    return Eigen::MatrixXd::Identity(dim, dim);
  };
  ChristoffelFn christoffel = [dim](const Eigen::VectorXd&, const Eigen::VectorXd&,
                                    const Eigen::VectorXd&) {
    return Eigen::VectorXd::Zero(dim);
  };
  return ChartManifold(dim, std::move(metric), std::move(christoffel), nullptr, options);
}

namespace {

// Christoffel contraction of a conformal metric G = exp(2 phi) I:
// Gamma(u, v) = u (grad , v) + v (grad , u) - (u , v) grad.
Eigen::VectorXd conformal_christoffel(const Eigen::VectorXd& grad_phi,
                                      const Eigen::VectorXd& u,
                                      const Eigen::VectorXd& v) {
  return u * grad_phi.dot(v) + v * grad_phi.dot(u) - u.dot(v) * grad_phi;
}

}  // namespace

ChartManifold stereographic_sphere(ChartOptions options) {
  MetricFn metric = [](const Eigen::VectorXd& x) {
    const double r2 = x.squaredNorm();
    const double lam = 2.0 / (1.0 + r2);
    return (lam * lam) * Eigen::MatrixXd::Identity(2, 2);
  };
  ChristoffelFn christoffel = [](const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                                 const Eigen::VectorXd& v) {
    const Eigen::VectorXd grad_phi = -2.0 * x / (1.0 + x.squaredNorm());
    return conformal_christoffel(grad_phi, u, v);
  };
  return ChartManifold(2, std::move(metric), std::move(christoffel), nullptr, options);
}

ChartManifold hyperbolic_halfplane(ChartOptions options) {
  MetricFn metric = [](const Eigen::VectorXd& x) {
    return Eigen::MatrixXd::Identity(2, 2) / (x(1) * x(1));
  };
  ChristoffelFn christoffel = [](const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                                 const Eigen::VectorXd& v) {
    Eigen::VectorXd grad_phi(2);
    grad_phi << 0.0, -1.0 / x(1);
    return conformal_christoffel(grad_phi, u, v);
  };
  DomainFn domain = [](const Eigen::VectorXd& x) { return x(1) > 0.0; };
  return ChartManifold(2, std::move(metric), std::move(christoffel), std::move(domain),
                       options);
}

// ---------------------------------------------------------------------------
// Stereographic chart maps (projection from the south pole (0,0,-1))

Eigen::Vector2d stereographic_project(const Eigen::Vector3d& p) {
  require(p.z() > -1.0 + 1e-12, "stereographic chart excludes the south pole");
  return Eigen::Vector2d(p.x(), p.y()) / (1.0 + p.z());
}

Eigen::Vector3d stereographic_unproject(const Eigen::Vector2d& x) {
  const double r2 = x.squaredNorm();
  return Eigen::Vector3d(2.0 * x.x(), 2.0 * x.y(), 1.0 - r2) / (1.0 + r2);
}

Eigen::Vector2d stereographic_project_tangent(const Eigen::Vector3d& p,
                                              const Eigen::Vector3d& v) {
  const double d = 1.0 + p.z();
  require(d > 1e-12, "stereographic chart excludes the south pole");
  return Eigen::Vector2d(v.x(), v.y()) / d -
         (v.z() / (d * d)) * Eigen::Vector2d(p.x(), p.y());
}

Eigen::Vector3d stereographic_unproject_tangent(const Eigen::Vector2d& x,
                                                const Eigen::Vector2d& u) {
  const double d = 1.0 + x.squaredNorm();
  const Eigen::Vector3d col_x(2.0 * d - 4.0 * x.x() * x.x(), -4.0 * x.x() * x.y(),
                              -4.0 * x.x());
  const Eigen::Vector3d col_y(-4.0 * x.x() * x.y(), 2.0 * d - 4.0 * x.y() * x.y(),
                              -4.0 * x.y());
  return (u.x() * col_x + u.y() * col_y) / (d * d);
}

// ---------------------------------------------------------------------------
// ManifoldCurve

ManifoldCurve::ManifoldCurve(std::shared_ptr<const Manifold> manifold,
                             Eigen::MatrixXd points)
    : manifold_(std::move(manifold)), points_(std::move(points)) {
  require(static_cast<bool>(manifold_), "manifold backend must be set");
  require(points_.cols() >= 2, "manifold curve needs at least one grid subinterval");
  for (int i = 0; i < points_.cols(); ++i) {
    manifold_->validate_point(points_.col(i));
  }
}

Eigen::VectorXd ManifoldCurve::at(double t) const {
  require(std::isfinite(t) && t >= 0.0 && t <= 1.0, "evaluation time outside [0,1]");
  const int n = segments();
  const double u = t * n;
  const int i = std::min(static_cast<int>(std::floor(u)), n - 1);
  const double s = u - i;
  if (s == 0.0) return points_.col(i);
  if (s == 1.0) return points_.col(i + 1);
  const Eigen::VectorXd v = manifold_->log(points_.col(i), points_.col(i + 1));
  return manifold_->exp(points_.col(i), v, s);
}

ManifoldCurve resample_uniform(const ManifoldCurve& c, int segments) {
  require(segments >= 1, "resampling needs >= 1 segment");
  if (segments == c.segments()) return c;
  Eigen::MatrixXd points(c.points().rows(), segments + 1);
  for (int i = 0; i <= segments; ++i) {
    points.col(i) = c.at(static_cast<double>(i) / segments);
  }
  return ManifoldCurve(c.manifold_ptr(), std::move(points));
}

// ---------------------------------------------------------------------------
// Reference-point transports

Eigen::VectorXd transport_to_star(const Manifold& m, const TangentVector& v,
                                  const Eigen::VectorXd& star) {
  if (!m.connectable(v.base, star)) {
    throw CutLocusError("base point lies outside the reference-point domain");
  }
  const Eigen::VectorXd at_star = m.transport(v.base, star, v.vec);
  const Eigen::MatrixXd f = m.frame(star);
  Eigen::VectorXd coords(m.dim());
  for (int k = 0; k < m.dim(); ++k) {
    coords(k) = m.inner(star, f.col(k), at_star);
  }
  return coords;
}

TangentVector transport_from_star(const Manifold& m, const Eigen::VectorXd& p,
                                  const Eigen::VectorXd& w,
                                  const Eigen::VectorXd& star) {
  require(w.size() == m.dim(), "frame coordinates have wrong dimension");
  if (!m.connectable(star, p)) {
    throw CutLocusError("target point lies outside the reference-point domain");
  }
  const Eigen::VectorXd at_star = m.frame(star) * w;
  return TangentVector{p, m.transport(star, p, at_star)};
}

// ---------------------------------------------------------------------------
// Transport ODE along a sampled chart curve

std::vector<Eigen::VectorXd> parallel_transport_ode(const SampledCurve& c,
                                                    const Eigen::VectorXd& v0,
                                                    const ChartManifold& m) {
  require(c.dim() == m.dim(), "curve and chart dimensions disagree");
  require(v0.size() == m.dim() && v0.allFinite(), "initial vector has wrong dimension");
  const int n = c.segments();
  const double h = 1.0 / n;
  std::vector<Eigen::VectorXd> out;
  out.reserve(static_cast<size_t>(n) + 1);
  out.push_back(v0);
  Eigen::VectorXd z = v0;
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd ui = c.value(i);
    const Eigen::VectorXd du = static_cast<double>(n) * (c.value(i + 1) - ui);
    const Eigen::VectorXd um = 0.5 * (ui + c.value(i + 1));
    if (!m.in_domain(ui) || !m.in_domain(um)) {
      throw ChartDomainError("curve left the chart domain", i);
    }
    // explicit midpoint on z' = -Gamma(u)(u', z) with u piecewise linear
    const Eigen::VectorXd k1 = -m.christoffel_at(ui, du, z);
    const Eigen::VectorXd zm = z + 0.5 * h * k1;
    z += h * (-m.christoffel_at(um, du, zm));
    out.push_back(z);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Manifold SRVT

ManifoldSrvtImage srvt_manifold(const ManifoldCurve& c, const Eigen::VectorXd& star) {
  const Manifold& m = c.manifold();
  m.validate_point(star);
  const int n = c.segments();
  for (int i = 0; i <= n; ++i) {
    if (!m.connectable(star, c.point(i))) {
      throw CutLocusError("curve point lies outside the reference-point domain", i);
    }
  }
  const Eigen::MatrixXd f = m.frame(star);
  Eigen::MatrixXd h(m.dim(), n);
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd v;
    try {
      v = m.log(c.point(i), c.point(i + 1));
    } catch (const CutLocusError& e) {
      throw CutLocusError(e.what(), i);
    }
    v *= static_cast<double>(n);
    const Eigen::VectorXd at_star = m.transport(c.point(i), star, v);
    for (int k = 0; k < m.dim(); ++k) {
      h(k, i) = m.inner(star, f.col(k), at_star);
    }
  }
  return ManifoldSrvtImage{c.point(0), scale(StepFunction(std::move(h)))};
}

ManifoldCurve srvt_manifold_inverse(const StepFunction& h, const Eigen::VectorXd& start,
                                    const Eigen::VectorXd& star,
                                    std::shared_ptr<const Manifold> manifold,
                                    InverseScheme scheme) {
  require(static_cast<bool>(manifold), "manifold backend must be set");
  const Manifold& m = *manifold;
  m.validate_point(star);
  m.validate_point(start);
  require(h.dim() == m.dim(), "transform values have wrong tangent dimension");
  if (!m.connectable(star, start)) {
    throw CutLocusError("start point lies outside the reference-point domain", 0);
  }
  const StepFunction u = unscale(h);
  const Eigen::MatrixXd f = m.frame(star);
  const int n = h.segments();
  const double dt = 1.0 / n;
  Eigen::MatrixXd points(m.coord_size(), n + 1);
  points.col(0) = start;
  Eigen::VectorXd alpha = start;
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd at_star = f * u.value(i);
    if (at_star.norm() == 0.0) {
      points.col(i + 1) = alpha;
      continue;
    }
    const Eigen::VectorXd k1 = m.transport(star, alpha, at_star);
    Eigen::VectorXd next;
    if (scheme == InverseScheme::GeodesicEuler) {
      next = m.exp(alpha, k1, dt);
    } else {
      // midpoint stage with the stage vector transported back to alpha
      const Eigen::VectorXd mid = m.exp(alpha, k1, 0.5 * dt);
      const Eigen::VectorXd k2 = m.transport(star, mid, at_star);
      const Eigen::VectorXd k2_at_alpha = m.transport(mid, alpha, k2);
      next = m.exp(alpha, k2_at_alpha, dt);
    }
    if (!m.connectable(star, next)) {
      throw CutLocusError("iterate left the reference-point domain", i + 1);
    }
    points.col(i + 1) = next;
    alpha = next;
  }
  return ManifoldCurve(std::move(manifold), std::move(points));
}

double manifold_distance(const ManifoldCurve& a, const ManifoldCurve& c,
                         const Eigen::VectorXd& star, bool with_basepoint) {
  require(&a.manifold() == &c.manifold(),
          "curves must share the same manifold backend instance");
  const int n = std::max(a.segments(), c.segments());
  const ManifoldCurve ha = resample_uniform(a, n);
  const ManifoldCurve hc = resample_uniform(c, n);
  const ManifoldSrvtImage qa = srvt_manifold(ha, star);
  const ManifoldSrvtImage qc = srvt_manifold(hc, star);
  double d = lp_norm(qa.values - qc.values, PExponent(2.0));
  if (with_basepoint) d += a.manifold().distance(a.point(0), c.point(0));
  return d;
}

// ---------------------------------------------------------------------------
// Section norms

double section_norm(const ManifoldCurve& c, const Eigen::MatrixXd& field,
                    PExponent p, SectionNormKind kind) {
  const Manifold& m = c.manifold();
  require(field.rows() == m.coord_size(), "field vectors have wrong coordinate count");
  require(field.cols() == c.samples(), "field needs one vector per grid point");
  require(field.allFinite(), "field vectors must be finite");
  const std::vector<Eigen::MatrixXd> frames = m.transport_frame_along(c.points());
  // Coordinates of the field w.r.t. the transported frame = the field carried
  // back to T_{c_0} M, expressed in the frame at c_0.
  Eigen::MatrixXd y(m.dim(), c.samples());
  for (int i = 0; i < c.samples(); ++i) {
    y.col(i) = frames[static_cast<size_t>(i)].colPivHouseholderQr().solve(field.col(i));
  }
  if (kind == SectionNormKind::L0) {
    return lp_norm(StepFunction(y.leftCols(c.segments())), p);
  }
  const double base = m.norm(c.point(0), field.col(0));
  return base + lp_norm(derivative(SampledCurve(std::move(y))), p);
}

}  // namespace srvt
