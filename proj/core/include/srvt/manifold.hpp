#pragma once

#include <Eigen/Core>
#include <functional>
#include <memory>
#include <vector>

#include "srvt/curve.hpp"

namespace srvt {

/// Tangent vector `vec` attached at the point `base`.
struct TangentVector {
  Eigen::VectorXd base;
  Eigen::VectorXd vec;
};

/// Riemannian geometry backend.  All members are const and safe to call
/// concurrently.  Points and tangent vectors are plain coordinate vectors of
/// size coord_size(); tangent/frame coordinates have size dim().
class Manifold {
 public:
  virtual ~Manifold() = default;

  /// Intrinsic dimension (tangent space dimension).
  virtual int dim() const = 0;
  /// Size of the point coordinate representation (3 for the embedded sphere,
  /// dim() for charts).
  virtual int coord_size() const = 0;

  /// Throws std::invalid_argument when p is not a valid point.
  virtual void validate_point(const Eigen::VectorXd& p) const = 0;

  /// Riemannian exponential exp_p(t v).
  virtual Eigen::VectorXd exp(const Eigen::VectorXd& p, const Eigen::VectorXd& v,
                              double t) const = 0;

  /// Riemannian logarithm: the initial velocity of the minimal geodesic from
  /// p to q.  Throws CutLocusError when connectable(p, q) fails.
  virtual Eigen::VectorXd log(const Eigen::VectorXd& p,
                              const Eigen::VectorXd& q) const = 0;

  /// Guard for a unique well-conditioned minimal geodesic between p and q:
  /// on the sphere, q lies outside an angular tolerance of the antipode of p;
  /// on charts, both points lie in the chart domain (documented limitation).
  virtual bool connectable(const Eigen::VectorXd& p,
                           const Eigen::VectorXd& q) const = 0;

  /// Parallel transport of the tangent vector v from p to q along the
  /// minimal geodesic.
  virtual Eigen::VectorXd transport(const Eigen::VectorXd& p,
                                    const Eigen::VectorXd& q,
                                    const Eigen::VectorXd& v) const = 0;

  /// Metric pairing G_p(u, v).
  virtual double inner(const Eigen::VectorXd& p, const Eigen::VectorXd& u,
                       const Eigen::VectorXd& v) const = 0;

  /// Deterministic G-orthonormal basis of T_p M, one column per dimension.
  virtual Eigen::MatrixXd frame(const Eigen::VectorXd& p) const = 0;

  double norm(const Eigen::VectorXd& p, const Eigen::VectorXd& v) const;
  /// Geodesic distance |log_p(q)|_{G(p)}.
  double distance(const Eigen::VectorXd& p, const Eigen::VectorXd& q) const;

  /// Columns: basis of T_{c_0} M transported along the sampled curve to each
  /// grid point (one matrix per grid point).  Default: chained per-segment
  /// minimal-geodesic transport; charts override with the transport ODE.
  virtual std::vector<Eigen::MatrixXd> transport_frame_along(
      const Eigen::MatrixXd& points) const;
};

/// Unit sphere S^2 in R^3 with closed-form geodesics and transport.
/// `cut_tolerance` is the angular guard (radians) around the antipode.
class Sphere2 final : public Manifold {
 public:
  explicit Sphere2(double cut_tolerance = 1e-3);

  int dim() const override { return 2; }
  int coord_size() const override { return 3; }
  void validate_point(const Eigen::VectorXd& p) const override;
  Eigen::VectorXd exp(const Eigen::VectorXd& p, const Eigen::VectorXd& v,
                      double t) const override;
  Eigen::VectorXd log(const Eigen::VectorXd& p, const Eigen::VectorXd& q) const override;
  bool connectable(const Eigen::VectorXd& p, const Eigen::VectorXd& q) const override;
  Eigen::VectorXd transport(const Eigen::VectorXd& p, const Eigen::VectorXd& q,
                            const Eigen::VectorXd& v) const override;
  double inner(const Eigen::VectorXd& p, const Eigen::VectorXd& u,
               const Eigen::VectorXd& v) const override;
  Eigen::MatrixXd frame(const Eigen::VectorXd& p) const override;

  double cut_tolerance() const noexcept { return cut_tolerance_; }

 private:
  double cut_tolerance_;
};

using MetricFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;
using ChristoffelFn = std::function<Eigen::VectorXd(
    const Eigen::VectorXd&, const Eigen::VectorXd&, const Eigen::VectorXd&)>;
using DomainFn = std::function<bool(const Eigen::VectorXd&)>;

struct ChartOptions {
  /// Geodesic/transport integrator substep density: substeps per unit of
  /// chart path length, explicit midpoint scheme (second order).
  double steps_per_unit = 64.0;
  int min_steps = 16;
  int max_steps = 1 << 16;
  /// Newton tolerance and iteration cap for the logarithm shooting solve.
  double shooting_tolerance = 1e-12;
  int shooting_max_iterations = 50;
};

/// Manifold presented in a single chart by a metric G(x) and Christoffel
/// contraction Gamma(x)(u, v).  Geodesics and transport integrate the
/// standard ODEs with an explicit-midpoint scheme; the logarithm is solved by
/// Newton shooting.  The supplied callbacks must be pure and thread-safe.
class ChartManifold final : public Manifold {
 public:
  ChartManifold(int dim, MetricFn metric, ChristoffelFn christoffel,
                DomainFn domain = nullptr, ChartOptions options = {});

  int dim() const override { return dim_; }
  int coord_size() const override { return dim_; }
  void validate_point(const Eigen::VectorXd& p) const override;
  Eigen::VectorXd exp(const Eigen::VectorXd& p, const Eigen::VectorXd& v,
                      double t) const override;
  Eigen::VectorXd log(const Eigen::VectorXd& p, const Eigen::VectorXd& q) const override;
  bool connectable(const Eigen::VectorXd& p, const Eigen::VectorXd& q) const override;
  Eigen::VectorXd transport(const Eigen::VectorXd& p, const Eigen::VectorXd& q,
                            const Eigen::VectorXd& v) const override;
  double inner(const Eigen::VectorXd& p, const Eigen::VectorXd& u,
               const Eigen::VectorXd& v) const override;
  Eigen::MatrixXd frame(const Eigen::VectorXd& p) const override;
  std::vector<Eigen::MatrixXd> transport_frame_along(
      const Eigen::MatrixXd& points) const override;

  /// Validated metric evaluation (symmetric, positive definite).
  Eigen::MatrixXd metric_at(const Eigen::VectorXd& x) const;
  /// Validated Christoffel contraction (symmetric in u and v).
  Eigen::VectorXd christoffel_at(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                                 const Eigen::VectorXd& v) const;
  bool in_domain(const Eigen::VectorXd& x) const;
  const ChartOptions& options() const noexcept { return options_; }

 private:
  int dim_;
  MetricFn metric_;
  ChristoffelFn christoffel_;
  DomainFn domain_;
  ChartOptions options_;
};

/// Euclidean space R^dim as a trivial chart (G = I, Gamma = 0).
ChartManifold flat_chart(int dim, ChartOptions options = {});
/// S^2 minus the south pole in the conformal stereographic chart.
ChartManifold stereographic_sphere(ChartOptions options = {});
/// Hyperbolic upper half-plane {(x, y) : y > 0} with G = I / y^2.
ChartManifold hyperbolic_halfplane(ChartOptions options = {});

/// Stereographic chart maps for S^2 (projection from the south pole) and
/// their tangent maps; used to move sphere data into chart coordinates.
Eigen::Vector2d stereographic_project(const Eigen::Vector3d& p);
Eigen::Vector3d stereographic_unproject(const Eigen::Vector2d& x);
Eigen::Vector2d stereographic_project_tangent(const Eigen::Vector3d& p,
                                              const Eigen::Vector3d& v);
Eigen::Vector3d stereographic_unproject_tangent(const Eigen::Vector2d& x,
                                                const Eigen::Vector2d& u);

/// Uniformly sampled curve on a manifold (points as columns).
class ManifoldCurve {
 public:
  ManifoldCurve(std::shared_ptr<const Manifold> manifold, Eigen::MatrixXd points);

  const Manifold& manifold() const noexcept { return *manifold_; }
  std::shared_ptr<const Manifold> manifold_ptr() const noexcept { return manifold_; }
  int segments() const noexcept { return static_cast<int>(points_.cols()) - 1; }
  int samples() const noexcept { return static_cast<int>(points_.cols()); }
  const Eigen::MatrixXd& points() const noexcept { return points_; }
  Eigen::VectorXd point(int i) const { return points_.col(i); }

  /// Piecewise-geodesic evaluation at t in [0,1].
  Eigen::VectorXd at(double t) const;

 private:
  std::shared_ptr<const Manifold> manifold_;
  Eigen::MatrixXd points_;
};

/// Piecewise-geodesic resampling onto a uniform grid.
ManifoldCurve resample_uniform(const ManifoldCurve& c, int segments);

/// Inverse parallel transport to the reference point: coordinates of
/// P_{base -> star}(v) in frame(star).
Eigen::VectorXd transport_to_star(const Manifold& m, const TangentVector& v,
                                  const Eigen::VectorXd& star);

/// Transport of frame(star)-coordinates w back out to a tangent vector at p.
TangentVector transport_from_star(const Manifold& m, const Eigen::VectorXd& p,
                                  const Eigen::VectorXd& w,
                                  const Eigen::VectorXd& star);

/// Parallel transport of v0 along the piecewise-linear chart curve c by the
/// Christoffel ODE  v' = -Gamma(u)(u', v), explicit midpoint per cell.
/// Returns the transported vector at every grid point.
std::vector<Eigen::VectorXd> parallel_transport_ode(const SampledCurve& c,
                                                    const Eigen::VectorXd& v0,
                                                    const ChartManifold& m);

/// SRVT image of a manifold curve: the start point (the ev_0 component) and
/// the scaled velocity transported to the reference tangent space, expressed
/// in frame(star) coordinates.
struct ManifoldSrvtImage {
  Eigen::VectorXd start;
  StepFunction values;
};

ManifoldSrvtImage srvt_manifold(const ManifoldCurve& c, const Eigen::VectorXd& star);

/// Step scheme for the inverse-transform Caratheodory ODE
/// alpha' = P_{star -> alpha}(unscale(h)).
enum class InverseScheme {
  /// One frozen geodesic step per cell; exactly undoes the discrete forward
  /// transform (round trips at machine precision).
  GeodesicEuler,
  /// Explicit midpoint with transported stage vector (default): integrates
  /// the underlying ODE, so forward-then-inverse self-consistency error
  /// decays at first order in 1/N.
  TransportedMidpoint,
};

ManifoldCurve srvt_manifold_inverse(const StepFunction& h, const Eigen::VectorXd& start,
                                    const Eigen::VectorXd& star,
                                    std::shared_ptr<const Manifold> manifold,
                                    InverseScheme scheme = InverseScheme::TransportedMidpoint);

/// Pullback L^2 distance of SRVT images over the same reference point;
/// adds the geodesic start separation when with_basepoint is set.
double manifold_distance(const ManifoldCurve& a, const ManifoldCurve& c,
                         const Eigen::VectorXd& star, bool with_basepoint = false);

enum class SectionNormKind { L0, AC1 };

/// Norm of a vector field X along c (one column per grid point), computed by
/// transporting X to T_{c_0} M and measuring there:
///  L0:  lp_norm of the transported coordinate function,
///  AC1: |X_0|_{G(c_0)} plus the lp_norm of its covariant derivative.
double section_norm(const ManifoldCurve& c, const Eigen::MatrixXd& field,
                    PExponent p, SectionNormKind kind);

}  // namespace srvt
