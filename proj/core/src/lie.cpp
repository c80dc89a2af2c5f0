#include "srvt/lie.hpp"

#include <Eigen/Geometry>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "srvt/errors.hpp"
#include "srvt/scaling.hpp"

namespace srvt {
namespace {

constexpr double kSmallAngle = 1e-2;

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

Eigen::Matrix3d hat3(const Eigen::Vector3d& w) {
  Eigen::Matrix3d m;
  // clang-format off
  m <<    0.0, -w.z(),  w.y(),
        w.z(),    0.0, -w.x(),
       -w.y(),  w.x(),    0.0;
  // clang-format on
  return m;
}

// Rodrigues coefficients; series below kSmallAngle, cancellation-free closed
// forms (half-angle identities) above.
double coeff_a(double th) {  // sin(th)/th
  if (th < kSmallAngle) {
    const double t2 = th * th;
    return 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
  }
  return std::sin(th) / th;
}

double coeff_b(double th) {  // (1 - cos(th))/th^2 = 2 sin^2(th/2)/th^2
  if (th < kSmallAngle) {
    const double t2 = th * th;
    return 0.5 - t2 / 24.0 + t2 * t2 / 720.0;
  }
  const double s = std::sin(0.5 * th);
  return 2.0 * s * s / (th * th);
}

double coeff_c(double th) {  // (th - sin(th))/th^3
  if (th < kSmallAngle) {
    const double t2 = th * th;
    return 1.0 / 6.0 - t2 / 120.0 + t2 * t2 / 5040.0;
  }
  return (th - std::sin(th)) / (th * th * th);
}

// Coefficient of hat(w)^2 in V^{-1}: (1 - (th/2) cot(th/2)) / th^2.
double coeff_vinv(double th) {
  if (th < kSmallAngle) {
    const double t2 = th * th;
    return 1.0 / 12.0 + t2 / 720.0 + t2 * t2 / 30240.0;
  }
  const double half = 0.5 * th;
  return (1.0 - half * std::cos(half) / std::sin(half)) / (th * th);
}

Eigen::Matrix3d rodrigues(const Eigen::Vector3d& w) {
  const double th = w.norm();
  const Eigen::Matrix3d k = hat3(w);
  return Eigen::Matrix3d::Identity() + coeff_a(th) * k + coeff_b(th) * k * k;
}

// Principal rotation vector via the unit quaternion; accurate for all angles
// up to the branch cut at pi.
Eigen::Vector3d so3_log_impl(const Eigen::Matrix3d& r) {
  Eigen::Quaterniond q(r);
  q.normalize();
  if (q.w() < 0.0) q.coeffs() = -q.coeffs();
  const Eigen::Vector3d qv = q.vec();
  const double s = qv.norm();
  const double angle = 2.0 * std::atan2(s, q.w());
  if (angle > std::numbers::pi - kAngleBranchTolerance) throw AngleNearPiError(angle);
  const double factor = (s < 1e-9) ? 2.0 : angle / s;
  return factor * qv;
}

Eigen::Matrix3d rotation_block(const Eigen::MatrixXd& m) {
  return m.topLeftCorner<3, 3>();
}

void validate_rotation(const Eigen::Matrix3d& r) {
  require((r.transpose() * r - Eigen::Matrix3d::Identity()).norm() <= 1e-9,
          "rotation block fails orthogonality check");
  require(r.determinant() >= 1.0 - 1e-9, "rotation block must have determinant 1");
}

}  // namespace

int group_matrix_size(GroupKind kind) { return kind == GroupKind::SO3 ? 3 : 4; }
int algebra_dim(GroupKind kind) { return kind == GroupKind::SO3 ? 3 : 6; }

GroupElement::GroupElement(GroupKind kind, Eigen::MatrixXd matrix)
    : kind_(kind), matrix_(std::move(matrix)) {
  const int n = group_matrix_size(kind);
  require(matrix_.rows() == n && matrix_.cols() == n, "group matrix has wrong size");
  require(matrix_.allFinite(), "group matrix must be finite");
  validate_rotation(rotation_block(matrix_));
  if (kind_ == GroupKind::SE3) {
    require(matrix_(3, 0) == 0.0 && matrix_(3, 1) == 0.0 && matrix_(3, 2) == 0.0 &&
                matrix_(3, 3) == 1.0,
            "rigid motion must have homogeneous bottom row (0,0,0,1)");
  }
}

GroupElement GroupElement::identity(GroupKind kind) {
  const int n = group_matrix_size(kind);
  return GroupElement(kind, Eigen::MatrixXd::Identity(n, n));
}

GroupElement GroupElement::inverse() const {
  if (kind_ == GroupKind::SO3) {
    return GroupElement(kind_, matrix_.transpose());
  }
  const Eigen::Matrix3d rt = rotation_block(matrix_).transpose();
  Eigen::MatrixXd inv = Eigen::MatrixXd::Identity(4, 4);
  inv.topLeftCorner<3, 3>() = rt;
  inv.topRightCorner<3, 1>() = -rt * matrix_.topRightCorner<3, 1>();
  return GroupElement(kind_, std::move(inv));
}

GroupElement operator*(const GroupElement& a, const GroupElement& b) {
  require(a.kind() == b.kind(), "cannot multiply elements of different groups");
  return GroupElement(a.kind(), a.matrix() * b.matrix());
}

AlgebraElement::AlgebraElement(GroupKind kind, Eigen::VectorXd coords)
    : kind_(kind), coords_(std::move(coords)) {
  require(coords_.size() == algebra_dim(kind), "algebra coordinate count mismatch");
  require(coords_.allFinite(), "algebra coordinates must be finite");
}

GroupElement group_exp(const AlgebraElement& xi, double t) {
  require(std::isfinite(t), "exponential time must be finite");
  if (xi.kind() == GroupKind::SO3) {
    const Eigen::Vector3d w = t * xi.coords();
    return GroupElement(GroupKind::SO3, rodrigues(w));
  }
  const Eigen::Vector3d w = t * xi.coords().head<3>();
  const Eigen::Vector3d v = t * xi.coords().tail<3>();
  const double th = w.norm();
  const Eigen::Matrix3d k = hat3(w);
  const Eigen::Matrix3d vmat =
      Eigen::Matrix3d::Identity() + coeff_b(th) * k + coeff_c(th) * k * k;
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(4, 4);
  m.topLeftCorner<3, 3>() = rodrigues(w);
  m.topRightCorner<3, 1>() = vmat * v;
  return GroupElement(GroupKind::SE3, std::move(m));
}

AlgebraElement group_log(const GroupElement& g) {
  if (g.kind() == GroupKind::SO3) {
    return AlgebraElement(GroupKind::SO3, so3_log_impl(rotation_block(g.matrix())));
  }
  const Eigen::Vector3d w = so3_log_impl(rotation_block(g.matrix()));
  const double th = w.norm();
  const Eigen::Matrix3d k = hat3(w);
  const Eigen::Matrix3d vinv =
      Eigen::Matrix3d::Identity() - 0.5 * k + coeff_vinv(th) * k * k;
  Eigen::VectorXd coords(6);
  coords.head<3>() = w;
  coords.tail<3>() = vinv * g.matrix().topRightCorner<3, 1>();
  return AlgebraElement(GroupKind::SE3, std::move(coords));
}

GroupCurve::GroupCurve(std::vector<GroupElement> elements)
    : elements_(std::move(elements)) {
  require(elements_.size() >= 2, "group curve needs at least one grid subinterval");
  for (const auto& g : elements_) {
    require(g.kind() == elements_.front().kind(),
            "group curve mixes elements of different groups");
  }
}

AlgebraStepFunction::AlgebraStepFunction(GroupKind k, StepFunction v)
    : kind(k), values(std::move(v)) {
  require(values.dim() == algebra_dim(kind),
          "algebra step function coordinate count mismatch");
}

AlgebraStepFunction right_log_derivative(const GroupCurve& gamma) {
  const int n = gamma.segments();
  Eigen::MatrixXd xi(algebra_dim(gamma.kind()), n);
  for (int i = 0; i < n; ++i) {
    const GroupElement inc = gamma.element(i + 1) * gamma.element(i).inverse();
    try {
      xi.col(i) = static_cast<double>(n) * group_log(inc).coords();
    } catch (const AngleNearPiError& e) {
      throw AngleNearPiError(e.angle(), i);
    }
  }
  return AlgebraStepFunction(gamma.kind(), StepFunction(std::move(xi)));
}

GroupCurve evolve(const AlgebraStepFunction& xi, const GroupElement& start) {
  require(xi.kind == start.kind(), "algebra data and start element disagree on group");
  const int n = xi.values.segments();
  const double h = 1.0 / n;
  std::vector<GroupElement> g;
  g.reserve(static_cast<size_t>(n) + 1);
  g.push_back(start);
  for (int i = 0; i < n; ++i) {
    g.push_back(group_exp(AlgebraElement(xi.kind, xi.values.value(i)), h) * g.back());
  }
  return GroupCurve(std::move(g));
}

AlgebraStepFunction srvt_lie(const GroupCurve& gamma) {
  AlgebraStepFunction xi = right_log_derivative(gamma);
  return AlgebraStepFunction(xi.kind, scale(xi.values));
}

GroupCurve srvt_lie_inverse(const AlgebraStepFunction& eta, const GroupElement& start) {
  return evolve(AlgebraStepFunction(eta.kind, unscale(eta.values)), start);
}

double lie_distance(const GroupCurve& a, const GroupCurve& c) {
  require(a.kind() == c.kind(), "cannot compare curves in different groups");
  const int n = std::max(a.segments(), c.segments());
  const GroupCurve ha = resample_uniform(a, n);
  const GroupCurve hc = resample_uniform(c, n);
  return lp_norm(srvt_lie(ha).values - srvt_lie(hc).values, PExponent(2.0));
}

double lie_distance_with_basepoint(const GroupCurve& a, const GroupCurve& c) {
  require(a.kind() == c.kind(), "cannot compare curves in different groups");
  const double base =
      group_log(c.element(0) * a.element(0).inverse()).coords().norm();
  return base + lie_distance(a, c);
}

GroupCurve pointwise_product(const GroupCurve& a, const GroupCurve& b) {
  require(a.kind() == b.kind(), "cannot multiply curves in different groups");
  require(a.segments() == b.segments(), "pointwise product needs matching grids");
  std::vector<GroupElement> g;
  g.reserve(static_cast<size_t>(a.samples()));
  for (int i = 0; i < a.samples(); ++i) {
    g.push_back(a.element(i) * b.element(i));
  }
  return GroupCurve(std::move(g));
}

GroupCurve pointwise_inverse(const GroupCurve& a) {
  std::vector<GroupElement> g;
  g.reserve(static_cast<size_t>(a.samples()));
  for (int i = 0; i < a.samples(); ++i) {
    g.push_back(a.element(i).inverse());
  }
  return GroupCurve(std::move(g));
}

GroupCurve right_translate(const GroupCurve& a, const GroupElement& g) {
  require(a.kind() == g.kind(), "translation element lives in a different group");
  std::vector<GroupElement> out;
  out.reserve(static_cast<size_t>(a.samples()));
  for (int i = 0; i < a.samples(); ++i) {
    out.push_back(a.element(i) * g);
  }
  return GroupCurve(std::move(out));
}

GroupElement group_eval(const GroupCurve& gamma, double t) {
  require(std::isfinite(t) && t >= 0.0 && t <= 1.0, "evaluation time outside [0,1]");
  const int n = gamma.segments();
  const double u = t * n;
  const int i = std::min(static_cast<int>(std::floor(u)), n - 1);
  const double s = u - i;
  if (s == 0.0) return gamma.element(i);
  if (s == 1.0) return gamma.element(i + 1);
  const GroupElement inc = gamma.element(i + 1) * gamma.element(i).inverse();
  try {
    return group_exp(group_log(inc), s) * gamma.element(i);
  } catch (const AngleNearPiError& e) {
    throw AngleNearPiError(e.angle(), i);
  }
}

GroupCurve resample_uniform(const GroupCurve& gamma, int segments) {
  require(segments >= 1, "resampling needs >= 1 segment");
  if (segments == gamma.segments()) return gamma;
  std::vector<GroupElement> g;
  g.reserve(static_cast<size_t>(segments) + 1);
  for (int i = 0; i <= segments; ++i) {
    g.push_back(group_eval(gamma, static_cast<double>(i) / segments));
  }
  return GroupCurve(std::move(g));
}

GroupElement so3_from_quaternion(const Eigen::Vector4d& wxyz, double drift_tolerance) {
  require(wxyz.allFinite(), "quaternion must be finite");
  const double drift = std::abs(wxyz.norm() - 1.0);
  require(drift <= drift_tolerance, "quaternion norm drifts too far from 1");
  const Eigen::Quaterniond q(wxyz(0), wxyz(1), wxyz(2), wxyz(3));
  return GroupElement(GroupKind::SO3, q.normalized().toRotationMatrix());
}

Eigen::Vector4d quaternion_from_so3(const GroupElement& g) {
  require(g.kind() == GroupKind::SO3, "expected a rotation");
  Eigen::Quaterniond q(Eigen::Matrix3d(g.matrix().topLeftCorner<3, 3>()));
  q.normalize();
  Eigen::Vector4d wxyz(q.w(), q.x(), q.y(), q.z());
  // Canonical sign: w >= 0, first nonzero component positive when w == 0.
  for (int k = 0; k < 4; ++k) {
    if (wxyz(k) != 0.0) {
      if (wxyz(k) < 0.0) wxyz = -wxyz;
      break;
    }
  }
  return wxyz;
}

GroupElement se3_from_quaternion_translation(const Eigen::Vector4d& wxyz,
                                             const Eigen::Vector3d& translation,
                                             double drift_tolerance) {
  require(translation.allFinite(), "translation must be finite");
  const GroupElement r = so3_from_quaternion(wxyz, drift_tolerance);
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(4, 4);
  m.topLeftCorner<3, 3>() = r.matrix();
  m.topRightCorner<3, 1>() = translation;
  return GroupElement(GroupKind::SE3, std::move(m));
}

}  // namespace srvt
