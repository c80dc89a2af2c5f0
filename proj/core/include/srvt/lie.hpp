#pragma once

#include <Eigen/Core>
#include <vector>

#include "srvt/curve.hpp"

namespace srvt {

/// Rotation angles closer to pi than this have no preferred log branch and
/// make group_log throw AngleNearPiError.
inline constexpr double kAngleBranchTolerance = 1e-6;

enum class GroupKind { SO3, SE3 };

/// Matrix size (3 or 4) of a group element of the given kind.
int group_matrix_size(GroupKind kind);
/// Lie algebra coordinate count (3 or 6).
int algebra_dim(GroupKind kind);

/// Element of SO(3) (3x3 orthogonal, det 1) or SE(3) (4x4 homogeneous rigid
/// motion).  Constructors validate |M^T M - I|_F <= 1e-9 on the rotation
/// block, det >= 1 - 1e-9, and the exact (0,0,0,1) bottom row for SE(3).
class GroupElement {
 public:
  GroupElement(GroupKind kind, Eigen::MatrixXd matrix);
  static GroupElement identity(GroupKind kind);

  GroupKind kind() const noexcept { return kind_; }
  const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }

  GroupElement inverse() const;

 private:
  GroupKind kind_;
  Eigen::MatrixXd matrix_;
};

GroupElement operator*(const GroupElement& a, const GroupElement& b);

/// Lie algebra element in canonical coordinates: so(3) as the rotation vector
/// (w1,w2,w3); se(3) as (w1,w2,w3,v1,v2,v3) with the rotation part first.
/// Norms and inner products on the algebra are Euclidean on these
/// coordinates; other inner products can be realized by rescaling the
/// coordinates on the way in and out (a linear isometry), so no runtime knob
/// is provided.
class AlgebraElement {
 public:
  AlgebraElement(GroupKind kind, Eigen::VectorXd coords);

  GroupKind kind() const noexcept { return kind_; }
  const Eigen::VectorXd& coords() const noexcept { return coords_; }

 private:
  GroupKind kind_;
  Eigen::VectorXd coords_;
};

/// Group exponential exp(t * xi): Rodrigues' formula on SO(3); the
/// closed-form homogeneous exponential with the V-matrix on SE(3).
GroupElement group_exp(const AlgebraElement& xi, double t = 1.0);

/// Principal group logarithm.  Throws AngleNearPiError when the rotation
/// angle exceeds pi - kAngleBranchTolerance.
AlgebraElement group_log(const GroupElement& g);

/// Uniformly sampled curve in a matrix Lie group (N+1 elements).
class GroupCurve {
 public:
  explicit GroupCurve(std::vector<GroupElement> elements);

  GroupKind kind() const noexcept { return elements_.front().kind(); }
  int segments() const noexcept { return static_cast<int>(elements_.size()) - 1; }
  int samples() const noexcept { return static_cast<int>(elements_.size()); }
  const GroupElement& element(int i) const { return elements_.at(static_cast<size_t>(i)); }

 private:
  std::vector<GroupElement> elements_;
};

/// Piecewise-constant Lie-algebra-valued function in canonical coordinates.
struct AlgebraStepFunction {
  GroupKind kind;
  StepFunction values;

  AlgebraStepFunction(GroupKind k, StepFunction v);
};

/// Discrete right logarithmic derivative xi_i = N * log(g_{i+1} * g_i^{-1}).
/// AngleNearPiError carries the offending subinterval; refine N to resolve.
AlgebraStepFunction right_log_derivative(const GroupCurve& gamma);

/// Evolution operator (Lie-Euler from the left): g_{i+1} = exp(xi_i / N) g_i.
/// Exact inverse of right_log_derivative on step functions.
GroupCurve evolve(const AlgebraStepFunction& xi, const GroupElement& start);

/// Lie group SRVT: scale(right_log_derivative(gamma)).
AlgebraStepFunction srvt_lie(const GroupCurve& gamma);

/// Inverse Lie group SRVT: evolve(unscale(eta), start).
GroupCurve srvt_lie_inverse(const AlgebraStepFunction& eta, const GroupElement& start);

/// Pullback L^2 distance |srvt_lie(a) - srvt_lie(c)|_{L^2}; invariant under
/// constant right translation.  Grids are harmonized by geodesic resampling.
double lie_distance(const GroupCurve& a, const GroupCurve& c);

/// lie_distance plus the start separation |log(c_0 * a_0^{-1})|.
double lie_distance_with_basepoint(const GroupCurve& a, const GroupCurve& c);

/// Pointwise product / inverse / right translation of sampled group curves.
GroupCurve pointwise_product(const GroupCurve& a, const GroupCurve& b);
GroupCurve pointwise_inverse(const GroupCurve& a);
GroupCurve right_translate(const GroupCurve& a, const GroupElement& g);

/// Piecewise-geodesic evaluation at t in [0,1]:
/// exp(s * log(g_{i+1} g_i^{-1})) g_i on the cell containing t.
GroupElement group_eval(const GroupCurve& gamma, double t);

/// Piecewise-geodesic resampling onto a uniform grid.
GroupCurve resample_uniform(const GroupCurve& gamma, int segments);

/// Rotation from a unit quaternion (w,x,y,z).  Quaternions whose norm drifts
/// from 1 by more than `drift_tolerance` are rejected; smaller drift is
/// normalized away.
GroupElement so3_from_quaternion(const Eigen::Vector4d& wxyz,
                                 double drift_tolerance = 1e-6);
/// Canonical unit quaternion (w,x,y,z) with w >= 0.
Eigen::Vector4d quaternion_from_so3(const GroupElement& g);

/// Rigid motion from unit quaternion (w,x,y,z) and translation (x,y,z).
GroupElement se3_from_quaternion_translation(const Eigen::Vector4d& wxyz,
                                             const Eigen::Vector3d& translation,
                                             double drift_tolerance = 1e-6);

}  // namespace srvt
