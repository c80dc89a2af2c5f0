#pragma once

#include <vector>

#include "srvt/curve.hpp"
#include "srvt/lie.hpp"
#include "srvt/manifold.hpp"

namespace srvt {

/// Weakly increasing reparametrization of [0,1] sampled on the uniform grid:
/// phi_0 = 0, phi_N = 1, phi_{i+1} >= phi_i.
class WarpingFunction {
 public:
  explicit WarpingFunction(std::vector<double> phi);
  static WarpingFunction identity(int segments);

  int segments() const noexcept { return static_cast<int>(phi_.size()) - 1; }
  const std::vector<double>& values() const noexcept { return phi_; }
  /// Piecewise-linear evaluation at t in [0,1].
  double operator()(double t) const;

 private:
  std::vector<double> phi_;
};

/// Composition sample (phi o psi)_i = phi(psi_i).
WarpingFunction compose(const WarpingFunction& phi, const WarpingFunction& psi);

/// Reparametrized curve c o phi, evaluated by the curve kind's interpolation
/// (piecewise linear / piecewise geodesic).  The output lives on phi's grid.
SampledCurve warp(const SampledCurve& c, const WarpingFunction& phi);
GroupCurve warp(const GroupCurve& c, const WarpingFunction& phi);
ManifoldCurve warp(const ManifoldCurve& c, const WarpingFunction& phi);

/// SRVT-space action of a warp: q -> sqrt(phi') (q o phi), with q o phi
/// averaged over the image interval on each cell (exact for grid-aligned
/// warps).  Preserves the L^2 norm in the continuum.
StepFunction srvt_warp_action(const StepFunction& q, const WarpingFunction& phi);

/// Integrated squared mismatch |qa - sqrt(phi') (qc o phi)|_{L^2}^2 for a
/// piecewise-linear warp on the grid lattice; evaluated exactly.
double warp_mismatch(const StepFunction& qa, const StepFunction& qc,
                     const WarpingFunction& phi);

struct AlignmentOptions {
  /// Admissible local slopes for the dynamic-programming search.  Each slope
  /// must be representable as a small positive fraction.
  std::vector<double> slopes = {1.0 / 3.0, 0.5, 2.0 / 3.0, 1.0, 1.5, 2.0, 3.0};
};

struct AlignmentResult {
  WarpingFunction phi;
  /// Minimized L^2 mismatch (same units as lp_norm of the transforms).
  double cost;
};

/// Dynamic-programming search over piecewise-linear warps on the
/// (N+1) x (N+1) grid lattice with the admissible slope set, minimizing
/// |qa - sqrt(phi') (qc o phi)|_{L^2}.  Ties prefer slope-1 edges.
AlignmentResult optimal_warp(const StepFunction& qa, const StepFunction& qc,
                             const AlignmentOptions& options = {});

/// Reparametrization-quotient distance of SRVT images: the two one-sided
/// alignment costs averaged over both argument orders.
double shape_distance(const StepFunction& qa, const StepFunction& qc,
                      const AlignmentOptions& options = {});

/// Shape distances of curves: SRVT first, then the quotient distance above.
double shape_distance(const SampledCurve& a, const SampledCurve& c,
                      const AlignmentOptions& options = {});
double shape_distance(const GroupCurve& a, const GroupCurve& c,
                      const AlignmentOptions& options = {});
double shape_distance(const ManifoldCurve& a, const ManifoldCurve& c,
                      const Eigen::VectorXd& star, const AlignmentOptions& options = {});

}  // namespace srvt
