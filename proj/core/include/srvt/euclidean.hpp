#pragma once

#include <vector>

#include "srvt/curve.hpp"

namespace srvt {

/// Curve anchored at the origin: |c(0)| <= 1e-12.  On based curves the
/// transform distance below is a true metric rather than a pseudo-metric.
class BasedCurve {
 public:
  explicit BasedCurve(SampledCurve curve);
  const SampledCurve& curve() const noexcept { return curve_; }

 private:
  SampledCurve curve_;
};

/// Translates a curve so that it starts at the origin.
SampledCurve rebase(const SampledCurve& c);

/// Square root velocity transform q = sc(derivative(c)).
StepFunction srvt(const SampledCurve& c);

/// Inverse transform: antiderivative(unscale(q), start).  Exact inverse of
/// srvt up to floating-point rounding.
SampledCurve srvt_inverse(const StepFunction& q, const Eigen::VectorXd& start);

/// Pullback L^2 distance |srvt(a) - srvt(c)|_{L^2}.  Ignores start points
/// (pseudo-metric on unbased curves); grids are harmonized by resampling to
/// the finer one.
double distance(const SampledCurve& a, const SampledCurve& c);

/// distance(a, c) plus the start-point separation |a(0) - c(0)|.
double distance_with_basepoint(const SampledCurve& a, const SampledCurve& c);

/// Geodesic between two curves under the pullback metric: linear
/// interpolation of transforms and start points, mapped back through the
/// inverse transform.  Returns steps+1 curves from a to c.
std::vector<SampledCurve> geodesic(const SampledCurve& a, const SampledCurve& c,
                                   int steps);

}  // namespace srvt
