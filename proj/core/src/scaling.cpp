#include "srvt/scaling.hpp"

#include <cmath>

namespace srvt {

StepFunction scale(const StepFunction& f) {
  Eigen::MatrixXd out(f.dim(), f.segments());
  for (int i = 0; i < f.segments(); ++i) {
    const double n = f.value(i).norm();
    if (n < kScalingZeroThreshold) {
      out.col(i).setZero();
    } else {
      out.col(i) = f.value(i) / std::sqrt(n);
    }
  }
  return StepFunction(std::move(out));
}

StepFunction unscale(const StepFunction& q) {
  Eigen::MatrixXd out(q.dim(), q.segments());
  for (int i = 0; i < q.segments(); ++i) {
    const double n = q.value(i).norm();
    if (n < kScalingZeroThreshold) {
      out.col(i).setZero();
    } else {
      out.col(i) = q.value(i) * n;
    }
  }
  return StepFunction(std::move(out));
}

}  // namespace srvt
