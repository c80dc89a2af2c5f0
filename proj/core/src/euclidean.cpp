#include "srvt/euclidean.hpp"

#include <stdexcept>

#include "srvt/scaling.hpp"

namespace srvt {

BasedCurve::BasedCurve(SampledCurve curve) : curve_(std::move(curve)) {
  if (curve_.value(0).norm() > 1e-12) {
    throw std::invalid_argument("based curve must start at the origin");
  }
}

SampledCurve rebase(const SampledCurve& c) {
  const Eigen::VectorXd c0 = c.value(0);
  Eigen::MatrixXd values = c.values();
  values.colwise() -= c0;
  return SampledCurve(std::move(values));
}

StepFunction srvt(const SampledCurve& c) { return scale(derivative(c)); }

SampledCurve srvt_inverse(const StepFunction& q, const Eigen::VectorXd& start) {
  return antiderivative(unscale(q), start);
}

double distance(const SampledCurve& a, const SampledCurve& c) {
  auto [ha, hc] = harmonize(a, c);
  return lp_norm(srvt(ha) - srvt(hc), PExponent(2.0));
}

double distance_with_basepoint(const SampledCurve& a, const SampledCurve& c) {
  return (a.value(0) - c.value(0)).norm() + distance(a, c);
}

std::vector<SampledCurve> geodesic(const SampledCurve& a, const SampledCurve& c,
                                   int steps) {
  if (steps < 1) throw std::invalid_argument("geodesic needs >= 1 step");
  auto [ha, hc] = harmonize(a, c);
  const StepFunction qa = srvt(ha);
  const StepFunction qc = srvt(hc);
  std::vector<SampledCurve> out;
  out.reserve(static_cast<size_t>(steps) + 1);
  for (int j = 0; j <= steps; ++j) {
    const double s = static_cast<double>(j) / steps;
    const StepFunction qs = (1.0 - s) * qa + s * qc;
    const Eigen::VectorXd start =
        (1.0 - s) * ha.value(0) + s * hc.value(0);
    out.push_back(srvt_inverse(qs, start));
  }
  return out;
}

}  // namespace srvt
