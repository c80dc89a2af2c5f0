#pragma once

#include "srvt/curve.hpp"

namespace srvt {

/// Vanishing threshold below which a cell value is treated as exactly zero by
/// the scaling maps; keeps v / sqrt(|v|) from overflowing near denormals.
inline constexpr double kScalingZeroThreshold = 1e-300;

/// Pointwise scaling map sc(v) = v / sqrt(|v|) (0 where v = 0).  Carries
/// L^1 data to L^2: |scale(f)|_{L^2}^2 = |f|_{L^1}.
StepFunction scale(const StepFunction& f);

/// Pointwise inverse sc^{-1}(q) = q * |q| (0 where q = 0).
StepFunction unscale(const StepFunction& q);

}  // namespace srvt
