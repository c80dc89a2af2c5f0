#pragma once

#include <Eigen/Core>
#include <optional>
#include <span>
#include <vector>

namespace srvt {

/// Integrability exponent p >= 1 for the L^p and absolutely-continuous norms.
class PExponent {
 public:
  explicit PExponent(double p);
  double value() const noexcept { return p_; }

 private:
  double p_;
};

/// Uniformly sampled curve c : [0,1] -> R^d, stored as the d x (N+1) matrix
/// of samples c(i/N).  N >= 1 segments; all entries finite.
class SampledCurve {
 public:
  explicit SampledCurve(Eigen::MatrixXd values);

  int dim() const noexcept { return static_cast<int>(values_.rows()); }
  /// Number of grid subintervals N.
  int segments() const noexcept { return static_cast<int>(values_.cols()) - 1; }
  /// Number of grid points N+1.
  int samples() const noexcept { return static_cast<int>(values_.cols()); }

  const Eigen::MatrixXd& values() const noexcept { return values_; }
  Eigen::MatrixXd::ConstColXpr value(int i) const { return values_.col(i); }

  /// Piecewise-linear evaluation at t in [0,1].
  Eigen::VectorXd at(double t) const;

 private:
  Eigen::MatrixXd values_;
};

/// Piecewise-constant function f : [0,1) -> R^d with value f_i on
/// [i/N, (i+1)/N), stored as the d x N matrix of cell values.
class StepFunction {
 public:
  explicit StepFunction(Eigen::MatrixXd values);

  int dim() const noexcept { return static_cast<int>(values_.rows()); }
  int segments() const noexcept { return static_cast<int>(values_.cols()); }

  const Eigen::MatrixXd& values() const noexcept { return values_; }
  Eigen::MatrixXd::ConstColXpr value(int i) const { return values_.col(i); }

 private:
  Eigen::MatrixXd values_;
};

StepFunction operator+(const StepFunction& f, const StepFunction& g);
StepFunction operator-(const StepFunction& f, const StepFunction& g);
StepFunction operator*(double s, const StepFunction& f);

/// Forward-difference derivative: d_i = N * (c_{i+1} - c_i).  Exact inverse
/// of antiderivative.
StepFunction derivative(const SampledCurve& c);

/// Left-Riemann antiderivative with c(0) = start: c_{i+1} = c_i + f_i / N.
/// Exact inverse of derivative.
SampledCurve antiderivative(const StepFunction& f, const Eigen::VectorXd& start);

/// Discrete L^p norm (sum_i |f_i|^p / N)^(1/p).  When `weights` is given it
/// supplies precomputed pointwise norms |f_i| (e.g. Riemannian norms along a
/// curve); it must hold N strictly positive entries.
double lp_norm(const StepFunction& f, PExponent p,
               std::optional<std::span<const double>> weights = std::nullopt);

/// Discrete L^2 inner product sum_i <f_i, g_i> / N.
double l2_inner(const StepFunction& f, const StepFunction& g);

/// Absolutely-continuous norm |c(0)| + lp_norm(derivative(c), p).
double ac_norm(const SampledCurve& c, PExponent p);

/// max_i |c_i|.
double sup_norm(const SampledCurve& c);

/// Piecewise-linear evaluation at the given times (sorted, within [0,1]).
/// Returns one column per time.
Eigen::MatrixXd resample(const SampledCurve& c, std::span<const double> times);

/// Piecewise-linear resampling onto the uniform grid with `segments` cells.
SampledCurve resample_uniform(const SampledCurve& c, int segments);

/// Harmonizes two curves onto the finer of their two grids.
std::pair<SampledCurve, SampledCurve> harmonize(const SampledCurve& a,
                                                const SampledCurve& c);

}  // namespace srvt
