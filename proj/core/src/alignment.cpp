#include "srvt/alignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "srvt/euclidean.hpp"

namespace srvt {
namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

constexpr double kEndpointTolerance = 1e-12;

// Integral over t in [t0, t1) of |qa_val - sqrt(m) * qc(phi(t))|^2 with
// phi(t) = phi0 + m (t - t0) and piecewise-constant qc.  Exact: both factors
// are piecewise constant between the merged breakpoints.
double segment_mismatch(const Eigen::Ref<const Eigen::VectorXd>& qa_val,
                        const StepFunction& qc, double t0, double t1, double phi0,
                        double m) {
  if (t1 <= t0) return 0.0;
  if (m == 0.0) {
    // sqrt(phi') vanishes, so the warped term contributes nothing.
    return qa_val.squaredNorm() * (t1 - t0);
  }
  const int nc = qc.segments();
  const double sqm = std::sqrt(m);
  const double phi1 = phi0 + m * (t1 - t0);
  double acc = 0.0;
  double left = phi0;
  int j = std::clamp(static_cast<int>(std::floor(left * nc)), 0, nc - 1);
  while (left < phi1) {
    const double cell_right = static_cast<double>(j + 1) / nc;
    const double right = (j >= nc - 1) ? phi1 : std::min(phi1, cell_right);
    if (right > left) {
      acc += (qa_val - sqm * qc.value(j)).squaredNorm() * (right - left);
    }
    if (right >= phi1) break;
    left = right;
    ++j;
  }
  return acc / m;
}

struct SlopeStep {
  int di;
  int dj;
  double slope;
  double tie;  // per-unit-time preference penalty, 0 for slope 1
};

SlopeStep slope_to_step(double slope) {
  require(std::isfinite(slope) && slope > 0.0, "slopes must be positive and finite");
  for (int di = 1; di <= 16; ++di) {
    const double dj_real = slope * di;
    const double dj_round = std::round(dj_real);
    if (dj_round >= 1.0 && dj_round <= 64.0 &&
        std::abs(dj_real - dj_round) <= 1e-9 * di) {
      int dj = static_cast<int>(dj_round);
      const int g = std::gcd(di, dj);
      return SlopeStep{di / g, dj / g, static_cast<double>(dj / g) / (di / g),
                       std::abs(std::log(slope))};
    }
  }
  throw std::invalid_argument("slope is not representable as a small fraction");
}

}  // namespace

WarpingFunction::WarpingFunction(std::vector<double> phi) : phi_(std::move(phi)) {
  require(phi_.size() >= 2, "warp needs at least one grid subinterval");
  for (double v : phi_) require(std::isfinite(v), "warp values must be finite");
  require(std::abs(phi_.front()) <= kEndpointTolerance, "warp must start at 0");
  require(std::abs(phi_.back() - 1.0) <= kEndpointTolerance, "warp must end at 1");
  phi_.front() = 0.0;
  phi_.back() = 1.0;
  for (size_t i = 0; i + 1 < phi_.size(); ++i) {
    require(phi_[i + 1] >= phi_[i], "warp values must be weakly increasing");
  }
}

WarpingFunction WarpingFunction::identity(int segments) {
  require(segments >= 1, "warp needs at least one grid subinterval");
  std::vector<double> phi(static_cast<size_t>(segments) + 1);
  for (int i = 0; i <= segments; ++i) {
    phi[static_cast<size_t>(i)] = static_cast<double>(i) / segments;
  }
  return WarpingFunction(std::move(phi));
}

double WarpingFunction::operator()(double t) const {
  require(std::isfinite(t) && t >= 0.0 && t <= 1.0, "evaluation time outside [0,1]");
  const int n = segments();
  const double u = t * n;
  const int i = std::min(static_cast<int>(std::floor(u)), n - 1);
  const double s = u - i;
  return (1.0 - s) * phi_[static_cast<size_t>(i)] + s * phi_[static_cast<size_t>(i) + 1];
}

WarpingFunction compose(const WarpingFunction& phi, const WarpingFunction& psi) {
  std::vector<double> out(psi.values().size());
  for (size_t i = 0; i < out.size(); ++i) {
    out[i] = phi(psi.values()[i]);
  }
  return WarpingFunction(std::move(out));
}

SampledCurve warp(const SampledCurve& c, const WarpingFunction& phi) {
  Eigen::MatrixXd values(c.dim(), phi.segments() + 1);
  for (int i = 0; i <= phi.segments(); ++i) {
    values.col(i) = c.at(phi.values()[static_cast<size_t>(i)]);
  }
  return SampledCurve(std::move(values));
}

GroupCurve warp(const GroupCurve& c, const WarpingFunction& phi) {
  std::vector<GroupElement> g;
  g.reserve(phi.values().size());
  for (double t : phi.values()) {
    g.push_back(group_eval(c, t));
  }
  return GroupCurve(std::move(g));
}

ManifoldCurve warp(const ManifoldCurve& c, const WarpingFunction& phi) {
  Eigen::MatrixXd points(c.points().rows(), phi.segments() + 1);
  for (int i = 0; i <= phi.segments(); ++i) {
    points.col(i) = c.at(phi.values()[static_cast<size_t>(i)]);
  }
  return ManifoldCurve(c.manifold_ptr(), std::move(points));
}

StepFunction srvt_warp_action(const StepFunction& q, const WarpingFunction& phi) {
  const int n = phi.segments();
  const int nq = q.segments();
  Eigen::MatrixXd out(q.dim(), n);
  for (int i = 0; i < n; ++i) {
    const double a = phi.values()[static_cast<size_t>(i)];
    const double b = phi.values()[static_cast<size_t>(i) + 1];
    const double slope = (b - a) * n;
    if (slope == 0.0) {
      out.col(i).setZero();
      continue;
    }
    // average of q over [a, b], assembled from the overlapped cells
    Eigen::VectorXd integral = Eigen::VectorXd::Zero(q.dim());
    double left = a;
    int j = std::clamp(static_cast<int>(std::floor(left * nq)), 0, nq - 1);
    while (left < b) {
      const double cell_right = static_cast<double>(j + 1) / nq;
      const double right = (j >= nq - 1) ? b : std::min(b, cell_right);
      if (right > left) integral += (right - left) * q.value(j);
      if (right >= b) break;
      left = right;
      ++j;
    }
    out.col(i) = std::sqrt(slope) * (integral / (b - a));
  }
  return StepFunction(std::move(out));
}

double warp_mismatch(const StepFunction& qa, const StepFunction& qc,
                     const WarpingFunction& phi) {
  require(qa.dim() == qc.dim(), "transforms have different dimensions");
  require(phi.segments() == qa.segments(), "warp grid must match the first transform");
  const int n = qa.segments();
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t0 = static_cast<double>(i) / n;
    const double t1 = static_cast<double>(i + 1) / n;
    const double a = phi.values()[static_cast<size_t>(i)];
    const double b = phi.values()[static_cast<size_t>(i) + 1];
    acc += segment_mismatch(qa.value(i), qc, t0, t1, a, (b - a) * n);
  }
  return acc;
}

AlignmentResult optimal_warp(const StepFunction& qa, const StepFunction& qc,
                             const AlignmentOptions& options) {
  require(qa.dim() == qc.dim(), "transforms have different dimensions");
  require(qa.segments() == qc.segments(),
          "transforms must share a grid (harmonize before aligning)");
  require(!options.slopes.empty(), "slope set must not be empty");
  const int n = qa.segments();
  std::vector<SlopeStep> steps;
  steps.reserve(options.slopes.size());
  for (double s : options.slopes) steps.push_back(slope_to_step(s));

  const int m = n + 1;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> cost(static_cast<size_t>(m) * m, inf);
  std::vector<double> tie(static_cast<size_t>(m) * m, 0.0);
  std::vector<int> parent(static_cast<size_t>(m) * m, -1);
  auto id = [m](int i, int j) { return static_cast<size_t>(i) * m + j; };

  cost[id(0, 0)] = 0.0;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      const double base = cost[id(i, j)];
      if (base == inf) continue;
      const double base_tie = tie[id(i, j)];
      for (const SlopeStep& st : steps) {
        const int ti = i + st.di;
        const int tj = j + st.dj;
        if (ti > n || tj > n) continue;
        double edge = 0.0;
        for (int k = 0; k < st.di; ++k) {
          const double t0 = static_cast<double>(i + k) / n;
          const double t1 = static_cast<double>(i + k + 1) / n;
          const double phi0 =
              static_cast<double>(j * st.di + st.dj * k) / (static_cast<double>(st.di) * n);
          edge += segment_mismatch(qa.value(i + k), qc, t0, t1, phi0, st.slope);
        }
        const double cand = base + edge;
        const double cand_tie = base_tie + st.tie * st.di;
        const size_t target = id(ti, tj);
        if (cand < cost[target] ||
            (cand == cost[target] && cand_tie < tie[target])) {
          cost[target] = cand;
          tie[target] = cand_tie;
          // the step uniquely determines the source node on backtracking
          parent[target] = static_cast<int>(&st - steps.data());
        }
      }
    }
  }

  require(cost[id(n, n)] != inf, "slope set admits no warp path across the grid");

  // Backtrack: parent stores the step index used to enter each node.
  std::vector<double> phi(static_cast<size_t>(n) + 1, 0.0);
  {
    int i = n;
    int j = n;
    while (i > 0 || j > 0) {
      const int sidx = parent[id(i, j)];
      require(sidx >= 0, "alignment backtracking failed");
      const SlopeStep& st = steps[static_cast<size_t>(sidx)];
      const int si = i - st.di;
      const int sj = j - st.dj;
      for (int k = 0; k <= st.di; ++k) {
        phi[static_cast<size_t>(si + k)] =
            static_cast<double>(sj * st.di + st.dj * k) /
            (static_cast<double>(st.di) * n);
      }
      i = si;
      j = sj;
    }
  }
  return AlignmentResult{WarpingFunction(std::move(phi)),
                         std::sqrt(cost[id(n, n)])};
}

double shape_distance(const StepFunction& qa, const StepFunction& qc,
                      const AlignmentOptions& options) {
  const double forward = optimal_warp(qa, qc, options).cost;
  const double backward = optimal_warp(qc, qa, options).cost;
  return 0.5 * (forward + backward);
}

double shape_distance(const SampledCurve& a, const SampledCurve& c,
                      const AlignmentOptions& options) {
  auto [ha, hc] = harmonize(a, c);
  return shape_distance(srvt(ha), srvt(hc), options);
}

double shape_distance(const GroupCurve& a, const GroupCurve& c,
                      const AlignmentOptions& options) {
  require(a.kind() == c.kind(), "cannot compare curves in different groups");
  const int n = std::max(a.segments(), c.segments());
  return shape_distance(srvt_lie(resample_uniform(a, n)).values,
                        srvt_lie(resample_uniform(c, n)).values, options);
}

double shape_distance(const ManifoldCurve& a, const ManifoldCurve& c,
                      const Eigen::VectorXd& star, const AlignmentOptions& options) {
  require(&a.manifold() == &c.manifold(),
          "curves must share the same manifold backend instance");
  const int n = std::max(a.segments(), c.segments());
  return shape_distance(srvt_manifold(resample_uniform(a, n), star).values,
                        srvt_manifold(resample_uniform(c, n), star).values, options);
}

}  // namespace srvt
