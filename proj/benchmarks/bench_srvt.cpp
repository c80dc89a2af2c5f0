// Microbenchmarks for the transform hot paths: euclidean and Lie round
// trips, the sphere transform, chart-ODE transport, and the alignment DP.
#include <benchmark/benchmark.h>

#include <Eigen/Core>
#include <memory>

#include "srvt/alignment.hpp"
#include "srvt/curve.hpp"
#include "srvt/euclidean.hpp"
#include "srvt/lie.hpp"
#include "srvt/manifold.hpp"
#include "support.hpp"

namespace {

void BM_EuclideanRoundTrip(benchmark::State& state) {
  testutil::Rng rng(11);
  const srvt::SampledCurve c =
      testutil::random_euclidean_curve(3, static_cast<int>(state.range(0)), rng);
  for (auto _ : state) {
    const srvt::StepFunction q = srvt::srvt(c);
    const srvt::SampledCurve back = srvt::srvt_inverse(q, c.value(0));
    benchmark::DoNotOptimize(back.values().data());
  }
}
BENCHMARK(BM_EuclideanRoundTrip)->Arg(256)->Arg(1024);

void BM_LieRoundTrip(benchmark::State& state) {
  testutil::Rng rng(12);
  const srvt::GroupCurve c = testutil::random_group_curve(
      srvt::GroupKind::SO3, static_cast<int>(state.range(0)), rng);
  for (auto _ : state) {
    const srvt::AlgebraStepFunction q = srvt::srvt_lie(c);
    const srvt::GroupCurve back = srvt::srvt_lie_inverse(q, c.element(0));
    benchmark::DoNotOptimize(back.element(back.segments()).matrix().data());
  }
}
BENCHMARK(BM_LieRoundTrip)->Arg(256);

void BM_SphereTransform(benchmark::State& state) {
  testutil::Rng rng(13);
  const auto sphere = std::make_shared<srvt::Sphere2>();
  const testutil::HemispherePath path(rng);
  const srvt::ManifoldCurve c(
      sphere, testutil::hemisphere_points(path, static_cast<int>(state.range(0))));
  const Eigen::Vector3d star(0.0, 0.0, 1.0);
  for (auto _ : state) {
    const srvt::ManifoldSrvtImage image = srvt::srvt_manifold(c, star);
    benchmark::DoNotOptimize(image.values.values().data());
  }
}
BENCHMARK(BM_SphereTransform)->Arg(512);

void BM_ChartTransportOde(benchmark::State& state) {
  testutil::Rng rng(14);
  const srvt::ChartManifold chart = srvt::stereographic_sphere();
  const testutil::HemispherePath path(rng);
  const int segments = static_cast<int>(state.range(0));
  const Eigen::MatrixXd points = testutil::hemisphere_points(path, segments);
  Eigen::MatrixXd chart_points(2, segments + 1);
  for (int i = 0; i <= segments; ++i) {
    chart_points.col(i) = srvt::stereographic_project(points.col(i));
  }
  const srvt::SampledCurve curve(chart_points);
  const Eigen::Vector3d p0 = points.col(0);
  Eigen::Vector3d v0(0.4, -0.3, 0.2);
  v0 -= v0.dot(p0) * p0;
  const Eigen::Vector2d z0 = srvt::stereographic_project_tangent(p0, v0);
  for (auto _ : state) {
    const auto transported = srvt::parallel_transport_ode(curve, z0, chart);
    benchmark::DoNotOptimize(transported.back().data());
  }
}
BENCHMARK(BM_ChartTransportOde)->Arg(512);

void BM_AlignmentDp(benchmark::State& state) {
  testutil::Rng rng(15);
  const int segments = static_cast<int>(state.range(0));
  const srvt::StepFunction qa = srvt::srvt(testutil::random_euclidean_curve(2, segments, rng));
  const srvt::StepFunction qc = srvt::srvt(testutil::random_euclidean_curve(2, segments, rng));
  for (auto _ : state) {
    const srvt::AlignmentResult result = srvt::optimal_warp(qa, qc);
    benchmark::DoNotOptimize(result.cost);
  }
}
BENCHMARK(BM_AlignmentDp)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
