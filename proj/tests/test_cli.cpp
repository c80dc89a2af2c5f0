// End-to-end tests for the srvt command line tool: golden outputs, exit
// codes, and byte determinism across runs.  The binary path is injected by
// the build as SRVT_CLI_PATH.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Core>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "srvt/io.hpp"
#include "support.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = SRVT_CLI_PATH;

const fs::path& scratch() {
  static const fs::path dir = testutil::scratch_dir("cli");
  return dir;
}

std::string quoted(const fs::path& p) { return "'" + p.string() + "'"; }

/// Runs the tool with stderr merged into the captured stream.
testutil::CommandResult run_cli(const std::string& args) {
  return testutil::run_command("'" + kCli + "' " + args + " 2>&1");
}

fs::path write_text(const std::string& name, const std::string& text) {
  const fs::path path = scratch() / name;
  std::ofstream out(path, std::ios::binary);
  out << text;
  return path;
}

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Axis-aligned sample tables for the straight line t * speed * axis on a
// 4-segment grid; every entry is a small integer, so files and transforms
// are exact in floating point.
const fs::path& line_x() {
  static const fs::path p = write_text("line_x.csv", "0,0\n1,0\n2,0\n3,0\n4,0\n");
  return p;
}
const fs::path& line_y() {
  static const fs::path p = write_text("line_y.csv", "0,0\n0,1\n0,2\n0,3\n0,4\n");
  return p;
}

/// Meridian arc of angular speed 0.5 from the north pole toward `axis` (0 = x,
/// 1 = y), written as a sphere2 JSON file.
fs::path meridian_file(const std::string& name, int axis, int segments) {
  Eigen::MatrixXd points(3, segments + 1);
  for (int i = 0; i <= segments; ++i) {
    const double angle = 0.5 * static_cast<double>(i) / segments;
    points.col(i).setZero();
    points(axis, i) = std::sin(angle);
    points(2, i) = std::cos(angle);
  }
  const fs::path path = scratch() / name;
  srvt::write_curve_file(path, srvt::sphere2_file(points));
  return path;
}

}  // namespace

TEST_CASE("distance prints twelve significant digits deterministically") {
  const std::string cmd = "distance " + quoted(line_x()) + " " + quoted(line_y());
  const auto first = run_cli(cmd);
  CHECK(first.exit_code == 0);
  CHECK(first.output == "2.82842712475\n");

  const auto second = run_cli(cmd);
  CHECK(second.exit_code == 0);
  CHECK(second.output == first.output);

  // Same lines, explicitly plain: both start at the origin.
  const auto plain = run_cli(cmd + " --metric plain");
  CHECK(plain.exit_code == 0);
  CHECK(plain.output == "2.82842712475\n");

  // Resampling a straight line on a dyadic grid is exact.
  const auto resampled = run_cli(cmd + " --samples 8");
  CHECK(resampled.exit_code == 0);
  CHECK(resampled.output == "2.82842712475\n");
}

TEST_CASE("plain and based metrics differ by the start gap") {
  const fs::path shifted = write_text("line_x_shifted.csv", "3,4\n4,4\n5,4\n6,4\n7,4\n");
  const std::string pair = quoted(line_x()) + " " + quoted(shifted);

  const auto plain = run_cli("distance " + pair + " --metric plain");
  CHECK(plain.exit_code == 0);
  CHECK(plain.output == "0.000000000000\n");

  const auto based = run_cli("distance " + pair + " --metric based");
  CHECK(based.exit_code == 0);
  CHECK(based.output == "5\n");
}

TEST_CASE("shape metric reports zero for identical curves") {
  const auto result = run_cli("distance " + quoted(line_x()) + " " + quoted(line_x()) +
                              " --metric shape");
  CHECK(result.exit_code == 0);
  CHECK(result.output == "0.000000000000\n");
}

TEST_CASE("sphere distances use the reference point") {
  const fs::path a = meridian_file("meridian_x.json", 0, 8);
  const fs::path c = meridian_file("meridian_y.json", 1, 8);
  const std::string pair = quoted(a) + " " + quoted(c) +
                           " --kind sphere2 --star 0,0,1";

  // Perpendicular meridians of speed 1/2: transforms are constants of norm
  // sqrt(1/2) along perpendicular frame axes, so the distance is exactly 1.
  const auto plain = run_cli("distance " + pair + " --metric plain");
  CHECK(plain.exit_code == 0);
  CHECK(plain.output == "1\n");

  // Both curves start at the reference point, so the basepoint gap is zero.
  const auto based = run_cli("distance " + pair + " --metric based");
  CHECK(based.exit_code == 0);
  CHECK(based.output == "1\n");
}

TEST_CASE("matrix assembles the pairwise distances") {
  const fs::path dir = scratch() / "matrix_input";
  fs::create_directories(dir);
  std::ofstream(dir / "a.csv") << testutil::read_file(line_x());
  std::ofstream(dir / "b.csv") << testutil::read_file(line_y());
  std::ofstream(dir / "c.csv") << "0,0\n0.75,1\n1.5,2\n2.25,3\n3,4\n";

  auto distance_of = [&](const std::string& x, const std::string& y) {
    const auto r = run_cli("distance " + quoted(dir / x) + " " + quoted(dir / y));
    REQUIRE(r.exit_code == 0);
    std::string value = r.output;
    REQUIRE(!value.empty());
    value.pop_back();  // trailing newline
    return value;
  };
  const std::string ab = distance_of("a.csv", "b.csv");
  const std::string ac = distance_of("a.csv", "c.csv");
  const std::string bc = distance_of("b.csv", "c.csv");

  const fs::path out = scratch() / "matrix.csv";
  const auto run = run_cli("matrix " + quoted(dir) + " --out " + quoted(out));
  CHECK(run.exit_code == 0);
  const std::string expected = "a.csv,b.csv,c.csv\n"                  //
                               "0.000000000000," + ab + "," + ac + "\n" +  //
                               ab + ",0.000000000000," + bc + "\n" +       //
                               ac + "," + bc + ",0.000000000000\n";
  CHECK(testutil::read_file(out) == expected);

  // Rerunning with a worker pool must reproduce the bytes exactly.
  const fs::path again = scratch() / "matrix_again.csv";
  const auto rerun = run_cli("matrix " + quoted(dir) + " --out " + quoted(again));
  CHECK(rerun.exit_code == 0);
  CHECK(testutil::read_file(again) == expected);
}

TEST_CASE("matrix reports unloadable files with exit 2") {
  const fs::path dir = scratch() / "matrix_broken";
  fs::create_directories(dir);
  std::ofstream(dir / "a.csv") << testutil::read_file(line_x());
  std::ofstream(dir / "broken.json") << "{ nope";
  const auto run = run_cli("matrix " + quoted(dir) + " --out " +
                           quoted(scratch() / "unused.csv"));
  CHECK(run.exit_code == 2);
  CHECK(run.output.find("error:") != std::string::npos);
}

TEST_CASE("geodesic emits the interpolating family between two lines") {
  const fs::path out = scratch() / "geodesic_lines";
  const auto run = run_cli("geodesic " + quoted(line_x()) + " " + quoted(line_y()) +
                           " --steps 2 --out " + quoted(out));
  CHECK(run.exit_code == 0);

  // Endpoints reproduce the inputs byte for byte (the grid is dyadic, so the
  // transform/inverse pair is exact and the writer prints integers).
  CHECK(testutil::read_file(out / "geodesic_000.csv") == testutil::read_file(line_x()));
  CHECK(testutil::read_file(out / "geodesic_002.csv") == testutil::read_file(line_y()));

  // The midpoint inverts the averaged transform (1,1) per cell: every update
  // adds h * (1,1) * sqrt(2), giving the diagonal line through sqrt(2)*(1,1).
  std::string expected;
  const double step = 0.25 * std::sqrt(2.0);
  double x = 0.0;
  for (int i = 0; i <= 4; ++i) {
    expected += fmt17(x) + "," + fmt17(x) + "\n";
    x += step;
  }
  CHECK(testutil::read_file(out / "geodesic_001.csv") == expected);

  int files = 0;
  for (const auto& entry : fs::directory_iterator(out)) {
    (void)entry;
    ++files;
  }
  CHECK(files == 3);
}

TEST_CASE("sphere geodesics stay on the sphere and hit the endpoints") {
  const fs::path a = meridian_file("geo_sphere_a.json", 0, 8);
  const fs::path c = meridian_file("geo_sphere_c.json", 1, 8);
  const fs::path out = scratch() / "geodesic_sphere";
  const auto run = run_cli("geodesic " + quoted(a) + " " + quoted(c) +
                           " --steps 2 --out " + quoted(out) +
                           " --kind sphere2 --star 0,0,1");
  CHECK(run.exit_code == 0);

  // Re-reading validates unit norms; the endpoint file reproduces the input
  // curve up to round-off of the transform/inverse pair.
  const srvt::CurveFile start = srvt::read_curve_file(out / "geodesic_000.json");
  REQUIRE(start.kind == srvt::CurveKind::Sphere2);
  const srvt::CurveFile input = srvt::read_curve_file(a);
  CHECK(testutil::max_column_distance(std::get<Eigen::MatrixXd>(start.payload),
                                      std::get<Eigen::MatrixXd>(input.payload)) <= 1e-9);

  const srvt::CurveFile mid = srvt::read_curve_file(out / "geodesic_001.json");
  REQUIRE(mid.kind == srvt::CurveKind::Sphere2);
  CHECK(std::get<Eigen::MatrixXd>(mid.payload).cols() == 9);
}

TEST_CASE("align reports zero twice for identical curves") {
  const fs::path copy = write_text("line_x_copy.csv", testutil::read_file(line_x()));
  const fs::path out = scratch() / "align_identity";
  const auto run = run_cli("align " + quoted(line_x()) + " " + quoted(copy) +
                           " --out " + quoted(out));
  CHECK(run.exit_code == 0);
  CHECK(run.output == "unaligned=0.000000000000\naligned=0.000000000000\n");

  // The optimal warp of equal curves is the identity, which acts bitwise.
  CHECK(testutil::read_file(out / "aligned.csv") == testutil::read_file(line_x()));
  const srvt::WarpingFunction phi = srvt::read_warp_file(out / "warp.json");
  REQUIRE(phi.segments() == 4);
  for (int i = 0; i <= 4; ++i) {
    CHECK(phi.values()[static_cast<size_t>(i)] == static_cast<double>(i) / 4);
  }
}

TEST_CASE("align improves a reparametrized copy") {
  testutil::Rng rng(606);
  const srvt::SampledCurve curve = testutil::random_euclidean_curve(2, 32, rng);
  std::vector<double> gamma(33);
  for (int i = 0; i <= 32; ++i) {
    const double t = static_cast<double>(i) / 32;
    gamma[static_cast<size_t>(i)] = t * t;
  }
  const srvt::SampledCurve warped = srvt::warp(curve, srvt::WarpingFunction(gamma));

  const fs::path file_a = scratch() / "smooth.csv";
  const fs::path file_c = scratch() / "smooth_warped.csv";
  srvt::write_curve_file(file_a, srvt::euclidean_file(curve));
  srvt::write_curve_file(file_c, srvt::euclidean_file(warped));

  const fs::path out = scratch() / "align_warped";
  const auto run = run_cli("align " + quoted(file_a) + " " + quoted(file_c) +
                           " --out " + quoted(out));
  CHECK(run.exit_code == 0);

  // Exactly two key=value lines.
  double unaligned = -1.0;
  double aligned = -1.0;
  REQUIRE(std::sscanf(run.output.c_str(), "unaligned=%lf\naligned=%lf\n",
                      &unaligned, &aligned) == 2);
  CHECK(std::count(run.output.begin(), run.output.end(), '\n') == 2);
  CHECK(unaligned > 0.0);
  CHECK(aligned <= unaligned);

  // The emitted artifacts load back cleanly.
  const srvt::CurveFile back = srvt::read_curve_file(out / "aligned.csv");
  CHECK(back.kind == srvt::CurveKind::Euclidean);
  CHECK(srvt::read_warp_file(out / "warp.json").segments() == 32);
}

TEST_CASE("validation problems exit with code 2") {
  const fs::path missing = scratch() / "missing.csv";
  const auto no_file = run_cli("distance " + quoted(missing) + " " + quoted(line_x()));
  CHECK(no_file.exit_code == 2);
  CHECK(no_file.output.find("cannot open file") != std::string::npos);

  const fs::path sphere = meridian_file("mismatch_sphere.json", 0, 4);
  const auto no_geometry = run_cli("distance " + quoted(line_x()) + " " + quoted(sphere));
  CHECK(no_geometry.exit_code == 2);
  CHECK(no_geometry.output.find("require --kind and --star") != std::string::npos);

  const auto wrong_kind = run_cli("distance " + quoted(line_x()) + " " +
                                  quoted(line_y()) + " --kind so3");
  CHECK(wrong_kind.exit_code == 2);
  CHECK(wrong_kind.output.find("does not match --kind so3") != std::string::npos);

  const std::string sphere_pair = quoted(sphere) + " " + quoted(sphere);
  const auto no_star = run_cli("distance " + sphere_pair + " --kind sphere2");
  CHECK(no_star.exit_code == 2);
  CHECK(no_star.output.find("--star is required") != std::string::npos);

  const auto bad_star = run_cli("distance " + sphere_pair + " --kind sphere2 --star 0,0,2");
  CHECK(bad_star.exit_code == 2);
  CHECK(bad_star.output.find("unit vector") != std::string::npos);

  const auto bad_chart = run_cli("distance " + sphere_pair + " --kind chart:nope --star 0,0");
  CHECK(bad_chart.exit_code == 2);
  CHECK(bad_chart.output.find("unknown chart geometry") != std::string::npos);

  const fs::path line3 = write_text("line_3d.csv", "0,0,0\n1,1,1\n");
  const auto bad_dim = run_cli("distance " + quoted(line_x()) + " " + quoted(line3));
  CHECK(bad_dim.exit_code == 2);
  CHECK(bad_dim.output.find("different dimensions") != std::string::npos);
}

TEST_CASE("geometry obstructions exit with code 3") {
  const fs::path bad = write_text(
      "sphere_antipode.json",
      R"({"kind":"sphere2","samples":[[1,0,0],[0,0,-1]]})");
  const auto run = run_cli("distance " + quoted(bad) + " " + quoted(bad) +
                           " --kind sphere2 --star 0,0,1");
  CHECK(run.exit_code == 3);
  CHECK(run.output.find("error:") != std::string::npos);
  CHECK(run.output.find("at grid index 1") != std::string::npos);

  // The matrix command distinguishes geometry failures the same way.
  const fs::path dir = scratch() / "matrix_cut";
  fs::create_directories(dir);
  std::ofstream(dir / "good.json") << testutil::read_file(meridian_file("tmp_good.json", 0, 4));
  std::ofstream(dir / "bad.json") << testutil::read_file(bad);
  const auto matrix = run_cli("matrix " + quoted(dir) + " --out " +
                              quoted(scratch() / "cut.csv") +
                              " --kind sphere2 --star 0,0,1");
  CHECK(matrix.exit_code == 3);
  CHECK(matrix.output.find("error:") != std::string::npos);
  CHECK(matrix.output.find(" vs ") != std::string::npos);
}
