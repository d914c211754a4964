#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "mirrorsim/cli.hpp"
#include "mirrorsim/config.hpp"
#include "mirrorsim/csvio.hpp"
#include "mirrorsim/errors.hpp"
#include "mirrorsim/respcurve.hpp"
#include "mirrorsim/sweep.hpp"

using namespace mirrorsim;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / ("mirrorsim_test_" + name);
}

int run_cli(std::vector<const char*> argv) {
  argv.insert(argv.begin(), "mirrorsim");
  return cli_main(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("inclusive uniform ratio grid") {
  const std::vector<double> g = uniform_grid(0.98, 1.06, 0.005);
  REQUIRE(g.size() == 17);
  CHECK(g.front() == 0.98);
  CHECK(g.back() == doctest::Approx(1.06).epsilon(1e-12));
  for (size_t i = 1; i < g.size(); ++i)
    CHECK(g[i] - g[i - 1] == doctest::Approx(0.005).epsilon(1e-9));

  const std::vector<double> single = uniform_grid(1.0, 1.0, 0.1);
  REQUIRE(single.size() == 1);
  CHECK(single[0] == 1.0);

  CHECK_THROWS_AS(uniform_grid(1.0, 2.0, 0.0), ConfigError);
  CHECK_THROWS_AS(uniform_grid(2.0, 1.0, 0.1), ConfigError);
}

TEST_CASE("stock sweep grid densifies near the strong coupling ratios") {
  const std::vector<double> g = default_ratio_grid();
  REQUIRE(g.size() > 100);
  CHECK(g.front() == doctest::Approx(0.42).epsilon(1e-12));
  CHECK(g.back() >= 2.09 - 1e-9);
  for (size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);

  auto spacing_at = [&](double r) {
    double best = 1e9, at = 0.0;
    for (size_t i = 1; i < g.size(); ++i) {
      const double mid = 0.5 * (g[i] + g[i - 1]);
      if (std::abs(mid - r) < best) {
        best = std::abs(mid - r);
        at = g[i] - g[i - 1];
      }
    }
    return at;
  };
  CHECK(spacing_at(1.0) == doctest::Approx(0.0005).epsilon(1e-6));
  CHECK(spacing_at(2.0) == doctest::Approx(0.0005).epsilon(1e-6));
  CHECK(spacing_at(0.6) == doctest::Approx(0.01).epsilon(1e-6));
  CHECK(spacing_at(1.5) == doctest::Approx(0.01).epsilon(1e-6));
}

TEST_CASE("table files round-trip bit-exactly") {
  CsvTable t;
  t.format = "mirrorsim-test/1";
  t.columns = {"a", "b", "c"};
  t.data.resize(4, 3);
  t.data << M_PI, 1.0 / 3.0, -2.5e-17, 0.1, 1e-300, -0.0, 6.02214076e23,
      2.718281828459045, -1.0, 0.0, 2.2250738585072014e-308,
      1.7976931348623157e308;
  t.notes = {"first note", "second note"};

  const fs::path p = temp_file("roundtrip.csv");
  write_csv(p.string(), t);
  const CsvTable r = read_csv(p.string(), "mirrorsim-test/1");
  CHECK(r.format == t.format);
  CHECK(r.columns == t.columns);
  REQUIRE(r.data.rows() == 4);
  REQUIRE(r.data.cols() == 3);
  for (Eigen::Index i = 0; i < 4; ++i)
    for (Eigen::Index j = 0; j < 3; ++j) CHECK(r.data(i, j) == t.data(i, j));
  CHECK(r.notes == t.notes);
  fs::remove(p);
}

TEST_CASE("table reader rejects malformed input") {
  const fs::path p = temp_file("bad.csv");

  SUBCASE("wrong format tag") {
    CsvTable t;
    t.format = "mirrorsim-test/1";
    t.columns = {"x"};
    t.data.resize(1, 1);
    t.data << 1.0;
    write_csv(p.string(), t);
    CHECK_THROWS_AS(read_csv(p.string(), "mirrorsim-other/1"), FormatError);
    CHECK_NOTHROW(read_csv(p.string()));
  }
  SUBCASE("missing format line") {
    std::ofstream(p.string()) << "1.0,2.0\n";
    CHECK_THROWS_AS(read_csv(p.string()), FormatError);
  }
  SUBCASE("ragged row") {
    std::ofstream(p.string()) << "# format mirrorsim-test/1\n# columns x,y\n1.0\n";
    CHECK_THROWS_AS(read_csv(p.string()), FormatError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(read_csv((p / "nope").string()), ConfigError);
  }
  fs::remove(p);
}

TEST_CASE("mirror configuration file loads with the shipped defaults") {
  const MirrorConfig& cfg = mirrorsim::test::default_config();
  CHECK(cfg.params.inertia == 1e-12);
  CHECK(cfg.params.mass == 2.3e-6);
  CHECK(cfg.params.com_offset == 1e-4);
  CHECK(cfg.params.theta_ref == doctest::Approx(0.2617993877991494).epsilon(1e-15));
  CHECK(cfg.params.f_ref == 2000.0);
  CHECK(cfg.drive.hv_voltage == 100.0);
  CHECK(cfg.drive.duty == 0.6);
  CHECK(cfg.drive.kp == 0.3);
  CHECK(cfg.drive.ki == 0.05);
  CHECK(cfg.params.stiffness.parity() == Parity::even);
  CHECK(cfg.params.cap_deriv.parity() == Parity::odd);
  // Stiffness hardening: k(0.3) / k(0) = 1 + 2.45 * 0.09.
  CHECK(cfg.params.stiffness(0.3) / cfg.params.stiffness(0.0) ==
        doctest::Approx(1.2205).epsilon(1e-12));
}

TEST_CASE("mirror configuration rejects broken files") {
  const fs::path p = temp_file("broken.mirror");

  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_mirror_config((p / "nope").string()), ConfigError);
  }
  SUBCASE("not json") {
    std::ofstream(p.string()) << "not json at all {";
    CHECK_THROWS_AS(load_mirror_config(p.string()), ConfigError);
  }
  SUBCASE("wrong format tag") {
    std::ofstream(p.string()) << "{\"format\": \"mirror-params/99\"}";
    CHECK_THROWS_AS(load_mirror_config(p.string()), ConfigError);
  }
  SUBCASE("missing curves") {
    std::ofstream(p.string())
        << "{\"format\": \"mirror-params/1\", \"inertia\": 1e-12, \"mass\": 2.3e-6,"
           " \"com_offset\": 1e-4, \"theta_ref\": 0.26, \"f_ref\": 2000}";
    CHECK_THROWS_AS(load_mirror_config(p.string()), ConfigError);
  }
  fs::remove(p);
}

TEST_CASE("command line reports usage errors distinctly") {
  CHECK(run_cli({"--help"}) == 0);
  CHECK(run_cli({}) == 2);
  CHECK(run_cli({"bogus"}) == 2);
  CHECK(run_cli({"transient", "--no-such-flag"}) == 2);
  CHECK(run_cli({"sweep", "--axis", "Tq"}) == 2);
  // A valid parse with an unreadable parameter file is a runtime failure, not
  // a usage error.
  CHECK(run_cli({"respcurve", "--params", "/definitely/not/here.mirror"}) == 1);
}
