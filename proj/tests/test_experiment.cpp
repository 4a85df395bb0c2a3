#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <string>

#include "doctest.h"
#include "json.hpp"

#include "dunkl/experiment.hpp"
#include "dunkl/grid.hpp"
#include "dunkl/report.hpp"

using namespace dunkl;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

std::shared_ptr<Axis> axis_ptr(Axis a) {
  return std::make_shared<Axis>(std::move(a));
}

std::string scratch_dir() {
  static int counter = 0;
  auto dir = std::filesystem::temp_directory_path() /
             ("dunkl_exp_test_" + std::to_string(::getpid()) + "_" +
              std::to_string(counter++));
  std::filesystem::create_directories(dir);
  return dir.string();
}

}  // namespace

TEST_CASE("config defaults and a full parse") {
  Config def;
  CHECK(def.dimension == 1);
  CHECK(def.multiplicities == std::vector<double>{1.0});
  CHECK(def.alphas == std::vector<double>{0.5, 1.0});
  CHECK(def.p_exponents.size() == 3);
  CHECK(def.p_exponents[2] == kInf);
  CHECK(def.u0_preset == "bump");
  CHECK_FALSE(def.has("grid.n"));

  Config cfg = Config::parse_text(
      "# comment line\n"
      "dimension = 2\n"
      "multiplicities = 0.5, 1.0   # trailing comment\n"
      "grid.n = 128\n"
      "grid.L = 24.5\n"
      "alpha = 0.5 0.75 1\n"
      "p = 1, 2, inf\n"
      "q = 1.5\n"
      "t.min = 2\n"
      "t.max = 200\n"
      "t.points = 9\n"
      "u0.preset = dipole-plus-mass\n"
      "u0.scale = 0.25\n"
      "nonlinear.p = 2.5\n"
      "nonlinear.dt = 0.005\n"
      "nonlinear.t_end = 8\n"
      "output.dir = /tmp/somewhere\n");
  CHECK(cfg.dimension == 2);
  CHECK(cfg.multiplicities == std::vector<double>{0.5, 1.0});
  CHECK(cfg.grid_n == 128);
  CHECK(cfg.grid_L == 24.5);
  CHECK(cfg.alphas == std::vector<double>{0.5, 0.75, 1.0});
  CHECK(cfg.p_exponents[2] == kInf);
  CHECK(cfg.q_exponents == std::vector<double>{1.5});
  CHECK(cfg.t_min == 2.0);
  CHECK(cfg.t_points == 9);
  CHECK(cfg.u0_preset == "dipole-plus-mass");
  CHECK(cfg.u0_scale == 0.25);
  CHECK(cfg.nl_p == 2.5);
  CHECK(cfg.nl_dt == 0.005);
  CHECK(cfg.nl_t_end == 8.0);
  CHECK(cfg.output_dir == "/tmp/somewhere");
  CHECK(cfg.has("grid.n"));
  CHECK(cfg.has("t.points"));

  // resolved() carries every documented key, in order, with values
  auto kv = cfg.resolved();
  REQUIRE(kv.size() == 16);
  CHECK(kv[0].first == "dimension");
  CHECK(kv[0].second == "2");
  CHECK(kv[1].second == "0.5 1");
  CHECK(kv[5] == std::pair<std::string, std::string>("p", "1 2 inf"));
  CHECK(kv[15].second == "/tmp/somewhere");

  // "auto" forms
  Config aut = Config::parse_text("grid.L = auto\n");
  CHECK(aut.grid_L == 0.0);
  CHECK(aut.resolved()[3].second == "auto");
}

TEST_CASE("config rejection names the offending field") {
  auto field_of = [](const std::string& text) {
    try {
      Config::parse_text(text);
    } catch (const ConfigError& e) {
      return e.field;
    }
    return std::string("(no error)");
  };
  CHECK(field_of("bogus.key = 1\n") == "bogus.key");
  CHECK(field_of("alpha = 1.5\n") == "alpha");
  CHECK(field_of("alpha = 0\n") == "alpha");
  CHECK(field_of("alpha = \n") == "alpha");
  CHECK(field_of("p = 0.5\n") == "p");
  CHECK(field_of("q = inf\n") == "q");
  CHECK(field_of("grid.n = 2\n") == "grid.n");
  CHECK(field_of("grid.n = 12.5\n") == "grid.n");
  CHECK(field_of("grid.L = -4\n") == "grid.L");
  CHECK(field_of("t.min = 0\n") == "t.min");
  CHECK(field_of("t.min = 5\nt.max = 2\n") == "t.min");
  CHECK(field_of("t.points = 1\n") == "t.points");
  CHECK(field_of("u0.preset = wedge\n") == "u0.preset");
  CHECK(field_of("u0.scale = 0\n") == "u0.scale");
  CHECK(field_of("nonlinear.p = 1\n") == "nonlinear.p");
  CHECK(field_of("nonlinear.dt = -0.1\n") == "nonlinear.dt");
  CHECK(field_of("multiplicities = -0.5\n") == "multiplicities");
  CHECK(field_of("dimension = 0\n") == "dimension");
  CHECK(field_of("alpha = 0.5\nalpha = 1\n") == "alpha");  // duplicate
  CHECK(field_of("dimension = 2\nmultiplicities = 0.5 1 1\n") ==
        "multiplicities");
  CHECK(field_of("just some words\n") == "line 1");
  CHECK(field_of("= 3\n") == "line 1");

  // messages carry the value that was rejected
  try {
    Config::parse_text("alpha = 1.5\n");
    CHECK(false);
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("1.5") != std::string::npos);
    CHECK(std::string(e.what()).find("alpha") != std::string::npos);
  }

  // a single multiplicity broadcasts across axes
  Config b = Config::parse_text("dimension = 3\nmultiplicities = 0.5\n");
  CHECK(b.multiplicities == std::vector<double>(3, 0.5));

  CHECK_THROWS_AS(Config::parse_file("/nonexistent/x.conf"), ConfigError);
}

TEST_CASE("presets: unit mass, scaling, mass matching, support guard") {
  auto ax = axis_ptr(make_axis_uniform(0.5, 16.0, 64));

  for (const char* name : {"gaussian", "bump", "dipole-plus-mass"}) {
    GridFunction f = make_preset(name, ax, 1.0);
    CHECK(integral(f).real() == doctest::Approx(1.0).epsilon(1e-12));
    GridFunction g = make_preset(name, ax, 0.3);
    CHECK(integral(g).real() == doctest::Approx(0.3).epsilon(1e-12));
  }

  // gaussian and bump are nonnegative; the dipole preset is not
  GridFunction bump = make_preset("bump", ax, 1.0);
  for (const auto& v : bump.values) CHECK(v.real() >= 0.0);
  GridFunction dip = make_preset("dipole-plus-mass", ax, 1.0);
  double neg = 0.0;
  for (const auto& v : dip.values) neg = std::min(neg, v.real());
  CHECK(neg < -1e-4);

  // zero-mass integrates to rounding zero while being visibly nonzero
  GridFunction zm = make_preset("zero-mass", ax, 1.0);
  CHECK(std::abs(integral(zm)) <= 1e-12 * lp_norm(zm, 1.0));
  CHECK(lp_norm(zm, kInf) > 0.05);

  // bump support is [-2, 2]
  for (size_t i = 0; i < ax->size(); ++i)
    if (std::fabs(ax->nodes[i]) > 2.0) CHECK(bump.values[i].real() == 0.0);

  // a box that truncates the data is refused, naming grid.L
  auto tiny = axis_ptr(make_axis_uniform(0.5, 3.0, 12));
  CHECK_THROWS_AS(make_preset("dipole-plus-mass", tiny, 1.0), ConfigError);
  CHECK_THROWS_AS(make_preset("gaussian", tiny, 1.0), ConfigError);
  try {
    make_preset("zero-mass", tiny, 1.0);
  } catch (const ConfigError& e) {
    CHECK(e.field == "grid.L");
  }
}

TEST_CASE("csv serialization is exact and newline-terminated") {
  std::vector<CsvRow> rows = {
      {"linear", 0.5, "inf", 10.0, 0.00123456789012345, 0.5, ""},
      {"nonlinear", 1.0, "mass", 0.25, 0.1, 0.2, "loss=0.05"},
  };
  std::string text = csv_text(rows);
  CHECK(text ==
        "experiment,alpha,p_or_q,t,raw_error,scaled_error,extra\n"
        "linear,0.5,inf,10,0.00123456789012,0.5,\n"
        "nonlinear,1,mass,0.25,0.1,0.2,loss=0.05\n");
  CHECK(text.back() == '\n');
  CHECK(csv_text({}) ==
        "experiment,alpha,p_or_q,t,raw_error,scaled_error,extra\n");
}

TEST_CASE("json report embeds the resolved config and verdicts") {
  Config cfg = Config::parse_text("multiplicities = 0.5\nalpha = 1\n");
  ExperimentReport rep;
  rep.experiment = "demo";
  rep.rows.push_back({"demo", 1.0, "1", 1.0, 0.1, 0.1, ""});
  rep.verdicts.push_back({"first", true, "fine"});
  rep.verdicts.push_back({"second", false, "off by 0.3"});
  CHECK_FALSE(rep.pass());

  auto j = nlohmann::json::parse(json_text(cfg, {rep}));
  CHECK(j["version"] == "dunklheat 1.0.0");
  CHECK(j["config"]["multiplicities"] == "0.5");
  CHECK(j["config"]["alpha"] == "1");
  CHECK(j["config"]["u0.preset"] == "bump");
  CHECK(j["experiments"].size() == 1);
  CHECK(j["experiments"][0]["name"] == "demo");
  CHECK(j["experiments"][0]["pass"] == false);
  CHECK(j["experiments"][0]["rows"] == 1);
  CHECK(j["experiments"][0]["verdicts"][1]["detail"] == "off by 0.3");
  CHECK(j["pass"] == false);

  // config keys keep their documented order in the serialized text
  std::string text = json_text(cfg, {rep});
  CHECK(text.find("\"dimension\"") < text.find("\"multiplicities\""));
  CHECK(text.find("\"multiplicities\"") < text.find("\"grid.n\""));
  CHECK(text.find("\"nonlinear.t_end\"") < text.find("\"output.dir\""));
}

TEST_CASE("atomic writes land complete files, creating directories") {
  std::string dir = scratch_dir();
  std::string path = dir + "/deep/nested/out.csv";
  write_file_atomic(path, "hello\n");
  std::ifstream in(path);
  std::string got((std::istreambuf_iterator<char>(in)),
                  std::istreambuf_iterator<char>());
  CHECK(got == "hello\n");
  CHECK_FALSE(std::filesystem::exists(path + ".tmp"));

  write_file_atomic(path, "replaced\n");
  std::ifstream in2(path);
  std::string got2((std::istreambuf_iterator<char>(in2)),
                   std::istreambuf_iterator<char>());
  CHECK(got2 == "replaced\n");
  std::filesystem::remove_all(dir);
}

TEST_CASE("output directory precedence: flag, config, environment, cwd") {
  Config plain;
  Config with_dir = Config::parse_text("output.dir = /cfg/dir\n");
  CHECK(output_directory(with_dir, "/cli/dir") == "/cli/dir");
  CHECK(output_directory(with_dir, "") == "/cfg/dir");
  ::setenv("DUNKLHEAT_OUT", "/env/dir", 1);
  CHECK(output_directory(plain, "") == "/env/dir");
  CHECK(output_directory(with_dir, "") == "/cfg/dir");
  ::unsetenv("DUNKLHEAT_OUT");
  CHECK(output_directory(plain, "") == ".");
}

TEST_CASE("selftest passes at the default and at k = 0") {
  ExperimentReport rep = run_selftest(Config{});
  CHECK(rep.experiment == "selftest");
  CHECK(rep.rows.empty());
  CHECK(rep.verdicts.size() >= 10);
  for (const auto& v : rep.verdicts) {
    CAPTURE(v.name);
    CAPTURE(v.detail);
    CHECK(v.pass);
  }

  // k = 0 exercises the classical branches (shift translation, |x|^0 weight)
  Config classical = Config::parse_text("multiplicities = 0\n");
  ExperimentReport rep0 = run_selftest(classical);
  for (const auto& v : rep0.verdicts) {
    CAPTURE(v.name);
    CAPTURE(v.detail);
    CHECK(v.pass);
  }
}

TEST_CASE("linear experiment: rows, verdicts, and the zero-mass refusal") {
  Config cfg = Config::parse_text(
      "multiplicities = 0.5\n"
      "alpha = 1\n"
      "p = 1, 2\n"
      "t.min = 1\n"
      "t.max = 100\n"
      "t.points = 9\n"
      "u0.preset = gaussian\n");
  ExperimentReport rep = run_linear(cfg);
  CHECK(rep.experiment == "linear");
  CHECK(rep.rows.size() == 2 * 9);
  CHECK(rep.verdicts.size() == 2);
  for (const auto& v : rep.verdicts) {
    CAPTURE(v.detail);
    CHECK(v.pass);
  }
  // scaled = raw * t^exponent, so raw must fall faster than scaled
  for (const auto& r : rep.rows) {
    CHECK(std::isfinite(r.raw_error));
    CHECK(r.raw_error >= 0.0);
  }

  Config zm = Config::parse_text("u0.preset = zero-mass\nalpha = 1\np = 1\n");
  ExperimentReport rz = run_linear(zm);
  CHECK_FALSE(rz.pass());
  REQUIRE(rz.verdicts.size() == 1);
  CHECK(rz.verdicts[0].name == "nonzero mass hypothesis");
  CHECK(rz.verdicts[0].detail.find("mass") != std::string::npos);
  CHECK(rz.rows.empty());

  Config d2 = Config::parse_text("dimension = 2\nmultiplicities = 0.5\n");
  CHECK_THROWS_AS(run_linear(d2), ConfigError);
}

TEST_CASE("moment-rate experiment fits the advertised rate") {
  Config cfg = Config::parse_text(
      "multiplicities = 0.5\n"
      "t.min = 10\n"
      "t.max = 1000\n"
      "t.points = 8\n");
  ExperimentReport rep = run_moment_rate(cfg);
  CHECK(rep.rows.size() == 2 * 8);  // one L1 and one sup row per time
  REQUIRE(rep.verdicts.size() == 3);
  for (const auto& v : rep.verdicts) {
    CAPTURE(v.name);
    CAPTURE(v.detail);
    CHECK(v.pass);
  }
  // the sup channel rows carry the extra kernel-scale factor
  int inf_rows = 0;
  for (const auto& r : rep.rows)
    if (r.p_or_q == "inf") {
      ++inf_rows;
      CHECK(r.scaled_error > r.raw_error);
    }
  CHECK(inf_rows == 8);

  Config few = Config::parse_text("t.points = 3\nt.min = 10\nt.max = 100\n");
  CHECK_THROWS_AS(run_moment_rate(few), ConfigError);
}

TEST_CASE("nonlinear experiment verdicts on a small conclusive run") {
  Config cfg = Config::parse_text(
      "multiplicities = 0.5\n"
      "alpha = 1\n"
      "nonlinear.p = 3\n"
      "nonlinear.dt = 0.01\n"
      "nonlinear.t_end = 2\n"
      "grid.L = 16\n"
      "grid.n = 48\n"
      "u0.preset = bump\n"
      "u0.scale = 0.05\n"
      "q = 1, 2\n");
  ExperimentReport rep = run_nonlinear(cfg);
  CHECK(rep.experiment == "nonlinear");
  REQUIRE(rep.verdicts.size() == 6);
  for (const auto& v : rep.verdicts) {
    CAPTURE(v.name);
    CAPTURE(v.detail);
    CHECK(v.pass);
  }

  int mass_rows = 0, q_rows = 0;
  double prev_t = -1.0;
  for (const auto& r : rep.rows) {
    if (r.p_or_q == "mass") {
      ++mass_rows;
      CHECK(r.raw_error <= 0.05 + 1e-12);        // box mass below the start
      CHECK(r.scaled_error >= r.raw_error - 1e-9);  // adding outflow back
      CHECK(r.extra.find("loss=") == 0);
      CHECK(r.t > prev_t);
      prev_t = r.t;
    } else {
      ++q_rows;
      CHECK((r.p_or_q == "1" || r.p_or_q == "2"));
    }
  }
  CHECK(mass_rows >= 10);
  CHECK(q_rows >= 20);

  // the first mass row is the initial state
  CHECK(rep.rows[0].t == 0.0);
  CHECK(rep.rows[0].raw_error == doctest::Approx(0.05).epsilon(1e-12));

  Config bad = cfg;
  bad.nl_dt = 1e-9;  // would be 2e9 steps
  CHECK_THROWS_AS(run_nonlinear(bad), ConfigError);

  Config neg = Config::parse_text(
      "multiplicities = 0.5\nu0.preset = dipole-plus-mass\n"
      "grid.L = 16\ngrid.n = 48\nnonlinear.t_end = 1\n");
  CHECK_THROWS_AS(run_nonlinear(neg), std::domain_error);
}
