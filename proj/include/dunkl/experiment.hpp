#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dunkl/grid.hpp"

namespace dunkl {

// Raised for unreadable, unknown, ill-typed, or out-of-range configuration;
// the message always names the offending field.
struct ConfigError : std::runtime_error {
  std::string field;
  ConfigError(std::string field_, const std::string& detail)
      : std::runtime_error("config field '" + field_ + "': " + detail),
        field(std::move(field_)) {}
};

// Flat key = value configuration ('#' starts a comment).  Documented keys:
//   dimension        reflection rank (default 1)
//   multiplicities   one weight per axis, space or comma separated
//   grid.n           quadrature panels per half-axis (uniform grids)
//   grid.L           half-width, or "auto" to size from the time grid
//   alpha            list of fractional orders in (0, 1]
//   p                list of norm exponents (inf allowed) for linear runs
//   q                list of finite norm exponents for nonlinear runs
//   t.min t.max t.points   log-spaced time grid
//   u0.preset        gaussian | bump | dipole-plus-mass | zero-mass
//   u0.scale         data mass (presets are unit-mass; zero-mass scales its
//                    positive part)
//   nonlinear.p nonlinear.dt nonlinear.t_end
//   output.dir       where reports land (the CLI and environment override)
// Keys not listed are rejected; so are duplicates.
struct Config {
  int dimension = 1;
  std::vector<double> multiplicities = {1.0};
  int grid_n = 64;
  double grid_L = 0.0;  // 0 = auto
  std::vector<double> alphas = {0.5, 1.0};
  std::vector<double> p_exponents;  // default set in the constructor
  std::vector<double> q_exponents = {1.0, 2.0};
  double t_min = 0.0, t_max = 0.0;  // 0 = per-experiment default
  int t_points = 0;
  std::string u0_preset = "bump";
  double u0_scale = 1.0;
  double nl_p = 2.0;
  double nl_dt = 0.01;
  double nl_t_end = 20.0;
  std::string output_dir;

  Config();

  bool has(const std::string& key) const;  // whether the key was given

  // every key with its resolved value, in documented order
  std::vector<std::pair<std::string, std::string>> resolved() const;

  static Config parse_text(const std::string& text);
  static Config parse_file(const std::string& path);

 private:
  std::vector<std::string> given_;
};

// Unit-mass data presets sampled in closed form on the axis (zero-mass is
// mass-matched on the grid so its integral vanishes to rounding).
GridFunction make_preset(const std::string& name,
                         std::shared_ptr<const Axis> axis, double scale);

// One CSV record; extra is free-form (never contains commas).
struct CsvRow {
  std::string experiment;
  double alpha;
  std::string p_or_q;
  double t;
  double raw_error;
  double scaled_error;
  std::string extra;
};

struct Verdict {
  std::string name;
  bool pass;
  std::string detail;  // the numbers behind the verdict
};

struct ExperimentReport {
  std::string experiment;
  std::vector<CsvRow> rows;
  std::vector<Verdict> verdicts;
  bool pass() const;
};

// Scaled-error curves of the fractional flow against mass * kernel for
// every (alpha, p) pair; verdicts check decade decay.  Zero-mass data
// fails its verdict rather than throwing: the hypothesis, not the config,
// is at fault.
ExperimentReport run_linear(const Config& config, int threads = 0);

// First-moment rate check of the plain heat flow; fitted slopes of the L1
// and sup channels and the uniform constant.
ExperimentReport run_moment_rate(const Config& config, int threads = 0);

// Absorption run: mass trajectory, limit-mass estimate, comparison with
// the linear flow, scaled q-gap curves, and a step-halving order check.
ExperimentReport run_nonlinear(const Config& config, int threads = 0);

// Invariant sweep at small scale: normalization, transform fidelity,
// translation properties, convolution norm inequality, semigroup law, and
// the two fractional kernel routes.
ExperimentReport run_selftest(const Config& config, int threads = 0);

}  // namespace dunkl
