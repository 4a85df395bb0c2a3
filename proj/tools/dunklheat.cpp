#include <cstdio>
#include <string>

#include "CLI11.hpp"

#include "dunkl/experiment.hpp"
#include "dunkl/report.hpp"
#include "dunkl/version.hpp"

namespace {

using dunkl::Config;
using dunkl::ExperimentReport;

// exit 0: every verdict passed.  exit 1: a verdict failed.  exit 2: the
// invocation or configuration was unusable (bad flags, bad config, or a run
// that could not be set up), with a message naming the culprit.
int run_experiment(const std::string& name,
                   ExperimentReport (*fn)(const Config&, int),
                   const std::string& config_path, const std::string& out_dir,
                   int threads) {
  Config cfg;
  try {
    if (!config_path.empty()) cfg = Config::parse_file(config_path);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }

  ExperimentReport rep;
  try {
    rep = fn(cfg, threads);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }

  std::string dir = dunkl::output_directory(cfg, out_dir);
  try {
    if (!rep.rows.empty())
      dunkl::write_file_atomic(dir + "/" + name + ".csv",
                               dunkl::csv_text(rep.rows));
    dunkl::write_file_atomic(dir + "/" + name + ".json",
                             dunkl::json_text(cfg, {rep}));
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }

  for (const auto& v : rep.verdicts)
    std::printf("[%s] %s: %s\n", v.pass ? "PASS" : "FAIL", v.name.c_str(),
                v.detail.c_str());
  int failed = 0;
  for (const auto& v : rep.verdicts) failed += v.pass ? 0 : 1;
  std::printf("%s: %zu verdicts, %d failed; reports in %s\n", name.c_str(),
              rep.verdicts.size(), failed, dir.c_str());
  return rep.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fractional heat flow for reflection-weighted measures: "
               "experiments and invariant checks"};
  app.set_version_flag("--version", std::string(dunkl::kVersion));
  app.require_subcommand(1);

  std::string config_path, out_dir;
  int threads = 0;

  struct Sub {
    const char* name;
    const char* desc;
    ExperimentReport (*fn)(const Config&, int);
  };
  const Sub subs[] = {
      {"selftest",
       "invariant sweep: normalization, transform fidelity, translation, "
       "convolution inequality, semigroup law, kernel routes",
       dunkl::run_selftest},
      {"linear",
       "scaled-error curves of the fractional flow against mass * kernel",
       dunkl::run_linear},
      {"moment-rate", "first-moment rate check of the gaussian flow",
       dunkl::run_moment_rate},
      {"nonlinear",
       "absorption run: mass trajectory, limit mass, linear comparison, "
       "scaled gap curves",
       dunkl::run_nonlinear},
  };
  for (const auto& s : subs) {
    auto* sub = app.add_subcommand(s.name, s.desc);
    sub->add_option("--config", config_path, "key = value configuration file");
    sub->add_option("--out", out_dir,
                    "report directory (wins over config and DUNKLHEAT_OUT)");
    sub->add_option("--threads", threads, "worker threads (0 = all cores)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  for (const auto& s : subs)
    if (app.get_subcommand(s.name)->parsed())
      return run_experiment(s.name, s.fn, config_path, out_dir, threads);
  return 2;
}
