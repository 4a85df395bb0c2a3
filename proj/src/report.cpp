#include "dunkl/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "json.hpp"

#include "dunkl/version.hpp"

namespace dunkl {
namespace {

std::string num(double v) {
  if (v == std::numeric_limits<double>::infinity()) return "inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::string csv_text(const std::vector<CsvRow>& rows) {
  std::string out = "experiment,alpha,p_or_q,t,raw_error,scaled_error,extra\n";
  for (const auto& r : rows) {
    out += r.experiment;
    out += ',';
    out += num(r.alpha);
    out += ',';
    out += r.p_or_q;
    out += ',';
    out += num(r.t);
    out += ',';
    out += num(r.raw_error);
    out += ',';
    out += num(r.scaled_error);
    out += ',';
    out += r.extra;
    out += '\n';
  }
  return out;
}

std::string json_text(const Config& config,
                      const std::vector<ExperimentReport>& reports) {
  nlohmann::ordered_json j;
  j["version"] = kVersion;
  nlohmann::ordered_json jc;
  for (const auto& [key, value] : config.resolved()) jc[key] = value;
  j["config"] = jc;
  bool all = true;
  j["experiments"] = nlohmann::ordered_json::array();
  for (const auto& rep : reports) {
    nlohmann::ordered_json je;
    je["name"] = rep.experiment;
    je["pass"] = rep.pass();
    je["rows"] = rep.rows.size();
    je["verdicts"] = nlohmann::ordered_json::array();
    for (const auto& v : rep.verdicts) {
      je["verdicts"].push_back({{"name", v.name},
                                {"pass", v.pass},
                                {"detail", v.detail}});
    }
    all = all && rep.pass();
    j["experiments"].push_back(je);
  }
  j["pass"] = all;
  return j.dump(2) + "\n";
}

void write_file_atomic(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  fs::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("write failed on '" + tmp.string() +
                                       "'");
  }
  fs::rename(tmp, p);
}

std::string output_directory(const Config& config,
                             const std::string& cli_out) {
  if (!cli_out.empty()) return cli_out;
  if (!config.output_dir.empty()) return config.output_dir;
  if (const char* env = std::getenv("DUNKLHEAT_OUT"); env && *env) return env;
  return ".";
}

}  // namespace dunkl
