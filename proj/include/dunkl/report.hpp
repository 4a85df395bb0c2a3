#pragma once

#include <string>
#include <vector>

#include "dunkl/experiment.hpp"

namespace dunkl {

// CSV with a fixed header; %.12g numbers, '.' decimal point, '\n' line ends,
// trailing newline.  Byte-identical for identical configs regardless of
// thread count.
std::string csv_text(const std::vector<CsvRow>& rows);

// JSON report: version string, the resolved configuration in documented key
// order, per-experiment verdicts, and the overall outcome.
std::string json_text(const Config& config,
                      const std::vector<ExperimentReport>& reports);

// write to <path>.tmp in the same directory, then rename into place, so a
// crash never leaves a half-written report; creates parent directories
void write_file_atomic(const std::string& path, const std::string& text);

// --out flag beats config output.dir beats DUNKLHEAT_OUT beats "."
std::string output_directory(const Config& config, const std::string& cli_out);

}  // namespace dunkl
