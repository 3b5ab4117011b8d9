#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "darkpassage/experiment.hpp"
#include "darkpassage/sweep.hpp"

namespace darkpassage::cli {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int { kOk = 0, kFailure = 1, kValidation = 2, kNumerical = 3 };

struct ExperimentConfig {
  bool is_sweep = false;
  ExperimentParams params;
  SweepGrid grid;  // sweeps only
  std::optional<std::string> summary_path;
  std::optional<std::string> trace_path;
  std::optional<std::string> table_path;
};

/// Parses and validates a JSON config document. Unknown keys, wrong types and
/// non-physical values raise ValidationError.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// "%.12g".
std::string format_number(double v);
/// RFC 4180 field quoting.
std::string csv_field(const std::string& s);

std::string format_summary(const ExperimentConfig& config, const RunReport& report);
/// Columns t, site_1_down..site_N_down, norm, F_t, gamma_t.
std::string format_trace_csv(const RunReport& report);
std::string format_table_csv(const SweepTable& table);

/// Writes through a temporary file in the same directory and renames it into place.
void atomic_write(const std::string& path, const std::string& content);

int cmd_run(const std::string& config_path, std::ostream& out, std::ostream& err);
int cmd_sweep(const std::string& config_path, std::ostream& out, std::ostream& err);

struct DarkstateArgs {
  double K = 0.0;
  double L = 0.0;
  double alpha = 0.0;
  std::optional<std::size_t> n;
  std::optional<std::size_t> straddle_N;
  std::optional<double> M;
};
int cmd_darkstate(const DarkstateArgs& args, std::ostream& out, std::ostream& err);

/// Full command-line entry point.
int run_main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace darkpassage::cli
