#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "spdid/dataio.hpp"
#include "spdid/metric_spec.hpp"

namespace spdid::cli {

inline constexpr double kDefaultTau = 1e-6;
inline constexpr double kDefaultAlpha = 0.99;
inline constexpr double kDefaultZ = 1.0;

struct RunConfig {
  std::filesystem::path base_path;
  std::vector<std::string> tasks;
  std::vector<std::string> scan_types{"LR", "RL"};
  std::vector<int> resolutions;
  MetricSpec metric;
  double tau = kDefaultTau;
  std::size_t num_subjects = 0;  // 0 = no limit
  io::PathTemplate path_template;
  std::filesystem::path out_dir = "spd_id_out";
  bool emit_heatmap = false;
  unsigned workers = 1;
};

/// Bad command line. Maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses the spd-id flags (argv[0] is the program name). Throws UsageError.
/// A help request is reported through HelpRequested.
RunConfig parse_args(const std::vector<std::string>& argv);

struct HelpRequested {
  std::string text;
};

/// Runs every (task, resolution) combination, writing
/// {out_dir}/{task}_{res}/D12.csv, D21.csv, report.json and optionally
/// heatmap.ppm. Prints a summary table on out and diagnostics on err.
/// Returns 0 when every combination succeeded, 1 otherwise.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Whole-program entry: parse, run, map errors to exit codes 0/1/2.
int main(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace spdid::cli
