#include "spdid/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "parallel.hpp"
#include "spdid/error.hpp"
#include "spdid/heatmap.hpp"
#include "spdid/identification.hpp"
#include "spdid/pairwise.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace spdid::cli {

namespace {

std::string fixed3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json metric_json(const MetricSpec& spec) {
  json m;
  m["name"] = std::string(metric_name(spec.kind));
  m["alpha"] = spec.alpha ? json(*spec.alpha) : json(nullptr);
  m["z"] = spec.z ? json(*spec.z) : json(nullptr);
  return m;
}

json nearest_json(const std::vector<NearestMatch>& table) {
  json rows = json::array();
  for (const auto& r : table) {
    rows.push_back({{"probe", r.probe_label},
                    {"closest", r.closest_label},
                    {"within_distance", r.within_distance},
                    {"best_other_distance", finite_or_null(r.best_other_distance)},
                    {"ambiguous", r.ambiguous}});
  }
  return rows;
}

void add_misidentified(json& out, const char* direction, const std::vector<NearestMatch>& table,
                       const std::vector<bool>& hits) {
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (hits[i]) continue;
    const auto& r = table[i];
    out.push_back({{"direction", direction},
                   {"probe", r.probe_label},
                   {"closest", r.closest_label},
                   {"within_distance", r.within_distance},
                   {"best_other_distance", finite_or_null(r.best_other_distance)}});
  }
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += ", ";
    out += s;
  }
  return out;
}

struct ComboResult {
  std::size_t n = 0;
  double mean = 0.0;
};

LabeledSet load_set(const std::vector<io::SubjectRecord>& records, const std::vector<std::string>& subjects,
                    int resolution, double tau, unsigned workers) {
  std::map<std::string, fs::path> by_subject;
  for (const auto& r : records) by_subject.emplace(r.subject_id, r.path);
  std::vector<std::optional<SpdMatrix>> loaded(subjects.size());
  detail::parallel_for(subjects.size(), workers, [&](std::size_t k) {
    loaded[k].emplace(io::load_matrix(by_subject.at(subjects[k]), tau, resolution));
  });
  LabeledSet set;
  set.labels = subjects;
  for (auto& m : loaded) set.matrices.push_back(std::move(*m));
  return set;
}

ComboResult run_combination(const RunConfig& config, const std::string& task, int resolution, std::ostream& err) {
  const std::string& scan1 = config.scan_types[0];
  const std::string& scan2 = config.scan_types[1];
  const std::size_t unlimited = std::numeric_limits<std::size_t>::max();
  const auto recs1 = io::find_subject_paths(config.base_path, task, scan1, {resolution}, unlimited, config.path_template);
  const auto recs2 = io::find_subject_paths(config.base_path, task, scan2, {resolution}, unlimited, config.path_template);

  std::set<std::string> ids1, ids2;
  for (const auto& r : recs1) ids1.insert(r.subject_id);
  for (const auto& r : recs2) ids2.insert(r.subject_id);
  std::vector<std::string> subjects, only1, only2;
  std::set_intersection(ids1.begin(), ids1.end(), ids2.begin(), ids2.end(), std::back_inserter(subjects));
  std::set_difference(ids1.begin(), ids1.end(), ids2.begin(), ids2.end(), std::back_inserter(only1));
  std::set_difference(ids2.begin(), ids2.end(), ids1.begin(), ids1.end(), std::back_inserter(only2));

  json warnings = json::array();
  auto warn = [&](const std::string& text) {
    err << "warning: " << task << " " << resolution << ": " << text << "\n";
    warnings.push_back(text);
  };
  if (!only1.empty()) warn("subjects only in " + scan1 + " (skipped): " + join(only1));
  if (!only2.empty()) warn("subjects only in " + scan2 + " (skipped): " + join(only2));
  if (subjects.empty()) {
    throw Error(ErrorCode::NoSubjectsFound, "no subject has both " + scan1 + " and " + scan2 + " scans");
  }
  if (config.num_subjects > 0 && subjects.size() > config.num_subjects) subjects.resize(config.num_subjects);

  const LabeledSet set1 = load_set(recs1, subjects, resolution, config.tau, config.workers);
  const LabeledSet set2 = load_set(recs2, subjects, resolution, config.tau, config.workers);
  const auto [d12, d21] = both_directions(set1, set2, config.metric, config.workers);
  const IdReport report = id_report(d12, d21);
  const auto nearest12 = nearest_match_table(d12);
  const auto nearest21 = nearest_match_table(d21);

  const fs::path dir = config.out_dir / (task + "_" + std::to_string(resolution));
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create '" + dir.string() + "': " + ec.message());
  io::save_distance_csv(dir / "D12.csv", d12);
  io::save_distance_csv(dir / "D21.csv", d21);
  if (config.emit_heatmap) save_heatmap(dir / "heatmap.ppm", d12);

  json doc;
  doc["task"] = task;
  doc["resolution"] = resolution;
  doc["scan_types"] = config.scan_types;
  doc["metric"] = metric_json(d12.metric);
  doc["tau"] = config.tau;
  doc["n_subjects"] = report.n_subjects;
  doc["subjects"] = subjects;
  doc["id12"] = report.id12;
  doc["id21"] = report.id21;
  doc["mean"] = report.mean;
  doc["hits12"] = report.per_subject_hits12;
  doc["hits21"] = report.per_subject_hits21;
  json missed = json::array();
  add_misidentified(missed, "D12", nearest12, report.per_subject_hits12);
  add_misidentified(missed, "D21", nearest21, report.per_subject_hits21);
  doc["misidentified"] = missed;
  doc["nearest_matches"] = {{"D12", nearest_json(nearest12)}, {"D21", nearest_json(nearest21)}};
  doc["warnings"] = warnings;
  io::write_file(dir / "report.json", doc.dump(2) + "\n");

  return {report.n_subjects, report.mean};
}

template <typename T>
std::string pad(const T& value, std::size_t width) {
  std::ostringstream s;
  s << value;
  std::string out = s.str();
  if (out.size() < width) out.append(width - out.size(), ' ');
  return out;
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& argv) {
  CLI::App app{"Identify subjects across two scan sessions by SPD matrix distances.", "spd-id"};
  RunConfig config;
  std::string base_path;
  std::string metric_name_arg;
  double alpha = kDefaultAlpha;
  double z = kDefaultZ;
  std::size_t num_subjects = 0;
  std::string path_template = io::PathTemplate::kDefault;
  std::string out_dir = config.out_dir.string();
  unsigned workers = default_workers();

  app.add_option("--base-path", base_path, "Path to root folder containing subject data")->required();
  app.add_option("--tasks", config.tasks, "List of tasks (REST, EMOTION, etc.)")->required();
  app.add_option("--scan-types", config.scan_types, "Two scan directions to compare (e.g., LR RL)")
      ->expected(2)
      ->capture_default_str();
  app.add_option("--resolutions", config.resolutions, "Parcellation sizes (100, 200, 300, ...)")->required();
  app.add_option("--metric", metric_name_arg, "Distance metric: alpha_z, alpha_pro, bw, ai, log, pearson, euclid")
      ->required();
  app.add_option("--alpha", alpha, "Alpha for alpha_z / alpha_pro")->capture_default_str();
  app.add_option("--z", z, "z for alpha_z")->capture_default_str();
  app.add_option("--tau", config.tau, "SPD regularization")->capture_default_str();
  app.add_option("--num-subjects", num_subjects, "Maximum number of subjects (default: all)");
  app.add_option("--path-template", path_template,
                 "Matrix file pattern with {base} {subject} {task} {scan} {res} placeholders")
      ->capture_default_str();
  app.add_option("--out-dir", out_dir, "Directory for CSV, JSON and heatmap outputs")->capture_default_str();
  app.add_flag("--emit-heatmap", config.emit_heatmap, "Also write a PPM heatmap of D12");
  app.add_option("--workers", workers, "Worker threads (default: hardware concurrency)");

  std::vector<const char*> cargs;
  for (const auto& a : argv) cargs.push_back(a.c_str());
  if (cargs.empty()) cargs.push_back("spd-id");
  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  try {
    MetricKind kind = parse_metric_kind(metric_name_arg);
    switch (kind) {
      case MetricKind::AlphaZ: config.metric = MetricSpec::alpha_z(alpha, z); break;
      case MetricKind::AlphaPro: config.metric = MetricSpec::alpha_pro(alpha); break;
      default: config.metric = MetricSpec::simple(kind); break;
    }
    config.metric.validate();
    config.path_template = io::PathTemplate(path_template);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }

  if (!(config.tau >= 0.0) || !std::isfinite(config.tau)) throw UsageError("--tau must be a finite number >= 0");
  if (config.scan_types.size() != 2) throw UsageError("--scan-types needs exactly two values");
  if (app.count("--num-subjects") > 0 && num_subjects == 0) throw UsageError("--num-subjects must be positive");
  if (workers == 0) throw UsageError("--workers must be positive");
  for (int r : config.resolutions) {
    if (r <= 0) throw UsageError("--resolutions must be positive integers");
  }
  config.base_path = base_path;
  config.num_subjects = num_subjects;
  config.out_dir = out_dir;
  config.workers = workers;
  return config;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (auto w = config.metric.warning()) err << "warning: " << *w << "\n";

  std::vector<std::string> failures;
  out << pad("task", 12) << pad("resolution", 12) << pad("n", 6) << "ID_Rate\n";
  for (const auto& task : config.tasks) {
    for (int res : config.resolutions) {
      try {
        const ComboResult r = run_combination(config, task, res, err);
        out << pad(task, 12) << pad(res, 12) << pad(r.n, 6) << fixed3(r.mean) << "\n";
      } catch (const std::exception& e) {
        err << "error: " << task << " " << res << ": " << e.what() << "\n";
        out << pad(task, 12) << pad(res, 12) << pad("-", 6) << "FAILED\n";
        failures.push_back(task + " " + std::to_string(res));
      }
    }
  }
  if (!failures.empty()) {
    err << failures.size() << " combination(s) failed: " << join(failures) << "\n";
    return 1;
  }
  return 0;
}

int main(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = parse_args(argv);
  } catch (const HelpRequested& help) {
    out << help.text;
    return 0;
  } catch (const UsageError& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    err << "spd-id: error: " << msg << "\n";
    return 2;
  }
  try {
    return run(config, out, err);
  } catch (const std::exception& e) {
    err << "spd-id: error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace spdid::cli
