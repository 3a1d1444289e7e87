#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "spdid/pairwise.hpp"
#include "spdid/spd_matrix.hpp"

namespace spdid::io {

/// A path pattern with {base}, {subject}, {task}, {scan} and {res}
/// placeholders. {subject}, {task}, {scan} and {res} are mandatory; a pattern
/// without {base} is resolved relative to the base directory.
class PathTemplate {
 public:
  static constexpr const char* kDefault = "{base}/{subject}/{task}_{scan}_{res}.txt";

  /// Throws InvalidParameter if a mandatory placeholder is missing.
  explicit PathTemplate(std::string pattern = kDefault);

  const std::string& pattern() const noexcept { return pattern_; }

  /// Substitutes every placeholder.
  std::filesystem::path expand(const std::filesystem::path& base, const std::string& subject,
                               const std::string& task, const std::string& scan, int resolution) const;

 private:
  std::string pattern_;
};

struct SubjectRecord {
  std::string subject_id;
  std::string task;
  std::string scan;
  int resolution = 0;
  std::filesystem::path path;
};

/// Discovers subjects by matching the template with {subject} as a wildcard.
///
/// A subject is kept only if a file exists for every requested resolution.
/// Subjects are sorted lexicographically and truncated to the first n; the
/// result holds one record per (subject, resolution), subject-major.
/// Throws BaseNotFound, NoSubjectsFound (the message shows the glob tried).
std::vector<SubjectRecord> find_subject_paths(const std::filesystem::path& base, const std::string& task,
                                              const std::string& scan, const std::vector<int>& resolutions,
                                              std::size_t n, const PathTemplate& tmpl = PathTemplate());

/// Parses a dense text matrix. Rows are lines; entries are separated by commas
/// if the first data line contains one, otherwise by whitespace. Blank lines
/// are skipped. Throws ParseError (with line and column), ShapeMismatch.
RawSquareMatrix parse_matrix(const std::string& text, std::optional<Eigen::Index> expected_n = std::nullopt,
                             const std::string& source = "<text>");

/// Reads a matrix file and turns it into an SpdMatrix. tau > 0 goes through
/// regularize(); tau == 0 goes through validate_spd(), so an asymmetric file
/// is rejected instead of silently averaged.
SpdMatrix load_matrix(const std::filesystem::path& path, double tau,
                      std::optional<Eigen::Index> expected_n = std::nullopt);

/// Writes whitespace-delimited rows with 17 significant digits and LF endings.
void save_matrix(const std::filesystem::path& path, const Eigen::MatrixXd& m);
std::string format_matrix(const Eigen::MatrixXd& m);

/// Shortest decimal text with 17 significant digits ("%.17g").
std::string format_double(double v);

/// CSV with a header row of gallery labels and the probe label in the first
/// column of each row. The top-left cell is empty.
std::string format_distance_csv(const DistanceMatrix& d);
void save_distance_csv(const std::filesystem::path& path, const DistanceMatrix& d);

/// Reverse of format_distance_csv. The metric field is left default.
DistanceMatrix parse_distance_csv(const std::string& text);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace spdid::io
