#include "spdid/dataio.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

#include "spdid/error.hpp"

namespace fs = std::filesystem;

namespace spdid::io {

namespace {

constexpr std::string_view kSubject = "{subject}";

void replace_all(std::string& s, std::string_view from, std::string_view to) {
  std::size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
}

// Template with everything but {subject} substituted.
std::string expand_fixed(const std::string& pattern, const fs::path& base, const std::string& task,
                         const std::string& scan, int resolution) {
  std::string s = pattern;
  if (s.find("{base}") == std::string::npos) {
    s = (base / s).generic_string();
  } else {
    replace_all(s, "{base}", base.generic_string());
  }
  replace_all(s, "{task}", task);
  replace_all(s, "{scan}", scan);
  replace_all(s, "{res}", std::to_string(resolution));
  return s;
}

std::string regex_escape(std::string_view s) {
  static const std::string special = R"(\^$.|?*+()[]{}/)";
  std::string out;
  for (char c : s) {
    if (special.find(c) != std::string::npos) out += '\\';
    out += c;
  }
  return out;
}

// Regex for one path component. The first {subject} captures, later ones must
// repeat the capture.
std::regex component_regex(const std::string& component) {
  std::string re;
  std::size_t pos = 0;
  bool captured = false;
  while (true) {
    const std::size_t hit = component.find(kSubject, pos);
    re += regex_escape(std::string_view(component).substr(pos, hit == std::string::npos ? std::string::npos : hit - pos));
    if (hit == std::string::npos) break;
    re += captured ? "\\1" : "([^/]+)";
    captured = true;
    pos = hit + kSubject.size();
  }
  return std::regex(re);
}

// A partially matched path and the subject id captured so far.
struct Candidate {
  fs::path path;
  std::string subject;
};

// Files matching the partially expanded pattern, keyed by subject id.
std::map<std::string, fs::path> match_subjects(const std::string& expanded) {
  std::vector<std::string> parts;
  {
    std::size_t start = 0;
    while (start <= expanded.size()) {
      const std::size_t slash = expanded.find('/', start);
      const std::size_t end = slash == std::string::npos ? expanded.size() : slash;
      if (end > start) parts.push_back(expanded.substr(start, end - start));
      if (slash == std::string::npos) break;
      start = slash + 1;
    }
  }
  std::vector<Candidate> current{{expanded.starts_with('/') ? fs::path("/") : fs::path(), ""}};
  for (const std::string& part : parts) {
    std::vector<Candidate> next;
    if (part.find(kSubject) == std::string::npos) {
      for (auto& c : current) next.push_back({c.path.empty() ? fs::path(part) : c.path / part, c.subject});
    } else {
      const std::regex re = component_regex(part);
      for (const auto& c : current) {
        const fs::path dir = c.path.empty() ? fs::path(".") : c.path;
        std::error_code ec;
        if (!fs::is_directory(dir, ec)) continue;
        for (const auto& entry : fs::directory_iterator(dir, ec)) {
          const std::string name = entry.path().filename().string();
          std::smatch m;
          if (!std::regex_match(name, m, re)) continue;
          const std::string subject = m[1].str();
          if (!c.subject.empty() && c.subject != subject) continue;
          next.push_back({c.path.empty() ? fs::path(name) : c.path / name, subject});
        }
      }
    }
    current = std::move(next);
  }
  std::map<std::string, fs::path> out;
  for (auto& c : current) {
    std::error_code ec;
    if (!c.subject.empty() && fs::is_regular_file(c.path, ec)) out.emplace(c.subject, c.path);
  }
  return out;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void parse_fail(const std::string& source, std::size_t line, std::size_t column, const std::string& what) {
  std::ostringstream msg;
  msg << source << ":" << line << ":" << column << ": " << what;
  throw Error(ErrorCode::ParseError, msg.str());
}

double parse_number(std::string_view token, const std::string& source, std::size_t line, std::size_t column) {
  std::string_view body = token;
  if (body.starts_with('+')) body.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
  if (body.empty() || ec != std::errc() || ptr != body.data() + body.size()) {
    parse_fail(source, line, column, "not a number: '" + std::string(token) + "'");
  }
  return value;
}

void check_label(const std::string& label) {
  if (label.find_first_of(",\"\n\r") != std::string::npos) {
    throw Error(ErrorCode::InvalidParameter, "label '" + label + "' cannot be written to CSV unquoted");
  }
}

std::vector<std::string> split_commas(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.emplace_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

PathTemplate::PathTemplate(std::string pattern) : pattern_(std::move(pattern)) {
  for (const char* key : {"{subject}", "{task}", "{scan}", "{res}"}) {
    if (pattern_.find(key) == std::string::npos) {
      throw Error(ErrorCode::InvalidParameter, "path template '" + pattern_ + "' lacks " + key);
    }
  }
}

fs::path PathTemplate::expand(const fs::path& base, const std::string& subject, const std::string& task,
                              const std::string& scan, int resolution) const {
  std::string s = expand_fixed(pattern_, base, task, scan, resolution);
  replace_all(s, kSubject, subject);
  return fs::path(s);
}

std::vector<SubjectRecord> find_subject_paths(const fs::path& base, const std::string& task, const std::string& scan,
                                              const std::vector<int>& resolutions, std::size_t n,
                                              const PathTemplate& tmpl) {
  if (n == 0) throw Error(ErrorCode::InvalidParameter, "subject count must be positive");
  if (resolutions.empty()) throw Error(ErrorCode::InvalidParameter, "no resolutions given");
  for (int res : resolutions) {
    if (res <= 0) throw Error(ErrorCode::InvalidParameter, "resolution must be positive");
  }
  std::error_code ec;
  if (!fs::is_directory(base, ec)) {
    throw Error(ErrorCode::BaseNotFound, "'" + base.string() + "' is not a directory");
  }

  std::vector<std::map<std::string, fs::path>> per_res;
  for (int res : resolutions) per_res.push_back(match_subjects(expand_fixed(tmpl.pattern(), base, task, scan, res)));

  std::vector<std::string> subjects;
  for (const auto& [subject, path] : per_res.front()) {
    const bool everywhere = std::all_of(per_res.begin() + 1, per_res.end(),
                                        [&](const auto& m) { return m.contains(subject); });
    if (everywhere) subjects.push_back(subject);
  }
  if (subjects.empty()) {
    std::string glob = expand_fixed(tmpl.pattern(), base, task, scan, resolutions.front());
    replace_all(glob, kSubject, "*");
    throw Error(ErrorCode::NoSubjectsFound, "nothing matches '" + glob + "'");
  }
  // std::map iteration already gives lexicographic order.
  if (subjects.size() > n) subjects.resize(n);

  std::vector<SubjectRecord> records;
  for (const auto& subject : subjects) {
    for (std::size_t r = 0; r < resolutions.size(); ++r) {
      records.push_back({subject, task, scan, resolutions[r], per_res[r].at(subject)});
    }
  }
  return records;
}

RawSquareMatrix parse_matrix(const std::string& text, std::optional<Eigen::Index> expected_n,
                             const std::string& source) {
  std::vector<std::vector<double>> rows;
  std::optional<bool> comma_delimited;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t nl = text.find('\n', start);
    const std::string_view line(text.data() + start, (nl == std::string::npos ? text.size() : nl) - start);
    start = nl == std::string::npos ? text.size() : nl + 1;
    ++line_no;
    if (trim(line).empty()) continue;
    if (!comma_delimited) comma_delimited = line.find(',') != std::string_view::npos;

    std::vector<double> row;
    if (*comma_delimited) {
      std::size_t pos = 0;
      while (true) {
        const std::size_t comma = line.find(',', pos);
        const std::string_view raw = line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        const std::string_view token = trim(raw);
        const std::size_t column = pos + raw.find_first_not_of(" \t") + 1;
        if (token.empty()) parse_fail(source, line_no, pos + 1, "empty field");
        row.push_back(parse_number(token, source, line_no, column));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
      }
    } else {
      std::size_t pos = 0;
      while (true) {
        pos = line.find_first_not_of(" \t\r", pos);
        if (pos == std::string_view::npos) break;
        std::size_t end = line.find_first_of(" \t\r", pos);
        if (end == std::string_view::npos) end = line.size();
        row.push_back(parse_number(line.substr(pos, end - pos), source, line_no, pos + 1));
        pos = end;
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      std::ostringstream what;
      what << "row has " << row.size() << " fields, expected " << rows.front().size();
      parse_fail(source, line_no, 1, what.str());
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) parse_fail(source, 1, 1, "no data");

  const auto n_rows = static_cast<Eigen::Index>(rows.size());
  const auto n_cols = static_cast<Eigen::Index>(rows.front().size());
  if (n_rows != n_cols) {
    std::ostringstream msg;
    msg << source << ": " << n_rows << "x" << n_cols << " matrix is not square";
    throw Error(ErrorCode::ShapeMismatch, msg.str());
  }
  if (expected_n && *expected_n != n_rows) {
    std::ostringstream msg;
    msg << source << ": expected order " << *expected_n << ", found " << n_rows;
    throw Error(ErrorCode::ShapeMismatch, msg.str());
  }
  Eigen::MatrixXd m(n_rows, n_cols);
  for (Eigen::Index i = 0; i < n_rows; ++i) {
    for (Eigen::Index j = 0; j < n_cols; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  try {
    return RawSquareMatrix(std::move(m));
  } catch (const Error& e) {
    throw Error(e.code(), source + ": " + e.detail());
  }
}

SpdMatrix load_matrix(const fs::path& path, double tau, std::optional<Eigen::Index> expected_n) {
  const RawSquareMatrix raw = parse_matrix(read_file(path), expected_n, path.string());
  try {
    return tau == 0.0 ? validate_spd(raw) : regularize(raw, tau);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.detail());
  }
}

std::string format_double(double v) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf, static_cast<std::size_t>(len));
}

std::string format_matrix(const Eigen::MatrixXd& m) {
  std::string out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ' ';
      out += format_double(m(i, j));
    }
    out += '\n';
  }
  return out;
}

void save_matrix(const fs::path& path, const Eigen::MatrixXd& m) { write_file(path, format_matrix(m)); }

std::string format_distance_csv(const DistanceMatrix& d) {
  std::string out;
  for (const auto& label : d.gallery_labels) {
    check_label(label);
    out += ',';
    out += label;
  }
  out += '\n';
  for (Eigen::Index i = 0; i < d.values.rows(); ++i) {
    const std::string& label = d.probe_labels[static_cast<std::size_t>(i)];
    check_label(label);
    out += label;
    for (Eigen::Index j = 0; j < d.values.cols(); ++j) {
      out += ',';
      out += format_double(d.values(i, j));
    }
    out += '\n';
  }
  return out;
}

void save_distance_csv(const fs::path& path, const DistanceMatrix& d) { write_file(path, format_distance_csv(d)); }

DistanceMatrix parse_distance_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::ParseError, "empty distance CSV");
  std::vector<std::string> header = split_commas(line);
  if (header.empty() || !header.front().empty()) {
    throw Error(ErrorCode::ParseError, "distance CSV header must start with an empty cell");
  }
  DistanceMatrix d;
  d.gallery_labels.assign(header.begin() + 1, header.end());
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<std::string> fields = split_commas(line);
    if (fields.size() != header.size()) parse_fail("<csv>", line_no, 1, "wrong number of fields");
    d.probe_labels.push_back(fields.front());
    std::vector<double> row;
    for (std::size_t k = 1; k < fields.size(); ++k) row.push_back(parse_number(fields[k], "<csv>", line_no, k + 1));
    rows.push_back(std::move(row));
  }
  d.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(d.gallery_labels.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      d.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return d;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
  out << contents;
  if (!out) throw Error(ErrorCode::IoError, "write to '" + path.string() + "' failed");
}

}  // namespace spdid::io
