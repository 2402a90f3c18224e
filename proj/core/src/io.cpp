#include "pairscan/io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace pairscan {

namespace {

[[noreturn]] void fail_line(const std::string& path, std::size_t line, const std::string& what) {
  throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path + " for reading");
  return in;
}

double parse_real(const std::string& token, const std::string& path, std::size_t line) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end == token.c_str() || *end != '\0' || errno == ERANGE) {
    fail_line(path, line, "expected a decimal real, got '" + token + "'");
  }
  return v;
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

TimeSeries load_series(const std::string& path) {
  std::ifstream in = open_in(path);
  TimeSeries ts;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string token, extra;
    if (!(ls >> token)) fail_line(path, lineno, "empty line in series file");
    if (ls >> extra) fail_line(path, lineno, "expected one value per line");
    ts.values.push_back(parse_real(token, path, lineno));
  }
  if (ts.values.empty()) throw std::runtime_error(path + ": empty series file");
  validate(ts);
  return ts;
}

void save_series(const TimeSeries& series, const std::string& path) {
  std::string out;
  out.reserve(series.values.size() * 20);
  for (const double v : series.values) {
    out += format_real(v);
    out += '\n';
  }
  write_text_file(path, out);
}

SymbolMatrix load_matrix(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  std::size_t lineno = 0;
  long declared_alphabet = -1;
  std::vector<std::vector<std::uint8_t>> rows;
  std::size_t width = 0;
  int max_entry = 0;

  while (std::getline(in, line)) {
    ++lineno;
    if (lineno == 1 && line.rfind("# alphabet=", 0) == 0) {
      const std::string num = line.substr(11);
      char* end = nullptr;
      declared_alphabet = std::strtol(num.c_str(), &end, 10);
      if (end == num.c_str() || *end != '\0' || declared_alphabet < 2 || declared_alphabet > 256) {
        fail_line(path, lineno, "bad alphabet header '" + line + "'");
      }
      continue;
    }
    std::istringstream ls(line);
    std::vector<std::uint8_t> row;
    std::string token;
    while (ls >> token) {
      char* end = nullptr;
      const long v = std::strtol(token.c_str(), &end, 10);
      if (end == token.c_str() || *end != '\0' || v < 0 || v > 255) {
        fail_line(path, lineno, "expected a symbol in [0, 255], got '" + token + "'");
      }
      max_entry = std::max(max_entry, static_cast<int>(v));
      row.push_back(static_cast<std::uint8_t>(v));
    }
    if (row.empty()) fail_line(path, lineno, "empty row in matrix file");
    if (width == 0) {
      width = row.size();
    } else if (row.size() != width) {
      fail_line(path, lineno, "row has " + std::to_string(row.size()) + " entries, expected " +
                                  std::to_string(width));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error(path + ": empty matrix file");

  const std::uint32_t alphabet = declared_alphabet > 0
                                     ? static_cast<std::uint32_t>(declared_alphabet)
                                     : std::max<std::uint32_t>(2, static_cast<std::uint32_t>(max_entry) + 1);
  SymbolMatrix m(rows.size(), width, alphabet);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < width; ++c) m.set(r, c, rows[r][c]);
  }
  m.validate_entries();
  return m;
}

void save_matrix(const SymbolMatrix& matrix, const std::string& path) {
  std::string out = "# alphabet=" + std::to_string(matrix.alphabet_size()) + "\n";
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    for (std::size_t c = 0; c < matrix.cols(); ++c) {
      if (c) out += ' ';
      out += std::to_string(static_cast<int>(matrix.at(r, c)));
    }
    out += '\n';
  }
  write_text_file(path, out);
}

namespace {

nlohmann::json report_to_json_object(const Report& r) {
  nlohmann::json j;
  j["algorithm"] = r.algorithm;
  j["params"] = r.params;
  j["dataset"] = r.dataset;
  j["pair_index_1"] = r.pair_index_1;
  j["pair_index_2"] = r.pair_index_2;
  j["distance_or_matches"] = r.distance_or_matches;
  j["pairs_examined"] = r.pairs_examined;
  j["iterations"] = r.iterations;
  j["wall_seconds"] = r.wall_seconds;
  j["seed"] = r.seed;
  if (r.delta) j["delta"] = *r.delta;
  if (r.direction) j["direction"] = *r.direction;
  if (r.recovery_iteration) j["recovery_iteration"] = *r.recovery_iteration;
  if (r.recovery_candidates) j["recovery_candidates"] = *r.recovery_candidates;
  return j;
}

// CSV cells use the JSON scalar renderer, so any value appears with the same
// bytes in both report formats.
std::string csv_cell(const nlohmann::json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string q = "\"";
    for (const char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    q += '"';
    return q;
  }
  return s;
}

}  // namespace

std::string report_to_json(const Report& report) {
  return report_to_json_object(report).dump(2) + "\n";
}

std::string reports_to_json(const std::vector<Report>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Report& r : reports) arr.push_back(report_to_json_object(r));
  return arr.dump(2) + "\n";
}

std::string reports_to_csv(const std::vector<Report>& reports) {
  static const char* kBase[] = {"algorithm",       "params",     "dataset",
                                "pair_index_1",    "pair_index_2", "distance_or_matches",
                                "pairs_examined",  "iterations", "wall_seconds",
                                "seed"};
  static const char* kExtra[] = {"delta", "direction", "recovery_iteration",
                                 "recovery_candidates"};
  bool extras = false;
  for (const Report& r : reports) {
    extras = extras || r.delta || r.direction || r.recovery_iteration || r.recovery_candidates;
  }
  std::string out;
  for (std::size_t i = 0; i < std::size(kBase); ++i) {
    if (i) out += ',';
    out += kBase[i];
  }
  if (extras) {
    for (const char* name : kExtra) {
      out += ',';
      out += name;
    }
  }
  out += '\n';
  for (const Report& r : reports) {
    const nlohmann::json j = report_to_json_object(r);
    for (std::size_t i = 0; i < std::size(kBase); ++i) {
      if (i) out += ',';
      out += csv_cell(j.at(kBase[i]));
    }
    if (extras) {
      for (const char* name : kExtra) {
        out += ',';
        out += j.contains(name) ? csv_cell(j.at(name)) : std::string();
      }
    }
    out += '\n';
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path + " for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace pairscan
