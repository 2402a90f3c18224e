// pairscan front end: data generators, the exact reference-pruned closest
// pair scans, fixed-radius neighbor lists, the bucketing correlation
// searches, and the two-locus screen, all behind one binary.
//
// Every search subcommand prints one JSON report (an array for multi-trial
// runs) to stdout. The report's params field holds the exact command line
// that reproduces the run with every value resolved, and `pairscan verify`
// replays that line and checks the result fields. --out writes the same
// report next to a CSV rendering with identical cell values.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pairscan/datagen.hpp"
#include "pairscan/encoding.hpp"
#include "pairscan/io.hpp"
#include "pairscan/lightbulb.hpp"
#include "pairscan/refscan.hpp"
#include "pairscan/rng.hpp"
#include "pairscan/series.hpp"
#include "pairscan/symbols.hpp"
#include "pairscan/twolocus.hpp"

namespace {

using namespace pairscan;

constexpr const char* kVersion = "0.1.0";

int run_cli(std::vector<std::string> args, std::vector<Report>* capture);

// Shortest decimal form that parses back to the same double. Matches the
// JSON and CSV writers, so every rendering of a value agrees byte for byte.
std::string fmt_num(double v) { return nlohmann::json(v).dump(); }

std::string quoted_token(const std::string& s) {
  if (!s.empty() && s.find_first_of(" \t\"'") == std::string::npos) return s;
  return "\"" + s + "\"";
}

// Accumulates the re-runnable command line recorded in Report::params.
class ParamsBuilder {
 public:
  explicit ParamsBuilder(std::string cmd) : s_(std::move(cmd)) {}
  ParamsBuilder& arg(const std::string& v) {
    s_ += ' ';
    s_ += quoted_token(v);
    return *this;
  }
  ParamsBuilder& flag(const char* f) {
    s_ += ' ';
    s_ += f;
    return *this;
  }
  ParamsBuilder& opt(const char* f, const std::string& v) {
    flag(f);
    return arg(v);
  }
  ParamsBuilder& opt(const char* f, std::uint64_t v) { return opt(f, std::to_string(v)); }
  ParamsBuilder& opt(const char* f, double v) { return opt(f, fmt_num(v)); }
  const std::string& str() const { return s_; }

 private:
  std::string s_;
};

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }

 private:
  using Clock = std::chrono::steady_clock;
  Clock::time_point start_ = Clock::now();
};

// Options every report-producing subcommand shares. --out and --verify are
// delivery, not configuration, so they never enter the params string.
struct CommonOpts {
  std::string out;
  bool deterministic = false;
  std::string version_tag = kVersion;
};

void add_common(CLI::App* c, CommonOpts& o) {
  c->add_option("--out", o.out,
                "write the report as OUT(.json) plus a CSV rendering as OUT(.csv)");
  c->add_flag("--deterministic", o.deterministic,
              "record wall_seconds as 0 so repeated runs are byte-identical");
  c->add_option("--version-tag", o.version_tag, "tool version recorded in the report config")
      ->capture_default_str();
}

void finish_params(ParamsBuilder& pb, const CommonOpts& c) {
  pb.opt("--version-tag", c.version_tag);
  if (c.deterministic) pb.flag("--deterministic");
}

struct BulbOpts {
  std::uint64_t iterations = 0;
  std::uint64_t sample = 0;
  std::uint64_t seed = 1;
  std::uint64_t max_candidates = 10'000'000;
  bool auto_stop = false;
};

void add_bulb(CLI::App* c, BulbOpts& o, bool with_auto_stop = true) {
  c->add_option("--iterations", o.iterations, "bucketing passes; 0 picks the size-based default")
      ->capture_default_str();
  c->add_option("--sample-size", o.sample,
                "positions sampled per pass; 0 picks ceil(log2(items))")
      ->capture_default_str();
  c->add_option("--seed", o.seed, "generator seed")->capture_default_str();
  if (with_auto_stop) {
    c->add_flag("--auto-stop", o.auto_stop,
                "stop once the incumbent survives ceil(log2(items)) consecutive passes");
  }
  c->add_option("--max-candidates", o.max_candidates,
                "abort when the candidate set outgrows this")
      ->capture_default_str();
}

struct ResolvedBulb {
  std::size_t iterations = 0;
  std::size_t sample = 0;
};

// Mirrors the search's own default resolution so the recorded params pin the
// values that actually ran.
ResolvedBulb resolve_bulb(const BulbOpts& o, std::size_t items, std::size_t positions) {
  ResolvedBulb r;
  r.sample = o.sample ? o.sample : std::min(default_sample_size(items), positions);
  r.iterations = o.iterations ? o.iterations : default_iterations(items);
  return r;
}

LightbulbParams make_bulb_params(const BulbOpts& o, const ResolvedBulb& r) {
  LightbulbParams p;
  p.iterations = r.iterations;
  p.sample_size = r.sample;
  p.seed = o.seed;
  p.auto_stop = o.auto_stop;
  p.max_candidates = o.max_candidates;
  return p;
}

void bulb_params(ParamsBuilder& pb, const BulbOpts& o, const ResolvedBulb& r) {
  pb.opt("--iterations", static_cast<std::uint64_t>(r.iterations));
  pb.opt("--sample-size", static_cast<std::uint64_t>(r.sample));
  pb.opt("--seed", o.seed);
  if (o.auto_stop) pb.flag("--auto-stop");
  pb.opt("--max-candidates", o.max_candidates);
}

std::string strip_extension(const std::string& p) {
  const auto slash = p.find_last_of("/\\");
  const auto dot = p.find_last_of('.');
  if (dot == std::string::npos) return p;
  if (slash != std::string::npos && dot < slash) return p;
  return p.substr(0, dot);
}

int emit(std::vector<Report> reports, const CommonOpts& c, std::vector<Report>* capture,
         bool as_array) {
  if (capture) {
    for (auto& r : reports) capture->push_back(std::move(r));
    return 0;
  }
  const std::string json =
      (!as_array && reports.size() == 1) ? report_to_json(reports[0]) : reports_to_json(reports);
  std::cout << json;
  if (!c.out.empty()) {
    const std::string base = strip_extension(c.out);
    write_text_file(base + ".json", json);
    write_text_file(base + ".csv", reports_to_csv(reports));
  }
  return 0;
}

int not_a_report_command(std::vector<Report>* capture, const char* name) {
  if (!capture) return 0;
  std::cerr << "error: " << name << " does not produce a report to verify\n";
  return 2;
}

// ---------------------------------------------------------------------------
// generators

struct GenWalkOpts {
  std::uint64_t n = 0;
  std::uint64_t seed = 1;
  double stddev = 1.0;
  std::string out;
};

int cmd_gen_walk(const GenWalkOpts& o, std::vector<Report>* capture) {
  if (const int rc = not_a_report_command(capture, "gen-walk")) return rc;
  const TimeSeries ts = gen_random_walk(o.n, o.seed, o.stddev);
  save_series(ts, o.out);
  std::cout << "wrote " << o.n << " values to " << o.out << "\n";
  return 0;
}

struct GenSnpOpts {
  std::uint64_t subjects = 0;
  std::uint64_t n = 0;
  std::uint32_t alphabet = 2;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_gen_snp(const GenSnpOpts& o, std::vector<Report>* capture) {
  if (const int rc = not_a_report_command(capture, "gen-snp")) return rc;
  const SymbolMatrix m = gen_binomial_matrix(o.subjects, o.n, o.alphabet, o.seed);
  save_matrix(m, o.out);
  std::cout << "wrote " << o.subjects << "x" << o.n << " matrix (alphabet " << o.alphabet
            << ") to " << o.out << "\n";
  return 0;
}

struct InjectOpts {
  std::string matrix;
  double target = 0.0;
  std::uint64_t col_a = 0;
  std::uint64_t col_b = 0;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_inject(const InjectOpts& o, std::vector<Report>* capture) {
  if (const int rc = not_a_report_command(capture, "inject")) return rc;
  SymbolMatrix m = load_matrix(o.matrix);
  if (o.col_a < 1 || o.col_b < 1 || o.col_a > m.cols() || o.col_b > m.cols()) {
    throw std::invalid_argument("column indices are 1-based and must be within the matrix");
  }
  inject_pair(m, o.target, o.col_a - 1, o.col_b - 1, o.seed);
  const double achieved =
      static_cast<double>(column_match_count(m, o.col_a - 1, o.col_b - 1)) /
      static_cast<double>(m.rows());
  save_matrix(m, o.out);
  std::cout << "planted pair (" << o.col_a << ", " << o.col_b << ") with correlation "
            << fmt_num(achieved) << " in " << o.out << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// series scans

struct MotifOpts {
  std::string series;
  std::uint64_t gen_n = 0;
  double stddev = 1.0;
  std::uint64_t len = 0;
  std::uint64_t refs = 10;
  double factor = 10.0;
  std::uint64_t seed = 1;
  std::int64_t exclusion = -1;
  std::string engine = "mpr";
  std::string verify_engine;
  CommonOpts common;
};

void add_series_input(CLI::App* c, MotifOpts& o) {
  auto* pos = c->add_option("series", o.series, "series file, one value per line")
                  ->check(CLI::ExistingFile);
  auto* gw = c->add_option("--gen-walk", o.gen_n,
                           "generate a random walk of this length instead of reading a file");
  pos->excludes(gw);
  c->add_option("--walk-stddev", o.stddev, "step spread for --gen-walk")
      ->capture_default_str()
      ->needs(gw);
  c->add_option("--len", o.len, "window length")->required();
  c->add_option("--refs", o.refs, "reference count")->capture_default_str();
  c->add_option("--factor", o.factor, "coordinate scale for the references; 1 is the unscaled baseline")
      ->capture_default_str();
  c->add_option("--seed", o.seed, "seed for reference choice (and --gen-walk)")
      ->capture_default_str();
  c->add_option("--exclusion", o.exclusion,
                "skip pairs with |i-j| < zone; -1 means the window length, 0 admits all pairs")
      ->capture_default_str();
}

struct SeriesData {
  TimeSeries ts;
  std::string dataset;
};

SeriesData load_series_input(const MotifOpts& o) {
  if (o.series.empty() == (o.gen_n == 0)) {
    throw std::invalid_argument("pass a series file or --gen-walk, not both");
  }
  SeriesData d;
  if (o.series.empty()) {
    d.ts = gen_random_walk(o.gen_n, o.seed, o.stddev);
    d.dataset = "gen-walk:n=" + std::to_string(o.gen_n) + ",seed=" + std::to_string(o.seed) +
                ",stddev=" + fmt_num(o.stddev);
  } else {
    d.ts = load_series(o.series);
    d.dataset = o.series;
  }
  return d;
}

void series_params(ParamsBuilder& pb, const MotifOpts& o, std::size_t zone, double f_eff) {
  if (!o.series.empty()) {
    pb.arg(o.series);
  } else {
    pb.opt("--gen-walk", o.gen_n);
    pb.opt("--walk-stddev", o.stddev);
  }
  pb.opt("--len", o.len);
  pb.opt("--refs", o.refs);
  pb.opt("--factor", f_eff);
  pb.opt("--seed", o.seed);
  pb.opt("--exclusion", static_cast<std::uint64_t>(zone));
  pb.opt("--engine", o.engine);
}

int cmd_motif(const MotifOpts& o, std::vector<Report>* capture) {
  const SeriesData data = load_series_input(o);
  const PointSet points = PointSet::windows_of(data.ts, o.len);
  const std::size_t zone = o.exclusion < 0 ? o.len : static_cast<std::size_t>(o.exclusion);

  auto run = [&](const std::string& eng) {
    Timer t;
    PairResult r;
    if (eng == "brute") {
      r = brute_force_closest_pair(points, zone);
    } else {
      r = closest_pair(points, o.refs, eng == "mk" ? 1.0 : o.factor, o.seed, zone);
    }
    return std::pair<PairResult, double>(r, t.seconds());
  };

  const auto [res, wall] = run(o.engine);
  const double f_eff = o.engine == "mk" ? 1.0 : o.factor;

  ParamsBuilder pb("motif");
  series_params(pb, o, zone, f_eff);
  finish_params(pb, o.common);

  Report r;
  r.algorithm = o.engine;
  r.params = pb.str();
  r.dataset = data.dataset;
  r.pair_index_1 = res.index_i + 1;
  r.pair_index_2 = res.index_j + 1;
  r.distance_or_matches = res.distance;
  r.pairs_examined = res.stats.pairs_examined;
  r.iterations = 0;
  r.wall_seconds = o.common.deterministic ? 0.0 : wall;
  r.seed = o.seed;
  if (const int rc = emit({r}, o.common, capture, false)) return rc;

  if (!o.verify_engine.empty() && !capture) {
    const auto [other, vwall] = run(o.verify_engine);
    (void)vwall;
    if (other.distance != res.distance) {
      std::cerr << "verify: MISMATCH " << o.verify_engine << " found distance "
                << fmt_num(other.distance) << " at (" << other.index_i + 1 << ", "
                << other.index_j + 1 << "), " << o.engine << " found " << fmt_num(res.distance)
                << "\n";
      return 3;
    }
    std::cerr << "verify: " << o.verify_engine << " agrees, distance " << fmt_num(res.distance);
    if (other.index_i != res.index_i || other.index_j != res.index_j) {
      std::cerr << " (tie, different pair: " << other.index_i + 1 << ", " << other.index_j + 1
                << ")";
    }
    std::cerr << "\n";
  }
  return 0;
}

std::uint64_t admissible_pair_count(std::size_t n, std::size_t zone) {
  if (zone == 0) return static_cast<std::uint64_t>(n) * (n - 1) / 2;
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (n > i + zone) c += n - i - zone;
  }
  return c;
}

struct FrnnOpts {
  MotifOpts base;
  double radius = 0.0;
  std::string pairs_out;
};

int cmd_frnn(const FrnnOpts& o, std::vector<Report>* capture) {
  const SeriesData data = load_series_input(o.base);
  const PointSet points = PointSet::windows_of(data.ts, o.base.len);
  const std::size_t zone =
      o.base.exclusion < 0 ? o.base.len : static_cast<std::size_t>(o.base.exclusion);

  struct FrnnRun {
    std::vector<std::vector<std::size_t>> lists;
    std::uint64_t examined = 0;
    double wall = 0.0;
  };
  auto run = [&](const std::string& eng) {
    Timer t;
    FrnnRun fr;
    if (eng == "brute") {
      fr.lists = brute_force_neighbors(points, o.radius, zone);
      fr.examined = admissible_pair_count(points.size(), zone);
    } else {
      NeighborResult nr = fixed_radius_neighbors(points, o.radius, o.base.refs,
                                                 eng == "mk" ? 1.0 : o.base.factor, o.base.seed,
                                                 zone);
      fr.lists = std::move(nr.neighbors);
      fr.examined = nr.stats.pairs_examined;
    }
    fr.wall = t.seconds();
    return fr;
  };

  const FrnnRun res = run(o.base.engine);
  std::uint64_t pair_count = 0;
  for (const auto& l : res.lists) pair_count += l.size();
  pair_count /= 2;
  std::uint64_t first_a = 0, first_b = 0;
  for (std::size_t i = 0; i < res.lists.size() && first_a == 0; ++i) {
    for (const std::size_t j : res.lists[i]) {
      if (j > i) {
        first_a = i + 1;
        first_b = j + 1;
        break;
      }
    }
  }

  const double f_eff = o.base.engine == "mk" ? 1.0 : o.base.factor;
  ParamsBuilder pb("frnn");
  series_params(pb, o.base, zone, f_eff);
  pb.opt("--radius", o.radius);
  finish_params(pb, o.base.common);

  Report r;
  r.algorithm = o.base.engine;
  r.params = pb.str();
  r.dataset = data.dataset;
  r.pair_index_1 = first_a;
  r.pair_index_2 = first_b;
  r.distance_or_matches = static_cast<double>(pair_count);
  r.pairs_examined = res.examined;
  r.iterations = 0;
  r.wall_seconds = o.base.common.deterministic ? 0.0 : res.wall;
  r.seed = o.base.seed;
  if (const int rc = emit({r}, o.base.common, capture, false)) return rc;

  if (!o.pairs_out.empty() && !capture) {
    std::string out;
    for (std::size_t i = 0; i < res.lists.size(); ++i) {
      for (const std::size_t j : res.lists[i]) {
        if (j > i) {
          out += std::to_string(i + 1);
          out += ',';
          out += std::to_string(j + 1);
          out += '\n';
        }
      }
    }
    write_text_file(o.pairs_out, out);
  }

  if (!o.base.verify_engine.empty() && !capture) {
    const FrnnRun other = run(o.base.verify_engine);
    if (other.lists != res.lists) {
      std::cerr << "verify: MISMATCH neighbor lists differ between " << o.base.engine << " and "
                << o.base.verify_engine << "\n";
      return 3;
    }
    std::cerr << "verify: " << o.base.verify_engine << " agrees, " << pair_count
              << " neighbor pairs\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// string scans

struct HamOpts {
  std::string matrix;
  BulbOpts bulb;
  std::string engine = "mlba";
  std::string verify_engine;
  CommonOpts common;
};

int cmd_closest_hamming(const HamOpts& o, std::vector<Report>* capture) {
  const SymbolMatrix subjects = load_matrix(o.matrix);  // subjects x strings
  const SymbolMatrix items = subjects.transposed();     // strings are the items
  const ResolvedBulb rb = resolve_bulb(o.bulb, items.item_count(), items.position_count());
  const LightbulbParams lp = make_bulb_params(o.bulb, rb);

  auto run = [&](const std::string& eng) {
    Timer t;
    CorrelationResult cr = eng == "brute" ? brute_force_most_correlated(items)
                                          : most_correlated_pair(items, lp);
    return std::pair<CorrelationResult, double>(cr, t.seconds());
  };
  const auto [res, wall] = run(o.engine);
  if (!res.found && !capture) {
    std::cerr << "warning: no candidate pair was bucketed; raise --iterations or lower "
                 "--sample-size\n";
  }

  ParamsBuilder pb("closest-hamming");
  pb.arg(o.matrix);
  bulb_params(pb, o.bulb, rb);
  pb.opt("--engine", o.engine);
  finish_params(pb, o.common);

  Report r;
  r.algorithm = o.engine;
  r.params = pb.str();
  r.dataset = o.matrix;
  r.pair_index_1 = res.found ? res.index_a + 1 : 0;
  r.pair_index_2 = res.found ? res.index_b + 1 : 0;
  r.distance_or_matches = static_cast<double>(res.matches);
  r.pairs_examined = res.stats.pairs_examined;
  r.iterations = res.stats.iterations_run;
  r.wall_seconds = o.common.deterministic ? 0.0 : wall;
  r.seed = o.bulb.seed;
  if (const int rc = emit({r}, o.common, capture, false)) return rc;

  if (!o.verify_engine.empty() && !capture) {
    const auto [other, vwall] = run(o.verify_engine);
    (void)vwall;
    if (!res.found || other.matches != res.matches) {
      std::cerr << "verify: MISMATCH " << o.verify_engine << " found " << other.matches
                << " matches at (" << other.index_a + 1 << ", " << other.index_b + 1 << "), "
                << o.engine << " found " << (res.found ? std::to_string(res.matches) : "nothing")
                << "\n";
      return 3;
    }
    std::cerr << "verify: " << o.verify_engine << " agrees, " << res.matches << " matches";
    if (other.index_a != res.index_a || other.index_b != res.index_b) {
      std::cerr << " (tie, different pair: " << other.index_a + 1 << ", " << other.index_b + 1
                << ")";
    }
    std::cerr << "\n";
  }
  return 0;
}

struct FarOpts {
  std::string matrix;
  BulbOpts bulb;
  std::string encoding = "one-hot";
  std::uint64_t random_bits = 0;
  std::string engine = "mlba";
  std::string verify_engine;
  CommonOpts common;
};

int cmd_farthest_hamming(const FarOpts& o, std::vector<Report>* capture) {
  const SymbolMatrix subjects = load_matrix(o.matrix);
  std::vector<SymbolString> strings;
  strings.reserve(subjects.cols());
  for (std::size_t c = 0; c < subjects.cols(); ++c) strings.push_back(subjects.column_string(c));
  const std::uint32_t sigma = subjects.alphabet_size();
  const std::size_t k = subjects.rows();

  const std::size_t bits = o.random_bits ? o.random_bits : sigma;
  const BinaryEncoding enc =
      o.encoding == "one-hot"
          ? BinaryEncoding::one_hot(sigma)
          : BinaryEncoding::random_table(sigma, bits, derive_seed(o.bulb.seed, 1ull << 32, 1));
  const ResolvedBulb rb = resolve_bulb(o.bulb, 2 * strings.size(), enc.code_length * k);
  const LightbulbParams lp = make_bulb_params(o.bulb, rb);

  auto run = [&](const std::string& eng) {
    Timer t;
    StringPairResult sr = eng == "brute" ? brute_force_least_correlated(strings)
                                         : least_correlated_pair(strings, enc, lp);
    return std::pair<StringPairResult, double>(sr, t.seconds());
  };
  const auto [res, wall] = run(o.engine);
  if (!res.found && !capture) {
    std::cerr << "warning: no candidate pair was bucketed; raise --iterations or lower "
                 "--sample-size\n";
  }

  ParamsBuilder pb("farthest-hamming");
  pb.arg(o.matrix);
  bulb_params(pb, o.bulb, rb);
  pb.opt("--encoding", o.encoding);
  if (o.encoding == "random") pb.opt("--random-bits", static_cast<std::uint64_t>(bits));
  pb.opt("--engine", o.engine);
  finish_params(pb, o.common);

  Report r;
  r.algorithm = o.engine;
  r.params = pb.str();
  r.dataset = o.matrix;
  r.pair_index_1 = res.found ? res.index_a + 1 : 0;
  r.pair_index_2 = res.found ? res.index_b + 1 : 0;
  r.distance_or_matches = static_cast<double>(res.matches);
  r.pairs_examined = res.stats.pairs_examined;
  r.iterations = res.stats.iterations_run;
  r.wall_seconds = o.common.deterministic ? 0.0 : wall;
  r.seed = o.bulb.seed;
  if (const int rc = emit({r}, o.common, capture, false)) return rc;

  if (!o.verify_engine.empty() && !capture) {
    const auto [other, vwall] = run(o.verify_engine);
    (void)vwall;
    if (!res.found || other.matches != res.matches) {
      std::cerr << "verify: MISMATCH " << o.verify_engine << " found " << other.matches
                << " matches at (" << other.index_a + 1 << ", " << other.index_b + 1 << "), "
                << o.engine << " found " << (res.found ? std::to_string(res.matches) : "nothing")
                << "\n";
      return 3;
    }
    std::cerr << "verify: " << o.verify_engine << " agrees, " << res.matches << " matches\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// two-locus

struct TlOpts {
  std::string cases;
  std::string controls;
  BulbOpts bulb;
  std::uint64_t max_replicated = 100'000;
  std::string engine = "mlba";
  std::string verify_engine;
  CommonOpts common;
};

int cmd_twolocus(const TlOpts& o, std::vector<Report>* capture) {
  CaseControlMatrix cc{load_matrix(o.cases), load_matrix(o.controls)};
  validate(cc);
  const std::size_t n = cc.snp_count();
  const std::uint64_t L =
      std::lcm<std::uint64_t>(cc.cases.rows(), cc.controls.rows());
  const ResolvedBulb rb = resolve_bulb(o.bulb, 2 * n, static_cast<std::size_t>(6 * L));
  const LightbulbParams lp = make_bulb_params(o.bulb, rb);

  auto run = [&](const std::string& eng) {
    Timer t;
    TwoLocusResult tr = eng == "brute" ? brute_force_two_locus(cc)
                                       : two_locus_scan(cc, lp, o.max_replicated);
    return std::pair<TwoLocusResult, double>(tr, t.seconds());
  };
  const auto [res, wall] = run(o.engine);
  if (!res.found && !capture) {
    std::cerr << "warning: no candidate pair was bucketed; raise --iterations or lower "
                 "--sample-size\n";
  }

  ParamsBuilder pb("twolocus");
  pb.opt("--cases", o.cases);
  pb.opt("--controls", o.controls);
  bulb_params(pb, o.bulb, rb);
  pb.opt("--max-replicated", o.max_replicated);
  pb.opt("--engine", o.engine);
  finish_params(pb, o.common);

  Report r;
  r.algorithm = o.engine;
  r.params = pb.str();
  r.dataset = "cases=" + o.cases + ",controls=" + o.controls;
  r.pair_index_1 = res.found ? res.index_a + 1 : 0;
  r.pair_index_2 = res.found ? res.index_b + 1 : 0;
  r.distance_or_matches = res.delta;
  r.pairs_examined = res.stats.pairs_examined;
  r.iterations = res.stats.iterations_run;
  r.wall_seconds = o.common.deterministic ? 0.0 : wall;
  r.seed = o.bulb.seed;
  r.delta = res.delta;
  r.direction = to_string(res.direction);
  if (const int rc = emit({r}, o.common, capture, false)) return rc;

  if (!o.verify_engine.empty() && !capture) {
    const auto [other, vwall] = run(o.verify_engine);
    (void)vwall;
    if (!res.found || other.delta != res.delta) {
      std::cerr << "verify: MISMATCH " << o.verify_engine << " found delta "
                << fmt_num(other.delta) << " at (" << other.index_a + 1 << ", "
                << other.index_b + 1 << "), " << o.engine << " found "
                << (res.found ? fmt_num(res.delta) : "nothing") << "\n";
      return 3;
    }
    std::cerr << "verify: " << o.verify_engine << " agrees, delta " << fmt_num(res.delta);
    if (other.index_a != res.index_a || other.index_b != res.index_b) {
      std::cerr << " (tie, different pair: " << other.index_a + 1 << ", " << other.index_b + 1
                << ")";
    }
    std::cerr << "\n";
  }
  return 0;
}

struct TlInjectOpts {
  std::uint64_t n = 0;
  std::uint64_t subjects = 0;
  double delta = 0.0;
  std::uint64_t trials = 1;
  std::uint64_t seed = 1;
  std::uint64_t iterations = 0;
  std::uint64_t sample = 0;
  std::uint64_t max_candidates = 10'000'000;
  CommonOpts common;
};

int cmd_twolocus_inject(const TlInjectOpts& o, std::vector<Report>* capture) {
  if (o.trials < 1) throw std::invalid_argument("--trials must be at least 1");
  const std::size_t items = 2 * static_cast<std::size_t>(o.n);
  const std::size_t positions = 6 * static_cast<std::size_t>(o.subjects);
  const std::size_t sample =
      o.sample ? o.sample : std::min(default_sample_size(items), positions);
  const std::size_t iterations = o.iterations ? o.iterations : 200 * default_sample_size(items);

  ParamsBuilder pb("twolocus-inject");
  pb.opt("--n", o.n);
  pb.opt("--subjects", o.subjects);
  pb.opt("--delta", o.delta);
  pb.opt("--trials", o.trials);
  pb.opt("--seed", o.seed);
  pb.opt("--iterations", static_cast<std::uint64_t>(iterations));
  pb.opt("--sample-size", static_cast<std::uint64_t>(sample));
  pb.opt("--max-candidates", o.max_candidates);
  finish_params(pb, o.common);

  std::vector<Report> reports;
  std::uint64_t recovered = 0;
  std::uint64_t exceeded = 0;
  for (std::uint64_t t = 0; t < o.trials; ++t) {
    const std::uint64_t bg = derive_seed(o.seed, 2 * t);
    LightbulbParams lp;
    lp.iterations = iterations;
    lp.sample_size = sample;
    lp.seed = derive_seed(o.seed, 2 * t + 1);
    lp.max_candidates = o.max_candidates;

    Timer timer;
    const InjectionReport ir = injection_experiment(o.n, o.subjects, bg, o.delta, lp);
    const double wall = timer.seconds();
    recovered += ir.recovered ? 1 : 0;
    exceeded += ir.background_exceeds ? 1 : 0;

    Report r;
    r.algorithm = "inject";
    r.params = pb.str();
    r.dataset = "inject:n=" + std::to_string(o.n) + ",subjects=" + std::to_string(o.subjects) +
                ",delta=" + fmt_num(o.delta) + ",background-seed=" + std::to_string(bg);
    r.pair_index_1 = ir.injected_a + 1;
    r.pair_index_2 = ir.injected_b + 1;
    r.distance_or_matches = ir.achieved_delta;
    r.pairs_examined = ir.candidate_pairs;
    r.iterations = ir.iterations_run;
    r.wall_seconds = o.common.deterministic ? 0.0 : wall;
    r.seed = bg;
    r.delta = ir.achieved_delta;
    r.direction = to_string(ScanDirection::cases_minus_controls);
    r.recovery_iteration = ir.recovered ? ir.recovery_iteration : 0;
    r.recovery_candidates = ir.recovered ? ir.recovery_candidates : 0;
    reports.push_back(std::move(r));
  }

  if (const int rc = emit(std::move(reports), o.common, capture, true)) return rc;
  if (!capture) {
    std::cerr << "recovered " << recovered << "/" << o.trials << " trials";
    if (exceeded > 0) {
      std::cerr << "; a background pair beat the planted delta in " << exceeded << " trials";
    }
    std::cerr << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepOpts {
  std::vector<std::uint64_t> ns;
  std::vector<std::uint64_t> lens;
  std::vector<std::uint64_t> qs{10};
  std::vector<double> fs{10.0};
  std::vector<std::string> engines{"mk", "mpr"};
  std::uint64_t reps = 10;
  std::uint64_t seed = 1;
  std::string out;
  std::string raw_out;
  bool deterministic = false;
};

int cmd_sweep(const SweepOpts& o, std::vector<Report>* capture) {
  if (const int rc = not_a_report_command(capture, "sweep")) return rc;
  if (o.reps < 1) throw std::invalid_argument("--reps must be at least 1");

  struct Agg {
    double pairs = 0.0;
    double wall = 0.0;
    std::uint64_t count = 0;
  };
  std::vector<std::string> agg_keys;  // emission order
  std::vector<Agg> agg;
  auto agg_index = [&](const std::string& key) {
    for (std::size_t i = 0; i < agg_keys.size(); ++i) {
      if (agg_keys[i] == key) return i;
    }
    agg_keys.push_back(key);
    agg.emplace_back();
    return agg.size() - 1;
  };

  std::string raw = "n,len,q,f,engine,rep,seed,pair_index_1,pair_index_2,distance,"
                    "pairs_examined,wall_seconds\n";

  for (std::size_t ni = 0; ni < o.ns.size(); ++ni) {
    for (std::size_t li = 0; li < o.lens.size(); ++li) {
      const std::uint64_t n = o.ns[ni];
      const std::uint64_t len = o.lens[li];
      const std::uint64_t cell = ni * o.lens.size() + li;
      for (std::uint64_t rep = 0; rep < o.reps; ++rep) {
        const std::uint64_t dseed = derive_seed(o.seed, cell, rep);
        const TimeSeries ts = gen_random_walk(n, dseed);
        const PointSet points = PointSet::windows_of(ts, len);
        const std::size_t zone = len;

        double cell_distance = 0.0;
        bool have_distance = false;
        for (const std::string& eng : o.engines) {
          const bool brute = eng == "brute";
          const std::vector<std::uint64_t> ql = brute ? std::vector<std::uint64_t>{0} : o.qs;
          const std::vector<double> fl =
              brute || eng == "mk" ? std::vector<double>{1.0} : o.fs;
          for (const std::uint64_t q : ql) {
            for (const double f : fl) {
              Timer t;
              const PairResult r = brute ? brute_force_closest_pair(points, zone)
                                         : closest_pair(points, q, f, dseed, zone);
              const double wall = o.deterministic ? 0.0 : t.seconds();
              if (!have_distance) {
                cell_distance = r.distance;
                have_distance = true;
              } else if (r.distance != cell_distance) {
                std::cerr << "sweep: engines disagree on n=" << n << " len=" << len
                          << " rep=" << rep + 1 << ": " << fmt_num(r.distance) << " vs "
                          << fmt_num(cell_distance) << "\n";
                return 3;
              }
              raw += std::to_string(n) + "," + std::to_string(len) + "," + std::to_string(q) +
                     "," + fmt_num(f) + "," + eng + "," + std::to_string(rep + 1) + "," +
                     std::to_string(dseed) + "," + std::to_string(r.index_i + 1) + "," +
                     std::to_string(r.index_j + 1) + "," + fmt_num(r.distance) + "," +
                     std::to_string(r.stats.pairs_examined) + "," + fmt_num(wall) + "\n";
              const std::string key = std::to_string(n) + "," + std::to_string(len) + "," +
                                      std::to_string(q) + "," + fmt_num(f) + "," + eng;
              const std::size_t ai = agg_index(key);
              agg[ai].pairs += static_cast<double>(r.stats.pairs_examined);
              agg[ai].wall += wall;
              agg[ai].count += 1;
            }
          }
        }
      }
    }
  }

  std::string table = "n,len,q,f,engine,reps,mean_pairs_examined,mean_wall_seconds\n";
  for (std::size_t i = 0; i < agg_keys.size(); ++i) {
    const double c = static_cast<double>(agg[i].count);
    table += agg_keys[i] + "," + std::to_string(agg[i].count) + "," +
             fmt_num(agg[i].pairs / c) + "," + fmt_num(agg[i].wall / c) + "\n";
  }

  std::cout << table;
  if (!o.out.empty()) {
    write_text_file(o.out, table);
    const std::string raw_path =
        o.raw_out.empty() ? strip_extension(o.out) + ".raw.csv" : o.raw_out;
    write_text_file(raw_path, raw);
  } else if (!o.raw_out.empty()) {
    write_text_file(o.raw_out, raw);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyOpts {
  std::string report;
};

template <typename T>
bool check_field(const nlohmann::json& row, const char* key, const T& got, std::string& msg) {
  if (!row.contains(key)) {
    msg = std::string(key) + " missing from report";
    return false;
  }
  const T expected = row.at(key).get<T>();
  if (expected != got) {
    msg = std::string(key) + " expected " + nlohmann::json(expected).dump() + " got " +
          nlohmann::json(got).dump();
    return false;
  }
  return true;
}

template <typename T>
bool check_optional_field(const nlohmann::json& row, const char* key,
                          const std::optional<T>& got, std::string& msg) {
  if (row.contains(key) != got.has_value()) {
    msg = std::string(key) + (got.has_value() ? " missing from report" : " not reproduced");
    return false;
  }
  if (!got.has_value()) return true;
  return check_field(row, key, *got, msg);
}

bool compare_row(const nlohmann::json& row, const Report& got, std::string& msg) {
  return check_field(row, "algorithm", got.algorithm, msg) &&
         check_field(row, "dataset", got.dataset, msg) &&
         check_field(row, "pair_index_1", got.pair_index_1, msg) &&
         check_field(row, "pair_index_2", got.pair_index_2, msg) &&
         check_field(row, "distance_or_matches", got.distance_or_matches, msg) &&
         check_field(row, "pairs_examined", got.pairs_examined, msg) &&
         check_field(row, "iterations", got.iterations, msg) &&
         check_field(row, "seed", got.seed, msg) &&
         check_optional_field(row, "delta", got.delta, msg) &&
         check_optional_field(row, "direction", got.direction, msg) &&
         check_optional_field(row, "recovery_iteration", got.recovery_iteration, msg) &&
         check_optional_field(row, "recovery_candidates", got.recovery_candidates, msg);
}

int cmd_verify(const VerifyOpts& o) {
  const nlohmann::json doc = nlohmann::json::parse(read_text_file(o.report));
  std::vector<nlohmann::json> rows;
  if (doc.is_array()) {
    rows.assign(doc.begin(), doc.end());
  } else {
    rows.push_back(doc);
  }
  if (rows.empty()) {
    std::cerr << "error: report file holds no reports\n";
    return 2;
  }

  // Rows that share a params line came from one multi-trial run; replay each
  // distinct line once and compare the full row set.
  std::vector<std::pair<std::string, std::vector<nlohmann::json>>> groups;
  for (const auto& row : rows) {
    const std::string params = row.value("params", "");
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const auto& g) { return g.first == params; });
    if (it == groups.end()) {
      groups.push_back({params, {}});
      it = std::prev(groups.end());
    }
    it->second.push_back(row);
  }

  bool ok = true;
  for (const auto& [params, group_rows] : groups) {
    if (params.empty()) {
      std::cout << "verify: MISMATCH report has no params line\n";
      ok = false;
      continue;
    }
    std::vector<std::string> tokens = CLI::detail::split_up(params);
    if (tokens.empty() || tokens.front() == "verify") {
      std::cout << "verify: MISMATCH params line is not replayable: " << params << "\n";
      ok = false;
      continue;
    }
    std::vector<Report> got;
    const int rc = run_cli(tokens, &got);
    if (rc != 0) {
      std::cout << "verify: MISMATCH re-run exited with code " << rc << ": " << params << "\n";
      ok = false;
      continue;
    }
    if (got.size() != group_rows.size()) {
      std::cout << "verify: MISMATCH re-run produced " << got.size() << " reports, file holds "
                << group_rows.size() << ": " << params << "\n";
      ok = false;
      continue;
    }
    bool group_ok = true;
    for (std::size_t i = 0; i < got.size(); ++i) {
      std::string msg;
      if (!compare_row(group_rows[i], got[i], msg)) {
        std::cout << "verify: MISMATCH row " << i + 1 << ": " << msg << ": " << params << "\n";
        group_ok = false;
        ok = false;
        break;
      }
    }
    if (group_ok) std::cout << "verify: OK " << params << "\n";
  }
  return ok ? 0 : 3;
}

// ---------------------------------------------------------------------------

int run_cli(std::vector<std::string> args, std::vector<Report>* capture) {
  CLI::App app{"exact pair scans over series and strings"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  app.set_config("--config", "", "read options from a key=value config file");

  const std::vector<std::string> kSeriesEngines{"mpr", "mk", "brute"};
  const std::vector<std::string> kBulbEngines{"mlba", "brute"};

  GenWalkOpts gw;
  auto* sc_gw = app.add_subcommand("gen-walk", "write a Gaussian random walk series file");
  sc_gw->add_option("--n", gw.n, "number of values")->required();
  sc_gw->add_option("--seed", gw.seed, "generator seed")->capture_default_str();
  sc_gw->add_option("--stddev", gw.stddev, "step spread")->capture_default_str();
  sc_gw->add_option("--out", gw.out, "output path")->required();

  GenSnpOpts gs;
  auto* sc_gs = app.add_subcommand("gen-snp", "write a uniform random symbol matrix file");
  sc_gs->add_option("--subjects", gs.subjects, "rows")->required();
  sc_gs->add_option("--n", gs.n, "columns (strings)")->required();
  sc_gs->add_option("--alphabet", gs.alphabet, "symbols per position")->capture_default_str();
  sc_gs->add_option("--seed", gs.seed, "generator seed")->capture_default_str();
  sc_gs->add_option("--out", gs.out, "output path")->required();

  InjectOpts inj;
  auto* sc_inj = app.add_subcommand("inject", "plant a correlated column pair in a matrix file");
  sc_inj->add_option("matrix", inj.matrix, "input matrix file")
      ->required()
      ->check(CLI::ExistingFile);
  sc_inj->add_option("--target", inj.target, "planted correlation in (0, 1]")->required();
  sc_inj->add_option("--col-a", inj.col_a, "first column, 1-based")->required();
  sc_inj->add_option("--col-b", inj.col_b, "second column, 1-based")->required();
  sc_inj->add_option("--seed", inj.seed, "placement seed")->capture_default_str();
  sc_inj->add_option("--out", inj.out, "output path")->required();

  MotifOpts mo;
  auto* sc_mo = app.add_subcommand("motif", "exact closest window pair of a series");
  add_series_input(sc_mo, mo);
  sc_mo->add_option("--engine", mo.engine, "mpr, mk, or brute")
      ->check(CLI::IsMember(kSeriesEngines))
      ->capture_default_str();
  sc_mo->add_option("--verify", mo.verify_engine, "also run this engine and require the same distance")
      ->check(CLI::IsMember(kSeriesEngines));
  add_common(sc_mo, mo.common);

  FrnnOpts fr;
  auto* sc_fr = app.add_subcommand("frnn", "all window pairs within a fixed radius");
  add_series_input(sc_fr, fr.base);
  sc_fr->add_option("--radius", fr.radius, "inclusive distance threshold")->required();
  sc_fr->add_option("--pairs-out", fr.pairs_out, "write every neighbor pair as 'i,j' lines");
  sc_fr->add_option("--engine", fr.base.engine, "mpr, mk, or brute")
      ->check(CLI::IsMember(kSeriesEngines))
      ->capture_default_str();
  sc_fr->add_option("--verify", fr.base.verify_engine,
                    "also run this engine and require identical neighbor lists")
      ->check(CLI::IsMember(kSeriesEngines));
  add_common(sc_fr, fr.base.common);

  HamOpts ham;
  auto* sc_ham = app.add_subcommand(
      "closest-hamming", "most correlated string pair (columns of a matrix file)");
  sc_ham->add_option("matrix", ham.matrix, "matrix file, one string per column")
      ->required()
      ->check(CLI::ExistingFile);
  add_bulb(sc_ham, ham.bulb);
  sc_ham->add_option("--engine", ham.engine, "mlba or brute")
      ->check(CLI::IsMember(kBulbEngines))
      ->capture_default_str();
  sc_ham->add_option("--verify", ham.verify_engine,
                     "also run this engine and require the same match count")
      ->check(CLI::IsMember(kBulbEngines));
  add_common(sc_ham, ham.common);

  FarOpts far;
  auto* sc_far = app.add_subcommand(
      "farthest-hamming", "least correlated string pair via complement encoding");
  sc_far->add_option("matrix", far.matrix, "matrix file, one string per column")
      ->required()
      ->check(CLI::ExistingFile);
  add_bulb(sc_far, far.bulb);
  sc_far->add_option("--encoding", far.encoding, "one-hot or random")
      ->check(CLI::IsMember({"one-hot", "random"}))
      ->capture_default_str();
  sc_far->add_option("--random-bits", far.random_bits,
                     "code length for --encoding random; 0 picks the alphabet size");
  sc_far->add_option("--engine", far.engine, "mlba or brute")
      ->check(CLI::IsMember(kBulbEngines))
      ->capture_default_str();
  sc_far->add_option("--verify", far.verify_engine,
                     "also run this engine and require the same match count")
      ->check(CLI::IsMember(kBulbEngines));
  add_common(sc_far, far.common);

  TlOpts tl;
  auto* sc_tl = app.add_subcommand(
      "twolocus", "SNP pair with the largest case/control correlation difference");
  sc_tl->add_option("--cases", tl.cases, "case genotype matrix, subjects x SNPs")
      ->required()
      ->check(CLI::ExistingFile);
  sc_tl->add_option("--controls", tl.controls, "control genotype matrix, subjects x SNPs")
      ->required()
      ->check(CLI::ExistingFile);
  add_bulb(sc_tl, tl.bulb);
  sc_tl->add_option("--max-replicated", tl.max_replicated,
                    "cap on the per-group subject count after lcm replication")
      ->capture_default_str();
  sc_tl->add_option("--engine", tl.engine, "mlba or brute")
      ->check(CLI::IsMember(kBulbEngines))
      ->capture_default_str();
  sc_tl->add_option("--verify", tl.verify_engine,
                    "also run this engine and require the same delta")
      ->check(CLI::IsMember(kBulbEngines));
  add_common(sc_tl, tl.common);

  TlInjectOpts ti;
  auto* sc_ti = app.add_subcommand(
      "twolocus-inject", "planted-pair recovery trials on synthetic case/control data");
  sc_ti->add_option("--n", ti.n, "SNP count")->required();
  sc_ti->add_option("--subjects", ti.subjects, "subjects per group")->required();
  sc_ti->add_option("--delta", ti.delta, "planted correlation difference in [0, 1)")->required();
  sc_ti->add_option("--trials", ti.trials, "independent trials")->capture_default_str();
  sc_ti->add_option("--seed", ti.seed, "master seed; trial seeds derive from it")
      ->capture_default_str();
  sc_ti->add_option("--iterations", ti.iterations,
                    "bucketing pass budget; 0 picks 200*ceil(log2(2n))")
      ->capture_default_str();
  sc_ti->add_option("--sample-size", ti.sample,
                    "positions sampled per pass; 0 picks ceil(log2(2n))")
      ->capture_default_str();
  sc_ti->add_option("--max-candidates", ti.max_candidates,
                    "abort when the candidate set outgrows this")
      ->capture_default_str();
  add_common(sc_ti, ti.common);

  SweepOpts sw;
  auto* sc_sw = app.add_subcommand(
      "sweep", "pairs-examined comparison grid over engines, printed as CSV");
  sc_sw->add_option("--n-list", sw.ns, "series lengths")->required()->delimiter(',');
  sc_sw->add_option("--len-list", sw.lens, "window lengths")->required()->delimiter(',');
  sc_sw->add_option("--q-list", sw.qs, "reference counts")->delimiter(',');
  sc_sw->add_option("--f-list", sw.fs, "scale factors (mpr only; mk runs once at 1)")
      ->delimiter(',');
  sc_sw->add_option("--engines", sw.engines, "engines to compare")
      ->delimiter(',')
      ->check(CLI::IsMember(kSeriesEngines));
  sc_sw->add_option("--reps", sw.reps, "fresh walks per grid cell")->capture_default_str();
  sc_sw->add_option("--seed", sw.seed, "master seed; walk seeds derive from it")
      ->capture_default_str();
  sc_sw->add_option("--out", sw.out, "write the aggregate CSV here");
  sc_sw->add_option("--raw-out", sw.raw_out,
                    "write per-run rows here (default: OUT.raw.csv when --out is set)");
  sc_sw->add_flag("--deterministic", sw.deterministic,
                  "record wall_seconds as 0 so repeated runs are byte-identical");

  VerifyOpts ver;
  auto* sc_ver = app.add_subcommand(
      "verify", "replay each report's recorded params line and check the result fields");
  sc_ver->add_option("report", ver.report, "report JSON written by a search subcommand")
      ->required()
      ->check(CLI::ExistingFile);

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*sc_gw) return cmd_gen_walk(gw, capture);
    if (*sc_gs) return cmd_gen_snp(gs, capture);
    if (*sc_inj) return cmd_inject(inj, capture);
    if (*sc_mo) return cmd_motif(mo, capture);
    if (*sc_fr) return cmd_frnn(fr, capture);
    if (*sc_ham) return cmd_closest_hamming(ham, capture);
    if (*sc_far) return cmd_farthest_hamming(far, capture);
    if (*sc_tl) return cmd_twolocus(tl, capture);
    if (*sc_ti) return cmd_twolocus_inject(ti, capture);
    if (*sc_sw) return cmd_sweep(sw, capture);
    if (*sc_ver) {
      if (capture) {
        std::cerr << "error: verify cannot replay a verify run\n";
        return 2;
      }
      return cmd_verify(ver);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(std::move(args), nullptr);
}
