#include "pairscan/twolocus.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

#include "pairscan/datagen.hpp"
#include "pairscan/rng.hpp"

namespace pairscan {

void validate(const CaseControlMatrix& cc) {
  if (cc.cases.rows() == 0 || cc.controls.rows() == 0) {
    throw std::invalid_argument("both groups need at least 1 subject");
  }
  if (cc.cases.cols() != cc.controls.cols()) {
    throw std::invalid_argument("cases and controls must share the SNP count");
  }
  if (cc.cases.cols() == 0) throw std::invalid_argument("need at least 1 SNP column");
  for (const SymbolMatrix* m : {&cc.cases, &cc.controls}) {
    for (std::size_t r = 0; r < m->rows(); ++r) {
      for (std::size_t c = 0; c < m->cols(); ++c) {
        if (m->at(r, c) > 2) throw std::invalid_argument("genotype entries must be in {0,1,2}");
      }
    }
  }
}

namespace {

// Assembles the block matrix for one scan direction: group_plain contributes
// the duplicated top blocks, group_flip the bottom blocks with the right
// half complemented.
TwoLocusD build_from(const SymbolMatrix& group_plain, const SymbolMatrix& group_flip,
                     std::size_t cap) {
  const std::size_t n = group_plain.cols();
  const std::size_t m1 = group_plain.rows();
  const std::size_t m2 = group_flip.rows();
  const std::size_t L = std::lcm(m1, m2);
  if (L > cap) {
    throw std::invalid_argument(
        "equalized subject count lcm(m1, m2) = " + std::to_string(L) +
        " exceeds max_replicated_subjects = " + std::to_string(cap) +
        "; subsample one group or raise the cap");
  }
  const std::size_t rep1 = L / m1;
  const std::size_t rep2 = L / m2;
  TwoLocusD d;
  d.n = n;
  d.replicated_m = L;
  d.items = PackedBinaryMatrix(2 * n, 6 * L);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = 0;
    for (std::size_t r = 0; r < m1; ++r) {
      const std::size_t hot = 2 - group_plain.at(r, c);  // one-hot offset, sigma = 3
      for (std::size_t rep = 0; rep < rep1; ++rep) {
        d.items.set(c, p + hot, true);
        d.items.set(n + c, p + hot, true);
        p += 3;
      }
    }
    for (std::size_t r = 0; r < m2; ++r) {
      const std::size_t hot = 2 - group_flip.at(r, c);
      for (std::size_t rep = 0; rep < rep2; ++rep) {
        d.items.set(c, p + hot, true);
        for (std::size_t b = 0; b < 3; ++b) {
          if (b != hot) d.items.set(n + c, p + b, true);
        }
        p += 3;
      }
    }
  }
  return d;
}

CorrelationResult run_cross_search(const PackedBinaryMatrix& items, std::size_t n,
                                   const LightbulbParams& params) {
  LightbulbParams p = params;
  p.admissible = [n](std::size_t a, std::size_t b) { return a < n && n <= b && b != a + n; };
  CorrelationSearch<PackedBinaryMatrix> search(items, p);
  return search.run();
}

// Set of canonical SNP pairs (i < j). Injection runs against large n collect
// millions of distinct background pairs, so a dense bitmap over i*n+j is
// used whenever it fits a fixed memory budget; otherwise a sorted vector
// with deferred deduplication stands in.
class SnpPairSet {
 public:
  SnpPairSet(std::size_t n, std::size_t cap) : n_(n), cap_(cap) {
    dense_ = n_ <= 45'000;  // n^2 bits <= ~253 MB
    if (dense_) bits_.assign((n_ * n_ + 63) / 64, 0);
  }

  void add(std::size_t i, std::size_t j) {
    const std::uint64_t key = static_cast<std::uint64_t>(i) * n_ + j;
    if (dense_) {
      std::uint64_t& w = bits_[key >> 6];
      const std::uint64_t mask = 1ull << (key & 63);
      if (w & mask) return;
      w |= mask;
      ++count_;
      if (count_ > cap_) throw_cap();
    } else {
      fresh_.push_back(key);
      if (fresh_.size() >= (1u << 22)) merge();
    }
  }

  std::uint64_t size() {
    if (!dense_) merge();
    return dense_ ? count_ : seen_.size();
  }

  template <typename F>
  void for_each(F f) {
    if (dense_) {
      for (std::size_t w = 0; w < bits_.size(); ++w) {
        std::uint64_t word = bits_[w];
        while (word != 0) {
          const int bit = std::countr_zero(word);
          word &= word - 1;
          const std::uint64_t key = (static_cast<std::uint64_t>(w) << 6) + bit;
          f(static_cast<std::size_t>(key / n_), static_cast<std::size_t>(key % n_));
        }
      }
    } else {
      merge();
      for (const std::uint64_t key : seen_) {
        f(static_cast<std::size_t>(key / n_), static_cast<std::size_t>(key % n_));
      }
    }
  }

 private:
  void merge() {
    if (fresh_.empty()) return;
    seen_.insert(seen_.end(), fresh_.begin(), fresh_.end());
    fresh_.clear();
    std::sort(seen_.begin(), seen_.end());
    seen_.erase(std::unique(seen_.begin(), seen_.end()), seen_.end());
    if (seen_.size() > cap_) throw_cap();
  }

  [[noreturn]] static void throw_cap() {
    throw std::runtime_error(
        "candidate set exceeded max_candidates; raise sample_size or the cap");
  }

  std::size_t n_;
  std::size_t cap_;
  bool dense_ = false;
  std::uint64_t count_ = 0;
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint64_t> seen_;
  std::vector<std::uint64_t> fresh_;
};

}  // namespace

TwoLocusD build_two_locus_matrix(const CaseControlMatrix& cc,
                                 std::size_t max_replicated_subjects) {
  validate(cc);
  return build_from(cc.cases, cc.controls, max_replicated_subjects);
}

const char* to_string(ScanDirection d) {
  return d == ScanDirection::cases_minus_controls ? "cases-minus-controls"
                                                  : "controls-minus-cases";
}

std::size_t column_match_count(const SymbolMatrix& m, std::size_t c1, std::size_t c2) {
  if (c1 >= m.cols() || c2 >= m.cols()) throw std::invalid_argument("column index out of range");
  std::size_t u = 0;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (m.at(r, c1) == m.at(r, c2)) ++u;
  }
  return u;
}

std::int64_t snp_pair_delta_numerator(const CaseControlMatrix& cc, std::size_t i, std::size_t j) {
  const auto u_cases = static_cast<std::int64_t>(column_match_count(cc.cases, i, j));
  const auto u_controls = static_cast<std::int64_t>(column_match_count(cc.controls, i, j));
  return u_cases * static_cast<std::int64_t>(cc.controls.rows()) -
         u_controls * static_cast<std::int64_t>(cc.cases.rows());
}

double snp_pair_delta(const CaseControlMatrix& cc, std::size_t i, std::size_t j) {
  const std::int64_t num = snp_pair_delta_numerator(cc, i, j);
  return static_cast<double>(num) /
         (static_cast<double>(cc.cases.rows()) * static_cast<double>(cc.controls.rows()));
}

TwoLocusResult two_locus_scan(const CaseControlMatrix& cc, const LightbulbParams& params,
                              std::size_t max_replicated_subjects) {
  validate(cc);
  const std::size_t n = cc.snp_count();
  if (n < 2) throw std::invalid_argument("need at least 2 SNP columns");

  CorrelationResult r1, r2;
  {
    const TwoLocusD d = build_from(cc.cases, cc.controls, max_replicated_subjects);
    r1 = run_cross_search(d.items, n, params);
  }
  {
    const TwoLocusD d = build_from(cc.controls, cc.cases, max_replicated_subjects);
    r2 = run_cross_search(d.items, n, params);
  }

  TwoLocusResult out;
  out.stats.pairs_examined = r1.stats.pairs_examined + r2.stats.pairs_examined;
  out.stats.iterations_run = r1.stats.iterations_run + r2.stats.iterations_run;
  if (!r1.found && !r2.found) return out;

  // Both directions share the replication factor, so the encoded match
  // counts are directly comparable; the larger one is the larger delta.
  const bool use_first = r1.found && (!r2.found || r1.matches >= r2.matches);
  const CorrelationResult& win = use_first ? r1 : r2;
  std::size_t i = win.index_a;
  std::size_t j = win.index_b - n;
  if (i > j) std::swap(i, j);

  const std::int64_t num = snp_pair_delta_numerator(cc, i, j);
  out.found = true;
  out.index_a = i;
  out.index_b = j;
  out.delta = static_cast<double>(num < 0 ? -num : num) /
              (static_cast<double>(cc.cases.rows()) * static_cast<double>(cc.controls.rows()));
  out.direction =
      num >= 0 ? ScanDirection::cases_minus_controls : ScanDirection::controls_minus_cases;
  return out;
}

TwoLocusResult brute_force_two_locus(const CaseControlMatrix& cc) {
  validate(cc);
  const std::size_t n = cc.snp_count();
  if (n < 2) throw std::invalid_argument("need at least 2 SNP columns");
  TwoLocusResult best;
  std::int64_t best_abs = -1;
  std::int64_t best_num = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      ++best.stats.pairs_examined;
      const std::int64_t num = snp_pair_delta_numerator(cc, i, j);
      const std::int64_t abs_num = num < 0 ? -num : num;
      // Same total order the two-direction scan resolves ties by: magnitude,
      // then cases-minus-controls before controls-minus-cases, then pair
      // order (the lex winner was already seen first within a sign class).
      const bool wins = abs_num > best_abs || (abs_num == best_abs && num >= 0 && best_num < 0);
      if (wins) {
        best_abs = abs_num;
        best_num = num;
        best.found = true;
        best.index_a = i;
        best.index_b = j;
      }
    }
  }
  best.delta = static_cast<double>(best_abs) /
               (static_cast<double>(cc.cases.rows()) * static_cast<double>(cc.controls.rows()));
  best.direction = best_num >= 0 ? ScanDirection::cases_minus_controls
                                 : ScanDirection::controls_minus_cases;
  return best;
}

InjectionReport injection_experiment(std::size_t n, std::size_t subjects,
                                     std::uint64_t background_seed, double injected_delta,
                                     const LightbulbParams& params) {
  if (n < 2) throw std::invalid_argument("need at least 2 SNP columns");
  if (subjects == 0) throw std::invalid_argument("need at least 1 subject per group");
  if (!(injected_delta >= 0.0 && injected_delta < 1.0)) {
    throw std::invalid_argument("injected delta must lie in [0, 1)");
  }

  InjectionReport rep;
  rep.n = n;
  rep.subjects = subjects;
  rep.target_delta = injected_delta;

  // Seed streams: 1 picks the planted columns, 2 and 3 the backgrounds, 4
  // and 5 the injection zero placements.
  Rng pick(derive_seed(background_seed, 1));
  std::size_t lo = pick.uniform_below(n);
  std::size_t hi = pick.uniform_below(n - 1);
  if (hi >= lo) ++hi;
  if (lo > hi) std::swap(lo, hi);
  rep.injected_a = lo;
  rep.injected_b = hi;

  SymbolMatrix cases = gen_binomial_matrix(subjects, n, 2, derive_seed(background_seed, 2));
  SymbolMatrix controls = gen_binomial_matrix(subjects, n, 2, derive_seed(background_seed, 3));
  const double p_hi = 0.5 + injected_delta / 2.0;
  const double p_lo = 0.5 - injected_delta / 2.0;
  inject_pair(cases, p_hi, lo, hi, derive_seed(background_seed, 4));
  inject_pair(controls, p_lo, lo, hi, derive_seed(background_seed, 5));

  const auto u_cases = static_cast<std::int64_t>(column_match_count(cases, lo, hi));
  const auto u_controls = static_cast<std::int64_t>(column_match_count(controls, lo, hi));
  const std::int64_t achieved_num = u_cases - u_controls;
  rep.achieved_delta = static_cast<double>(achieved_num) / static_cast<double>(subjects);
  if (achieved_num == 0) {
    rep.delta_defined = false;
    return rep;
  }

  const TwoLocusD d = build_from(cases, controls, std::max<std::size_t>(subjects, 1));

  std::size_t sample = params.sample_size;
  if (sample == 0) sample = std::min(default_sample_size(2 * n), d.items.position_count());
  if (sample == 0 || sample > d.items.position_count()) {
    throw std::invalid_argument("sample_size must be in [1, positions]");
  }
  std::size_t budget = params.iterations;
  if (budget == 0) budget = 200 * default_sample_size(2 * n);

  SnpPairSet seen(n, params.max_candidates);

  // Per-pass bucketing that enumerates only the cross-group pairs inside a
  // bucket. The all-pairs visitor would spend most of its time on same-group
  // co-bucketed pairs (their projections agree roughly twice as often as
  // cross pairs), which the admissibility filter would discard anyway.
  std::vector<std::pair<std::uint64_t, std::uint32_t>> keyed(2 * n);
  std::vector<std::uint32_t> d1, d2;
  const std::size_t positions = d.items.position_count();
  while (rep.iterations_run < budget) {
    bool hit = false;
    Rng pass_rng(derive_seed(params.seed, rep.iterations_run));
    const std::vector<std::size_t> picks = pass_rng.sample_without_replacement(positions, sample);
    if (sample <= 64) {
      for (std::size_t i = 0; i < 2 * n; ++i) {
        std::uint64_t key = 0;
        for (const std::size_t p : picks) key = (key << 1) | d.items.entry(i, p);
        keyed[i] = {key, static_cast<std::uint32_t>(i)};
      }
      std::sort(keyed.begin(), keyed.end());
      std::size_t run = 0;
      while (run < 2 * n) {
        std::size_t end = run + 1;
        while (end < 2 * n && keyed[end].first == keyed[run].first) ++end;
        if (end - run > 1) {
          d1.clear();
          d2.clear();
          for (std::size_t x = run; x < end; ++x) {
            const std::uint32_t idx = keyed[x].second;
            if (idx < n) {
              d1.push_back(idx);
            } else {
              d2.push_back(idx - static_cast<std::uint32_t>(n));
            }
          }
          for (const std::uint32_t a : d1) {
            for (const std::uint32_t b : d2) {
              if (a == b) continue;  // an item against its own complement
              const std::size_t ri = std::min<std::size_t>(a, b);
              const std::size_t rj = std::max<std::size_t>(a, b);
              seen.add(ri, rj);
              if (ri == lo && rj == hi) hit = true;
            }
          }
        }
        run = end;
      }
    } else {
      // Samples wider than one packed key are off the hot path; the generic
      // grouping visitor handles them.
      detail::for_each_cobucketed_pair(
          d.items, sample, derive_seed(params.seed, rep.iterations_run),
          [&](std::uint32_t a, std::uint32_t b) {
            if (!(a < n && n <= b && b != a + n)) return;
            std::size_t ri = a;
            std::size_t rj = b - n;
            if (ri > rj) std::swap(ri, rj);
            seen.add(ri, rj);
            if (ri == lo && rj == hi) hit = true;
          });
    }
    ++rep.iterations_run;
    if (hit) {
      rep.recovered = true;
      rep.recovery_iteration = rep.iterations_run;
      rep.recovery_candidates = seen.size();
      break;
    }
  }
  rep.candidate_pairs = seen.size();

  // Exact deltas for everything the search picked up; bit-packed columns
  // keep this linear scan cheap (the backgrounds are binary by construction).
  PackedBinaryMatrix case_cols(n, subjects);
  PackedBinaryMatrix control_cols(n, subjects);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t r = 0; r < subjects; ++r) {
      if (cases.at(r, c)) case_cols.set(c, r, true);
      if (controls.at(r, c)) control_cols.set(c, r, true);
    }
  }
  std::int64_t best_num = std::numeric_limits<std::int64_t>::min();
  std::size_t best_a = 0, best_b = 0;
  seen.for_each([&](std::size_t ri, std::size_t rj) {
    if (ri == lo && rj == hi) return;
    const std::int64_t num = static_cast<std::int64_t>(case_cols.match_count(ri, rj)) -
                             static_cast<std::int64_t>(control_cols.match_count(ri, rj));
    if (num > best_num) {
      best_num = num;
      best_a = ri;
      best_b = rj;
    }
  });
  if (best_a != best_b && best_num > achieved_num) {
    rep.background_exceeds = true;
    rep.exceed_a = best_a;
    rep.exceed_b = best_b;
    rep.exceed_delta = static_cast<double>(best_num) / static_cast<double>(subjects);
  }
  return rep;
}

}  // namespace pairscan
