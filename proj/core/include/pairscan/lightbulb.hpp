#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "pairscan/rng.hpp"
#include "pairscan/symbols.hpp"

namespace pairscan {

// Anything the bucketing engine can search: items with symbol positions and
// an early-abandoning exact match counter.
template <typename M>
concept ItemMatrix = requires(const M& m, std::size_t i, std::size_t p, std::size_t k) {
  { m.item_count() } -> std::convertible_to<std::size_t>;
  { m.position_count() } -> std::convertible_to<std::size_t>;
  { m.alphabet_size() } -> std::convertible_to<std::uint32_t>;
  { m.entry(i, p) } -> std::convertible_to<std::uint32_t>;
  { m.match_count_at_least(i, i, k) } -> std::convertible_to<std::optional<std::size_t>>;
};

struct LightbulbParams {
  std::size_t iterations = 0;   // 0 -> ceil(5 * log2(items))
  std::size_t sample_size = 0;  // 0 -> ceil(log2(items)), clamped to positions
  std::uint64_t seed = 1;
  // Empty predicate admits every pair a < b.
  std::function<bool(std::size_t, std::size_t)> admissible;
  // Stop once the incumbent has been unchanged for ceil(log2(items))
  // consecutive iterations (only counted once a candidate exists).
  bool auto_stop = false;
  std::size_t max_candidates = 10'000'000;
};

struct LightbulbStats {
  std::uint64_t pairs_examined = 0;  // distinct candidate pairs collected
  std::uint64_t iterations_run = 0;
};

struct CorrelationResult {
  bool found = false;
  std::size_t index_a = 0;  // index_a < index_b
  std::size_t index_b = 0;
  std::size_t matches = 0;
  LightbulbStats stats;
};

inline std::size_t default_sample_size(std::size_t items) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(std::max<std::size_t>(items, 2))))));
}

inline std::size_t default_iterations(std::size_t items) {
  return 5 * default_sample_size(items);
}

namespace detail {

// Calls visit(a, b) for every unordered pair (a < b) of items whose projected
// strings agree on the sampled positions. Grouping is by comparison sort of
// the projected strings; a packed 64-bit key is used when it can hold the
// whole projection, which is still the same equivalence.
template <ItemMatrix M, typename Visit>
void for_each_cobucketed_pair(const M& m, std::size_t sample_size, std::uint64_t iteration_seed,
                              Visit&& visit) {
  const std::size_t n = m.item_count();
  const std::size_t t = m.position_count();
  if (sample_size == 0 || sample_size > t) {
    throw std::invalid_argument("sample_size must be in [1, positions]");
  }
  Rng rng(iteration_seed);
  const std::vector<std::size_t> positions = rng.sample_without_replacement(t, sample_size);

  const unsigned sigma = std::max<std::uint32_t>(m.alphabet_size(), 2);
  const unsigned bits = std::bit_width(sigma - 1u);

  if (bits * sample_size <= 64) {
    std::vector<std::pair<std::uint64_t, std::uint32_t>> keyed(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t key = 0;
      for (const std::size_t p : positions) key = (key << bits) | m.entry(i, p);
      keyed[i] = {key, static_cast<std::uint32_t>(i)};
    }
    std::sort(keyed.begin(), keyed.end());
    std::size_t run = 0;
    while (run < n) {
      std::size_t end = run + 1;
      while (end < n && keyed[end].first == keyed[run].first) ++end;
      for (std::size_t x = run; x < end; ++x) {
        for (std::size_t y = x + 1; y < end; ++y) visit(keyed[x].second, keyed[y].second);
      }
      run = end;
    }
    return;
  }

  std::vector<std::uint32_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = static_cast<std::uint32_t>(i);
  auto cmp_lt = [&](std::uint32_t a, std::uint32_t b) {
    for (const std::size_t p : positions) {
      const auto va = m.entry(a, p);
      const auto vb = m.entry(b, p);
      if (va != vb) return va < vb;
    }
    return a < b;
  };
  auto equal_proj = [&](std::uint32_t a, std::uint32_t b) {
    for (const std::size_t p : positions) {
      if (m.entry(a, p) != m.entry(b, p)) return false;
    }
    return true;
  };
  std::sort(idx.begin(), idx.end(), cmp_lt);
  std::size_t run = 0;
  while (run < n) {
    std::size_t end = run + 1;
    while (end < n && equal_proj(idx[run], idx[end])) ++end;
    for (std::size_t x = run; x < end; ++x) {
      for (std::size_t y = x + 1; y < end; ++y) visit(idx[x], idx[y]);
    }
    run = end;
  }
}

}  // namespace detail

// Incremental most-correlated-pair search. Candidates accumulate across
// iterations (deduplicated, first-seen iteration kept) and are verified with
// exact match counts as they arrive, so best() is always the exact maximum
// over the candidate set with lexicographic tie-breaking.
template <ItemMatrix M>
class CorrelationSearch {
 public:
  CorrelationSearch(const M& matrix, LightbulbParams params)
      : m_(matrix), params_(std::move(params)) {
    const std::size_t n = m_.item_count();
    if (n < 2) throw std::invalid_argument("need at least 2 items");
    if (params_.sample_size == 0) {
      params_.sample_size = std::min(default_sample_size(n), m_.position_count());
    }
    if (params_.sample_size > m_.position_count()) {
      throw std::invalid_argument("sample_size exceeds position count");
    }
    if (params_.iterations == 0) params_.iterations = default_iterations(n);
    stable_goal_ = default_sample_size(n);
  }

  void step() {
    const std::uint64_t iter_seed = derive_seed(params_.seed, iterations_run_);
    const auto before = incumbent_key();
    detail::for_each_cobucketed_pair(m_, params_.sample_size, iter_seed,
                                     [&](std::uint32_t a, std::uint32_t b) { consider(a, b); });
    ++iterations_run_;
    if (found_ && incumbent_key() == before) {
      ++stable_iterations_;
    } else {
      stable_iterations_ = 0;
    }
  }

  // Runs the configured iteration budget (with the optional stability stop).
  CorrelationResult run() {
    while (iterations_run_ < params_.iterations) {
      step();
      if (params_.auto_stop && found_ && stable_iterations_ >= stable_goal_) break;
    }
    return result();
  }

  CorrelationResult result() const {
    CorrelationResult r;
    r.found = found_;
    r.index_a = best_a_;
    r.index_b = best_b_;
    r.matches = best_matches_;
    r.stats.pairs_examined = candidates_.size();
    r.stats.iterations_run = iterations_run_;
    return r;
  }

  std::size_t iterations_run() const { return iterations_run_; }
  std::size_t candidate_count() const { return candidates_.size(); }
  bool contains(std::size_t a, std::size_t b) const {
    if (a > b) std::swap(a, b);
    return candidates_.count(pair_key(a, b)) > 0;
  }
  std::optional<std::size_t> first_seen(std::size_t a, std::size_t b) const {
    if (a > b) std::swap(a, b);
    const auto it = candidates_.find(pair_key(a, b));
    if (it == candidates_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::uint64_t pair_key(std::size_t a, std::size_t b) const {
    return static_cast<std::uint64_t>(a) * m_.item_count() + b;
  }
  std::uint64_t incumbent_key() const {
    return found_ ? pair_key(best_a_, best_b_) : ~0ull;
  }

  void consider(std::uint32_t a, std::uint32_t b) {
    if (params_.admissible && !params_.admissible(a, b)) return;
    const std::uint64_t key = pair_key(a, b);
    const auto [it, inserted] = candidates_.try_emplace(key, iterations_run_);
    if (!inserted) return;
    if (candidates_.size() > params_.max_candidates) {
      throw std::runtime_error(
          "candidate set exceeded max_candidates; raise sample_size or the cap");
    }
    // min_needed = incumbent matches keeps ties alive for lexicographic wins.
    const auto v = m_.match_count_at_least(a, b, best_matches_);
    if (!v) return;
    if (!found_ || *v > best_matches_ ||
        (*v == best_matches_ && (a < best_a_ || (a == best_a_ && b < best_b_)))) {
      found_ = true;
      best_a_ = a;
      best_b_ = b;
      best_matches_ = *v;
    }
  }

  const M& m_;
  LightbulbParams params_;
  std::unordered_map<std::uint64_t, std::uint64_t> candidates_;  // pair -> first seen
  bool found_ = false;
  std::size_t best_a_ = 0, best_b_ = 0;
  std::size_t best_matches_ = 0;
  std::size_t iterations_run_ = 0;
  std::size_t stable_iterations_ = 0;
  std::size_t stable_goal_ = 0;
};

// One bucketing pass over a symbol matrix; buckets partition all items and
// appear in sorted projected-string order, members ascending.
std::vector<std::vector<std::size_t>> bucket_iteration(const SymbolMatrix& matrix,
                                                       std::size_t sample_size,
                                                       std::uint64_t iteration_seed);

CorrelationResult most_correlated_pair(const SymbolMatrix& matrix, const LightbulbParams& params);

CorrelationResult brute_force_most_correlated(
    const SymbolMatrix& matrix,
    const std::function<bool(std::size_t, std::size_t)>& admissible = {});

}  // namespace pairscan
