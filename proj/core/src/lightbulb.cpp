#include "pairscan/lightbulb.hpp"

#include "pairscan/metrics.hpp"

namespace pairscan {

std::vector<std::vector<std::size_t>> bucket_iteration(const SymbolMatrix& matrix,
                                                       std::size_t sample_size,
                                                       std::uint64_t iteration_seed) {
  const std::size_t n = matrix.item_count();
  const std::size_t t = matrix.position_count();
  if (sample_size == 0 || sample_size > t) {
    throw std::invalid_argument("sample_size must be in [1, positions]");
  }
  Rng rng(iteration_seed);
  const std::vector<std::size_t> positions = rng.sample_without_replacement(t, sample_size);

  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  auto proj_cmp = [&](std::size_t a, std::size_t b) {
    for (const std::size_t p : positions) {
      const auto va = matrix.at(a, p);
      const auto vb = matrix.at(b, p);
      if (va != vb) return va < vb;
    }
    return a < b;
  };
  auto proj_eq = [&](std::size_t a, std::size_t b) {
    for (const std::size_t p : positions) {
      if (matrix.at(a, p) != matrix.at(b, p)) return false;
    }
    return true;
  };
  std::sort(idx.begin(), idx.end(), proj_cmp);

  std::vector<std::vector<std::size_t>> buckets;
  std::size_t run = 0;
  while (run < n) {
    std::size_t end = run + 1;
    while (end < n && proj_eq(idx[run], idx[end])) ++end;
    buckets.emplace_back(idx.begin() + run, idx.begin() + end);
    run = end;
  }
  return buckets;
}

CorrelationResult most_correlated_pair(const SymbolMatrix& matrix, const LightbulbParams& params) {
  CorrelationSearch<SymbolMatrix> search(matrix, params);
  return search.run();
}

CorrelationResult brute_force_most_correlated(
    const SymbolMatrix& matrix, const std::function<bool(std::size_t, std::size_t)>& admissible) {
  const std::size_t n = matrix.item_count();
  if (n < 2) throw std::invalid_argument("need at least 2 items");
  CorrelationResult best;
  for (std::size_t a = 0; a + 1 < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (admissible && !admissible(a, b)) continue;
      ++best.stats.pairs_examined;
      const std::size_t v = *matrix.match_count_at_least(a, b, 0);
      if (!best.found || v > best.matches) {  // lexicographic scan settles ties
        best.found = true;
        best.index_a = a;
        best.index_b = b;
        best.matches = v;
      }
    }
  }
  if (!best.found) throw std::invalid_argument("no admissible pair");
  return best;
}

}  // namespace pairscan
