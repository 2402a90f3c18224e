#include "pairscan/refscan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pairscan/metrics.hpp"
#include "pairscan/rng.hpp"

namespace pairscan {

namespace {

bool admissible(std::size_t i, std::size_t j, std::size_t exclusion_zone) {
  const std::size_t gap = i > j ? i - j : j - i;
  return gap >= exclusion_zone;  // exclusion_zone == 0 admits all distinct pairs
}

bool pair_less(std::size_t a1, std::size_t b1, std::size_t a2, std::size_t b2) {
  return a1 != a2 ? a1 < a2 : b1 < b2;
}

void order_pair(std::size_t& a, std::size_t& b) {
  if (a > b) std::swap(a, b);
}

}  // namespace

ReferenceSet build_reference_set(const PointSet& points, std::size_t q, double f,
                                 std::uint64_t seed) {
  const std::size_t n = points.size();
  if (q == 0) throw std::invalid_argument("reference count must be positive");
  if (q > n) throw std::invalid_argument("reference count exceeds point count");
  if (!(f > 0.0) || !std::isfinite(f)) throw std::invalid_argument("projection factor must be positive");

  ReferenceSet rs;
  rs.q = q;
  rs.f = f;
  rs.dim = points.dim();
  Rng rng(seed);
  rs.ref_indices = rng.sample_without_replacement(n, q);

  rs.references.resize(q * rs.dim);
  for (std::size_t k = 0; k < q; ++k) {
    const auto p = points.point(rs.ref_indices[k]);
    for (std::size_t d = 0; d < rs.dim; ++d) rs.references[k * rs.dim + d] = p[d] * f;
  }

  rs.dist_table.resize(q * n);
  for (std::size_t k = 0; k < q; ++k) {
    const std::span<const double> ref{rs.references.data() + k * rs.dim, rs.dim};
    for (std::size_t i = 0; i < n; ++i) {
      rs.dist_table[k * n + i] = euclidean_distance(ref, points.point(i));
    }
  }

  rs.order.resize(n);
  for (std::size_t i = 0; i < n; ++i) rs.order[i] = i;
  const double* d1 = rs.dist_table.data();
  std::sort(rs.order.begin(), rs.order.end(), [d1](std::size_t a, std::size_t b) {
    return d1[a] != d1[b] ? d1[a] < d1[b] : a < b;
  });
  return rs;
}

PairResult closest_pair(const PointSet& points, std::size_t q, double f, std::uint64_t seed,
                        std::size_t exclusion_zone) {
  const std::size_t n = points.size();
  if (n < 2) throw std::invalid_argument("closest_pair needs at least 2 points");
  const ReferenceSet rs = build_reference_set(points, q, f, seed);
  const double* table = rs.dist_table.data();

  PairResult best;
  best.distance = std::numeric_limits<double>::infinity();
  bool found = false;
  ScanStats stats;

  for (std::size_t ii = 0; ii + 1 < n; ++ii) {
    const std::size_t i = rs.order[ii];
    const double di1 = table[i];
    for (std::size_t jj = ii + 1; jj < n; ++jj) {
      const std::size_t j = rs.order[jj];
      // Sort key bound: non-decreasing in jj, so one failure ends the row.
      if (table[j] - di1 > best.distance) {
        ++stats.inner_loop_exits;
        if (admissible(i, j, exclusion_zone)) ++stats.pairs_pruned_by_reference;
        for (std::size_t kk = jj + 1; kk < n; ++kk) {
          if (admissible(i, rs.order[kk], exclusion_zone)) ++stats.pairs_skipped_by_exit;
        }
        break;
      }
      if (!admissible(i, j, exclusion_zone)) continue;

      bool pruned = false;
      for (std::size_t k = 1; k < q; ++k) {
        if (table[k * n + j] - table[k * n + i] > best.distance) {
          pruned = true;
          break;
        }
      }
      if (pruned) {
        ++stats.pairs_pruned_by_reference;
        continue;
      }

      ++stats.pairs_examined;
      const auto pi = points.point(i);
      const auto pj = points.point(j);
      double d;
      if (std::isfinite(best.distance)) {
        const auto maybe = euclidean_distance_early_abandon(pi, pj, best.distance);
        if (!maybe) continue;  // abandoned: provably worse than best
        d = *maybe;
      } else {
        d = euclidean_distance(pi, pj);
      }
      std::size_t a = i, b = j;
      order_pair(a, b);
      if (d < best.distance ||
          (d == best.distance && (!found || pair_less(a, b, best.index_i, best.index_j)))) {
        best.index_i = a;
        best.index_j = b;
        best.distance = d;
        found = true;
      }
    }
  }
  if (!found) throw std::invalid_argument("no admissible pair");
  best.stats = stats;
  return best;
}

PairResult brute_force_closest_pair(const PointSet& points, std::size_t exclusion_zone) {
  const std::size_t n = points.size();
  if (n < 2) throw std::invalid_argument("closest_pair needs at least 2 points");
  PairResult best;
  best.distance = std::numeric_limits<double>::infinity();
  bool found = false;
  ScanStats stats;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!admissible(i, j, exclusion_zone)) continue;
      ++stats.pairs_examined;
      const double d = euclidean_distance(points.point(i), points.point(j));
      if (d < best.distance) {  // lexicographic scan order settles ties
        best.index_i = i;
        best.index_j = j;
        best.distance = d;
        found = true;
      }
    }
  }
  if (!found) throw std::invalid_argument("no admissible pair");
  best.stats = stats;
  return best;
}

NeighborResult fixed_radius_neighbors(const PointSet& points, double radius, std::size_t q,
                                      double f, std::uint64_t seed, std::size_t exclusion_zone) {
  const std::size_t n = points.size();
  if (n == 0) throw std::invalid_argument("empty input");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw std::invalid_argument("radius must be positive");

  const ReferenceSet rs = build_reference_set(points, std::min(q, n), f, seed);
  const double* table = rs.dist_table.data();

  NeighborResult out;
  out.neighbors.assign(n, {});
  ScanStats& stats = out.stats;

  for (std::size_t ii = 0; ii + 1 < n; ++ii) {
    const std::size_t i = rs.order[ii];
    const double di1 = table[i];
    for (std::size_t jj = ii + 1; jj < n; ++jj) {
      const std::size_t j = rs.order[jj];
      if (table[j] - di1 > radius) {
        ++stats.inner_loop_exits;
        if (admissible(i, j, exclusion_zone)) ++stats.pairs_pruned_by_reference;
        for (std::size_t kk = jj + 1; kk < n; ++kk) {
          if (admissible(i, rs.order[kk], exclusion_zone)) ++stats.pairs_skipped_by_exit;
        }
        break;
      }
      if (!admissible(i, j, exclusion_zone)) continue;

      bool pruned = false;
      for (std::size_t k = 1; k < rs.q; ++k) {
        if (table[k * n + j] - table[k * n + i] > radius) {
          pruned = true;
          break;
        }
      }
      if (pruned) {
        ++stats.pairs_pruned_by_reference;
        continue;
      }

      ++stats.pairs_examined;
      const auto maybe = euclidean_distance_early_abandon(points.point(i), points.point(j), radius);
      if (maybe) {  // completed, so distance <= radius: boundary inclusive
        out.neighbors[i].push_back(j);
        out.neighbors[j].push_back(i);
      }
    }
  }
  for (auto& list : out.neighbors) std::sort(list.begin(), list.end());
  return out;
}

std::vector<std::vector<std::size_t>> brute_force_neighbors(const PointSet& points, double radius,
                                                            std::size_t exclusion_zone) {
  const std::size_t n = points.size();
  if (n == 0) throw std::invalid_argument("empty input");
  std::vector<std::vector<std::size_t>> lists(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!admissible(i, j, exclusion_zone)) continue;
      if (euclidean_distance(points.point(i), points.point(j)) <= radius) {
        lists[i].push_back(j);
        lists[j].push_back(i);
      }
    }
  }
  for (auto& list : lists) std::sort(list.begin(), list.end());
  return lists;
}

double reference_bound(std::span<const double> r, std::span<const double> x,
                       std::span<const double> y) {
  return euclidean_distance(r, x) - euclidean_distance(r, y);
}

}  // namespace pairscan
