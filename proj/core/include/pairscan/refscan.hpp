#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pairscan/series.hpp"

namespace pairscan {

// References are seeded input points with every coordinate multiplied by f;
// order sorts input indices ascending by distance to the first reference.
struct ReferenceSet {
  std::size_t q = 0;
  double f = 1.0;
  std::size_t dim = 0;
  std::vector<std::size_t> ref_indices;  // chosen input indices, selection order
  std::vector<double> references;        // q x dim, scaled coordinates
  std::vector<double> dist_table;        // q x n, true distances
  std::vector<std::size_t> order;        // permutation of [0, n)

  double dist(std::size_t ref, std::size_t point_index, std::size_t n) const {
    return dist_table[ref * n + point_index];
  }
};

struct ScanStats {
  std::uint64_t pairs_examined = 0;            // phase-2 distance computations
  std::uint64_t pairs_pruned_by_reference = 0; // failed some reference bound individually
  std::uint64_t pairs_skipped_by_exit = 0;     // dropped wholesale after an inner-loop exit
  std::uint64_t inner_loop_exits = 0;          // exit events (not counted as pairs)

  std::uint64_t admissible_pairs() const {
    return pairs_examined + pairs_pruned_by_reference + pairs_skipped_by_exit;
  }
};

struct PairResult {
  std::size_t index_i = 0;  // original indices, index_i < index_j
  std::size_t index_j = 0;
  double distance = 0.0;
  ScanStats stats;
};

struct NeighborResult {
  std::vector<std::vector<std::size_t>> neighbors;  // sorted ascending, symmetric
  ScanStats stats;
};

ReferenceSet build_reference_set(const PointSet& points, std::size_t q, double f,
                                 std::uint64_t seed);

// Exact closest pair among admissible pairs (|i - j| >= exclusion_zone;
// 0 admits every distinct pair). f = 1 is the unprojected baseline engine.
PairResult closest_pair(const PointSet& points, std::size_t q, double f, std::uint64_t seed,
                        std::size_t exclusion_zone);

PairResult brute_force_closest_pair(const PointSet& points, std::size_t exclusion_zone);

// Exact fixed-radius lists, boundary inclusive: N(i) = { j != i : d(i,j) <= R }.
NeighborResult fixed_radius_neighbors(const PointSet& points, double radius, std::size_t q,
                                      double f, std::uint64_t seed,
                                      std::size_t exclusion_zone = 0);

std::vector<std::vector<std::size_t>> brute_force_neighbors(const PointSet& points, double radius,
                                                            std::size_t exclusion_zone = 0);

// Signed single-reference lower-bound certificate for d(x, y):
// d(r, x) - d(r, y); |result| never exceeds d(x, y) by the triangle inequality.
double reference_bound(std::span<const double> r, std::span<const double> x,
                       std::span<const double> y);

}  // namespace pairscan
