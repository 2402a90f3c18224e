#pragma once

#include <cstdint>
#include <vector>

#include "pairscan/encoding.hpp"
#include "pairscan/lightbulb.hpp"
#include "pairscan/symbols.hpp"

namespace pairscan {

// Case and control genotype matrices, subjects x SNPs, entries in {0,1,2}.
// Column c of each matrix is one SNP; the groups share the SNP set.
struct CaseControlMatrix {
  SymbolMatrix cases;
  SymbolMatrix controls;

  std::size_t snp_count() const { return cases.cols(); }
};

// Throws std::invalid_argument unless both groups are non-empty, share the
// same SNP count, and every entry is in {0,1,2}.
void validate(const CaseControlMatrix& cc);

// The block search matrix. Subject rows of the two groups are first
// replicated to the least common multiple L of the group sizes (so both
// groups carry equal weight), then every SNP column is one-hot encoded with
// sigma = 3. Item i < n stacks (encoded cases col i, encoded controls col i);
// item n+i stacks (encoded cases col i, complemented encoded controls col i).
// Each item has 6L positions: positions [0, 3L) are the case part, [3L, 6L)
// the control part. For i != j,
//   matches(item i, item n+j) = 3L + 2L*(P_cases(i,j) - P_controls(i,j))
// exactly, where P_* are the Hamming correlations of the raw SNP columns, so
// the encoded argmax over cross-group pairs is the raw delta argmax.
struct TwoLocusD {
  PackedBinaryMatrix items;
  std::size_t n = 0;             // SNP count
  std::size_t replicated_m = 0;  // L, the equalized per-group subject count
};

// Throws std::invalid_argument when lcm(m1, m2) exceeds
// max_replicated_subjects; subsample one group or raise the cap.
TwoLocusD build_two_locus_matrix(const CaseControlMatrix& cc,
                                 std::size_t max_replicated_subjects = 100'000);

enum class ScanDirection { cases_minus_controls, controls_minus_cases };

const char* to_string(ScanDirection d);

struct TwoLocusResult {
  bool found = false;
  std::size_t index_a = 0;  // SNP indices, index_a < index_b
  std::size_t index_b = 0;
  // Exact |P_cases - P_controls| of the returned pair, recomputed from the
  // raw genotype columns.
  double delta = 0.0;
  // Sign of the returned pair's cases-minus-controls delta; an exact zero
  // counts as cases_minus_controls.
  ScanDirection direction = ScanDirection::cases_minus_controls;
  LightbulbStats stats;  // summed over the two scan directions
};

// Number of agreeing rows between columns c1 and c2.
std::size_t column_match_count(const SymbolMatrix& m, std::size_t c1, std::size_t c2);

// Signed P_cases(i,j) - P_controls(i,j), computed as the exact integer
// (u_cases*m2 - u_controls*m1) over m1*m2 and rounded once.
double snp_pair_delta(const CaseControlMatrix& cc, std::size_t i, std::size_t j);

// Runs the cross-group bucketing search twice, once on the matrix built from
// (cases, controls) and once with the roles swapped, and returns the pair
// whose exact delta magnitude is larger (ties prefer cases_minus_controls,
// then lexicographic pair order within a direction). Any admissible
// predicate in params is replaced by the cross-group restriction.
TwoLocusResult two_locus_scan(const CaseControlMatrix& cc, const LightbulbParams& params,
                              std::size_t max_replicated_subjects = 100'000);

// Exhaustive exact argmax of |P_cases - P_controls|; lexicographic tie-break
// with cases_minus_controls preferred when the signed delta is zero.
TwoLocusResult brute_force_two_locus(const CaseControlMatrix& cc);

// One trial of the planted-pair validation protocol.
struct InjectionReport {
  std::size_t n = 0;
  std::size_t subjects = 0;  // per group
  std::size_t injected_a = 0;  // injected_a < injected_b
  std::size_t injected_b = 0;
  double target_delta = 0.0;
  double achieved_delta = 0.0;  // exact, after per-group rounding
  // False when the achieved delta is zero: the injected pair is then
  // indistinguishable from background and recovery is undefined (the
  // iteration loop does not run).
  bool delta_defined = true;
  bool recovered = false;
  std::uint64_t recovery_iteration = 0;   // 1-based pass count at first entry
  std::uint64_t recovery_candidates = 0;  // distinct SNP pairs collected then
  std::uint64_t iterations_run = 0;
  std::uint64_t candidate_pairs = 0;  // distinct SNP pairs over the whole run
  // A non-injected candidate pair whose signed cases-minus-controls delta
  // strictly exceeds the achieved delta, when one was picked up.
  bool background_exceeds = false;
  std::size_t exceed_a = 0;
  std::size_t exceed_b = 0;
  double exceed_delta = 0.0;
};

// Generates an m x n binary background per group, plants a pair (i, j) with
// case correlation 0.5 + delta/2 and control correlation 0.5 - delta/2
// (exact up to the per-group ones rounding; the achieved delta is reported),
// then runs the cases-minus-controls bucketing search one pass at a time
// until the planted pair enters the candidate set or the iteration budget is
// exhausted. params.iterations = 0 selects 200 * ceil(log2(2n)) passes, a
// deliberately larger default than the argmax search uses, because a single
// candidate hit on one specific pair is the whole goal here. After the loop
// every collected pair's delta is recomputed exactly and the best background
// pair is compared against the achieved delta. injected_delta must lie in
// [0, 1).
InjectionReport injection_experiment(std::size_t n, std::size_t subjects,
                                     std::uint64_t background_seed, double injected_delta,
                                     const LightbulbParams& params);

}  // namespace pairscan
