#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "pairscan/datagen.hpp"
#include "pairscan/rng.hpp"
#include "pairscan/twolocus.hpp"

using namespace pairscan;

namespace {

CaseControlMatrix random_cc(std::size_t m1, std::size_t m2, std::size_t n, std::uint64_t seed) {
  CaseControlMatrix cc;
  cc.cases = gen_binomial_matrix(m1, n, 3, derive_seed(seed, 1));
  cc.controls = gen_binomial_matrix(m2, n, 3, derive_seed(seed, 2));
  return cc;
}

void set_col(SymbolMatrix& m, std::size_t c, const std::vector<std::uint8_t>& values) {
  for (std::size_t r = 0; r < m.rows(); ++r) m.set(r, c, values[r]);
}

}  // namespace

TEST_SUITE("twolocus") {

TEST_CASE("genotype validation rejects malformed inputs") {
  CaseControlMatrix cc = random_cc(4, 4, 3, 1);
  CHECK_NOTHROW(validate(cc));

  CaseControlMatrix empty = cc;
  empty.cases = SymbolMatrix();
  CHECK_THROWS_AS(validate(empty), std::invalid_argument);

  CaseControlMatrix mismatched = cc;
  mismatched.controls = gen_binomial_matrix(4, 5, 3, 2);
  CHECK_THROWS_AS(validate(mismatched), std::invalid_argument);

  CaseControlMatrix rogue = random_cc(4, 4, 3, 1);
  rogue.cases = SymbolMatrix(4, 3, 4);
  rogue.cases.set(2, 1, 3);  // genotypes live in {0,1,2}
  CHECK_THROWS_AS(validate(rogue), std::invalid_argument);
}

TEST_CASE("block matrix matches obey the integer identity for equal groups") {
  const std::size_t m = 6, n = 8;
  const CaseControlMatrix cc = random_cc(m, m, n, 7);
  const TwoLocusD d = build_two_locus_matrix(cc);
  CHECK(d.n == n);
  CHECK(d.replicated_m == m);
  CHECK(d.items.item_count() == 2 * n);
  CHECK(d.items.position_count() == 6 * m);

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto got = static_cast<std::int64_t>(d.items.match_count(i, n + j));
      if (i == j) {
        CHECK(got == static_cast<std::int64_t>(3 * m));
        continue;
      }
      const auto ua = static_cast<std::int64_t>(column_match_count(cc.cases, i, j));
      const auto ub = static_cast<std::int64_t>(column_match_count(cc.controls, i, j));
      CHECK(got == static_cast<std::int64_t>(3 * m) + 2 * (ua - ub));
    }
  }
}

TEST_CASE("replication extends the identity to unequal group sizes") {
  const std::size_t m1 = 4, m2 = 6, n = 7;  // lcm 12
  const CaseControlMatrix cc = random_cc(m1, m2, n, 19);
  const TwoLocusD d = build_two_locus_matrix(cc);
  const auto L = static_cast<std::int64_t>(d.replicated_m);
  CHECK(L == 12);
  CHECK(d.items.position_count() == 72);

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto got = static_cast<std::int64_t>(d.items.match_count(i, n + j));
      if (i == j) {
        CHECK(got == 3 * L);
        continue;
      }
      const auto ua = static_cast<std::int64_t>(column_match_count(cc.cases, i, j));
      const auto ub = static_cast<std::int64_t>(column_match_count(cc.controls, i, j));
      const std::int64_t want = 3 * L + 2 * (ua * (L / 4) - ub * (L / 6));
      CHECK(got == want);
    }
  }
}

TEST_CASE("pair deltas are exact rationals over the group sizes") {
  const CaseControlMatrix cc = random_cc(7, 5, 10, 3);
  for (std::size_t i = 0; i < 10; ++i) {
    for (std::size_t j = i + 1; j < 10; ++j) {
      const auto ua = static_cast<std::int64_t>(column_match_count(cc.cases, i, j));
      const auto ub = static_cast<std::int64_t>(column_match_count(cc.controls, i, j));
      const double delta = snp_pair_delta(cc, i, j);
      CHECK(std::llround(delta * 35.0) == ua * 5 - ub * 7);
      CHECK(delta ==
            doctest::Approx(static_cast<double>(ua) / 7.0 - static_cast<double>(ub) / 5.0)
                .epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS((void)column_match_count(cc.cases, 0, 10), std::invalid_argument);
}

TEST_CASE("scan equals brute force on small instances") {
  LightbulbParams params;
  params.iterations = 100;
  for (std::uint64_t trial = 1; trial <= 15; ++trial) {
    const CaseControlMatrix cc = random_cc(8, 8, 12, derive_seed(60, trial));
    params.seed = trial;
    const TwoLocusResult got = two_locus_scan(cc, params);
    const TwoLocusResult want = brute_force_two_locus(cc);
    REQUIRE(got.found);
    CHECK(got.index_a == want.index_a);
    CHECK(got.index_b == want.index_b);
    CHECK(got.delta == want.delta);
    CHECK(got.direction == want.direction);
  }
  // Unequal group sizes exercise the replicated build in both directions.
  for (std::uint64_t trial = 1; trial <= 10; ++trial) {
    const CaseControlMatrix cc = random_cc(6, 9, 10, derive_seed(61, trial));
    params.seed = trial;
    const TwoLocusResult got = two_locus_scan(cc, params);
    const TwoLocusResult want = brute_force_two_locus(cc);
    REQUIRE(got.found);
    CHECK(got.index_a == want.index_a);
    CHECK(got.index_b == want.index_b);
    CHECK(got.delta == want.delta);
    CHECK(got.direction == want.direction);
  }
}

TEST_CASE("equal magnitudes resolve toward the cases direction") {
  CaseControlMatrix cc;
  cc.cases = SymbolMatrix(4, 4, 3);
  cc.controls = SymbolMatrix(4, 4, 3);
  // Pair (0,1): cases disagree everywhere, controls agree everywhere.
  set_col(cc.cases, 0, {0, 0, 0, 0});
  set_col(cc.cases, 1, {1, 1, 1, 1});
  set_col(cc.controls, 0, {0, 0, 1, 1});
  set_col(cc.controls, 1, {0, 0, 1, 1});
  // Pair (2,3): the mirror image, same magnitude with the opposite sign.
  set_col(cc.cases, 2, {0, 1, 0, 1});
  set_col(cc.cases, 3, {0, 1, 0, 1});
  set_col(cc.controls, 2, {0, 1, 0, 1});
  set_col(cc.controls, 3, {1, 0, 1, 0});

  const TwoLocusResult brute = brute_force_two_locus(cc);
  CHECK(brute.index_a == 2);
  CHECK(brute.index_b == 3);
  CHECK(brute.delta == 1.0);
  CHECK(brute.direction == ScanDirection::cases_minus_controls);
  CHECK(std::string(to_string(brute.direction)) == "cases-minus-controls");

  LightbulbParams params;
  params.seed = 4;
  params.iterations = 60;
  const TwoLocusResult scan = two_locus_scan(cc, params);
  REQUIRE(scan.found);
  CHECK(scan.index_a == 2);
  CHECK(scan.index_b == 3);
  CHECK(scan.delta == 1.0);
  CHECK(scan.direction == ScanDirection::cases_minus_controls);
}

TEST_CASE("the replication cap is reported with the offending multiple") {
  const CaseControlMatrix cc = random_cc(3, 7, 4, 9);
  try {
    (void)build_two_locus_matrix(cc, 20);  // lcm(3, 7) = 21
    FAIL("expected the cap to trip");
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    CHECK(what.find("21") != std::string::npos);
    CHECK(what.find("20") != std::string::npos);
  }
  CHECK_NOTHROW((void)build_two_locus_matrix(cc, 21));
}

TEST_CASE("injection follows its documented seed schedule exactly") {
  LightbulbParams params;
  params.seed = 5;
  const InjectionReport rep = injection_experiment(30, 20, 42, 0.5, params);
  const InjectionReport again = injection_experiment(30, 20, 42, 0.5, params);
  CHECK(rep.injected_a == again.injected_a);
  CHECK(rep.injected_b == again.injected_b);
  CHECK(rep.achieved_delta == again.achieved_delta);
  CHECK(rep.recovered == again.recovered);
  CHECK(rep.recovery_iteration == again.recovery_iteration);
  CHECK(rep.candidate_pairs == again.candidate_pairs);

  // Rebuild the planted matrices from the same seed streams and check the
  // reported pair and delta against that reconstruction.
  Rng pick(derive_seed(42, 1));
  std::size_t lo = pick.uniform_below(30);
  std::size_t hi = pick.uniform_below(29);
  if (hi >= lo) ++hi;
  if (lo > hi) std::swap(lo, hi);
  CHECK(rep.injected_a == lo);
  CHECK(rep.injected_b == hi);
  CHECK(rep.injected_a < rep.injected_b);

  SymbolMatrix cases = gen_binomial_matrix(20, 30, 2, derive_seed(42, 2));
  SymbolMatrix controls = gen_binomial_matrix(20, 30, 2, derive_seed(42, 3));
  inject_pair(cases, 0.75, lo, hi, derive_seed(42, 4));
  inject_pair(controls, 0.25, lo, hi, derive_seed(42, 5));
  const auto ua = static_cast<std::int64_t>(column_match_count(cases, lo, hi));
  const auto ub = static_cast<std::int64_t>(column_match_count(controls, lo, hi));
  CHECK(rep.achieved_delta == static_cast<double>(ua - ub) / 20.0);
  CHECK(rep.achieved_delta == 0.5);  // round(0.75*20) and round(0.25*20) land exactly
  CHECK(rep.delta_defined);
  CHECK(rep.target_delta == 0.5);
  CHECK(rep.n == 30);
  CHECK(rep.subjects == 20);
}

TEST_CASE("a zero achieved delta short-circuits the search") {
  LightbulbParams params;
  params.seed = 1;
  const InjectionReport rep = injection_experiment(20, 20, 7, 0.0, params);
  CHECK_FALSE(rep.delta_defined);
  CHECK(rep.achieved_delta == 0.0);
  CHECK_FALSE(rep.recovered);
  CHECK(rep.iterations_run == 0);
  CHECK(rep.candidate_pairs == 0);
}

TEST_CASE("moderate planted deltas are recovered for every seed") {
  LightbulbParams params;
  params.seed = 77;
  std::size_t recovered = 0;
  for (std::uint64_t trial = 1; trial <= 20; ++trial) {
    const InjectionReport rep = injection_experiment(40, 30, derive_seed(500, trial), 0.4, params);
    REQUIRE(rep.delta_defined);
    CHECK(rep.achieved_delta == 0.4);
    if (rep.recovered) {
      ++recovered;
      CHECK(rep.recovery_iteration >= 1);
      CHECK(rep.recovery_iteration == rep.iterations_run);
      CHECK(rep.recovery_candidates == rep.candidate_pairs);
      CHECK(rep.candidate_pairs >= 1);
    }
  }
  CHECK(recovered == 20);
}

TEST_CASE("injection arguments are validated") {
  const LightbulbParams params;
  CHECK_THROWS_AS((void)injection_experiment(1, 10, 1, 0.2, params), std::invalid_argument);
  CHECK_THROWS_AS((void)injection_experiment(10, 0, 1, 0.2, params), std::invalid_argument);
  CHECK_THROWS_AS((void)injection_experiment(10, 10, 1, 1.0, params), std::invalid_argument);
  CHECK_THROWS_AS((void)injection_experiment(10, 10, 1, -0.1, params), std::invalid_argument);
}

}  // TEST_SUITE
