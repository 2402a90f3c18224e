#include <doctest.h>

#include <stdexcept>

#include <cstdint>
#include <vector>

#include "pairscan/datagen.hpp"
#include "pairscan/encoding.hpp"
#include "pairscan/metrics.hpp"
#include "pairscan/rng.hpp"
#include "pairscan/symbols.hpp"

using namespace pairscan;

namespace {

std::vector<SymbolString> random_strings(std::size_t n, std::size_t k, std::uint32_t sigma,
                                         std::uint64_t seed) {
  const SymbolMatrix m = gen_binomial_matrix(k, n, sigma, seed);
  std::vector<SymbolString> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(m.column_string(i));
  return out;
}

// Rewrites strings[dst] so it disagrees with strings[src] at every position.
void plant_anti_pair(std::vector<SymbolString>& strings, std::size_t src, std::size_t dst) {
  const SymbolString& s = strings[src];
  for (std::size_t p = 0; p < s.length(); ++p) {
    strings[dst].symbols[p] =
        static_cast<std::uint8_t>((s.symbols[p] + 1) % s.alphabet_size);
  }
}

// Rewrites strings[dst] as a copy of strings[src] with `flips` disagreements.
void plant_near_copy(std::vector<SymbolString>& strings, std::size_t src, std::size_t dst,
                     std::size_t flips) {
  strings[dst].symbols = strings[src].symbols;
  for (std::size_t p = 0; p < flips; ++p) {
    strings[dst].symbols[p] =
        static_cast<std::uint8_t>((strings[src].symbols[p] + 1) % strings[src].alphabet_size);
  }
}

}  // namespace

TEST_SUITE("encoding") {

TEST_CASE("one-hot codes place the single one at the mirrored offset") {
  const BinaryEncoding e3 = BinaryEncoding::one_hot(3);
  CHECK(e3.code_length == 3);
  const std::uint8_t want3[3][3] = {{0, 0, 1}, {0, 1, 0}, {1, 0, 0}};
  for (std::uint32_t v = 0; v < 3; ++v) {
    for (std::size_t b = 0; b < 3; ++b) CHECK(e3.code_bit(v, b) == want3[v][b]);
  }
  const BinaryEncoding e2 = BinaryEncoding::one_hot(2);
  CHECK(e2.code_bit(0, 0) == 0);
  CHECK(e2.code_bit(0, 1) == 1);
  CHECK(e2.code_bit(1, 0) == 1);
  CHECK(e2.code_bit(1, 1) == 0);
  CHECK_THROWS_AS((void)BinaryEncoding::one_hot(1), std::invalid_argument);

  const SymbolString s{{0, 1, 2}, 3};
  CHECK(one_hot_encode(s) == (std::vector<std::uint8_t>{0, 0, 1, 0, 1, 0, 1, 0, 0}));
}

TEST_CASE("random code tables reproduce from their seed") {
  const BinaryEncoding a = BinaryEncoding::random_table(3, 16, 9);
  const BinaryEncoding b = BinaryEncoding::random_table(3, 16, 9);
  CHECK(a.code_bits == b.code_bits);
  CHECK(a.code_bits.size() == 48);
  for (const std::uint8_t bit : a.code_bits) CHECK(bit <= 1);
  CHECK(a.code_bits != BinaryEncoding::random_table(3, 16, 10).code_bits);
  CHECK_THROWS_AS((void)BinaryEncoding::random_table(3, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS((void)BinaryEncoding::random_table(1, 8, 1), std::invalid_argument);
}

TEST_CASE("encoding rejects symbols outside the table's alphabet") {
  const SymbolString s{{0, 3}, 4};
  CHECK_THROWS_AS((void)encode_string(s, BinaryEncoding::one_hot(2)), std::invalid_argument);
  CHECK_NOTHROW((void)encode_string(s, BinaryEncoding::one_hot(4)));
}

TEST_CASE("complement flips every bit and is an involution") {
  const std::vector<std::uint8_t> bits = {0, 1, 1, 0, 1};
  CHECK(complement(bits) == (std::vector<std::uint8_t>{1, 0, 0, 1, 0}));
  CHECK(complement(complement(bits)) == bits);
}

TEST_CASE("one-hot match identities hold exactly for every alphabet") {
  for (const std::uint32_t sigma : {2u, 3u, 4u, 8u}) {
    Rng rng(100 + sigma);
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t k = 25;
      SymbolString a{{}, sigma}, b{{}, sigma};
      for (std::size_t p = 0; p < k; ++p) {
        a.symbols.push_back(static_cast<std::uint8_t>(rng.uniform_below(sigma)));
        b.symbols.push_back(static_cast<std::uint8_t>(rng.uniform_below(sigma)));
      }
      const std::size_t u = match_count(a, b);
      const MatchIdentity id = encoded_match_identity_check(a, b);
      CHECK(id.plain_lhs == id.plain_rhs);
      CHECK(id.complement_lhs == id.complement_rhs);
      CHECK(id.plain_rhs == sigma * u + (sigma - 2) * (k - u));
      CHECK(id.complement_rhs == 2 * (k - u));
    }
  }
}

TEST_CASE("packed rows count matches exactly across word boundaries") {
  Rng rng(12);
  PackedBinaryMatrix m(2, 150);
  std::vector<std::uint8_t> row0(150), row1(150);
  for (std::size_t p = 0; p < 150; ++p) {
    row0[p] = static_cast<std::uint8_t>(rng.uniform_below(2));
    row1[p] = static_cast<std::uint8_t>(rng.uniform_below(2));
    m.set(0, p, row0[p] != 0);
    m.set(1, p, row1[p] != 0);
  }
  std::size_t want = 0;
  for (std::size_t p = 0; p < 150; ++p) {
    CHECK(m.entry(0, p) == row0[p]);
    CHECK(m.entry(1, p) == row1[p]);
    want += row0[p] == row1[p] ? 1 : 0;
  }
  CHECK(m.match_count(0, 1) == want);
  CHECK(m.match_count(1, 0) == want);
  CHECK(m.match_count(0, 0) == 150);

  const auto exact = m.match_count_at_least(0, 1, want);
  REQUIRE(exact.has_value());
  CHECK(*exact == want);
  CHECK_FALSE(m.match_count_at_least(0, 1, want + 1).has_value());
  CHECK(m.match_count_at_least(0, 1, 0) == want);
}

TEST_CASE("complement rows invert every position and keep the tail clean") {
  Rng rng(44);
  PackedBinaryMatrix m(3, 100);  // 100 is not a multiple of the word size
  for (std::size_t p = 0; p < 100; ++p) m.set(0, p, rng.uniform_below(2) != 0);
  m.set_complement_of(1, 0);
  for (std::size_t p = 0; p < 100; ++p) CHECK(m.entry(1, p) == 1u - m.entry(0, p));
  CHECK(m.match_count(0, 1) == 0);
  m.set_complement_of(2, 1);
  CHECK(m.match_count(0, 2) == 100);
  CHECK(m.match_count(1, 2) == 0);
}

TEST_CASE("encoded matrices stack the strings above their complements") {
  const std::vector<SymbolString> strings = random_strings(6, 10, 3, 77);
  const BinaryEncoding enc = BinaryEncoding::random_table(3, 5, 2);
  const EncodedMatrix em = build_encoded_matrix(strings, enc);
  CHECK(em.n == 6);
  CHECK(em.items.item_count() == 12);
  CHECK(em.items.position_count() == 50);
  for (std::size_t i = 0; i < 6; ++i) {
    const auto bits = encode_string(strings[i], enc);
    for (std::size_t p = 0; p < bits.size(); ++p) {
      CHECK(em.items.entry(i, p) == bits[p]);
      CHECK(em.items.entry(6 + i, p) == 1u - bits[p]);
    }
  }
}

TEST_CASE("complement search finds the least correlated pair exactly") {
  std::vector<SymbolString> strings = random_strings(40, 60, 3, 51);
  plant_anti_pair(strings, 4, 17);
  const StringPairResult want = brute_force_least_correlated(strings);
  CHECK(want.index_a == 4);
  CHECK(want.index_b == 17);
  CHECK(want.matches == 0);
  CHECK(want.stats.pairs_examined == 40ull * 39 / 2);

  LightbulbParams params;
  params.seed = 3;
  params.sample_size = 5;
  params.iterations = 120;
  const StringPairResult got =
      least_correlated_pair(strings, BinaryEncoding::one_hot(3), params);
  REQUIRE(got.found);
  CHECK(got.index_a == want.index_a);
  CHECK(got.index_b == want.index_b);
  CHECK(got.matches == 0);
  CHECK(got.correlation == 0.0);
}

TEST_CASE("random codes also surface the anti-correlated pair") {
  std::vector<SymbolString> strings = random_strings(40, 60, 3, 51);
  plant_anti_pair(strings, 4, 17);
  LightbulbParams params;
  params.seed = 8;
  params.sample_size = 6;
  params.iterations = 500;
  const StringPairResult got =
      least_correlated_pair(strings, BinaryEncoding::random_table(3, 16, 5), params);
  REQUIRE(got.found);
  CHECK(got.index_a == 4);
  CHECK(got.index_b == 17);
  CHECK(got.matches == 0);
}

TEST_CASE("direct search finds the most correlated pair exactly") {
  std::vector<SymbolString> strings = random_strings(40, 60, 3, 29);
  plant_near_copy(strings, 7, 22, 6);
  const StringPairResult want = brute_force_most_correlated_strings(strings);
  CHECK(want.index_a == 7);
  CHECK(want.index_b == 22);
  CHECK(want.matches == 54);

  LightbulbParams params;
  params.seed = 11;
  const StringPairResult got = most_correlated_pair_strings(strings, params);
  REQUIRE(got.found);
  CHECK(got.index_a == want.index_a);
  CHECK(got.index_b == want.index_b);
  CHECK(got.matches == 54);
  CHECK(got.correlation == 54.0 / 60.0);
}

TEST_CASE("string stacks validate shape and alphabet") {
  std::vector<SymbolString> strings = random_strings(5, 8, 3, 66);
  const SymbolMatrix m = matrix_from_strings(strings);
  CHECK(m.rows() == 5);
  CHECK(m.cols() == 8);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(m.row_string(i).symbols == strings[i].symbols);
  }

  std::vector<SymbolString> ragged = strings;
  ragged[2].symbols.pop_back();
  CHECK_THROWS_AS((void)matrix_from_strings(ragged), std::invalid_argument);

  std::vector<SymbolString> mixed = strings;
  mixed[1].alphabet_size = 4;
  CHECK_THROWS_AS((void)matrix_from_strings(mixed), std::invalid_argument);

  std::vector<SymbolString> rogue = strings;
  rogue[3].symbols[0] = 7;  // outside the declared alphabet
  CHECK_THROWS_AS((void)matrix_from_strings(rogue), std::invalid_argument);

  CHECK_THROWS_AS((void)matrix_from_strings({}), std::invalid_argument);
  CHECK_THROWS_AS((void)matrix_from_strings({SymbolString{{}, 3}}), std::invalid_argument);
}

}  // TEST_SUITE
