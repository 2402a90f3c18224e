#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pairscan/lightbulb.hpp"
#include "pairscan/symbols.hpp"

namespace pairscan {

// Binary matrix with bit-packed rows; rows are the items. Match counts run
// word-wise over XORed words, so verification cost is ~64x below per-symbol
// scanning.
class PackedBinaryMatrix {
 public:
  PackedBinaryMatrix() = default;
  PackedBinaryMatrix(std::size_t items, std::size_t positions);

  std::size_t item_count() const { return items_; }
  std::size_t position_count() const { return positions_; }
  std::uint32_t alphabet_size() const { return 2; }

  std::uint32_t entry(std::size_t item, std::size_t pos) const {
    return static_cast<std::uint32_t>((words_[item * words_per_item_ + (pos >> 6)] >> (pos & 63)) & 1u);
  }
  void set(std::size_t item, std::size_t pos, bool value);

  // Writes row dst as the bitwise complement of row src (tail bits beyond
  // position_count stay zero).
  void set_complement_of(std::size_t dst, std::size_t src);

  // Exact number of agreeing positions between rows a and b.
  std::size_t match_count(std::size_t a, std::size_t b) const;

  // Early-abandoning variant: nullopt as soon as the count provably falls
  // below min_needed; a returned value is the exact count.
  std::optional<std::size_t> match_count_at_least(std::size_t a, std::size_t b,
                                                  std::size_t min_needed) const;

 private:
  std::size_t items_ = 0;
  std::size_t positions_ = 0;
  std::size_t words_per_item_ = 0;
  std::vector<std::uint64_t> words_;
};

static_assert(ItemMatrix<PackedBinaryMatrix>);

// Per-symbol binary codes of a fixed length.
struct BinaryEncoding {
  enum class Kind { one_hot, random };

  Kind kind = Kind::one_hot;
  std::uint32_t sigma = 2;
  std::size_t code_length = 2;
  std::vector<std::uint8_t> code_bits;  // sigma x code_length, row major

  std::uint8_t code_bit(std::uint32_t symbol, std::size_t bit) const {
    return code_bits[static_cast<std::size_t>(symbol) * code_length + bit];
  }

  // Symbol v maps to a length-sigma block whose single 1 sits at offset
  // sigma-1-v, i.e. 0 -> 0..01, 1 -> 0..10, ..., sigma-1 -> 10..0.
  static BinaryEncoding one_hot(std::uint32_t sigma);

  // Every bit drawn uniformly from a generator seeded with seed; the table
  // is stored, so the same seed reproduces it exactly.
  static BinaryEncoding random_table(std::uint32_t sigma, std::size_t code_length,
                                     std::uint64_t seed);
};

// Concatenation of the per-symbol codes; length code_length * s.length().
// Throws std::invalid_argument when a symbol is outside the encoding's
// alphabet.
std::vector<std::uint8_t> encode_string(const SymbolString& s, const BinaryEncoding& enc);

// encode_string with the one-hot table for s's own alphabet.
std::vector<std::uint8_t> one_hot_encode(const SymbolString& s);

// Bitwise complement of a 0/1 vector.
std::vector<std::uint8_t> complement(std::vector<std::uint8_t> bits);

// Both sides of the one-hot match-count identities for a string pair with
// raw match count u over alphabet sigma and length k:
//   matches(encode(a), encode(b))             = sigma*u + (sigma-2)*(k-u)
//   matches(encode(a), complement(encode(b))) = 2*(k-u)
// Equal positions agree on all sigma block bits; unequal positions agree on
// all but the two bits where the blocks' ones sit.
struct MatchIdentity {
  std::size_t plain_lhs = 0;
  std::size_t plain_rhs = 0;
  std::size_t complement_lhs = 0;
  std::size_t complement_rhs = 0;
};

MatchIdentity encoded_match_identity_check(const SymbolString& a, const SymbolString& b);

// 2n bit-packed items over code_length*k positions: row i < n holds the
// encoded string i, row n+i its bitwise complement.
struct EncodedMatrix {
  PackedBinaryMatrix items;
  std::size_t n = 0;
  BinaryEncoding encoding;
};

EncodedMatrix build_encoded_matrix(const std::vector<SymbolString>& strings,
                                   const BinaryEncoding& enc);

// Search result mapped back to original string indices.
struct StringPairResult {
  bool found = false;
  std::size_t index_a = 0;  // index_a < index_b
  std::size_t index_b = 0;
  std::size_t matches = 0;   // raw match count of the two strings
  double correlation = 0.0;  // matches / length
  LightbulbStats stats;
};

// Least-correlated pair via the complement construction: the bucketing
// search runs over the 2n encoded items restricted to pairs (a, n+b) with
// b != a, where the encoded match count 2*(k-u) is maximal exactly when the
// raw match count u is minimal. The winner is mapped back to (i, j) and the
// returned correlation is recomputed on the raw strings. Any admissible
// predicate in params is replaced by the cross-group restriction.
StringPairResult least_correlated_pair(const std::vector<SymbolString>& strings,
                                       const BinaryEncoding& enc,
                                       const LightbulbParams& params);

// Exhaustive minimum-correlation scan; lexicographic tie-break.
StringPairResult brute_force_least_correlated(const std::vector<SymbolString>& strings);

// Most-correlated pair; the bucketing search runs directly on the raw
// strings, no encoding involved.
StringPairResult most_correlated_pair_strings(const std::vector<SymbolString>& strings,
                                              const LightbulbParams& params);

// Exhaustive maximum-correlation scan; lexicographic tie-break.
StringPairResult brute_force_most_correlated_strings(const std::vector<SymbolString>& strings);

// Strings become the rows of a SymbolMatrix; requires n >= 1 equal-length
// non-empty strings over one alphabet.
SymbolMatrix matrix_from_strings(const std::vector<SymbolString>& strings);

}  // namespace pairscan
