#include "pairscan/encoding.hpp"

#include <bit>
#include <stdexcept>
#include <utility>

#include "pairscan/metrics.hpp"
#include "pairscan/rng.hpp"

namespace pairscan {

PackedBinaryMatrix::PackedBinaryMatrix(std::size_t items, std::size_t positions)
    : items_(items),
      positions_(positions),
      words_per_item_((positions + 63) / 64),
      words_(items * ((positions + 63) / 64), 0) {}

void PackedBinaryMatrix::set(std::size_t item, std::size_t pos, bool value) {
  std::uint64_t& w = words_[item * words_per_item_ + (pos >> 6)];
  const std::uint64_t mask = 1ull << (pos & 63);
  if (value) {
    w |= mask;
  } else {
    w &= ~mask;
  }
}

void PackedBinaryMatrix::set_complement_of(std::size_t dst, std::size_t src) {
  if (words_per_item_ == 0) return;
  const std::uint64_t* s = words_.data() + src * words_per_item_;
  std::uint64_t* d = words_.data() + dst * words_per_item_;
  for (std::size_t w = 0; w < words_per_item_; ++w) d[w] = ~s[w];
  const std::size_t tail = positions_ & 63;
  if (tail != 0) d[words_per_item_ - 1] &= (1ull << tail) - 1;
}

std::size_t PackedBinaryMatrix::match_count(std::size_t a, std::size_t b) const {
  const std::uint64_t* wa = words_.data() + a * words_per_item_;
  const std::uint64_t* wb = words_.data() + b * words_per_item_;
  std::size_t mismatches = 0;
  for (std::size_t w = 0; w < words_per_item_; ++w) {
    mismatches += static_cast<std::size_t>(std::popcount(wa[w] ^ wb[w]));
  }
  return positions_ - mismatches;
}

std::optional<std::size_t> PackedBinaryMatrix::match_count_at_least(std::size_t a, std::size_t b,
                                                                    std::size_t min_needed) const {
  const std::uint64_t* wa = words_.data() + a * words_per_item_;
  const std::uint64_t* wb = words_.data() + b * words_per_item_;
  std::size_t mismatches = 0;
  for (std::size_t w = 0; w < words_per_item_; ++w) {
    mismatches += static_cast<std::size_t>(std::popcount(wa[w] ^ wb[w]));
    // Matches can only shrink as more words are scanned.
    if (positions_ - mismatches < min_needed) return std::nullopt;
  }
  return positions_ - mismatches;
}

BinaryEncoding BinaryEncoding::one_hot(std::uint32_t sigma) {
  if (sigma < 2) throw std::invalid_argument("one-hot encoding needs an alphabet of at least 2");
  BinaryEncoding enc;
  enc.kind = Kind::one_hot;
  enc.sigma = sigma;
  enc.code_length = sigma;
  enc.code_bits.assign(static_cast<std::size_t>(sigma) * sigma, 0);
  for (std::uint32_t v = 0; v < sigma; ++v) {
    enc.code_bits[static_cast<std::size_t>(v) * sigma + (sigma - 1 - v)] = 1;
  }
  return enc;
}

BinaryEncoding BinaryEncoding::random_table(std::uint32_t sigma, std::size_t code_length,
                                            std::uint64_t seed) {
  if (sigma < 2) throw std::invalid_argument("random encoding needs an alphabet of at least 2");
  if (code_length == 0) throw std::invalid_argument("code_length must be at least 1");
  BinaryEncoding enc;
  enc.kind = Kind::random;
  enc.sigma = sigma;
  enc.code_length = code_length;
  enc.code_bits.resize(static_cast<std::size_t>(sigma) * code_length);
  Rng rng(seed);
  for (auto& bit : enc.code_bits) bit = static_cast<std::uint8_t>(rng.uniform_below(2));
  return enc;
}

std::vector<std::uint8_t> encode_string(const SymbolString& s, const BinaryEncoding& enc) {
  std::vector<std::uint8_t> bits(s.length() * enc.code_length);
  for (std::size_t t = 0; t < s.length(); ++t) {
    const std::uint32_t v = s.symbols[t];
    if (v >= enc.sigma) throw std::invalid_argument("symbol outside the encoding's alphabet");
    for (std::size_t b = 0; b < enc.code_length; ++b) {
      bits[t * enc.code_length + b] = enc.code_bit(v, b);
    }
  }
  return bits;
}

std::vector<std::uint8_t> one_hot_encode(const SymbolString& s) {
  return encode_string(s, BinaryEncoding::one_hot(s.alphabet_size));
}

std::vector<std::uint8_t> complement(std::vector<std::uint8_t> bits) {
  for (auto& b : bits) b = static_cast<std::uint8_t>(1 - b);
  return bits;
}

namespace {

std::size_t bit_match_count(const std::vector<std::uint8_t>& x, const std::vector<std::uint8_t>& y) {
  std::size_t matches = 0;
  for (std::size_t i = 0; i < x.size(); ++i) matches += (x[i] == y[i]) ? 1 : 0;
  return matches;
}

}  // namespace

MatchIdentity encoded_match_identity_check(const SymbolString& a, const SymbolString& b) {
  const std::size_t u = match_count(a, b);  // validates lengths and alphabets
  const std::size_t k = a.length();
  const std::size_t sigma = a.alphabet_size;
  const auto ea = one_hot_encode(a);
  const auto eb = one_hot_encode(b);
  MatchIdentity id;
  id.plain_lhs = bit_match_count(ea, eb);
  id.plain_rhs = sigma * u + (sigma - 2) * (k - u);
  id.complement_lhs = bit_match_count(ea, complement(eb));
  id.complement_rhs = 2 * (k - u);
  return id;
}

EncodedMatrix build_encoded_matrix(const std::vector<SymbolString>& strings,
                                   const BinaryEncoding& enc) {
  if (strings.empty()) throw std::invalid_argument("need at least 1 string");
  const std::size_t n = strings.size();
  const std::size_t k = strings[0].length();
  if (k == 0) throw std::invalid_argument("strings must be non-empty");
  EncodedMatrix em;
  em.n = n;
  em.encoding = enc;
  em.items = PackedBinaryMatrix(2 * n, k * enc.code_length);
  for (std::size_t i = 0; i < n; ++i) {
    if (strings[i].length() != k) throw std::invalid_argument("strings must share one length");
    const auto bits = encode_string(strings[i], enc);
    for (std::size_t p = 0; p < bits.size(); ++p) {
      if (bits[p]) em.items.set(i, p, true);
    }
    em.items.set_complement_of(n + i, i);
  }
  return em;
}

StringPairResult least_correlated_pair(const std::vector<SymbolString>& strings,
                                       const BinaryEncoding& enc,
                                       const LightbulbParams& params) {
  if (strings.size() < 2) throw std::invalid_argument("need at least 2 strings");
  const EncodedMatrix em = build_encoded_matrix(strings, enc);
  const std::size_t n = em.n;
  LightbulbParams p = params;
  p.admissible = [n](std::size_t a, std::size_t b) { return a < n && n <= b && b != a + n; };
  CorrelationSearch<PackedBinaryMatrix> search(em.items, p);
  const CorrelationResult encoded = search.run();
  StringPairResult out;
  out.stats = encoded.stats;
  if (!encoded.found) return out;
  std::size_t i = encoded.index_a;
  std::size_t j = encoded.index_b - n;
  if (i > j) std::swap(i, j);
  out.found = true;
  out.index_a = i;
  out.index_b = j;
  out.matches = match_count(strings[i], strings[j]);
  out.correlation = correlation(strings[i], strings[j]);
  return out;
}

StringPairResult brute_force_least_correlated(const std::vector<SymbolString>& strings) {
  const std::size_t n = strings.size();
  if (n < 2) throw std::invalid_argument("need at least 2 strings");
  StringPairResult best;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      ++best.stats.pairs_examined;
      const std::size_t u = match_count(strings[i], strings[j]);
      if (!best.found || u < best.matches) {
        best.found = true;
        best.index_a = i;
        best.index_b = j;
        best.matches = u;
      }
    }
  }
  best.correlation = static_cast<double>(best.matches) / static_cast<double>(strings[0].length());
  return best;
}

StringPairResult most_correlated_pair_strings(const std::vector<SymbolString>& strings,
                                              const LightbulbParams& params) {
  const SymbolMatrix m = matrix_from_strings(strings);
  const CorrelationResult r = most_correlated_pair(m, params);
  StringPairResult out;
  out.stats = r.stats;
  if (!r.found) return out;
  out.found = true;
  out.index_a = r.index_a;
  out.index_b = r.index_b;
  out.matches = r.matches;
  out.correlation = static_cast<double>(r.matches) / static_cast<double>(m.position_count());
  return out;
}

StringPairResult brute_force_most_correlated_strings(const std::vector<SymbolString>& strings) {
  const std::size_t n = strings.size();
  if (n < 2) throw std::invalid_argument("need at least 2 strings");
  StringPairResult best;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      ++best.stats.pairs_examined;
      const std::size_t u = match_count(strings[i], strings[j]);
      if (!best.found || u > best.matches) {
        best.found = true;
        best.index_a = i;
        best.index_b = j;
        best.matches = u;
      }
    }
  }
  best.correlation = static_cast<double>(best.matches) / static_cast<double>(strings[0].length());
  return best;
}

SymbolMatrix matrix_from_strings(const std::vector<SymbolString>& strings) {
  if (strings.empty()) throw std::invalid_argument("need at least 1 string");
  const std::size_t k = strings[0].length();
  if (k == 0) throw std::invalid_argument("strings must be non-empty");
  const std::uint32_t sigma = strings[0].alphabet_size;
  SymbolMatrix m(strings.size(), k, sigma);
  for (std::size_t i = 0; i < strings.size(); ++i) {
    const SymbolString& s = strings[i];
    if (s.length() != k) throw std::invalid_argument("strings must share one length");
    if (s.alphabet_size != sigma) throw std::invalid_argument("strings must share one alphabet");
    validate(s);
    for (std::size_t p = 0; p < k; ++p) m.set(i, p, s.symbols[p]);
  }
  return m;
}

}  // namespace pairscan
