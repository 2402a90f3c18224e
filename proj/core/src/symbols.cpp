#include "pairscan/symbols.hpp"

#include <stdexcept>

namespace pairscan {

void validate(const SymbolString& s) {
  if (s.alphabet_size < 2) throw std::invalid_argument("alphabet must have at least two symbols");
  for (const std::uint8_t v : s.symbols) {
    if (v >= s.alphabet_size) throw std::invalid_argument("symbol outside alphabet");
  }
}

SymbolMatrix::SymbolMatrix(std::size_t rows, std::size_t cols, std::uint32_t alphabet_size)
    : rows_(rows), cols_(cols), alphabet_(alphabet_size), data_(rows * cols, 0) {
  if (alphabet_size < 2 || alphabet_size > 256) {
    throw std::invalid_argument("alphabet size must be in [2, 256]");
  }
}

SymbolMatrix SymbolMatrix::transposed() const {
  SymbolMatrix t(cols_, rows_, alphabet_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t.set(c, r, at(r, c));
  }
  return t;
}

SymbolString SymbolMatrix::row_string(std::size_t r) const {
  SymbolString s;
  s.alphabet_size = alphabet_;
  s.symbols.assign(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
  return s;
}

SymbolString SymbolMatrix::column_string(std::size_t c) const {
  SymbolString s;
  s.alphabet_size = alphabet_;
  s.symbols.resize(rows_);
  for (std::size_t r = 0; r < rows_; ++r) s.symbols[r] = at(r, c);
  return s;
}

void SymbolMatrix::validate_entries() const {
  for (const std::uint8_t v : data_) {
    if (v >= alphabet_) throw std::invalid_argument("matrix entry outside alphabet");
  }
}

std::optional<std::size_t> SymbolMatrix::match_count_at_least(std::size_t a, std::size_t b,
                                                              std::size_t min_needed) const {
  const std::uint8_t* pa = data_.data() + a * cols_;
  const std::uint8_t* pb = data_.data() + b * cols_;
  std::size_t matches = 0;
  for (std::size_t p = 0; p < cols_; ++p) {
    matches += (pa[p] == pb[p]);
    // matches + remaining positions is an upper bound on the final count.
    if (matches + (cols_ - 1 - p) < min_needed) return std::nullopt;
  }
  return matches;
}

}  // namespace pairscan
