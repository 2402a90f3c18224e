#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pairscan {

// Fixed-length string over a finite alphabet {0, ..., alphabet_size-1}.
struct SymbolString {
  std::vector<std::uint8_t> symbols;
  std::uint32_t alphabet_size = 2;

  std::size_t length() const { return symbols.size(); }
};

// Throws std::invalid_argument if any symbol is outside the alphabet
// or the alphabet has fewer than two symbols.
void validate(const SymbolString& s);

// Rectangular matrix of symbols, row major. Rows are the items being
// compared; callers working with column-oriented data (e.g. subjects x SNPs
// where the SNP strings are columns) transpose first.
class SymbolMatrix {
 public:
  SymbolMatrix() = default;
  SymbolMatrix(std::size_t rows, std::size_t cols, std::uint32_t alphabet_size);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint32_t alphabet_size() const { return alphabet_; }

  std::uint8_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, std::uint8_t v) { data_[r * cols_ + c] = v; }

  std::span<const std::uint8_t> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  SymbolMatrix transposed() const;
  SymbolString row_string(std::size_t r) const;
  SymbolString column_string(std::size_t c) const;

  // Throws std::invalid_argument if an entry is outside the alphabet.
  void validate_entries() const;

  // Item-matrix interface used by the bucketing engine.
  std::size_t item_count() const { return rows_; }
  std::size_t position_count() const { return cols_; }
  std::uint32_t entry(std::size_t item, std::size_t pos) const { return at(item, pos); }

  // Exact number of agreeing positions between two rows, abandoning with
  // nullopt as soon as the count provably falls below min_needed.
  std::optional<std::size_t> match_count_at_least(std::size_t a, std::size_t b,
                                                  std::size_t min_needed) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::uint32_t alphabet_ = 2;
  std::vector<std::uint8_t> data_;
};

}  // namespace pairscan
