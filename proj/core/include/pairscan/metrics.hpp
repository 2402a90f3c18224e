#pragma once

#include <optional>
#include <span>

#include "pairscan/symbols.hpp"

namespace pairscan {

// L2 distance; throws std::invalid_argument on dimension mismatch.
double euclidean_distance(std::span<const double> x, std::span<const double> y);

// Early-abandoning L2: accumulates squared terms in index order and bails out
// once the partial sum shows the distance is over the threshold. Completes
// exactly when euclidean_distance(x, y) <= threshold (boundary inclusive) and
// then returns a value bit-identical to it (same accumulation).
// threshold must be finite and >= 0.
std::optional<double> euclidean_distance_early_abandon(std::span<const double> x,
                                                       std::span<const double> y,
                                                       double threshold);

// Number of mismatching positions; requires equal length and equal alphabet.
std::size_t hamming_distance(const SymbolString& a, const SymbolString& b);

// Number of matching positions; length - hamming_distance.
std::size_t match_count(const SymbolString& a, const SymbolString& b);

// (length - hamming) / length in [0, 1]; throws on empty strings.
double correlation(const SymbolString& a, const SymbolString& b);

}  // namespace pairscan
