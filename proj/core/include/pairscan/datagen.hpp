#pragma once

#include <cstdint>

#include "pairscan/series.hpp"
#include "pairscan/symbols.hpp"

namespace pairscan {

// Random walk of length n starting at 0 with Gaussian steps.
// Deterministic per seed. n must be >= 1, stddev > 0.
TimeSeries gen_random_walk(std::size_t n, std::uint64_t seed, double stddev = 1.0);

// subjects x strings matrix with entries uniform over [0, alphabet_size).
SymbolMatrix gen_binomial_matrix(std::size_t subjects, std::size_t strings,
                                 std::uint32_t alphabet_size, std::uint64_t seed);

// Plants a correlated column pair: col_a becomes all ones and col_b gets
// exactly round(target_correlation * subjects) ones, the zero positions
// chosen by the seeded generator. Afterwards the correlation between the two
// columns is exactly ones/subjects. target_correlation must lie in (0, 1],
// the columns must be distinct and in range, and the alphabet must contain
// the symbol 1.
void inject_pair(SymbolMatrix& matrix, double target_correlation, std::size_t col_a,
                 std::size_t col_b, std::uint64_t seed);

}  // namespace pairscan
