#include "pairscan/datagen.hpp"

#include <cmath>
#include <stdexcept>

#include "pairscan/rng.hpp"

namespace pairscan {

TimeSeries gen_random_walk(std::size_t n, std::uint64_t seed, double stddev) {
  if (n == 0) throw std::invalid_argument("walk length must be positive");
  if (!(stddev > 0.0) || !std::isfinite(stddev)) {
    throw std::invalid_argument("step stddev must be positive and finite");
  }
  Rng rng(seed);
  TimeSeries ts;
  ts.values.resize(n);
  ts.values[0] = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    ts.values[i] = ts.values[i - 1] + rng.gaussian(0.0, stddev);
  }
  return ts;
}

SymbolMatrix gen_binomial_matrix(std::size_t subjects, std::size_t strings,
                                 std::uint32_t alphabet_size, std::uint64_t seed) {
  if (subjects == 0 || strings == 0) throw std::invalid_argument("matrix must be non-empty");
  SymbolMatrix m(subjects, strings, alphabet_size);
  Rng rng(seed);
  for (std::size_t r = 0; r < subjects; ++r) {
    for (std::size_t c = 0; c < strings; ++c) {
      m.set(r, c, static_cast<std::uint8_t>(rng.uniform_below(alphabet_size)));
    }
  }
  return m;
}

void inject_pair(SymbolMatrix& matrix, double target_correlation, std::size_t col_a,
                 std::size_t col_b, std::uint64_t seed) {
  const std::size_t k = matrix.rows();
  if (col_a >= matrix.cols() || col_b >= matrix.cols() || col_a == col_b) {
    throw std::invalid_argument("inject_pair: invalid column indices");
  }
  if (!(target_correlation > 0.0) || target_correlation > 1.0) {
    throw std::invalid_argument("inject_pair: target correlation must be in (0, 1]");
  }
  if (matrix.alphabet_size() < 2) throw std::invalid_argument("inject_pair: alphabet lacks symbol 1");

  const auto ones = static_cast<std::size_t>(std::llround(target_correlation * static_cast<double>(k)));
  // col_a all ones; col_b gets `ones` ones, so matches(col_a, col_b) == ones exactly.
  for (std::size_t r = 0; r < k; ++r) {
    matrix.set(r, col_a, 1);
    matrix.set(r, col_b, 1);
  }
  Rng rng(seed);
  const auto zero_rows = rng.sample_without_replacement(k, k - ones);
  for (const std::size_t r : zero_rows) matrix.set(r, col_b, 0);
}

}  // namespace pairscan
