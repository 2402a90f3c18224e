#include "pairscan/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace pairscan {

namespace {

void check_dims(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("dimension mismatch");
}

}  // namespace

double euclidean_distance(std::span<const double> x, std::span<const double> y) {
  check_dims(x, y);
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

std::optional<double> euclidean_distance_early_abandon(std::span<const double> x,
                                                       std::span<const double> y,
                                                       double threshold) {
  check_dims(x, y);
  if (!(threshold >= 0.0) || !std::isfinite(threshold)) {
    throw std::invalid_argument("threshold must be finite and non-negative");
  }
  // The in-loop cutoff is widened by a few ulp so rounding in
  // threshold*threshold can never abandon a pair sitting exactly on the
  // threshold; the final sqrt comparison is the authoritative test.
  const double limit = threshold * threshold * (1.0 + 4e-15);
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    sum += d * d;
    if (sum > limit) return std::nullopt;
  }
  const double dist = std::sqrt(sum);
  if (dist > threshold) return std::nullopt;
  return dist;
}

std::size_t hamming_distance(const SymbolString& a, const SymbolString& b) {
  if (a.length() != b.length()) throw std::invalid_argument("length mismatch");
  if (a.alphabet_size != b.alphabet_size) throw std::invalid_argument("alphabet mismatch");
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.symbols.size(); ++i) d += (a.symbols[i] != b.symbols[i]);
  return d;
}

std::size_t match_count(const SymbolString& a, const SymbolString& b) {
  return a.length() - hamming_distance(a, b);
}

double correlation(const SymbolString& a, const SymbolString& b) {
  if (a.length() == 0) throw std::invalid_argument("correlation of empty strings");
  const std::size_t d = hamming_distance(a, b);
  return static_cast<double>(a.length() - d) / static_cast<double>(a.length());
}

}  // namespace pairscan
