#include "pairscan/series.hpp"

#include <cmath>
#include <stdexcept>

namespace pairscan {

std::size_t TimeSeries::window_count(std::size_t len) const {
  if (len == 0 || len > values.size()) throw std::invalid_argument("window length out of range");
  return values.size() - len + 1;
}

void validate(const TimeSeries& s) {
  for (const double v : s.values) {
    if (!std::isfinite(v)) throw std::invalid_argument("series value must be finite");
  }
}

PointSet PointSet::from_flat(std::vector<double> flat, std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("point dimension must be positive");
  if (flat.size() % dim != 0) throw std::invalid_argument("flat buffer not a multiple of dim");
  for (const double v : flat) {
    if (!std::isfinite(v)) throw std::invalid_argument("point coordinate must be finite");
  }
  PointSet ps;
  ps.storage_ = std::move(flat);
  ps.base_ = ps.storage_.data();
  ps.count_ = ps.storage_.size() / dim;
  ps.dim_ = dim;
  ps.stride_ = dim;
  return ps;
}

PointSet PointSet::windows_of(const TimeSeries& series, std::size_t len) {
  const std::size_t n = series.window_count(len);
  PointSet ps;
  ps.base_ = series.values.data();
  ps.count_ = n;
  ps.dim_ = len;
  ps.stride_ = 1;
  return ps;
}

}  // namespace pairscan
