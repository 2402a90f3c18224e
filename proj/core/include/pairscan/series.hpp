#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace pairscan {

// Real-valued time series; all values finite.
struct TimeSeries {
  std::vector<double> values;

  std::size_t length() const { return values.size(); }

  // Number of contiguous windows of the given length.
  std::size_t window_count(std::size_t len) const;
  std::span<const double> window(std::size_t i, std::size_t len) const {
    return {values.data() + i, len};
  }
};

// Throws std::invalid_argument if any value is non-finite.
void validate(const TimeSeries& s);

// A collection of same-dimension points. Either owns a flat buffer
// (stride == dim) or is a stride-1 view over the overlapping windows of a
// series, which must then outlive the point set.
class PointSet {
 public:
  static PointSet from_flat(std::vector<double> flat, std::size_t dim);
  static PointSet windows_of(const TimeSeries& series, std::size_t len);

  std::size_t size() const { return count_; }
  std::size_t dim() const { return dim_; }
  std::span<const double> point(std::size_t i) const { return {base_ + i * stride_, dim_}; }

 private:
  PointSet() = default;
  std::vector<double> storage_;
  const double* base_ = nullptr;
  std::size_t count_ = 0;
  std::size_t dim_ = 0;
  std::size_t stride_ = 0;
};

}  // namespace pairscan
