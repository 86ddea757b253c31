#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "hgen/errors.hpp"

namespace hgen {

inline double mean_of(std::span<const double> values) {
  if (values.empty()) throw ArgumentError("mean of empty range");
  double sum = 0.0;
  for (double value : values) sum += value;
  return sum / static_cast<double>(values.size());
}

// Population standard deviation (divide by N).
inline double stddev_of(std::span<const double> values) {
  double center = mean_of(values);
  double sum_sq = 0.0;
  for (double value : values) {
    double diff = value - center;
    sum_sq += diff * diff;
  }
  return std::sqrt(sum_sq / static_cast<double>(values.size()));
}

// Percentile with linear interpolation between order statistics:
// h = (N-1) * p/100, result = v[floor(h)] + frac(h) * (v[floor(h)+1] - v[floor(h)]).
inline double percentile_of(std::vector<double> values, double pct) {
  if (values.empty()) throw ArgumentError("percentile of empty range");
  if (pct < 0.0 || pct > 100.0) throw ArgumentError("percentile out of range");
  std::sort(values.begin(), values.end());
  double h = (static_cast<double>(values.size()) - 1.0) * pct / 100.0;
  std::size_t low = static_cast<std::size_t>(h);
  if (low + 1 >= values.size()) return values.back();
  double frac = h - static_cast<double>(low);
  return values[low] + frac * (values[low + 1] - values[low]);
}

}  // namespace hgen
