#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace albscreen {

enum class ScaleSource { RobustIQR, SampleSD, Degenerate };

inline const char* to_string(ScaleSource s)
{
  switch (s) {
    case ScaleSource::RobustIQR: return "iqr";
    case ScaleSource::SampleSD: return "sd";
    case ScaleSource::Degenerate: return "degenerate";
  }
  return "?";
}

struct BandwidthSpec {
  double value = 0.0;  // meaningless when degenerate()
  ScaleSource scale_source = ScaleSource::Degenerate;

  bool degenerate() const noexcept { return scale_source == ScaleSource::Degenerate; }
};

inline constexpr double plugin_constant = 0.162;

/// Quantile of already sorted data by linear interpolation between order
/// statistics (h = (N-1) q, the "type 7" rule).
inline double quantile_sorted(std::span<const double> sorted, double q)
{
  if (sorted.empty())
    throw std::invalid_argument("quantile: empty input");
  if (!(q >= 0.0 && q <= 1.0))
    throw std::invalid_argument("quantile: probability outside [0, 1]");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = h - static_cast<double>(lo);
  if (frac == 0.0)
    return sorted[lo];
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

inline double quantile(std::span<const double> values, double q)
{
  std::vector<double> s(values.begin(), values.end());
  std::sort(s.begin(), s.end());
  return quantile_sorted(s, q);
}

/// IQR / 1.35. Zero iff the first and third quartiles coincide.
inline double robust_scale(std::span<const double> values)
{
  if (values.empty())
    throw std::invalid_argument("robust_scale: empty input");
  std::vector<double> s(values.begin(), values.end());
  std::sort(s.begin(), s.end());
  return (quantile_sorted(s, 0.75) - quantile_sorted(s, 0.25)) / 1.35;
}

/// Sample standard deviation with the N-1 divisor; 0 for fewer than 2 values.
inline double sample_sd(std::span<const double> values)
{
  if (values.size() < 2)
    return 0.0;
  double mean = 0.0;
  for (double v : values)
    mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values)
    ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

/// 0.162 * total_count^(-1/5) * s, where s is IQR/1.35 when positive, the
/// sample SD when the IQR vanishes, and the feature is flagged degenerate
/// when both vanish.
inline BandwidthSpec plugin_bandwidth(std::span<const double> values, std::size_t total_count)
{
  if (values.empty())
    throw std::invalid_argument("plugin_bandwidth: empty input");
  if (total_count < 2)
    throw std::invalid_argument("plugin_bandwidth: total_count must be at least 2");
  const double factor = plugin_constant * std::pow(static_cast<double>(total_count), -0.2);
  if (const double s = robust_scale(values); s > 0.0)
    return {factor * s, ScaleSource::RobustIQR};
  if (const double s = sample_sd(values); s > 0.0)
    return {factor * s, ScaleSource::SampleSD};
  return {0.0, ScaleSource::Degenerate};
}

}  // namespace albscreen
