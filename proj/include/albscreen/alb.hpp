#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "bandwidth.hpp"
#include "dataset.hpp"
#include "kernel.hpp"
#include "parallel.hpp"

namespace albscreen {

/// One feature column with aligned 0/1 labels.
struct LabeledFeature {
  std::span<const double> values;
  std::span<const int> labels;
};

struct AlbResult {
  double alb = 0.0;
  BandwidthSpec bandwidth;
  bool degenerate = false;
  std::size_t feature_index = 0;
  std::size_t clamped_densities = 0;  // log underflow guard hits
};

/// log(2) * max(m/(m-1), n/(n-1)).
inline double alb_upper_bound(std::size_t m, std::size_t n)
{
  if (m < 2 || n < 2)
    throw std::invalid_argument("alb_upper_bound: both classes need at least two samples");
  const double dm = static_cast<double>(m);
  const double dn = static_cast<double>(n);
  return std::numbers::ln2 * std::max(dm / (dm - 1.0), dn / (dn - 1.0));
}

/// Average log-Bayes factor of one feature.
///
/// For every sample i, the leave-one-out density of its own class at x_i is
/// compared with the leave-one-out pooled density at x_i:
///
///   (m+n) ALB = sum_i log( own_class_loo(x_i) / pooled_loo(x_i) ).
///
/// Each leave-one-out estimate is normalized by the number of terms it sums.
/// Kernel sums accumulate in ascending index order, so the result is
/// bitwise reproducible and invariant to swapping the two labels.
inline AlbResult alb_statistic(const LabeledFeature& feature, const BandwidthSpec& bw, KernelId kernel = KernelId::Hall)
{
  const std::size_t total = feature.values.size();
  if (feature.labels.size() != total)
    throw std::invalid_argument("alb_statistic: values and labels differ in length");
  std::size_t count[2] = {0, 0};
  for (int l : feature.labels) {
    if (l != 0 && l != 1)
      throw std::invalid_argument("alb_statistic: labels must be 0 or 1");
    ++count[l];
  }
  if (count[0] < 2 || count[1] < 2)
    throw std::invalid_argument("alb_statistic: both classes need at least two samples");

  AlbResult out;
  out.bandwidth = bw;
  if (bw.degenerate()) {
    out.degenerate = true;
    return out;
  }
  const double b = bw.value;
  if (!(b > 0.0) || !std::isfinite(b))
    throw std::invalid_argument("alb_statistic: bandwidth must be positive");

  const auto x = feature.values;
  const auto y = feature.labels;
  std::vector<double> pooled(total, 0.0);
  std::vector<double> own(total, 0.0);
  const double inv_b = 1.0 / b;
  for (std::size_t i = 0; i < total; ++i) {
    for (std::size_t r = i + 1; r < total; ++r) {
      const double k = detail::kernel_unchecked(kernel, (x[i] - x[r]) * inv_b);
      pooled[i] += k;
      pooled[r] += k;
      if (y[i] == y[r]) {
        own[i] += k;
        own[r] += k;
      }
    }
  }

  constexpr double floor = std::numeric_limits<double>::min();
  const double pooled_norm = static_cast<double>(total - 1) * b;
  const double own_norm[2] = {static_cast<double>(count[0] - 1) * b, static_cast<double>(count[1] - 1) * b};
  double sum = 0.0;
  for (std::size_t i = 0; i < total; ++i) {
    double h = pooled[i] / pooled_norm;
    double f = own[i] / own_norm[y[i]];
    if (h < floor) {
      h = floor;
      ++out.clamped_densities;
    }
    if (f < floor) {
      f = floor;
      ++out.clamped_densities;
    }
    sum += std::log(f / h);
  }
  out.alb = sum / static_cast<double>(total);
  return out;
}

/// Plug-in bandwidth from the pooled column, then alb_statistic.
inline AlbResult alb_feature(std::span<const double> values, std::span<const int> labels, KernelId kernel = KernelId::Hall)
{
  return alb_statistic({values, labels}, plugin_bandwidth(values, values.size()), kernel);
}

/// ALB for every feature, in feature order. Output does not depend on `workers`.
inline std::vector<AlbResult> alb_all(const Dataset& ds, unsigned workers = 1, KernelId kernel = KernelId::Hall)
{
  ds.require_classes(2);
  std::vector<AlbResult> results(ds.features());
  parallel_for(ds.features(), workers, [&](std::size_t j) {
    results[j] = alb_feature(ds.column(j), ds.labels(), kernel);
    results[j].feature_index = j;
  });
  return results;
}

}  // namespace albscreen
