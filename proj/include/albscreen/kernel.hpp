#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>

namespace albscreen {

enum class KernelId { Hall, Gaussian };

namespace detail {
inline constexpr double phi_at_one = 0.8413447460685429;

// 1 / (sqrt(8 pi e) * Phi(1))
inline const double hall_norm = 1.0 / (std::sqrt(8.0 * std::numbers::pi * std::numbers::e) * phi_at_one);
inline constexpr double gauss_norm = 0.3989422804014327;  // 1 / sqrt(2 pi)

inline double hall_unchecked(double z) noexcept
{
  const double l = std::log1p(std::fabs(z));
  return hall_norm * std::exp(-0.5 * l * l);
}

inline double gauss_unchecked(double z) noexcept { return gauss_norm * std::exp(-0.5 * z * z); }

inline double kernel_unchecked(KernelId k, double z) noexcept
{
  return k == KernelId::Hall ? hall_unchecked(z) : gauss_unchecked(z);
}
}  // namespace detail

/// Heavy-tailed Hall kernel
///   K0(z) = exp(-(log(1+|z|))^2 / 2) / (sqrt(8 pi e) Phi(1)).
/// Strictly positive and symmetric for every finite z.
inline double hall_kernel(double z)
{
  if (!std::isfinite(z))
    throw std::domain_error("hall_kernel: non-finite argument");
  return detail::hall_unchecked(z);
}

inline double gaussian_kernel(double z)
{
  if (!std::isfinite(z))
    throw std::domain_error("gaussian_kernel: non-finite argument");
  return detail::gauss_unchecked(z);
}

inline double kernel_value(KernelId k, double z)
{
  return k == KernelId::Hall ? hall_kernel(z) : gaussian_kernel(z);
}

/// (1 / (N b)) * sum_r K((x - points[r]) / b)
inline double kde_eval(double x, std::span<const double> points, double b, KernelId kernel = KernelId::Hall)
{
  if (points.empty())
    throw std::invalid_argument("kde_eval: empty sample");
  if (!(b > 0.0))
    throw std::invalid_argument("kde_eval: bandwidth must be positive");
  double sum = 0.0;
  for (double p : points)
    sum += detail::kernel_unchecked(kernel, (x - p) / b);
  return sum / (static_cast<double>(points.size()) * b);
}

/// Density at points[i] estimated from every other point, normalized by the
/// number of terms actually summed, (N - 1) * b.
inline double loo_density(std::size_t i, std::span<const double> points, double b, KernelId kernel = KernelId::Hall)
{
  if (points.size() < 2)
    throw std::invalid_argument("loo_density: need at least two points");
  if (i >= points.size())
    throw std::out_of_range("loo_density: index out of range");
  if (!(b > 0.0))
    throw std::invalid_argument("loo_density: bandwidth must be positive");
  const double x = points[i];
  double sum = 0.0;
  for (std::size_t r = 0; r < points.size(); ++r)
    if (r != i)
      sum += detail::kernel_unchecked(kernel, (x - points[r]) / b);
  return sum / (static_cast<double>(points.size() - 1) * b);
}

}  // namespace albscreen
