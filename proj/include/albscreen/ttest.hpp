#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace albscreen {

namespace detail {

// Continued fraction for the incomplete beta function (modified Lentz).
inline double beta_continued_fraction(double a, double b, double x)
{
  constexpr int max_iter = 10000;
  constexpr double eps = 1e-16;
  constexpr double tiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny)
    d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= max_iter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny)
      d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny)
      c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny)
      d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny)
      c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < eps)
      break;
  }
  return h;
}

}  // namespace detail

/// Regularized incomplete beta I_x(a, b).
inline double incomplete_beta(double a, double b, double x)
{
  if (!(a > 0.0) || !(b > 0.0))
    throw std::domain_error("incomplete_beta: parameters must be positive");
  if (x <= 0.0)
    return 0.0;
  if (x >= 1.0)
    return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0))
    return front * detail::beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * detail::beta_continued_fraction(b, a, 1.0 - x) / b;
}

/// Two-sided tail probability P(|T| >= |t|) for Student-t with df degrees of freedom.
inline double student_t_two_sided(double t, double df)
{
  if (std::isnan(t))
    return std::numeric_limits<double>::quiet_NaN();
  if (std::isinf(t))
    return 0.0;
  if (t == 0.0)
    return 1.0;
  return incomplete_beta(0.5 * df, 0.5, df / (df + t * t));
}

struct TTestResult {
  double t = 0.0;
  double df = 0.0;
  double p_value = 1.0;
  std::size_t feature_index = 0;
};

/// Welch's unequal-variance t-test, t = (mean0 - mean1) / se, with the
/// Welch-Satterthwaite degrees of freedom and a two-sided p-value.
///
/// Both samples constant: p = 1 when the constants agree, p = 0 otherwise.
inline TTestResult welch_t(std::span<const double> x0, std::span<const double> x1)
{
  if (x0.size() < 2 || x1.size() < 2)
    throw std::invalid_argument("welch_t: each sample needs at least two values");
  auto moments = [](std::span<const double> x) {
    double mean = 0.0;
    for (double v : x)
      mean += v;
    mean /= static_cast<double>(x.size());
    double ss = 0.0;
    for (double v : x)
      ss += (v - mean) * (v - mean);
    return std::pair{mean, ss / static_cast<double>(x.size() - 1)};
  };
  const auto [m0, v0] = moments(x0);
  const auto [m1, v1] = moments(x1);
  const double n0 = static_cast<double>(x0.size());
  const double n1 = static_cast<double>(x1.size());
  const double a = v0 / n0;
  const double b = v1 / n1;

  TTestResult r;
  r.df = n0 + n1 - 2.0;
  if (a + b == 0.0) {
    const double diff = m0 - m1;
    r.t = diff == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff);
    r.p_value = diff == 0.0 ? 1.0 : 0.0;
    return r;
  }
  r.t = (m0 - m1) / std::sqrt(a + b);
  r.df = (a + b) * (a + b) / (a * a / (n0 - 1.0) + b * b / (n1 - 1.0));
  r.p_value = std::clamp(student_t_two_sided(r.t, r.df), 0.0, 1.0);
  return r;
}

/// Splits a column by label and runs welch_t (class 0 first).
inline TTestResult welch_t_feature(std::span<const double> values, std::span<const int> labels)
{
  std::vector<double> x0;
  std::vector<double> x1;
  for (std::size_t i = 0; i < values.size(); ++i)
    (labels[i] == 0 ? x0 : x1).push_back(values[i]);
  return welch_t(x0, x1);
}

}  // namespace albscreen
