#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bandwidth.hpp"
#include "dataset.hpp"
#include "kernel.hpp"
#include "parallel.hpp"

namespace albscreen {

/// log of the kernel density estimate at x, evaluated with log-sum-exp so
/// it stays finite far into the tails.
inline double log_kde(double x, std::span<const double> points, double b, KernelId kernel = KernelId::Hall)
{
  if (points.empty())
    throw std::invalid_argument("log_kde: empty sample");
  if (!(b > 0.0))
    throw std::invalid_argument("log_kde: bandwidth must be positive");
  auto log_k = [&](double z) {
    if (kernel == KernelId::Hall) {
      const double l = std::log1p(std::fabs(z));
      return std::log(detail::hall_norm) - 0.5 * l * l;
    }
    return std::log(detail::gauss_norm) - 0.5 * z * z;
  };
  double peak = -std::numeric_limits<double>::infinity();
  for (double p : points)
    peak = std::max(peak, log_k((x - p) / b));
  double acc = 0.0;
  for (double p : points)
    acc += std::exp(log_k((x - p) / b) - peak);
  return peak + std::log(acc) - std::log(static_cast<double>(points.size()) * b);
}

/// Per-feature, per-class density estimate kept by the classifier.
struct ClassDensities {
  std::size_t feature = 0;
  std::vector<double> class0;
  std::vector<double> class1;
  double bandwidth0 = 0.0;
  double bandwidth1 = 0.0;

  bool operator==(const ClassDensities&) const = default;
};

/// Naive-Bayes style classifier over screened features with kernel density
/// class-conditionals and priors proportional to class counts.
///
/// Label 0 (the n-count class) is the numerator class: posterior() returns
/// P(label 0 | x) and predict() picks label 0 iff that posterior exceeds the
/// label-0 prior.
struct BayesKdeModel {
  std::vector<ClassDensities> features;
  std::size_t n0 = 0;
  std::size_t n1 = 0;
  double prior0 = 0.5;
  double prior1 = 0.5;
  std::size_t input_width = 0;  // length of feature vectors the model expects
  KernelId kernel = KernelId::Hall;
  std::array<std::string, 2> label_names{"0", "1"};
  std::vector<std::string> warnings;

  std::vector<std::size_t> selected() const
  {
    std::vector<std::size_t> s;
    for (const auto& f : features)
      s.push_back(f.feature);
    return s;
  }

  bool operator==(const BayesKdeModel&) const = default;
};

/// Stores training values and class-specific plug-in bandwidths for every
/// selected feature. A feature that is constant within a class is dropped
/// and a warning recorded.
inline BayesKdeModel fit_bayes(const Dataset& train, std::span<const std::size_t> selected, KernelId kernel = KernelId::Hall)
{
  train.require_classes(2);
  BayesKdeModel model;
  model.n0 = train.n0();
  model.n1 = train.n1();
  model.prior0 = static_cast<double>(model.n0) / static_cast<double>(train.rows());
  model.prior1 = 1.0 - model.prior0;
  model.input_width = train.features();
  model.kernel = kernel;
  model.label_names = train.label_names;

  for (std::size_t j : selected) {
    if (j >= train.features())
      throw std::invalid_argument("fit_bayes: selected feature " + std::to_string(j) + " out of range");
    ClassDensities cd;
    cd.feature = j;
    auto col = train.column(j);
    for (std::size_t r = 0; r < train.rows(); ++r)
      (train.labels()[r] == 0 ? cd.class0 : cd.class1).push_back(col[r]);
    const auto b0 = plugin_bandwidth(cd.class0, cd.class0.size());
    const auto b1 = plugin_bandwidth(cd.class1, cd.class1.size());
    if (b0.degenerate() || b1.degenerate()) {
      model.warnings.push_back("feature " + train.feature_name(j) + " is constant within a class; dropped");
      continue;
    }
    cd.bandwidth0 = b0.value;
    cd.bandwidth1 = b1.value;
    model.features.push_back(std::move(cd));
  }
  return model;
}

/// sum_i log f_i(x_i) - sum_i log g_i(x_i): the log density ratio of label 0
/// against label 1, priors excluded.
inline double log_density_ratio(const BayesKdeModel& model, std::span<const double> x)
{
  double d = 0.0;
  for (const auto& f : model.features) {
    if (f.feature >= x.size())
      throw std::invalid_argument("posterior: observation lacks feature " + std::to_string(f.feature));
    const double v = x[f.feature];
    d += log_kde(v, f.class0, f.bandwidth0, model.kernel) - log_kde(v, f.class1, f.bandwidth1, model.kernel);
  }
  return d;
}

namespace detail {
// prior_a * exp(d) / (prior_a * exp(d) + prior_b), arranged so exp never overflows.
inline double two_term_softmax(double prior_a, double prior_b, double d)
{
  if (d >= 0.0)
    return prior_a / (prior_a + prior_b * std::exp(-d));
  const double e = std::exp(d);
  return prior_a * e / (prior_a * e + prior_b);
}
}  // namespace detail

/// P(label 0 | x).
inline double posterior(const BayesKdeModel& model, std::span<const double> x)
{
  return detail::two_term_softmax(model.prior0, model.prior1, log_density_ratio(model, x));
}

/// P(label 1 | x), computed independently of posterior().
inline double posterior_class1(const BayesKdeModel& model, std::span<const double> x)
{
  return detail::two_term_softmax(model.prior1, model.prior0, -log_density_ratio(model, x));
}

/// Label 0 iff posterior > prior0, i.e. iff the log density ratio is positive.
/// Ties (including the empty model) go to label 1.
inline int predict(const BayesKdeModel& model, std::span<const double> x)
{
  return log_density_ratio(model, x) > 0.0 ? 0 : 1;
}

struct Prediction {
  double posterior0 = 0.0;
  int label = 1;
};

inline std::vector<Prediction> predict_all(const BayesKdeModel& model, const Dataset& data, unsigned workers = 1)
{
  std::vector<Prediction> out(data.rows());
  parallel_for(data.rows(), workers, [&](std::size_t i) {
    const auto x = data.row(i);
    const double d = log_density_ratio(model, x);
    out[i] = {detail::two_term_softmax(model.prior0, model.prior1, d), d > 0.0 ? 0 : 1};
  });
  return out;
}

}  // namespace albscreen
