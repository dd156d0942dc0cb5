#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "alb.hpp"
#include "bayes.hpp"
#include "metrics.hpp"
#include "rng.hpp"
#include "screening.hpp"

namespace albscreen {

/// Raised by cv_select when every candidate cutoff removes all features.
class NoViableCutoff : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::vector<std::size_t> select_above(std::span<const AlbResult> results, double threshold)
{
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < results.size(); ++j)
    if (!results[j].degenerate && results[j].alb > threshold)
      out.push_back(j);
  return out;
}

}  // namespace detail

/// The d largest statistics; ties go to the smaller feature index. Asking for
/// more features than exist throws. Degenerate features never qualify, so
/// d = p selects every non-degenerate feature.
inline ScreeningReport top_d_select(std::vector<AlbResult> results, std::size_t d)
{
  if (d == 0 || d > results.size())
    throw std::invalid_argument("top_d_select: d must be in [1, " + std::to_string(results.size()) + "]");
  std::vector<std::size_t> order;
  for (std::size_t j = 0; j < results.size(); ++j)
    if (!results[j].degenerate)
      order.push_back(j);
  const std::size_t keep = std::min(d, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(), [&](std::size_t a, std::size_t b) {
    if (results[a].alb != results[b].alb)
      return results[a].alb > results[b].alb;
    return a < b;
  });
  order.resize(keep);
  std::sort(order.begin(), order.end());

  ScreeningReport rep;
  rep.selected = std::move(order);
  rep.rule = TopD{d};
  rep.alb_results = std::move(results);
  return rep;
}

/// Keep features with ALB > 0.
inline ScreeningReport zero_select(std::vector<AlbResult> results)
{
  ScreeningReport rep;
  rep.selected = detail::select_above(results, 0.0);
  rep.threshold = 0.0;
  rep.rule = ZeroCutoff{};
  rep.alb_results = std::move(results);
  return rep;
}

/// Keep features with ALB above a fixed cutoff.
inline ScreeningReport threshold_select(std::vector<AlbResult> results, double cutoff)
{
  ScreeningReport rep;
  rep.selected = detail::select_above(results, cutoff);
  rep.threshold = cutoff;
  rep.rule = FixedCutoff{cutoff};
  rep.alb_results = std::move(results);
  return rep;
}

/// Permutation null. Draws `covariates` distinct non-degenerate features,
/// then for each one permutes the labels `permutations` times and recomputes
/// ALB with the feature's pooled plug-in bandwidth (label-free, so it equals
/// the unpermuted one). Every (feature, permutation) pair has its own seeded
/// substream, so the output does not depend on `workers`.
inline NullSample permutation_null(const Dataset& ds, std::size_t covariates, std::size_t permutations, std::uint64_t seed,
                                   unsigned workers = 1, KernelId kernel = KernelId::Hall)
{
  ds.require_classes(2);
  if (covariates == 0 || permutations == 0)
    throw std::invalid_argument("permutation_null: B and d must be positive");
  if (covariates > ds.features())
    throw std::invalid_argument("permutation_null: B = " + std::to_string(covariates) + " exceeds p = " +
                                std::to_string(ds.features()));

  const std::size_t total = ds.rows();
  std::vector<BandwidthSpec> bandwidths(ds.features());
  std::vector<std::size_t> usable;
  for (std::size_t j = 0; j < ds.features(); ++j) {
    bandwidths[j] = plugin_bandwidth(ds.column(j), total);
    if (!bandwidths[j].degenerate())
      usable.push_back(j);
  }
  if (covariates > usable.size())
    throw std::invalid_argument("permutation_null: B = " + std::to_string(covariates) + " exceeds the " +
                                std::to_string(usable.size()) + " non-constant features");

  NullSample null;
  null.covariates = covariates;
  null.permutations = permutations;
  null.seed = seed;
  Rng picker(derive_seed(seed, {stream::covariate_pick}));
  for (std::size_t pos : picker.sample_without_replacement(usable.size(), covariates))
    null.covariate_ids.push_back(usable[pos]);

  null.values.resize(covariates * permutations);
  parallel_for(null.values.size(), workers, [&](std::size_t slot) {
    const std::size_t j = null.covariate_ids[slot / permutations];
    const std::size_t k = slot % permutations;
    std::vector<int> labels(ds.labels().begin(), ds.labels().end());
    Rng rng(derive_seed(seed, {stream::permutation, j, k}));
    rng.shuffle(std::span<int>(labels));
    null.values[slot] = alb_statistic({ds.column(j), labels}, bandwidths[j], kernel).alb;
  });
  return null;
}

/// Threshold = (1 - alpha) quantile of the null values (type 7); keep ALB above it.
inline ScreeningReport percentile_select(std::vector<AlbResult> results, const NullSample& null, double alpha)
{
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("percentile_select: alpha must be in (0, 1)");
  if (null.values.empty())
    throw std::invalid_argument("percentile_select: empty null sample");
  ScreeningReport rep;
  rep.threshold = quantile(null.values, 1.0 - alpha);
  rep.selected = detail::select_above(results, *rep.threshold);
  rep.rule = Percentile{alpha, null.covariates, null.permutations, null.seed};
  rep.alb_results = std::move(results);
  rep.null_summary = digest(null);
  return rep;
}

/// {0} together with the quartiles of the positive ALB values, ascending,
/// at most ten entries.
inline std::vector<double> default_cv_candidates(std::span<const AlbResult> results)
{
  std::vector<double> positive;
  for (const auto& r : results)
    if (!r.degenerate && r.alb > 0.0)
      positive.push_back(r.alb);
  std::vector<double> c{0.0};
  if (!positive.empty()) {
    std::sort(positive.begin(), positive.end());
    for (double q : {0.25, 0.5, 0.75})
      c.push_back(quantile_sorted(positive, q));
  }
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  if (c.size() > 10)
    c.resize(10);
  return c;
}

inline Dataset concat_rows(const Dataset& a, const Dataset& b)
{
  if (a.features() != b.features())
    throw std::invalid_argument("concat_rows: feature counts differ");
  Dataset out(a.rows() + b.rows(), a.features());
  out.feature_names = a.feature_names;
  out.label_names = a.label_names;
  out.label_column_name = a.label_column_name;
  for (std::size_t j = 0; j < a.features(); ++j) {
    auto ca = a.column(j);
    auto cb = b.column(j);
    auto dst = out.column(j);
    std::copy(ca.begin(), ca.end(), dst.begin());
    std::copy(cb.begin(), cb.end(), dst.begin() + static_cast<std::ptrdiff_t>(a.rows()));
  }
  std::copy(a.labels().begin(), a.labels().end(), out.labels().begin());
  std::copy(b.labels().begin(), b.labels().end(), out.labels().begin() + static_cast<std::ptrdiff_t>(a.rows()));
  return out;
}

/// Cross-validated cutoff. Each candidate screens `train_a`, the KDE Bayes
/// classifier is fit on the survivors and scored (Rand index) on `train_b`.
/// Among the best-scoring candidates the largest cutoff wins (fewest
/// features); the pooled data is then screened at that cutoff. Candidates
/// that keep no feature on `train_a` are not viable.
inline ScreeningReport cv_select(const Dataset& train_a, const Dataset& train_b, std::vector<double> candidates,
                                 unsigned workers = 1, KernelId kernel = KernelId::Hall)
{
  if (candidates.empty() || candidates.size() > 10)
    throw std::invalid_argument("cv_select: between 1 and 10 candidate cutoffs required");
  train_a.require_classes(2);
  train_b.require_classes(1);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  const auto first = alb_all(train_a, workers, kernel);
  std::vector<CvScore> scores(candidates.size());
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const auto kept = detail::select_above(first, candidates[c]);
    scores[c] = {candidates[c], std::numeric_limits<double>::quiet_NaN(), kept.size()};
    if (kept.empty())
      continue;
    const auto model = fit_bayes(train_a, kept, kernel);
    std::vector<int> pred(train_b.rows());
    for (std::size_t r = 0; r < train_b.rows(); ++r)
      pred[r] = predict(model, train_b.row(r));
    scores[c].rand_index = rand_index(pred, train_b.labels());
  }

  std::optional<std::size_t> best;
  for (std::size_t c = 0; c < scores.size(); ++c) {
    if (std::isnan(scores[c].rand_index))
      continue;
    if (!best || scores[c].rand_index >= scores[*best].rand_index)
      best = c;  // ascending candidates: >= keeps the largest maximizer
  }
  if (!best)
    throw NoViableCutoff("cv_select: every candidate cutoff removes all features");

  const double cutoff = candidates[*best];
  auto pooled = alb_all(concat_rows(train_a, train_b), workers, kernel);
  ScreeningReport rep;
  rep.selected = detail::select_above(pooled, cutoff);
  rep.threshold = cutoff;
  rep.rule = CrossValidated{candidates, 0};
  rep.alb_results = std::move(pooled);
  rep.cv_scores = std::move(scores);
  return rep;
}

}  // namespace albscreen
