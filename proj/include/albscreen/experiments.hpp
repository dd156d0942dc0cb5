#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "alb.hpp"
#include "bayes.hpp"
#include "cutoff.hpp"
#include "metrics.hpp"
#include "parallel.hpp"
#include "simgen.hpp"
#include "ttest_screen.hpp"

namespace albscreen {

/// ALB cutoff used by the experiment drivers. TopD with d = 0 means "n + m".
using AlbCutoff = std::variant<ZeroCutoff, TopD, Percentile>;

struct ExperimentSpec {
  Scenario scenario = Scenario::Shape;
  std::size_t p = 500;
  double r = 0.5;
  std::vector<std::size_t> sizes{10, 20, 40};  // per-class training size (m = n)
  std::size_t replications = 1;
  AlbCutoff alb_cutoff = ZeroCutoff{};
  double ttest_alpha = 0.005;
  std::size_t null_permutations = 3;  // cdf study: permutations per feature
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

/// Seed for one (size, replication) cell.
inline std::uint64_t replication_seed(std::uint64_t seed, std::size_t size, std::size_t rep)
{
  return derive_seed(seed, {stream::replication, size, rep});
}

/// Training and test sets with `size` rows per class each, sharing one
/// importance mask. Drawn as one dataset of 2*size rows per class: the first
/// `size` rows of each class train, the rest test.
struct TrainTest {
  Dataset train;
  Dataset test;
  std::vector<bool> important_mask;
};

inline TrainTest generate_train_test(Scenario scenario, std::size_t size, std::size_t p, double r, std::uint64_t seed)
{
  auto sim = generate({scenario, 2 * size, 2 * size, p, r, seed});
  std::vector<std::size_t> train_rows;
  std::vector<std::size_t> test_rows;
  for (std::size_t i = 0; i < sim.dataset.rows(); ++i) {
    const std::size_t within = i < 2 * size ? i : i - 2 * size;
    (within < size ? train_rows : test_rows).push_back(i);
  }
  return {sim.dataset.subset_rows(train_rows), sim.dataset.subset_rows(test_rows), std::move(sim.important_mask)};
}

/// Screens with the requested ALB cutoff (the permutation null is seeded from `seed`).
inline ScreeningReport alb_screen(const Dataset& train, const AlbCutoff& cutoff, std::uint64_t seed, unsigned workers = 1)
{
  auto results = alb_all(train, workers);
  if (std::holds_alternative<ZeroCutoff>(cutoff))
    return zero_select(std::move(results));
  if (const auto* top = std::get_if<TopD>(&cutoff))
    return top_d_select(std::move(results), std::min(top->d == 0 ? train.rows() : top->d, train.features()));
  const auto& perc = std::get<Percentile>(cutoff);
  std::size_t usable = 0;
  for (const auto& r : results)
    usable += !r.degenerate;
  const std::size_t b = perc.covariates == 0 ? usable : std::min(perc.covariates, usable);
  const auto null = permutation_null(train, b, perc.permutations, seed, workers);
  return percentile_select(std::move(results), null, perc.alpha);
}

// ---------------------------------------------------------------------------
// ALB distributions by group

struct CdfRow {
  std::size_t size = 0;
  std::size_t replication = 0;
  std::uint64_t seed = 0;
  std::string group;  // important | unimportant | permuted
  std::size_t feature = 0;
  double alb = 0.0;
  double bandwidth = 0.0;
  double ecdf = 0.0;  // rank / group size, ascending alb
};

/// Sorted ALB values of important, unimportant and label-permuted features
/// (every non-constant feature permuted `null_permutations` times).
inline std::vector<CdfRow> run_cdf_study(const ExperimentSpec& spec)
{
  const std::size_t cells = spec.sizes.size() * spec.replications;
  std::vector<std::vector<CdfRow>> per_cell(cells);
  parallel_for(cells, spec.workers, [&](std::size_t cell) {
    const std::size_t size = spec.sizes[cell / spec.replications];
    const std::size_t rep = cell % spec.replications;
    const auto seed = replication_seed(spec.seed, size, rep);
    const auto sim = generate({Scenario::Shape, size, size, spec.p, spec.r, seed});
    const auto results = alb_all(sim.dataset);

    std::vector<CdfRow> important;
    std::vector<CdfRow> unimportant;
    std::vector<CdfRow> permuted;
    for (const auto& res : results) {
      if (res.degenerate)
        continue;
      auto& bucket = sim.important_mask[res.feature_index] ? important : unimportant;
      bucket.push_back({size, rep, seed, sim.important_mask[res.feature_index] ? "important" : "unimportant",
                        res.feature_index, res.alb, res.bandwidth.value, 0.0});
    }
    if (spec.null_permutations > 0) {
      const std::size_t usable = important.size() + unimportant.size();
      const auto null = permutation_null(sim.dataset, usable, spec.null_permutations, seed);
      for (std::size_t k = 0; k < null.values.size(); ++k) {
        const std::size_t j = null.covariate_ids[k / null.permutations];
        permuted.push_back({size, rep, seed, "permuted", j, null.values[k], results[j].bandwidth.value, 0.0});
      }
    }
    auto& out = per_cell[cell];
    for (auto* group : {&important, &unimportant, &permuted}) {
      std::stable_sort(group->begin(), group->end(), [](const CdfRow& a, const CdfRow& b) { return a.alb < b.alb; });
      for (std::size_t k = 0; k < group->size(); ++k)
        (*group)[k].ecdf = static_cast<double>(k + 1) / static_cast<double>(group->size());
      out.insert(out.end(), group->begin(), group->end());
    }
  });
  std::vector<CdfRow> rows;
  for (auto& c : per_cell)
    rows.insert(rows.end(), c.begin(), c.end());
  return rows;
}

inline void write_cdf_csv(std::ostream& out, const std::vector<CdfRow>& rows)
{
  out << "experiment,size,replication,seed,group,feature,alb,bandwidth,ecdf\n";
  for (const auto& r : rows)
    out << "cdf," << r.size << ',' << r.replication << ',' << r.seed << ',' << r.group << ',' << r.feature << ','
        << detail::format_real(r.alb) << ',' << detail::format_real(r.bandwidth) << ',' << detail::format_real(r.ecdf)
        << '\n';
}

// ---------------------------------------------------------------------------
// Screening comparison and classifier curve

/// One tidy record: (replication, method, metric) -> value.
struct MetricRow {
  std::string experiment;
  std::string scenario;
  std::size_t size = 0;
  std::size_t replication = 0;
  std::uint64_t seed = 0;
  std::string method;  // none | ttest | alb
  std::string rule;
  double threshold = 0.0;  // NaN when the rule has none
  std::string metric;
  double value = 0.0;
};

namespace detail {

inline void score_selection(std::vector<MetricRow>& out, const MetricRow& base, const TrainTest& tt,
                            const std::vector<std::size_t>& selected)
{
  const auto model = fit_bayes(tt.train, selected);
  std::vector<int> pred(tt.test.rows());
  for (std::size_t i = 0; i < tt.test.rows(); ++i)
    pred[i] = predict(model, tt.test.row(i));
  const auto quality = screening_quality(selected, tt.important_mask);
  const std::size_t unimportant = quality.counts.fp + quality.counts.tn;
  auto push = [&](const char* metric, double value) {
    MetricRow row = base;
    row.metric = metric;
    row.value = value;
    out.push_back(std::move(row));
  };
  push("rand", rand_index(pred, tt.test.labels()));
  push("important_kept", quality.recall);
  push("unimportant_kept",
       unimportant == 0 ? 0.0 : static_cast<double>(quality.counts.fp) / static_cast<double>(unimportant));
  push("selected", static_cast<double>(selected.size()));
}

inline double threshold_or_nan(const ScreeningReport& rep)
{
  return rep.threshold ? *rep.threshold : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace detail

/// No screening vs Welch t-test screening vs ALB screening, each followed by
/// the KDE Bayes classifier trained on m = n = size rows and scored on a
/// balanced test set of the same size.
inline std::vector<MetricRow> run_screen_compare(const ExperimentSpec& spec)
{
  const std::size_t cells = spec.sizes.size() * spec.replications;
  std::vector<std::vector<MetricRow>> per_cell(cells);
  parallel_for(cells, spec.workers, [&](std::size_t cell) {
    const std::size_t size = spec.sizes[cell / spec.replications];
    const std::size_t rep = cell % spec.replications;
    const auto seed = replication_seed(spec.seed, size, rep);
    const auto tt = generate_train_test(spec.scenario, size, spec.p, spec.r, seed);
    auto& out = per_cell[cell];
    MetricRow base{"compare", to_string(spec.scenario), size, rep, seed, "", "", 0.0, "", 0.0};

    std::vector<std::size_t> all(spec.p);
    for (std::size_t j = 0; j < spec.p; ++j)
      all[j] = j;
    base.method = "none";
    base.rule = "all";
    base.threshold = std::numeric_limits<double>::quiet_NaN();
    detail::score_selection(out, base, tt, all);

    const auto tscreen = ttest_screen(tt.train, PValueBelow{spec.ttest_alpha});
    base.method = "ttest";
    base.rule = describe(tscreen.rule);
    base.threshold = spec.ttest_alpha;
    detail::score_selection(out, base, tt, tscreen.selected);

    const auto ascreen = alb_screen(tt.train, spec.alb_cutoff, seed);
    base.method = "alb";
    base.rule = describe(ascreen.rule);
    base.threshold = detail::threshold_or_nan(ascreen);
    detail::score_selection(out, base, tt, ascreen.selected);
  });
  std::vector<MetricRow> rows;
  for (auto& c : per_cell)
    rows.insert(rows.end(), c.begin(), c.end());
  return rows;
}

/// Rand index of the KDE Bayes classifier after zero-cutoff ALB screening,
/// shape scenario, for each training size.
inline std::vector<MetricRow> run_bayes_curve(const ExperimentSpec& spec)
{
  const std::size_t cells = spec.sizes.size() * spec.replications;
  std::vector<std::vector<MetricRow>> per_cell(cells);
  parallel_for(cells, spec.workers, [&](std::size_t cell) {
    const std::size_t size = spec.sizes[cell / spec.replications];
    const std::size_t rep = cell % spec.replications;
    const auto seed = replication_seed(spec.seed, size, rep);
    const auto tt = generate_train_test(Scenario::Shape, size, spec.p, spec.r, seed);
    const auto screened = zero_select(alb_all(tt.train));
    MetricRow base{"bayes-curve", "shape", size, rep, seed, "alb", "zero", 0.0, "", 0.0};
    detail::score_selection(per_cell[cell], base, tt, screened.selected);
  });
  std::vector<MetricRow> rows;
  for (auto& c : per_cell)
    rows.insert(rows.end(), c.begin(), c.end());
  return rows;
}

inline void write_metric_csv(std::ostream& out, const std::vector<MetricRow>& rows)
{
  out << "experiment,scenario,size,replication,seed,method,rule,threshold,metric,value\n";
  for (const auto& r : rows)
    out << r.experiment << ',' << r.scenario << ',' << r.size << ',' << r.replication << ',' << r.seed << ','
        << r.method << ",\"" << r.rule << "\"," << (std::isnan(r.threshold) ? std::string("NA") : detail::format_real(r.threshold))
        << ',' << r.metric << ',' << detail::format_real(r.value) << '\n';
}

}  // namespace albscreen
