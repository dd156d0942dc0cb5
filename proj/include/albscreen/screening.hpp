#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "alb.hpp"
#include "bandwidth.hpp"
#include "ttest.hpp"

namespace albscreen {

// Selection rules. The first four apply to ALB statistics, the last two to
// t-test screening.
struct TopD {
  std::size_t d = 1;
};
struct Percentile {
  double alpha = 0.05;
  std::size_t covariates = 0;    // B
  std::size_t permutations = 1;  // d
  std::uint64_t seed = 0;
};
struct CrossValidated {
  std::vector<double> candidates;
  std::uint64_t seed = 0;
};
struct ZeroCutoff {};
struct FixedCutoff {
  double value = 0.0;
};
struct PValueBelow {
  double alpha = 0.05;
};
struct TopK {
  std::size_t k = 1;
};

using ScreeningRule = std::variant<TopD, Percentile, CrossValidated, ZeroCutoff, FixedCutoff, PValueBelow, TopK>;

inline std::string describe(const ScreeningRule& rule)
{
  struct Visitor {
    std::string operator()(const TopD& r) const { return "top-d=" + std::to_string(r.d); }
    std::string operator()(const Percentile& r) const
    {
      return "perm=" + detail::format_real(r.alpha) + "," + std::to_string(r.covariates) + "," +
             std::to_string(r.permutations);
    }
    std::string operator()(const CrossValidated& r) const
    {
      std::string s = "cv=";
      for (std::size_t i = 0; i < r.candidates.size(); ++i)
        s += (i ? ";" : "") + detail::format_real(r.candidates[i]);
      return s;
    }
    std::string operator()(const ZeroCutoff&) const { return "zero"; }
    std::string operator()(const FixedCutoff& r) const { return "fixed=" + detail::format_real(r.value); }
    std::string operator()(const PValueBelow& r) const { return "p<" + detail::format_real(r.alpha); }
    std::string operator()(const TopK& r) const { return "top-k=" + std::to_string(r.k); }
  };
  return std::visit(Visitor{}, rule);
}

/// Permuted-label ALB values: `permutations` values for each of `covariates`
/// randomly chosen features.
struct NullSample {
  std::vector<double> values;             // covariate-major, length B * d
  std::vector<std::size_t> covariate_ids;  // features used, in draw order
  std::size_t covariates = 0;
  std::size_t permutations = 0;
  std::uint64_t seed = 0;

  bool operator==(const NullSample&) const = default;
};

struct NullDigest {
  std::size_t count = 0;
  double min = 0.0;
  double median = 0.0;
  double q95 = 0.0;
  double max = 0.0;
  double mean = 0.0;
};

inline NullDigest digest(const NullSample& null)
{
  NullDigest d;
  d.count = null.values.size();
  if (d.count == 0)
    return d;
  std::vector<double> s = null.values;
  std::sort(s.begin(), s.end());
  d.min = s.front();
  d.max = s.back();
  d.median = quantile_sorted(s, 0.5);
  d.q95 = quantile_sorted(s, 0.95);
  double sum = 0.0;
  for (double v : null.values)
    sum += v;
  d.mean = sum / static_cast<double>(d.count);
  return d;
}

struct CvScore {
  double cutoff = 0.0;
  double rand_index = 0.0;   // NaN when the cutoff selects nothing
  std::size_t selected = 0;  // features surviving on the first training set
};

/// Outcome of a screening pass. Selected indices are ascending.
struct ScreeningReport {
  std::vector<std::size_t> selected;
  std::optional<double> threshold;  // survive iff statistic > threshold
  ScreeningRule rule;
  std::vector<AlbResult> alb_results;
  std::vector<TTestResult> ttest_results;
  std::optional<NullDigest> null_summary;
  std::vector<CvScore> cv_scores;
};

}  // namespace albscreen
