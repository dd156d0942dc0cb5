#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <variant>
#include <vector>

#include "dataset.hpp"
#include "parallel.hpp"
#include "screening.hpp"
#include "ttest.hpp"

namespace albscreen {

using TTestMode = std::variant<PValueBelow, TopK>;

/// Welch t-test screening: keep features with p < alpha, or the k largest |t|
/// (ties to the smaller index).
inline ScreeningReport ttest_screen(const Dataset& ds, const TTestMode& mode, unsigned workers = 1)
{
  ds.require_classes(2);
  std::vector<TTestResult> results(ds.features());
  parallel_for(ds.features(), workers, [&](std::size_t j) {
    results[j] = welch_t_feature(ds.column(j), ds.labels());
    results[j].feature_index = j;
  });

  ScreeningReport rep;
  if (const auto* pv = std::get_if<PValueBelow>(&mode)) {
    if (!(pv->alpha > 0.0 && pv->alpha < 1.0))
      throw std::invalid_argument("ttest_screen: alpha must be in (0, 1)");
    for (std::size_t j = 0; j < results.size(); ++j)
      if (results[j].p_value < pv->alpha)
        rep.selected.push_back(j);
    rep.rule = *pv;
  } else {
    const auto k = std::get<TopK>(mode).k;
    if (k == 0 || k > results.size())
      throw std::invalid_argument("ttest_screen: k must be in [1, " + std::to_string(results.size()) + "]");
    std::vector<std::size_t> order(results.size());
    for (std::size_t j = 0; j < order.size(); ++j)
      order[j] = j;
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(), [&](std::size_t a, std::size_t b) {
      const double ta = std::fabs(results[a].t);
      const double tb = std::fabs(results[b].t);
      if (ta != tb)
        return ta > tb;
      return a < b;
    });
    order.resize(k);
    std::sort(order.begin(), order.end());
    rep.selected = std::move(order);
    rep.rule = TopK{k};
  }
  rep.ttest_results = std::move(results);
  return rep;
}

}  // namespace albscreen
