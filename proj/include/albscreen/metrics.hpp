#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace albscreen {

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;

  std::size_t total() const noexcept { return tp + fp + fn + tn; }
  bool operator==(const ConfusionCounts&) const = default;
};

namespace detail {
inline void check_lengths(std::size_t a, std::size_t b)
{
  if (a != b)
    throw std::invalid_argument("metrics: prediction and truth lengths differ (" + std::to_string(a) + " vs " +
                                std::to_string(b) + ")");
  if (a == 0)
    throw std::invalid_argument("metrics: empty label sequence");
}
}  // namespace detail

/// Fraction of positions where the prediction equals the truth.
inline double rand_index(std::span<const int> pred, std::span<const int> truth)
{
  detail::check_lengths(pred.size(), truth.size());
  std::size_t hits = 0;
  for (std::size_t i = 0; i < pred.size(); ++i)
    hits += pred[i] == truth[i];
  return static_cast<double>(hits) / static_cast<double>(pred.size());
}

inline ConfusionCounts confusion(std::span<const int> pred, std::span<const int> truth, int positive_label = 1)
{
  detail::check_lengths(pred.size(), truth.size());
  ConfusionCounts c;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const bool p = pred[i] == positive_label;
    const bool t = truth[i] == positive_label;
    if (p && t)
      ++c.tp;
    else if (p)
      ++c.fp;
    else if (t)
      ++c.fn;
    else
      ++c.tn;
  }
  return c;
}

struct ScreeningQuality {
  double recall = 1.0;
  double precision = 1.0;
  ConfusionCounts counts;  // positive = important / selected
};

/// Recall is 1 when nothing is important; precision is 1 when nothing is selected.
inline ScreeningQuality screening_quality(std::span<const std::size_t> selected, const std::vector<bool>& important_mask)
{
  std::vector<bool> chosen(important_mask.size(), false);
  for (std::size_t j : selected) {
    if (j >= important_mask.size())
      throw std::invalid_argument("screening_quality: index " + std::to_string(j) + " out of range");
    chosen[j] = true;
  }
  ScreeningQuality q;
  for (std::size_t j = 0; j < important_mask.size(); ++j) {
    if (chosen[j] && important_mask[j])
      ++q.counts.tp;
    else if (chosen[j])
      ++q.counts.fp;
    else if (important_mask[j])
      ++q.counts.fn;
    else
      ++q.counts.tn;
  }
  const std::size_t important = q.counts.tp + q.counts.fn;
  const std::size_t picked = q.counts.tp + q.counts.fp;
  q.recall = important == 0 ? 1.0 : static_cast<double>(q.counts.tp) / static_cast<double>(important);
  q.precision = picked == 0 ? 1.0 : static_cast<double>(q.counts.tp) / static_cast<double>(picked);
  return q;
}

}  // namespace albscreen
