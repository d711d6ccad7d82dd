#include "smi/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "smi/csv.hpp"
#include "smi/error.hpp"
#include "smi/kernels.hpp"

namespace smi {

WeightVector::WeightVector(std::vector<std::string> indicator_ids, std::vector<double> values)
    : ids_(std::move(indicator_ids)), values_(std::move(values)) {
  if (ids_.size() != values_.size()) {
    throw ValidationError("weight vector has " + std::to_string(values_.size()) +
                          " values for " + std::to_string(ids_.size()) + " indicators");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] >= 0.0) || !std::isfinite(values_[i])) {
      throw ValidationError("weight for " + ids_[i] + " is negative or non-finite");
    }
  }
}

double WeightVector::total() const {
  double s = 0.0;
  for (double w : values_) s += w;
  return s;
}

std::string_view to_string(PercentileMethod method) {
  switch (method) {
    case PercentileMethod::Exclusive: return "exclusive";
    case PercentileMethod::Inclusive: return "inclusive";
    case PercentileMethod::NearestRank: return "nearest-rank";
  }
  return "?";
}

std::string_view to_string(Category category) {
  switch (category) {
    case Category::Low: return "Low";
    case Category::Medium: return "Medium";
    case Category::High: return "High";
  }
  return "?";
}

WeightVector compute_weights(const LoadingMatrix& l, std::span<const double> eigenvalues) {
  const std::size_t p = l.values.rows();
  const std::size_t k = l.values.cols();
  if (eigenvalues.size() != k) {
    throw ValidationError("compute_weights: " + std::to_string(k) + " loading columns but " +
                          std::to_string(eigenvalues.size()) + " eigenvalues");
  }
  if (l.indicator_ids.size() != p) {
    throw ValidationError("compute_weights: loading rows do not match indicator ids");
  }
  std::vector<double> w(p, 0.0);
  for (std::size_t i = 0; i < p; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < k; ++j) s += std::abs(l.values(i, j)) * eigenvalues[j];
    w[i] = s;
  }
  return WeightVector(l.indicator_ids, std::move(w));
}

ScoreMap composite_index(const NormalizedMatrix& norm, const WeightVector& w) {
  if (norm.values().cols() != w.size()) {
    throw ValidationError("composite_index: " + std::to_string(norm.values().cols()) +
                          " indicator columns but " + std::to_string(w.size()) + " weights");
  }
  if (norm.indicator_ids() != w.indicator_ids()) {
    throw ValidationError("composite_index: weight and matrix indicator order differ");
  }
  if (!(w.total() > 0.0)) throw NumericalError("composite_index: total weight is zero", 0.0);

  const auto smi = kernels::omp::weighted_row_means(norm.values(), w.values());
  ScoreMap out;
  for (std::size_t r = 0; r < smi.size(); ++r) out.emplace(norm.states()[r], smi[r]);
  return out;
}

std::vector<RankedState> rank(const ScoreMap& scores) {
  std::vector<RankedState> out;
  out.reserve(scores.size());
  for (const auto& [state, smi] : scores) out.push_back({state, smi, 0});
  std::sort(out.begin(), out.end(), [](const RankedState& a, const RankedState& b) {
    if (a.smi != b.smi) return a.smi > b.smi;
    return a.state < b.state;
  });
  for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = i + 1;
  return out;
}

double percentile(std::span<const double> values, double p, PercentileMethod method) {
  if (!(p > 0.0 && p < 100.0)) throw std::invalid_argument("percentile: p must be in (0,100)");
  const std::size_t n = values.size();
  const std::size_t needed = method == PercentileMethod::Exclusive ? 3 : 1;
  if (n < needed) {
    throw std::invalid_argument("percentile: " + std::string(to_string(method)) + " needs at least " +
                                std::to_string(needed) + " values, got " + std::to_string(n));
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double count = static_cast<double>(n);

  if (method == PercentileMethod::NearestRank) {
    auto r = static_cast<std::size_t>(std::ceil(p / 100.0 * count));
    r = std::clamp<std::size_t>(r, 1, n);
    return sorted[r - 1];
  }

  // 1-based fractional order statistic h.
  double h = method == PercentileMethod::Exclusive ? (count + 1.0) * p / 100.0
                                                   : 1.0 + (count - 1.0) * p / 100.0;
  h = std::clamp(h, 1.0, count);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const double frac = h - static_cast<double>(lo);
  if (lo >= n) return sorted[n - 1];
  return sorted[lo - 1] + frac * (sorted[lo] - sorted[lo - 1]);
}

CategoryThresholds compute_thresholds(const ScoreMap& scores, double low_percentile,
                                      double high_percentile, PercentileMethod method) {
  if (!(low_percentile < high_percentile)) {
    throw std::invalid_argument("compute_thresholds: low percentile must be below high percentile");
  }
  std::vector<double> v;
  v.reserve(scores.size());
  for (const auto& [state, smi] : scores) v.push_back(smi);
  CategoryThresholds t;
  t.low_percentile = low_percentile;
  t.high_percentile = high_percentile;
  t.method = method;
  t.low = percentile(v, low_percentile, method);
  t.high = percentile(v, high_percentile, method);
  return t;
}

Category categorize(double smi, const CategoryThresholds& t) {
  if (smi >= t.high) return Category::High;
  if (smi < t.low) return Category::Low;
  return Category::Medium;
}

std::map<std::string, Category> categorize(const ScoreMap& scores, const CategoryThresholds& t) {
  std::map<std::string, Category> out;
  for (const auto& [state, smi] : scores) out.emplace(state, categorize(smi, t));
  return out;
}

std::vector<StateScore> score_states(const ScoreMap& scores, const CategoryThresholds& t) {
  std::vector<StateScore> out;
  for (const auto& r : rank(scores)) out.push_back({r.state, r.smi, r.rank, categorize(r.smi, t)});
  return out;
}

void write_weights(std::ostream& out, const WeightVector& w) {
  csv::write_row(out, {"indicator_id", "weight"});
  for (std::size_t i = 0; i < w.size(); ++i) {
    csv::write_row(out, {w.indicator_ids()[i], csv::fixed6(w.values()[i])});
  }
}

void write_scores(std::ostream& out, const std::vector<StateScore>& scores) {
  csv::write_row(out, {"state", "smi", "rank", "category"});
  for (const auto& s : scores) {
    csv::write_row(out, {s.state, csv::fixed6(s.smi), std::to_string(s.rank),
                         std::string(to_string(s.category))});
  }
}

}  // namespace smi
