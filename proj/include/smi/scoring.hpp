#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "smi/normalize.hpp"
#include "smi/pca.hpp"

namespace smi {

// Non-negative per-indicator weights in registry order.
class WeightVector {
 public:
  // Throws ValidationError on a negative or non-finite entry.
  WeightVector(std::vector<std::string> indicator_ids, std::vector<double> values);

  const std::vector<std::string>& indicator_ids() const noexcept { return ids_; }
  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double total() const;

 private:
  std::vector<std::string> ids_;
  std::vector<double> values_;
};

using ScoreMap = std::map<std::string, double>;

enum class PercentileMethod { Exclusive, Inclusive, NearestRank };
enum class Category { Low, Medium, High };

std::string_view to_string(PercentileMethod method);
std::string_view to_string(Category category);

struct CategoryThresholds {
  double low = 0.0;   // t_low: Low iff smi < low
  double high = 0.0;  // t_high: High iff smi >= high
  double low_percentile = 25.0;
  double high_percentile = 75.0;
  PercentileMethod method = PercentileMethod::Exclusive;
};

struct RankedState {
  std::string state;
  double smi = 0.0;
  std::size_t rank = 0;
};

struct StateScore {
  std::string state;
  double smi = 0.0;
  std::size_t rank = 0;
  Category category = Category::Low;
};

// W_i = sum_j |L_ij| E_j over the selected components.
// Throws ValidationError when the eigenvalue count differs from the loading columns.
WeightVector compute_weights(const LoadingMatrix& l, std::span<const double> eigenvalues);

// Per state, the weighted mean of its normalized row. Throws NumericalError
// when the weights sum to zero and ValidationError on a shape mismatch.
ScoreMap composite_index(const NormalizedMatrix& norm, const WeightVector& w);

// Descending smi; exact ties broken by ascending state name; ranks 1..n.
std::vector<RankedState> rank(const ScoreMap& scores);

// p in (0,100). Exclusive needs >= 3 values, the others >= 1.
// Throws std::invalid_argument on a bad p or too few values.
double percentile(std::span<const double> values, double p,
                  PercentileMethod method = PercentileMethod::Exclusive);

CategoryThresholds compute_thresholds(const ScoreMap& scores, double low_percentile = 25.0,
                                      double high_percentile = 75.0,
                                      PercentileMethod method = PercentileMethod::Exclusive);

Category categorize(double smi, const CategoryThresholds& t);
std::map<std::string, Category> categorize(const ScoreMap& scores, const CategoryThresholds& t);

// rank + categorize, in rank order.
std::vector<StateScore> score_states(const ScoreMap& scores, const CategoryThresholds& t);

// weights.csv: indicator_id,weight
void write_weights(std::ostream& out, const WeightVector& w);

// scores.csv: state,smi,rank,category (rank order)
void write_scores(std::ostream& out, const std::vector<StateScore>& scores);

}  // namespace smi
