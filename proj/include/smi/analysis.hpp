#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "smi/dataset.hpp"
#include "smi/normalize.hpp"
#include "smi/scoring.hpp"

namespace smi {

enum class InequalityClass { LowInequality, HighInequality, Unclassified };

std::string_view to_string(InequalityClass c);

// Low iff gini < threshold; the boundary itself counts as High.
InequalityClass classify_inequality(double gini, double threshold = 0.30);

// States without a Gini value map to Unclassified.
std::map<std::string, InequalityClass> classify_states(const std::vector<std::string>& states,
                                                       const GiniTable& gini,
                                                       double threshold = 0.30);

// Mobility category x {Low, High} inequality grid.
struct ScenarioTable {
  std::map<std::pair<Category, InequalityClass>, std::set<std::string>> cells;
  std::set<std::string> unclassified;

  const std::set<std::string>& cell(Category c, InequalityClass i) const;
};

ScenarioTable scenario_table(const std::map<std::string, Category>& categories,
                             const std::map<std::string, InequalityClass>& inequality);

struct ScatterPoint {
  std::string state;
  double gini = 0.0;
  double smi = 0.0;
};

struct ScatterData {
  std::vector<ScatterPoint> points;  // sorted by state name
  std::vector<std::string> omitted;  // states with a score but no Gini
};

ScatterData scatter_data(const ScoreMap& scores, const GiniTable& gini);

struct PillarScore {
  std::string state;
  Pillar pillar = Pillar::Health;
  double value = 0.0;
  bool is_best = false;
};

struct PillarBreakdown {
  std::vector<PillarScore> scores;  // state order, then canonical pillar order
  std::map<Pillar, double> pillar_weights;  // total weight per scored pillar
  std::vector<std::string> warnings;
};

// Pillar-restricted weighted means of each state's normalized values. This is
// an exact decomposition of the composite index: the pillar scores averaged
// with the pillar total weights give back the state's smi. Not a published
// methodology. Pillars with zero total weight are skipped with a warning;
// the arg-max state per pillar is flagged best (ties: earliest in name order).
PillarBreakdown pillar_scores(const NormalizedMatrix& norm, const WeightVector& w,
                              const IndicatorRegistry& registry);

// scenarios.json
std::string scenarios_json(const ScenarioTable& table);

// scatter.csv: state,gini,smi
void write_scatter(std::ostream& out, const ScatterData& data);

// pillars.csv: state,pillar,score,is_best
void write_pillars(std::ostream& out, const PillarBreakdown& breakdown);

}  // namespace smi
