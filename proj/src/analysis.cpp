#include "smi/analysis.hpp"

#include <json.hpp>
#include <ostream>

#include "smi/csv.hpp"
#include "smi/error.hpp"

namespace smi {

std::string_view to_string(InequalityClass c) {
  switch (c) {
    case InequalityClass::LowInequality: return "Low";
    case InequalityClass::HighInequality: return "High";
    case InequalityClass::Unclassified: return "Unclassified";
  }
  return "?";
}

InequalityClass classify_inequality(double gini, double threshold) {
  return gini < threshold ? InequalityClass::LowInequality : InequalityClass::HighInequality;
}

std::map<std::string, InequalityClass> classify_states(const std::vector<std::string>& states,
                                                       const GiniTable& gini, double threshold) {
  std::map<std::string, InequalityClass> out;
  for (const auto& s : states) {
    const auto g = gini.find(s);
    out.emplace(s, g ? classify_inequality(*g, threshold) : InequalityClass::Unclassified);
  }
  return out;
}

const std::set<std::string>& ScenarioTable::cell(Category c, InequalityClass i) const {
  static const std::set<std::string> kEmpty;
  auto it = cells.find({c, i});
  return it == cells.end() ? kEmpty : it->second;
}

ScenarioTable scenario_table(const std::map<std::string, Category>& categories,
                             const std::map<std::string, InequalityClass>& inequality) {
  ScenarioTable t;
  for (Category c : {Category::High, Category::Medium, Category::Low}) {
    for (InequalityClass i : {InequalityClass::LowInequality, InequalityClass::HighInequality}) {
      t.cells[{c, i}];
    }
  }
  for (const auto& [state, category] : categories) {
    auto it = inequality.find(state);
    if (it == inequality.end() || it->second == InequalityClass::Unclassified) {
      t.unclassified.insert(state);
    } else {
      t.cells[{category, it->second}].insert(state);
    }
  }
  return t;
}

ScatterData scatter_data(const ScoreMap& scores, const GiniTable& gini) {
  ScatterData out;
  for (const auto& [state, smi] : scores) {
    if (auto g = gini.find(state)) {
      out.points.push_back({state, *g, smi});
    } else {
      out.omitted.push_back(state);
    }
  }
  return out;
}

PillarBreakdown pillar_scores(const NormalizedMatrix& norm, const WeightVector& w,
                              const IndicatorRegistry& registry) {
  if (norm.indicator_ids() != registry.ids() || w.indicator_ids() != registry.ids()) {
    throw ValidationError("pillar_scores: matrix, weights and registry disagree on indicators");
  }
  const Matrix& x = norm.values();
  PillarBreakdown out;

  std::vector<Pillar> scored;
  for (Pillar pillar : kAllPillars) {
    bool present = false;
    double total = 0.0;
    for (std::size_t i = 0; i < registry.size(); ++i) {
      if (registry[i].pillar != pillar) continue;
      present = true;
      total += w.values()[i];
    }
    if (!present) continue;
    if (!(total > 0.0)) {
      out.warnings.push_back("pillar '" + std::string(to_string(pillar)) +
                             "' has zero total weight; skipped");
      continue;
    }
    out.pillar_weights[pillar] = total;
    scored.push_back(pillar);
  }

  for (std::size_t r = 0; r < x.rows(); ++r) {
    for (Pillar pillar : scored) {
      double s = 0.0;
      for (std::size_t i = 0; i < registry.size(); ++i) {
        if (registry[i].pillar == pillar) s += x(r, i) * w.values()[i];
      }
      out.scores.push_back({norm.states()[r], pillar, s / out.pillar_weights[pillar], false});
    }
  }

  for (std::size_t k = 0; k < scored.size(); ++k) {
    PillarScore* best = nullptr;
    for (std::size_t r = 0; r < x.rows(); ++r) {
      PillarScore& cand = out.scores[r * scored.size() + k];
      if (!best || cand.value > best->value ||
          (cand.value == best->value && cand.state < best->state)) {
        best = &cand;
      }
    }
    if (best) best->is_best = true;
  }
  return out;
}

std::string scenarios_json(const ScenarioTable& table) {
  nlohmann::ordered_json cells = nlohmann::ordered_json::array();
  for (Category c : {Category::High, Category::Medium, Category::Low}) {
    for (InequalityClass i : {InequalityClass::LowInequality, InequalityClass::HighInequality}) {
      nlohmann::ordered_json cell;
      cell["mobility"] = to_string(c);
      cell["inequality"] = to_string(i);
      const auto& states = table.cell(c, i);
      cell["states"] = std::vector<std::string>(states.begin(), states.end());
      cells.push_back(std::move(cell));
    }
  }
  nlohmann::ordered_json j;
  j["cells"] = std::move(cells);
  j["unclassified"] = std::vector<std::string>(table.unclassified.begin(), table.unclassified.end());
  return j.dump(2) + "\n";
}

void write_scatter(std::ostream& out, const ScatterData& data) {
  csv::write_row(out, {"state", "gini", "smi"});
  for (const auto& p : data.points) {
    csv::write_row(out, {p.state, csv::fixed6(p.gini), csv::fixed6(p.smi)});
  }
}

void write_pillars(std::ostream& out, const PillarBreakdown& breakdown) {
  csv::write_row(out, {"state", "pillar", "score", "is_best"});
  for (const auto& s : breakdown.scores) {
    csv::write_row(out, {s.state, std::string(to_string(s.pillar)), csv::fixed6(s.value),
                         s.is_best ? "1" : "0"});
  }
}

}  // namespace smi
