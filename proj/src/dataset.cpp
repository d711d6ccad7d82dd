#include "smi/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <ostream>
#include <set>
#include <unordered_map>

#include "smi/csv.hpp"
#include "smi/error.hpp"

namespace smi {

namespace {

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::string at_line(std::size_t line) { return "line " + std::to_string(line) + ": "; }

}  // namespace

std::string_view to_string(Pillar pillar) {
  switch (pillar) {
    case Pillar::Health: return "Health";
    case Pillar::EducationAccess: return "Education Access";
    case Pillar::EducationQualityEquity: return "Education Quality and Equity";
    case Pillar::LifelongLearning: return "Lifelong Learning";
    case Pillar::TechnologyAccess: return "Technology Access";
    case Pillar::WorkOpportunities: return "Work Opportunities";
    case Pillar::FairWages: return "Fair Wages";
    case Pillar::WorkingConditions: return "Working Conditions";
    case Pillar::SocialProtection: return "Social Protection";
    case Pillar::InclusiveInstitutions: return "Inclusive Institutions";
  }
  return "?";
}

std::string_view to_string(Direction direction) {
  return direction == Direction::Positive ? "positive" : "negative";
}

std::optional<Pillar> parse_pillar(std::string_view text) {
  for (Pillar p : kAllPillars) {
    if (iequals(text, to_string(p))) return p;
  }
  return std::nullopt;
}

std::optional<Direction> parse_direction(std::string_view text) {
  if (iequals(text, "positive")) return Direction::Positive;
  if (iequals(text, "negative")) return Direction::Negative;
  return std::nullopt;
}

IndicatorRegistry::IndicatorRegistry(std::vector<IndicatorSpec> specs) : specs_(std::move(specs)) {
  std::vector<std::string> issues;
  if (specs_.empty()) issues.push_back("indicator registry is empty");
  std::set<std::string_view> seen;
  for (std::size_t i = 0; i < specs_.size(); ++i) {
    const auto& id = specs_[i].id;
    if (id.empty()) {
      issues.push_back("indicator " + std::to_string(i + 1) + " has an empty id");
    } else if (!seen.insert(id).second) {
      issues.push_back("duplicate indicator id " + id);
    }
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

std::vector<std::string> IndicatorRegistry::ids() const {
  std::vector<std::string> out;
  out.reserve(specs_.size());
  for (const auto& s : specs_) out.push_back(s.id);
  return out;
}

std::optional<std::size_t> IndicatorRegistry::index_of(std::string_view id) const {
  for (std::size_t i = 0; i < specs_.size(); ++i) {
    if (specs_[i].id == id) return i;
  }
  return std::nullopt;
}

DataMatrix::DataMatrix(std::vector<std::string> states, Matrix values, RegistryPtr registry)
    : states_(std::move(states)), values_(std::move(values)), registry_(std::move(registry)) {
  std::vector<std::string> issues;
  if (!registry_) throw ValidationError("data matrix has no indicator registry");
  if (registry_->size() < 2) {
    issues.push_back("at least 2 indicators are required, registry has " +
                     std::to_string(registry_->size()));
  }
  if (states_.size() < 3) {
    issues.push_back("at least 3 states are required, got " + std::to_string(states_.size()));
  }
  if (values_.rows() != states_.size() || values_.cols() != registry_->size()) {
    issues.push_back("value matrix is " + std::to_string(values_.rows()) + "x" +
                     std::to_string(values_.cols()) + ", expected " +
                     std::to_string(states_.size()) + "x" + std::to_string(registry_->size()));
  }
  std::set<std::string_view> seen;
  for (const auto& s : states_) {
    if (!seen.insert(s).second) issues.push_back("duplicate state " + s);
  }
  for (double v : values_.data()) {
    if (!std::isfinite(v)) {
      issues.push_back("data matrix contains a non-finite value");
      break;
    }
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

GiniTable::GiniTable(std::map<std::string, double> values) : values_(std::move(values)) {
  std::vector<std::string> issues;
  for (const auto& [state, g] : values_) {
    if (!(g >= 0.0 && g <= 1.0)) {
      issues.push_back("Gini for " + state + " is outside [0,1]");
    }
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

std::optional<double> GiniTable::find(const std::string& state) const {
  auto it = values_.find(state);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

bool ValidationReport::has_fatal() const {
  return std::any_of(columns.begin(), columns.end(), [](const auto& c) { return c.constant; });
}

std::vector<std::string> ValidationReport::fatal_indicators() const {
  std::vector<std::string> out;
  for (const auto& c : columns) {
    if (c.constant) out.push_back(c.indicator);
  }
  return out;
}

IndicatorRegistry load_indicator_metadata(const std::filesystem::path& path) {
  const csv::Table table = csv::read_file(path);
  const std::vector<std::string> expected = {"indicator_id", "name", "pillar", "direction"};
  if (table.header.empty()) throw ValidationError(path.string() + ": file is empty");
  std::vector<std::string> header;
  for (const auto& h : table.header) header.push_back(trim(h));
  if (header != expected) {
    throw ValidationError(path.string() +
                          ": header must be indicator_id,name,pillar,direction");
  }
  if (table.rows.empty()) throw ValidationError(path.string() + ": no indicator rows");

  std::vector<std::string> issues;
  std::vector<IndicatorSpec> specs;
  std::unordered_map<std::string, std::size_t> first_line;
  for (const auto& row : table.rows) {
    const std::string where = path.string() + " " + at_line(row.line);
    if (row.fields.size() != 4) {
      issues.push_back(where + "expected 4 fields, got " + std::to_string(row.fields.size()));
      continue;
    }
    IndicatorSpec spec;
    spec.id = trim(row.fields[0]);
    spec.name = trim(row.fields[1]);
    bool ok = true;
    if (spec.id.empty()) {
      issues.push_back(where + "empty indicator_id");
      ok = false;
    } else if (auto [it, inserted] = first_line.emplace(spec.id, row.line); !inserted) {
      issues.push_back(where + "duplicate indicator id " + spec.id + " (first defined on line " +
                       std::to_string(it->second) + ", repeated on line " +
                       std::to_string(row.line) + ")");
      ok = false;
    }
    const std::string pillar_text = trim(row.fields[2]);
    if (auto p = parse_pillar(pillar_text)) {
      spec.pillar = *p;
    } else {
      issues.push_back(where + "unknown pillar '" + pillar_text + "'");
      ok = false;
    }
    const std::string dir_text = trim(row.fields[3]);
    if (auto d = parse_direction(dir_text)) {
      spec.direction = *d;
    } else {
      issues.push_back(where + "unknown direction '" + dir_text +
                       "' (expected positive or negative)");
      ok = false;
    }
    if (ok) specs.push_back(std::move(spec));
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return IndicatorRegistry(std::move(specs));
}

DataMatrix load_observations(const std::filesystem::path& path, RegistryPtr registry) {
  const csv::Table table = csv::read_file(path);
  if (table.header.empty()) throw ValidationError(path.string() + ": file is empty");

  std::vector<std::string> header;
  for (const auto& h : table.header) header.push_back(trim(h));
  const std::vector<std::string> ids = registry->ids();

  std::vector<std::string> issues;
  if (header.front() != "state") {
    issues.push_back(path.string() + ": first column must be 'state'");
  }
  const std::vector<std::string> columns(header.begin() + 1, header.end());
  if (columns != ids) {
    std::vector<std::string> missing;
    std::vector<std::string> extra;
    const std::set<std::string> have(columns.begin(), columns.end());
    const std::set<std::string> want(ids.begin(), ids.end());
    for (const auto& id : ids) {
      if (!have.count(id)) missing.push_back(id);
    }
    for (const auto& c : columns) {
      if (!want.count(c)) extra.push_back(c);
    }
    std::string msg = path.string() + ": header does not match the indicator registry";
    auto list = [](const std::vector<std::string>& v) {
      std::string s;
      for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
      return s;
    };
    if (!missing.empty()) msg += "; missing columns: " + list(missing);
    if (!extra.empty()) msg += "; extra columns: " + list(extra);
    if (missing.empty() && extra.empty()) msg += "; columns are not in registry order";
    issues.push_back(std::move(msg));
    throw ValidationError(std::move(issues));
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));

  const std::size_t p = ids.size();
  std::vector<std::string> states;
  Matrix values(table.rows.size(), p);
  std::unordered_map<std::string, std::size_t> seen;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string where = path.string() + " " + at_line(row.line);
    if (row.fields.size() != p + 1) {
      issues.push_back(where + "expected " + std::to_string(p + 1) + " fields, got " +
                       std::to_string(row.fields.size()));
      states.push_back(trim(row.fields.front()));
      continue;
    }
    std::string state = trim(row.fields[0]);
    if (state.empty()) issues.push_back(where + "empty state name");
    if (auto [it, inserted] = seen.emplace(state, row.line); !inserted) {
      issues.push_back(where + "duplicate state " + state + " (first on line " +
                       std::to_string(it->second) + ")");
    }
    for (std::size_t c = 0; c < p; ++c) {
      if (auto v = csv::parse_real(row.fields[c + 1])) {
        values(r, c) = *v;
      } else {
        issues.push_back(where + "non-numeric value '" + row.fields[c + 1] + "' at (" + state +
                         ", " + ids[c] + ")");
      }
    }
    states.push_back(std::move(state));
  }
  if (table.rows.size() < 3) {
    issues.push_back(path.string() + ": at least 3 states are required, got " +
                     std::to_string(table.rows.size()));
  }
  if (p < 2) {
    issues.push_back(path.string() + ": at least 2 indicators are required, registry has " +
                     std::to_string(p));
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return DataMatrix(std::move(states), std::move(values), std::move(registry));
}

GiniTable load_gini(const std::filesystem::path& path) {
  const csv::Table table = csv::read_file(path);
  if (table.header.empty()) return GiniTable{};
  std::vector<std::string> header;
  for (const auto& h : table.header) header.push_back(trim(h));
  if (header != std::vector<std::string>{"state", "gini"}) {
    throw ValidationError(path.string() + ": header must be state,gini");
  }
  std::vector<std::string> issues;
  std::map<std::string, double> values;
  std::unordered_map<std::string, std::size_t> seen;
  for (const auto& row : table.rows) {
    const std::string where = path.string() + " " + at_line(row.line);
    if (row.fields.size() != 2) {
      issues.push_back(where + "expected 2 fields, got " + std::to_string(row.fields.size()));
      continue;
    }
    std::string state = trim(row.fields[0]);
    if (auto [it, inserted] = seen.emplace(state, row.line); !inserted) {
      issues.push_back(where + "duplicate state " + state + " (first on line " +
                       std::to_string(it->second) + ")");
      continue;
    }
    auto g = csv::parse_real(row.fields[1]);
    if (!g) {
      issues.push_back(where + "non-numeric Gini '" + row.fields[1] + "' for " + state);
    } else if (*g < 0.0 || *g > 1.0) {
      issues.push_back(where + "Gini " + row.fields[1] + " for " + state + " is outside [0,1]");
    } else {
      values.emplace(std::move(state), *g);
    }
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return GiniTable(std::move(values));
}

ValidationReport validate(const DataMatrix& matrix) {
  ValidationReport report;
  const Matrix& x = matrix.values();
  for (std::size_t c = 0; c < x.cols(); ++c) {
    ColumnSummary s;
    s.indicator = matrix.registry()[c].id;
    s.min = x(0, c);
    s.max = x(0, c);
    for (std::size_t r = 1; r < x.rows(); ++r) {
      s.min = std::min(s.min, x(r, c));
      s.max = std::max(s.max, x(r, c));
    }
    s.constant = s.max == s.min;
    report.columns.push_back(std::move(s));
  }
  return report;
}

void write_observations(std::ostream& out, const DataMatrix& matrix) {
  std::vector<std::string> header{"state"};
  for (const auto& id : matrix.registry().ids()) header.push_back(id);
  csv::write_row(out, header);
  for (std::size_t r = 0; r < matrix.states().size(); ++r) {
    std::vector<std::string> fields{matrix.states()[r]};
    for (double v : matrix.values().row(r)) fields.push_back(csv::full(v));
    csv::write_row(out, fields);
  }
}

}  // namespace smi
