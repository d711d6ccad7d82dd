#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "smi/matrix.hpp"

namespace smi {

enum class Direction { Positive, Negative };

// The ten thematic indicator groups.
enum class Pillar {
  Health,
  EducationAccess,
  EducationQualityEquity,
  LifelongLearning,
  TechnologyAccess,
  WorkOpportunities,
  FairWages,
  WorkingConditions,
  SocialProtection,
  InclusiveInstitutions,
};

inline constexpr std::array<Pillar, 10> kAllPillars = {
    Pillar::Health,           Pillar::EducationAccess,   Pillar::EducationQualityEquity,
    Pillar::LifelongLearning, Pillar::TechnologyAccess,  Pillar::WorkOpportunities,
    Pillar::FairWages,        Pillar::WorkingConditions, Pillar::SocialProtection,
    Pillar::InclusiveInstitutions,
};

std::string_view to_string(Pillar pillar);
std::string_view to_string(Direction direction);

// Case-insensitive match against the canonical pillar names.
std::optional<Pillar> parse_pillar(std::string_view text);
std::optional<Direction> parse_direction(std::string_view text);

struct IndicatorSpec {
  std::string id;
  std::string name;
  Pillar pillar = Pillar::Health;
  Direction direction = Direction::Positive;
};

// Ordered indicator list; the order is the column order of every matrix built on it.
class IndicatorRegistry {
 public:
  // Throws ValidationError on empty or duplicate ids, or an empty list.
  explicit IndicatorRegistry(std::vector<IndicatorSpec> specs);

  std::size_t size() const noexcept { return specs_.size(); }
  const IndicatorSpec& operator[](std::size_t i) const { return specs_[i]; }
  const std::vector<IndicatorSpec>& specs() const noexcept { return specs_; }
  std::vector<std::string> ids() const;
  std::optional<std::size_t> index_of(std::string_view id) const;

 private:
  std::vector<IndicatorSpec> specs_;
};

using RegistryPtr = std::shared_ptr<const IndicatorRegistry>;

// States x indicators raw observations.
class DataMatrix {
 public:
  // Enforces: >= 3 states, >= 2 indicators, unique state names, finite values,
  // values shaped states.size() x registry->size().
  DataMatrix(std::vector<std::string> states, Matrix values, RegistryPtr registry);

  const std::vector<std::string>& states() const noexcept { return states_; }
  const Matrix& values() const noexcept { return values_; }
  const IndicatorRegistry& registry() const noexcept { return *registry_; }
  const RegistryPtr& registry_ptr() const noexcept { return registry_; }

 private:
  std::vector<std::string> states_;
  Matrix values_;
  RegistryPtr registry_;
};

// State name -> Gini coefficient in [0,1].
class GiniTable {
 public:
  GiniTable() = default;
  explicit GiniTable(std::map<std::string, double> values);

  std::optional<double> find(const std::string& state) const;
  const std::map<std::string, double>& values() const noexcept { return values_; }
  bool empty() const noexcept { return values_.empty(); }
  std::size_t size() const noexcept { return values_.size(); }

 private:
  std::map<std::string, double> values_;
};

struct ColumnSummary {
  std::string indicator;
  double min = 0.0;
  double max = 0.0;
  bool constant = false;  // FATAL: normalization divides by (max - min)
};

struct ValidationReport {
  std::vector<ColumnSummary> columns;

  bool has_fatal() const;
  std::vector<std::string> fatal_indicators() const;
};

// indicators.csv: indicator_id,name,pillar,direction
IndicatorRegistry load_indicator_metadata(const std::filesystem::path& path);

// observations.csv: state,<ids in registry order>
DataMatrix load_observations(const std::filesystem::path& path, RegistryPtr registry);

// gini.csv: state,gini
GiniTable load_gini(const std::filesystem::path& path);

ValidationReport validate(const DataMatrix& matrix);

// Writes observations.csv with 17 significant digits so a reload is exact.
void write_observations(std::ostream& out, const DataMatrix& matrix);

}  // namespace smi
