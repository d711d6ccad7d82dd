#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "smi/analysis.hpp"
#include "smi/dataset.hpp"
#include "smi/pca.hpp"
#include "smi/scoring.hpp"

namespace smi {

struct RunConfig {
  std::filesystem::path data;
  std::filesystem::path meta;
  std::optional<std::filesystem::path> gini;
  std::filesystem::path out_dir;

  double eigen_threshold = 1.0;
  double variance_target = 0.85;
  PercentileMethod percentile_method = PercentileMethod::Exclusive;
  double low_percentile = 25.0;
  double high_percentile = 75.0;
  double gini_threshold = 0.30;
  Basis pca_basis = Basis::Correlation;
  LoadingConvention loading_convention = LoadingConvention::UnitEigenvector;

  // Lists every violated invariant; empty when the config is usable.
  std::vector<std::string> problems() const;
};

struct RunReport {
  RunConfig config;
  ValidationReport validation;
  Spectrum spectrum;
  ComponentSelection selection;
  WeightVector weights{{}, {}};
  CategoryThresholds thresholds;
  std::vector<StateScore> scores;
  ScenarioTable scenarios;
  std::vector<std::string> warnings;
  double elapsed_seconds = 0.0;
};

// Full pipeline: load, validate, normalize, PCA, weights, index, categories,
// analysis. Writes every stage dump plus report.json into config.out_dir.
// ValidationError -> caller exits 1, NumericalError -> caller exits 2.
RunReport run(const RunConfig& config);

// report.json text. The `meta` block is the only non-deterministic part.
std::string report_json(const RunReport& report);

// Stage subcommands; each one reads the previous stage's dump files.
struct NormalizeStageConfig {
  std::filesystem::path data;
  std::filesystem::path meta;
  std::filesystem::path out_dir;
};

struct PcaStageConfig {
  std::filesystem::path normalized;
  std::filesystem::path out_dir;
  double eigen_threshold = 1.0;
  double variance_target = 0.85;
  Basis pca_basis = Basis::Correlation;
  LoadingConvention loading_convention = LoadingConvention::UnitEigenvector;
};

struct ScoreStageConfig {
  std::filesystem::path normalized;
  std::filesystem::path loadings;
  std::filesystem::path spectrum;
  std::optional<std::filesystem::path> meta;  // enables pillars.csv
  std::optional<std::filesystem::path> gini;
  std::filesystem::path out_dir;
  PercentileMethod percentile_method = PercentileMethod::Exclusive;
  double low_percentile = 25.0;
  double high_percentile = 75.0;
  double gini_threshold = 0.30;
};

// Each returns the warnings it produced.
std::vector<std::string> run_normalize_stage(const NormalizeStageConfig& config);
std::vector<std::string> run_pca_stage(const PcaStageConfig& config);
std::vector<std::string> run_score_stage(const ScoreStageConfig& config);

}  // namespace smi
