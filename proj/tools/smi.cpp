// smi: batch CLI for the composite mobility index pipeline.

#include <unistd.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <map>

#include "smi/error.hpp"
#include "smi/pipeline.hpp"

namespace {

bool use_color() { return std::getenv("SMI_NO_COLOR") == nullptr && ::isatty(STDERR_FILENO); }

void print_tagged(std::string_view tag, std::string_view color, const std::string& msg) {
  if (use_color()) {
    std::cerr << color << tag << "\033[0m " << msg << '\n';
  } else {
    std::cerr << tag << ' ' << msg << '\n';
  }
}

void error(const std::string& msg) { print_tagged("error:", "\033[1;31m", msg); }
void warn(const std::string& msg) { print_tagged("warning:", "\033[1;33m", msg); }

const std::map<std::string, smi::PercentileMethod> kMethods{
    {"exclusive", smi::PercentileMethod::Exclusive},
    {"inclusive", smi::PercentileMethod::Inclusive},
    {"nearest-rank", smi::PercentileMethod::NearestRank}};
const std::map<std::string, smi::Basis> kBases{{"correlation", smi::Basis::Correlation},
                                               {"covariance", smi::Basis::Covariance}};
const std::map<std::string, smi::LoadingConvention> kConventions{
    {"unit", smi::LoadingConvention::UnitEigenvector},
    {"scaled", smi::LoadingConvention::SqrtEigenvalueScaled}};

template <typename Enum>
CLI::Option* add_choice(CLI::App* cmd, const std::string& flag, Enum& target,
                        const std::map<std::string, Enum>& choices, const std::string& help) {
  std::vector<std::string> names;
  for (const auto& [name, value] : choices) names.push_back(name);
  return cmd
      ->add_option_function<std::string>(
          flag, [&target, &choices](const std::string& v) { target = choices.at(v); }, help)
      ->check(CLI::IsMember(names, CLI::ignore_case));
}

void add_pca_flags(CLI::App* cmd, double& eigen_threshold, double& variance_target, smi::Basis& basis,
                   smi::LoadingConvention& convention) {
  cmd->add_option("--eigen-threshold", eigen_threshold, "Keep components with eigenvalue above this")
      ->capture_default_str();
  cmd->add_option("--variance-target", variance_target, "Minimum explained variance ratio")
      ->capture_default_str();
  add_choice(cmd, "--basis", basis, kBases, "PCA basis: correlation (default) or covariance");
  add_choice(cmd, "--loadings", convention, kConventions,
             "Loading convention: unit (default) or scaled by sqrt(eigenvalue)");
}

void add_score_flags(CLI::App* cmd, smi::PercentileMethod& method, double& low, double& high,
                     double& gini_threshold) {
  add_choice(cmd, "--percentile-method", method, kMethods,
             "Percentile method: exclusive (default), inclusive or nearest-rank");
  cmd->add_option("--low-percentile", low, "Percentile separating Low from Medium")->capture_default_str();
  cmd->add_option("--high-percentile", high, "Percentile separating Medium from High")->capture_default_str();
  cmd->add_option("--gini-threshold", gini_threshold, "Gini below this is low inequality")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Composite social mobility index: normalization, PCA weighting, scoring, analysis"};
  app.require_subcommand(1);

  smi::RunConfig run_cfg;
  std::string gini_path;
  auto* run = app.add_subcommand("run", "Run the whole pipeline and write all reports");
  run->add_option("--data", run_cfg.data, "observations.csv")->required();
  run->add_option("--meta", run_cfg.meta, "indicators.csv")->required();
  run->add_option("--gini", gini_path, "gini.csv (optional)");
  run->add_option("--out", run_cfg.out_dir, "Output directory")->required();
  add_pca_flags(run, run_cfg.eigen_threshold, run_cfg.variance_target, run_cfg.pca_basis,
                run_cfg.loading_convention);
  add_score_flags(run, run_cfg.percentile_method, run_cfg.low_percentile, run_cfg.high_percentile,
                  run_cfg.gini_threshold);

  smi::NormalizeStageConfig norm_cfg;
  auto* normalize = app.add_subcommand("normalize", "Write normalized.csv");
  normalize->add_option("--data", norm_cfg.data, "observations.csv")->required();
  normalize->add_option("--meta", norm_cfg.meta, "indicators.csv")->required();
  normalize->add_option("--out", norm_cfg.out_dir, "Output directory")->required();

  smi::PcaStageConfig pca_cfg;
  auto* pca = app.add_subcommand("pca", "Write correlation.csv, spectrum.csv and loadings.csv");
  pca->add_option("--normalized", pca_cfg.normalized, "normalized.csv")->required();
  pca->add_option("--out", pca_cfg.out_dir, "Output directory")->required();
  add_pca_flags(pca, pca_cfg.eigen_threshold, pca_cfg.variance_target, pca_cfg.pca_basis,
                pca_cfg.loading_convention);

  smi::ScoreStageConfig score_cfg;
  std::string score_meta;
  std::string score_gini;
  auto* score = app.add_subcommand("score", "Write weights, scores and analysis outputs");
  score->add_option("--normalized", score_cfg.normalized, "normalized.csv")->required();
  score->add_option("--loadings", score_cfg.loadings, "loadings.csv")->required();
  score->add_option("--spectrum", score_cfg.spectrum, "spectrum.csv")->required();
  score->add_option("--meta", score_meta, "indicators.csv (enables pillars.csv)");
  score->add_option("--gini", score_gini, "gini.csv (optional)");
  score->add_option("--out", score_cfg.out_dir, "Output directory")->required();
  add_score_flags(score, score_cfg.percentile_method, score_cfg.low_percentile, score_cfg.high_percentile,
                  score_cfg.gini_threshold);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    error(e.what());
    return 1;
  }

  try {
    std::vector<std::string> warnings;
    if (*run) {
      if (!gini_path.empty()) run_cfg.gini = gini_path;
      const smi::RunReport report = smi::run(run_cfg);
      warnings = report.warnings;
      for (const auto& w : warnings) warn(w);
      std::cout << "scored " << report.scores.size() << " states using " << report.selection.count()
                << " components (explained " << report.selection.explained_variance_ratio
                << "); reports in " << run_cfg.out_dir.string() << '\n';
      return 0;
    }
    if (*normalize) {
      warnings = smi::run_normalize_stage(norm_cfg);
    } else if (*pca) {
      warnings = smi::run_pca_stage(pca_cfg);
    } else if (*score) {
      if (!score_meta.empty()) score_cfg.meta = score_meta;
      if (!score_gini.empty()) score_cfg.gini = score_gini;
      warnings = smi::run_score_stage(score_cfg);
    }
    for (const auto& w : warnings) warn(w);
    return 0;
  } catch (const smi::ValidationError& e) {
    for (const auto& issue : e.issues()) error(issue);
    return 1;
  } catch (const smi::NumericalError& e) {
    error(e.what());
    return 2;
  } catch (const std::exception& e) {
    error(e.what());
    return 1;
  }
}
