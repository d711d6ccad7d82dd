#include "smi/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "smi/csv.hpp"
#include "smi/error.hpp"
#include "smi/kernels.hpp"
#include "smi/normalize.hpp"

namespace smi {

namespace {

using json = nlohmann::ordered_json;

constexpr std::string_view kVersion = "0.1.0";
constexpr std::string_view kPillarNote =
    "pillar scores are pillar-restricted weighted means of normalized values; "
    "this breakdown is not part of the published index methodology";

// Scores within half a unit in the third decimal of a threshold would flip
// category under 3-decimal rounding.
constexpr double kBoundaryBand = 0.0005;

std::string_view basis_name(Basis b) {
  return b == Basis::Correlation ? "correlation" : "covariance";
}

std::string_view convention_name(LoadingConvention c) {
  return c == LoadingConvention::UnitEigenvector ? "unit-eigenvector" : "sqrt-eigenvalue-scaled";
}

template <typename Fn>
void write_file(const std::filesystem::path& path, Fn&& fn) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path.string());
  fn(out);
  if (!out) throw ValidationError("failed writing " + path.string());
}

void prepare_out_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ValidationError("cannot create output directory " + dir.string() + ": " + ec.message());
}

std::vector<std::string> percentile_problems(double low, double high) {
  std::vector<std::string> out;
  if (!(low > 0.0 && low < 100.0)) out.push_back("low percentile must be in (0,100)");
  if (!(high > 0.0 && high < 100.0)) out.push_back("high percentile must be in (0,100)");
  if (!(low < high)) out.push_back("low percentile must be below high percentile");
  return out;
}

struct PcaResult {
  SymmetricMatrix matrix;
  Spectrum spectrum;
  ComponentSelection selection;
  LoadingMatrix loadings;
  std::vector<std::string> warnings;
};

PcaResult compute_pca(const NormalizedMatrix& norm, Basis basis, double eigen_threshold,
                      double variance_target, LoadingConvention convention) {
  SymmetricMatrix m = correlation_matrix(norm, basis);
  Spectrum spectrum = eigendecompose(m);
  ComponentSelection sel = select_components(spectrum, eigen_threshold, variance_target);
  LoadingMatrix l = loadings(spectrum, sel, norm.indicator_ids(), convention);

  std::vector<std::string> warnings;
  if (sel.minimum_prefix_applied) {
    warnings.push_back("no eigenvalue exceeds " + csv::fixed6(eigen_threshold) +
                       "; kept the first component anyway");
  }
  if (sel.extension_applied) {
    warnings.push_back("eigenvalue rule kept " + std::to_string(sel.threshold_count) +
                       " component(s) explaining less than " + csv::fixed6(variance_target) +
                       " of the variance; extended to " + std::to_string(sel.count()) +
                       " components (ratio " + csv::fixed6(sel.explained_variance_ratio) + ")");
  }
  return {std::move(m), std::move(spectrum), std::move(sel), std::move(l), std::move(warnings)};
}

void write_pca(const std::filesystem::path& dir, const NormalizedMatrix& norm, const PcaResult& r) {
  write_file(dir / "correlation.csv",
             [&](std::ostream& o) { write_correlation(o, r.matrix, norm.indicator_ids()); });
  write_file(dir / "spectrum.csv", [&](std::ostream& o) { write_spectrum(o, r.spectrum, r.selection); });
  write_file(dir / "loadings.csv", [&](std::ostream& o) { write_loadings(o, r.loadings); });
}

struct ScoreParams {
  PercentileMethod method = PercentileMethod::Exclusive;
  double low_percentile = 25.0;
  double high_percentile = 75.0;
  double gini_threshold = 0.30;
};

struct ScoreResult {
  WeightVector weights{{}, {}};
  CategoryThresholds thresholds;
  std::vector<StateScore> scores;
  ScenarioTable scenarios;
  ScatterData scatter;
  std::optional<PillarBreakdown> pillars;
  std::vector<std::string> warnings;
};

ScoreResult compute_scores(const NormalizedMatrix& norm, const LoadingMatrix& l,
                           std::span<const double> eigenvalues, const IndicatorRegistry* registry,
                           const std::optional<GiniTable>& gini, const ScoreParams& params) {
  ScoreResult r;
  if (l.indicator_ids != norm.indicator_ids()) {
    throw ValidationError("loadings indicators do not match the normalized matrix columns");
  }
  r.weights = compute_weights(l, eigenvalues);
  const ScoreMap scores = composite_index(norm, r.weights);
  r.thresholds = compute_thresholds(scores, params.low_percentile, params.high_percentile, params.method);
  r.scores = score_states(scores, r.thresholds);

  for (const auto& s : r.scores) {
    for (const auto& [name, t] : {std::pair{"t_low", r.thresholds.low}, std::pair{"t_high", r.thresholds.high}}) {
      if (std::abs(s.smi - t) < kBoundaryBand) {
        r.warnings.push_back("boundary state " + s.state + ": smi " + csv::fixed6(s.smi) + " is within " +
                             csv::fixed6(kBoundaryBand) + " of " + name + " " + csv::fixed6(t) +
                             "; its " + std::string(to_string(s.category)) +
                             " category flips under 3-decimal rounding");
      }
    }
  }

  const GiniTable table = gini.value_or(GiniTable{});
  if (!gini) {
    r.warnings.push_back("no Gini file given; every state is unclassified for inequality");
  }
  const auto ineq = classify_states(norm.states(), table, params.gini_threshold);
  r.scenarios = scenario_table(categorize(scores, r.thresholds), ineq);
  r.scatter = scatter_data(scores, table);
  if (gini) {
    for (const auto& s : r.scatter.omitted) r.warnings.push_back("no Gini value for " + s + "; unclassified");
  }

  if (registry) {
    r.pillars = pillar_scores(norm, r.weights, *registry);
    for (const auto& w : r.pillars->warnings) r.warnings.push_back(w);
  }
  return r;
}

void write_scores_outputs(const std::filesystem::path& dir, const ScoreResult& r) {
  write_file(dir / "weights.csv", [&](std::ostream& o) { write_weights(o, r.weights); });
  write_file(dir / "scores.csv", [&](std::ostream& o) { write_scores(o, r.scores); });
  write_file(dir / "scenarios.json", [&](std::ostream& o) { o << scenarios_json(r.scenarios); });
  write_file(dir / "scatter.csv", [&](std::ostream& o) { write_scatter(o, r.scatter); });
  if (r.pillars) {
    write_file(dir / "pillars.csv", [&](std::ostream& o) { write_pillars(o, *r.pillars); });
  }
}

json scenarios_to_json(const ScenarioTable& t) {
  return json::parse(scenarios_json(t));
}

}  // namespace

std::vector<std::string> RunConfig::problems() const {
  std::vector<std::string> out = percentile_problems(low_percentile, high_percentile);
  if (!(eigen_threshold >= 0.0)) out.push_back("eigen threshold must be >= 0");
  if (!(variance_target > 0.0 && variance_target <= 1.0)) {
    out.push_back("variance target must be in (0,1]");
  }
  if (!(gini_threshold >= 0.0 && gini_threshold <= 1.0)) {
    out.push_back("gini threshold must be in [0,1]");
  }
  if (data.empty()) out.push_back("--data is required");
  if (meta.empty()) out.push_back("--meta is required");
  if (out_dir.empty()) out.push_back("--out is required");
  return out;
}

RunReport run(const RunConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  if (auto problems = config.problems(); !problems.empty()) throw ValidationError(std::move(problems));

  RunReport report;
  report.config = config;

  auto registry = std::make_shared<const IndicatorRegistry>(load_indicator_metadata(config.meta));
  const DataMatrix data = load_observations(config.data, registry);
  std::optional<GiniTable> gini;
  if (config.gini) gini = load_gini(*config.gini);

  report.validation = validate(data);
  if (report.validation.has_fatal()) throw DegenerateColumnError(report.validation.fatal_indicators());

  const NormalizedMatrix norm = normalize_matrix(data);
  PcaResult pca = compute_pca(norm, config.pca_basis, config.eigen_threshold, config.variance_target,
                              config.loading_convention);
  const ScoreParams params{config.percentile_method, config.low_percentile, config.high_percentile,
                           config.gini_threshold};
  ScoreResult scored = compute_scores(norm, pca.loadings, selected_eigenvalues(pca.spectrum, pca.selection),
                                      registry.get(), gini, params);

  prepare_out_dir(config.out_dir);
  write_file(config.out_dir / "normalized.csv", [&](std::ostream& o) { write_normalized(o, norm); });
  write_pca(config.out_dir, norm, pca);
  write_scores_outputs(config.out_dir, scored);

  report.spectrum = std::move(pca.spectrum);
  report.selection = std::move(pca.selection);
  report.weights = std::move(scored.weights);
  report.thresholds = scored.thresholds;
  report.scores = std::move(scored.scores);
  report.scenarios = std::move(scored.scenarios);
  report.warnings = std::move(pca.warnings);
  report.warnings.insert(report.warnings.end(), scored.warnings.begin(), scored.warnings.end());
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  write_file(config.out_dir / "report.json", [&](std::ostream& o) { o << report_json(report); });
  return report;
}

std::string report_json(const RunReport& r) {
  json j;

  json cfg;
  cfg["data"] = r.config.data.string();
  cfg["meta"] = r.config.meta.string();
  cfg["gini"] = r.config.gini ? json(r.config.gini->string()) : json(nullptr);
  cfg["eigen_threshold"] = r.config.eigen_threshold;
  cfg["variance_target"] = r.config.variance_target;
  cfg["percentile_method"] = to_string(r.config.percentile_method);
  cfg["low_percentile"] = r.config.low_percentile;
  cfg["high_percentile"] = r.config.high_percentile;
  cfg["gini_threshold"] = r.config.gini_threshold;
  cfg["pca_basis"] = basis_name(r.config.pca_basis);
  cfg["loading_convention"] = convention_name(r.config.loading_convention);
  j["config"] = std::move(cfg);

  json validation;
  json cols = json::array();
  for (const auto& c : r.validation.columns) {
    cols.push_back({{"indicator_id", c.indicator}, {"min", c.min}, {"max", c.max}, {"constant", c.constant}});
  }
  validation["indicators"] = std::move(cols);
  validation["fatal"] = r.validation.fatal_indicators();
  j["validation"] = std::move(validation);

  json spectrum;
  const double total = r.spectrum.total();
  double cumulative = 0.0;
  json comps = json::array();
  for (std::size_t k = 0; k < r.spectrum.size(); ++k) {
    cumulative += r.spectrum.eigenvalues[k];
    comps.push_back({{"component", k + 1},
                     {"eigenvalue", r.spectrum.eigenvalues[k]},
                     {"explained_ratio", r.spectrum.eigenvalues[k] / total},
                     {"cumulative_ratio", cumulative / total}});
  }
  spectrum["components"] = std::move(comps);
  spectrum["jacobi_sweeps"] = r.spectrum.sweeps;
  spectrum["off_diagonal_norm"] = r.spectrum.off_norm;
  j["spectrum"] = std::move(spectrum);

  json selection;
  std::vector<std::size_t> one_based;
  for (std::size_t k : r.selection.selected) one_based.push_back(k + 1);
  selection["components"] = one_based;
  selection["count"] = r.selection.count();
  selection["explained_variance_ratio"] = r.selection.explained_variance_ratio;
  selection["threshold_rule_count"] = r.selection.threshold_count;
  selection["minimum_prefix_applied"] = r.selection.minimum_prefix_applied;
  selection["extension_rule_fired"] = r.selection.extension_applied;
  j["selection"] = std::move(selection);

  json weights = json::array();
  for (std::size_t i = 0; i < r.weights.size(); ++i) {
    weights.push_back({{"indicator_id", r.weights.indicator_ids()[i]}, {"weight", r.weights.values()[i]}});
  }
  j["weights"] = std::move(weights);

  j["thresholds"] = {{"method", to_string(r.thresholds.method)},
                     {"low_percentile", r.thresholds.low_percentile},
                     {"high_percentile", r.thresholds.high_percentile},
                     {"t_low", r.thresholds.low},
                     {"t_high", r.thresholds.high}};

  json scores = json::array();
  std::map<Category, std::size_t> counts{{Category::Low, 0}, {Category::Medium, 0}, {Category::High, 0}};
  for (const auto& s : r.scores) {
    scores.push_back({{"state", s.state}, {"smi", s.smi}, {"rank", s.rank}, {"category", to_string(s.category)}});
    ++counts[s.category];
  }
  j["scores"] = std::move(scores);

  json scenarios = scenarios_to_json(r.scenarios);
  scenarios["category_counts"] = {{"High", counts[Category::High]},
                                  {"Medium", counts[Category::Medium]},
                                  {"Low", counts[Category::Low]}};
  j["scenarios"] = std::move(scenarios);
  j["warnings"] = r.warnings;

  j["meta"] = {{"tool", "smi"},
               {"version", kVersion},
               {"out_dir", r.config.out_dir.string()},
               {"elapsed_seconds", r.elapsed_seconds},
               {"omp_max_threads", kernels::omp::max_threads()},
               {"notes", {std::string(kPillarNote)}}};
  return j.dump(2) + "\n";
}

std::vector<std::string> run_normalize_stage(const NormalizeStageConfig& config) {
  auto registry = std::make_shared<const IndicatorRegistry>(load_indicator_metadata(config.meta));
  const DataMatrix data = load_observations(config.data, registry);
  const ValidationReport report = validate(data);
  if (report.has_fatal()) throw DegenerateColumnError(report.fatal_indicators());
  const NormalizedMatrix norm = normalize_matrix(data);
  prepare_out_dir(config.out_dir);
  write_file(config.out_dir / "normalized.csv", [&](std::ostream& o) { write_normalized(o, norm); });
  return {};
}

std::vector<std::string> run_pca_stage(const PcaStageConfig& config) {
  if (!(config.eigen_threshold >= 0.0)) throw ValidationError("eigen threshold must be >= 0");
  if (!(config.variance_target > 0.0 && config.variance_target <= 1.0)) {
    throw ValidationError("variance target must be in (0,1]");
  }
  const NormalizedMatrix norm = load_normalized(config.normalized);
  PcaResult r = compute_pca(norm, config.pca_basis, config.eigen_threshold, config.variance_target,
                            config.loading_convention);
  prepare_out_dir(config.out_dir);
  write_pca(config.out_dir, norm, r);
  return r.warnings;
}

std::vector<std::string> run_score_stage(const ScoreStageConfig& config) {
  if (auto p = percentile_problems(config.low_percentile, config.high_percentile); !p.empty()) {
    throw ValidationError(std::move(p));
  }
  const NormalizedMatrix norm = load_normalized(config.normalized);
  const LoadingMatrix l = load_loadings(config.loadings);
  const std::vector<double> eigenvalues = load_selected_eigenvalues(config.spectrum);
  std::optional<IndicatorRegistry> registry;
  if (config.meta) registry = load_indicator_metadata(*config.meta);
  std::optional<GiniTable> gini;
  if (config.gini) gini = load_gini(*config.gini);

  const ScoreParams params{config.percentile_method, config.low_percentile, config.high_percentile,
                           config.gini_threshold};
  ScoreResult r = compute_scores(norm, l, eigenvalues, registry ? &*registry : nullptr, gini, params);
  prepare_out_dir(config.out_dir);
  write_scores_outputs(config.out_dir, r);
  return r.warnings;
}

}  // namespace smi
