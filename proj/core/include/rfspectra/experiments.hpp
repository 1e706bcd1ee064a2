#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rfspectra/bounds.hpp"
#include "rfspectra/sampling.hpp"

namespace rfspectra {

enum class ExperimentKind {
  fig1_extreme_sv_vs_d,
  fig2_sv_distribution_vs_N,
  fig3_sv_distribution_vs_sigma,
  verify_thm1,
  verify_thm2,
  verify_thm3,
  verify_thm4,
  verify_thm5,
  verify_thm6,
  lemma2_tail,
};

std::string experiment_name(ExperimentKind kind);
ExperimentKind experiment_from_name(std::string_view name);

/// Campaign parameters. Defaults depend on the experiment kind
/// (defaults_for); a JSON config overrides individual fields. `threads` is
/// an execution detail set from the command line and never serialized, so
/// outputs are independent of it.
struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::fig1_extreme_sv_vs_d;
  std::int64_t m = 100;
  std::int64_t n_features = 5000;  // N
  std::vector<std::int64_t> d_grid;
  std::vector<std::int64_t> n_grid;  // N grid (fig2)
  double gamma = 1.0;
  double sigma = 3.0;
  std::vector<double> sigma_grid;  // fig1, fig3
  std::int64_t trials = 10;
  std::uint64_t seed = 12345;
  bool normalize = true;
  double eta = 0.5;
  double delta = 0.05;
  double t = 0.25;
  Family family = Family::gaussian;  // the subgaussian side's family
  double c1 = 1.0;
  double c2 = 1.0;
  double c = 1.0;
  unsigned threads = 0;  // 0 = hardware concurrency

  void validate() const;
  static ExperimentConfig defaults_for(ExperimentKind kind);
  static ExperimentConfig from_json(
      const std::string& text,
      std::optional<ExperimentKind> forced_kind = std::nullopt);
  /// Full resolved config (excluding threads); first comment line of every
  /// campaign CSV, so any row is reproducible from the file alone.
  std::string resolved_json() const;
};

/// Per-grid-point outcome: every trial's statistics retained, plus the
/// aggregates derived from them.
struct GridPointResult {
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<std::string> statistic_names;
  std::vector<char> deviation_stat;  // exceedance applies to these columns
  std::vector<std::vector<double>> trial_values;  // [trial][stat]
  std::vector<double> mean;                       // [stat]
  std::vector<double> std_dev;  // unbiased (n-1); zero when trials == 1
  std::vector<double> exceedance;       // [stat]; NaN where not applicable
  std::vector<double> fitted_constant;  // [stat]; NaN where not applicable
};

struct AggregateResult {
  ExperimentKind experiment = ExperimentKind::fig1_extreme_sv_vs_d;
  std::string resolved_config_json;
  double exceed_threshold = 0.0;
  bool emit_exceedance = false;
  bool emit_fitted_constant = false;
  std::vector<GridPointResult> grid;
  std::vector<BoundReport> bound_reports;  // aligned with grid (verify_*)

  std::string to_csv() const;
  std::string bound_reports_json() const;
  std::string to_svg() const;
};

AggregateResult run_experiment(const ExperimentConfig& config);

AggregateResult run_fig1(const ExperimentConfig& config);
AggregateResult run_sv_distribution(const ExperimentConfig& config);
AggregateResult verify_concentration(const ExperimentConfig& config);
AggregateResult verify_kernel_concentration(const ExperimentConfig& config);
AggregateResult verify_separation(const ExperimentConfig& config);
AggregateResult run_lemma2_tail(const ExperimentConfig& config);

}  // namespace rfspectra
