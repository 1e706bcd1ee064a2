#include "rfspectra/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "rfspectra/csv.hpp"
#include "rfspectra/errors.hpp"
#include "rfspectra/features.hpp"
#include "rfspectra/kernels.hpp"
#include "rfspectra/parallel.hpp"
#include "rfspectra/rng.hpp"
#include "rfspectra/spectra.hpp"
#include "rfspectra/svg.hpp"

namespace rfspectra {

namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Salt for the frozen-data stream of kernel campaigns; keeps it disjoint
// from the per-trial streams.
constexpr std::uint64_t kFrozenDataSalt = 0x66726f7a656e6474ULL;

std::string format_int(std::int64_t v) { return std::to_string(v); }

// Figure campaigns plot the spectrum of the feature-major matrix (N x m,
// one column of N feature evaluations per data point), so that column
// normalization makes every per-sample feature vector unit-length and the
// singular values concentrate near 1. Transposition leaves singular values
// unchanged; the smaller Gram is still m x m.
SpectrumResult figure_singular_values(const PointCloud& data,
                                      const PointCloud& weights,
                                      bool normalize) {
  FeatureMatrix columns = build_feature_matrix(weights, data);
  if (normalize) columns = normalize_columns(columns);
  return singular_values(columns);
}

struct TrialStreams {
  std::uint64_t first;
  std::uint64_t second;
};

// Two independent sub-streams (data, weights) of one trial stream.
TrialStreams split_streams(std::uint64_t task_seed) {
  std::uint64_t s = task_seed;
  const std::uint64_t a = splitmix64_next(s);
  const std::uint64_t b = splitmix64_next(s);
  return {a, b};
}

// Runs trials x grid tasks on the configured workers. Task k = g*T + t
// receives the derived stream seed ^ (k * odd constant) and writes only its
// own slot, so aggregates are independent of the schedule.
void run_grid(std::vector<GridPointResult>& grid,
              const ExperimentConfig& config,
              const std::function<std::vector<double>(
                  std::size_t grid_index, std::uint64_t task_seed)>& task) {
  const auto trials = static_cast<std::size_t>(config.trials);
  for (auto& point : grid) point.trial_values.resize(trials);

  const std::size_t total = grid.size() * trials;
  parallel_for_index(total, config.threads, [&](std::size_t k) {
    const std::size_t g = k / trials;
    const std::size_t t = k % trials;
    grid[g].trial_values[t] = task(g, stream_seed(config.seed, k));
  });
}

void finalize_aggregates(AggregateResult& result) {
  for (auto& point : result.grid) {
    const std::size_t stats = point.statistic_names.size();
    const std::size_t trials = point.trial_values.size();
    point.mean.assign(stats, 0.0);
    point.std_dev.assign(stats, 0.0);
    point.exceedance.assign(stats, kNaN);
    point.fitted_constant.assign(stats, kNaN);

    for (std::size_t s = 0; s < stats; ++s) {
      double sum = 0.0;
      for (const auto& row : point.trial_values) sum += row[s];
      const double mean = sum / static_cast<double>(trials);
      point.mean[s] = mean;
      if (trials > 1) {
        double sq = 0.0;
        for (const auto& row : point.trial_values) {
          const double diff = row[s] - mean;
          sq += diff * diff;
        }
        point.std_dev[s] = std::sqrt(sq / static_cast<double>(trials - 1));
      }
      if (result.emit_exceedance && point.deviation_stat[s]) {
        std::size_t count = 0;
        for (const auto& row : point.trial_values) {
          if (row[s] > result.exceed_threshold) ++count;
        }
        const double fraction =
            static_cast<double>(count) / static_cast<double>(trials);
        point.exceedance[s] = fraction;
        if (result.emit_fitted_constant) {
          // Largest C consistent with fraction <= 2 exp(-C t^2); floored at
          // one observation when the empirical fraction is zero.
          const double floor = 1.0 / static_cast<double>(trials);
          const double t = result.exceed_threshold;
          point.fitted_constant[s] =
              -std::log(std::max(fraction, floor) / 2.0) / (t * t);
        }
      }
    }
  }
}

std::vector<std::string> sv_stat_names(std::size_t count) {
  std::vector<std::string> names(count);
  for (std::size_t i = 0; i < count; ++i) {
    names[i] = "sv_" + std::to_string(i);
  }
  return names;
}

}  // namespace

std::string experiment_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::fig1_extreme_sv_vs_d:
      return "fig1_extreme_sv_vs_d";
    case ExperimentKind::fig2_sv_distribution_vs_N:
      return "fig2_sv_distribution_vs_N";
    case ExperimentKind::fig3_sv_distribution_vs_sigma:
      return "fig3_sv_distribution_vs_sigma";
    case ExperimentKind::verify_thm1:
      return "verify_thm1";
    case ExperimentKind::verify_thm2:
      return "verify_thm2";
    case ExperimentKind::verify_thm3:
      return "verify_thm3";
    case ExperimentKind::verify_thm4:
      return "verify_thm4";
    case ExperimentKind::verify_thm5:
      return "verify_thm5";
    case ExperimentKind::verify_thm6:
      return "verify_thm6";
    case ExperimentKind::lemma2_tail:
      return "lemma2_tail";
  }
  throw ConfigError("unknown experiment kind");
}

ExperimentKind experiment_from_name(std::string_view name) {
  for (int k = 0; k <= static_cast<int>(ExperimentKind::lemma2_tail); ++k) {
    const auto kind = static_cast<ExperimentKind>(k);
    if (experiment_name(kind) == name) return kind;
  }
  throw ConfigError("unknown experiment: " + std::string(name));
}

void ExperimentConfig::validate() const {
  if (m < 1 || n_features < 1) throw ConfigError("m and N must be >= 1");
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (d_grid.empty()) throw ConfigError("d grid must be nonempty");
  for (auto d : d_grid) {
    if (d < 1) throw ConfigError("every d must be >= 1");
  }
  if (!(gamma > 0.0) || !(sigma > 0.0)) {
    throw ConfigError("gamma and sigma must be positive");
  }
  for (double s : sigma_grid) {
    if (!(s > 0.0)) throw ConfigError("every sigma must be positive");
  }
  for (auto n : n_grid) {
    if (n < 1) throw ConfigError("every N must be >= 1");
  }
  switch (experiment) {
    case ExperimentKind::fig1_extreme_sv_vs_d:
    case ExperimentKind::fig3_sv_distribution_vs_sigma:
      if (sigma_grid.empty()) throw ConfigError("sigma grid must be nonempty");
      break;
    case ExperimentKind::fig2_sv_distribution_vs_N:
      if (n_grid.empty()) throw ConfigError("N grid must be nonempty");
      break;
    case ExperimentKind::verify_thm1:
    case ExperimentKind::verify_thm2:
    case ExperimentKind::verify_thm3:
    case ExperimentKind::verify_thm4:
    case ExperimentKind::verify_thm6:
      if (!(eta > 0.0) || !(eta < 1.0)) {
        throw ConfigError("eta must lie in (0, 1)");
      }
      if (!(delta > 0.0) || !(delta < 1.0)) {
        throw ConfigError("delta must lie in (0, 1)");
      }
      break;
    case ExperimentKind::verify_thm5:
      if (!(t > 0.0) || !(t < 0.5)) {
        throw ConfigError("t must lie in (0, 1/2)");
      }
      if (!(delta > 0.0) || !(delta < 1.0)) {
        throw ConfigError("delta must lie in (0, 1)");
      }
      if (n_features < 2) throw ConfigError("separation requires N >= 2");
      break;
    case ExperimentKind::lemma2_tail:
      if (!(t > 0.0)) throw ConfigError("t must be positive");
      break;
  }
}

ExperimentConfig ExperimentConfig::defaults_for(ExperimentKind kind) {
  ExperimentConfig c;
  c.experiment = kind;
  c.d_grid = {1, 2, 3, 4, 6, 8, 10, 12, 16, 20};
  switch (kind) {
    case ExperimentKind::fig1_extreme_sv_vs_d:
      c.sigma_grid = {2.0, 3.0};
      break;
    case ExperimentKind::fig2_sv_distribution_vs_N:
      c.n_grid = {500, 5000};
      break;
    case ExperimentKind::fig3_sv_distribution_vs_sigma:
      c.sigma_grid = {2.0, 4.0};
      break;
    case ExperimentKind::verify_thm1:
      c.m = 2000;
      c.n_features = 100;
      c.d_grid = {10, 20, 50};
      break;
    case ExperimentKind::verify_thm2:
      c.m = 100;
      c.n_features = 2000;
      c.d_grid = {10, 20, 50};
      break;
    case ExperimentKind::verify_thm3:
      c.m = 100;
      c.n_features = 2000;
      c.d_grid = {20};
      break;
    case ExperimentKind::verify_thm4:
      c.m = 2000;
      c.n_features = 100;
      c.d_grid = {10, 20, 50};
      c.c = 6.0;
      break;
    case ExperimentKind::verify_thm5:
      c.n_features = 100;
      c.sigma = 1.0;
      c.d_grid = {50};
      c.trials = 100;
      break;
    case ExperimentKind::verify_thm6:
      c.n_features = 100;
      c.d_grid = {10, 20, 50};
      break;
    case ExperimentKind::lemma2_tail:
      c.d_grid = {100};
      c.trials = 10000;
      c.t = 3.0;
      break;
  }
  return c;
}

ExperimentConfig ExperimentConfig::from_json(
    const std::string& text, std::optional<ExperimentKind> forced_kind) {
  json obj;
  try {
    obj = json::parse(text);
  } catch (const json::parse_error& err) {
    throw ConfigError(std::string("invalid config JSON: ") + err.what());
  }
  if (!obj.is_object()) throw ConfigError("config must be a JSON object");

  ExperimentKind kind = forced_kind.value_or(
      ExperimentKind::fig1_extreme_sv_vs_d);
  if (obj.contains("experiment")) {
    const auto named =
        experiment_from_name(obj.at("experiment").get<std::string>());
    if (forced_kind && named != *forced_kind) {
      throw ConfigError("config experiment \"" +
                        experiment_name(named) +
                        "\" does not match the chosen subcommand");
    }
    kind = named;
  } else if (!forced_kind) {
    throw ConfigError("config requires an \"experiment\" key");
  }

  ExperimentConfig config = defaults_for(kind);
  try {
    for (const auto& [key, value] : obj.items()) {
      if (key == "experiment") {
        continue;
      } else if (key == "m") {
        config.m = value.get<std::int64_t>();
      } else if (key == "N") {
        config.n_features = value.get<std::int64_t>();
      } else if (key == "d_grid") {
        config.d_grid = value.get<std::vector<std::int64_t>>();
      } else if (key == "N_grid") {
        config.n_grid = value.get<std::vector<std::int64_t>>();
      } else if (key == "gamma") {
        config.gamma = value.get<double>();
      } else if (key == "sigma") {
        config.sigma = value.get<double>();
      } else if (key == "sigma_grid") {
        config.sigma_grid = value.get<std::vector<double>>();
      } else if (key == "trials") {
        config.trials = value.get<std::int64_t>();
      } else if (key == "seed") {
        config.seed = value.get<std::uint64_t>();
      } else if (key == "normalize") {
        config.normalize = value.get<bool>();
      } else if (key == "eta") {
        config.eta = value.get<double>();
      } else if (key == "delta") {
        config.delta = value.get<double>();
      } else if (key == "t") {
        config.t = value.get<double>();
      } else if (key == "family") {
        config.family = family_from_name(value.get<std::string>());
      } else if (key == "C1") {
        config.c1 = value.get<double>();
      } else if (key == "C2") {
        config.c2 = value.get<double>();
      } else if (key == "C") {
        config.c = value.get<double>();
      } else {
        throw ConfigError("unknown config key: " + key);
      }
    }
  } catch (const json::exception& err) {
    throw ConfigError(std::string("invalid config value: ") + err.what());
  }
  config.validate();
  return config;
}

std::string ExperimentConfig::resolved_json() const {
  json obj;
  obj["experiment"] = experiment_name(experiment);
  obj["m"] = m;
  obj["N"] = n_features;
  obj["d_grid"] = d_grid;
  obj["N_grid"] = n_grid;
  obj["gamma"] = gamma;
  obj["sigma"] = sigma;
  obj["sigma_grid"] = sigma_grid;
  obj["trials"] = trials;
  obj["seed"] = seed;
  obj["normalize"] = normalize;
  obj["eta"] = eta;
  obj["delta"] = delta;
  obj["t"] = t;
  obj["family"] = family_name(family);
  obj["C1"] = c1;
  obj["C2"] = c2;
  obj["C"] = c;
  return obj.dump();
}

std::string AggregateResult::to_csv() const {
  std::ostringstream out;
  out << "# config " << resolved_config_json << '\n';
  if (grid.empty()) return out.str();

  for (const auto& [name, unused] : grid.front().parameters) out << name << ',';
  out << "trial";
  for (const auto& name : grid.front().statistic_names) out << ',' << name;
  out << '\n';

  const auto emit_row = [&](const GridPointResult& point,
                            const std::string& label,
                            const std::vector<double>& values,
                            bool skip_nan) {
    for (const auto& [unused, value] : point.parameters) out << value << ',';
    out << label;
    for (double v : values) {
      out << ',';
      if (!(skip_nan && std::isnan(v))) out << format_float(v);
    }
    out << '\n';
  };

  for (const auto& point : grid) {
    for (std::size_t t = 0; t < point.trial_values.size(); ++t) {
      emit_row(point, std::to_string(t), point.trial_values[t], false);
    }
    emit_row(point, "mean", point.mean, false);
    emit_row(point, "std", point.std_dev, false);
    if (emit_exceedance) {
      emit_row(point, "exceedance", point.exceedance, true);
    }
    if (emit_fitted_constant) {
      emit_row(point, "fitted_C", point.fitted_constant, true);
    }
  }
  return out.str();
}

std::string AggregateResult::bound_reports_json() const {
  json arr = json::array();
  for (std::size_t g = 0; g < bound_reports.size(); ++g) {
    json entry;
    json params = json::object();
    if (g < grid.size()) {
      for (const auto& [name, value] : grid[g].parameters) {
        params[name] = value;
      }
    }
    entry["parameters"] = params;
    entry["report"] = json::parse(bound_reports[g].to_json());
    arr.push_back(entry);
  }
  return arr.dump(2);
}

std::string AggregateResult::to_svg() const {
  std::vector<SvgSeries> series;
  switch (experiment) {
    case ExperimentKind::fig1_extreme_sv_vs_d: {
      // one (min, max) pair of curves per sigma, x = d
      std::vector<std::string> sigmas;
      for (const auto& point : grid) {
        const auto& s = point.parameters[0].second;
        if (std::find(sigmas.begin(), sigmas.end(), s) == sigmas.end()) {
          sigmas.push_back(s);
        }
      }
      for (const auto& sigma_value : sigmas) {
        for (std::size_t stat : {std::size_t{0}, std::size_t{1}}) {
          SvgSeries cur;
          cur.label = (stat == 0 ? "min sv, sigma=" : "max sv, sigma=") +
                      sigma_value;
          for (const auto& point : grid) {
            if (point.parameters[0].second != sigma_value) continue;
            cur.x.push_back(std::stod(point.parameters[1].second));
            cur.y.push_back(point.mean[stat]);
            cur.band_low.push_back(point.mean[stat] - point.std_dev[stat]);
            cur.band_high.push_back(point.mean[stat] + point.std_dev[stat]);
          }
          series.push_back(std::move(cur));
        }
      }
      return render_line_plot("extreme singular values vs dimension", "d",
                              "singular value", series);
    }
    case ExperimentKind::fig2_sv_distribution_vs_N:
    case ExperimentKind::fig3_sv_distribution_vs_sigma: {
      for (const auto& point : grid) {
        SvgSeries cur;
        cur.label = point.parameters[0].first + "=" +
                    point.parameters[0].second + " d=" +
                    point.parameters[1].second;
        for (std::size_t i = 0; i < point.mean.size(); ++i) {
          cur.x.push_back(static_cast<double>(i + 1));
          cur.y.push_back(point.mean[i]);
        }
        series.push_back(std::move(cur));
      }
      return render_line_plot("singular value distribution (ascending)",
                              "index", "singular value", series);
    }
    default: {
      // verify-style campaigns: mean +- std of each deviation statistic vs
      // the last grid parameter
      for (std::size_t s = 0; s < grid.front().statistic_names.size(); ++s) {
        if (!grid.front().deviation_stat[s]) continue;
        SvgSeries cur;
        cur.label = grid.front().statistic_names[s];
        for (const auto& point : grid) {
          cur.x.push_back(std::stod(point.parameters.back().second));
          cur.y.push_back(point.mean[s]);
          cur.band_low.push_back(point.mean[s] - point.std_dev[s]);
          cur.band_high.push_back(point.mean[s] + point.std_dev[s]);
        }
        series.push_back(std::move(cur));
      }
      return render_line_plot(experiment_name(experiment),
                              grid.front().parameters.back().first,
                              "spectral deviation", series);
    }
  }
}

AggregateResult run_fig1(const ExperimentConfig& config) {
  config.validate();
  AggregateResult result;
  result.experiment = config.experiment;
  result.resolved_config_json = config.resolved_json();

  for (double sigma : config.sigma_grid) {
    for (auto d : config.d_grid) {
      GridPointResult point;
      point.parameters = {{"sigma", format_float(sigma)},
                          {"d", format_int(d)}};
      point.statistic_names = {"sigma_min", "sigma_max", "condition_number"};
      point.deviation_stat = {0, 0, 0};
      result.grid.push_back(std::move(point));
    }
  }

  const std::size_t d_count = config.d_grid.size();
  run_grid(result.grid, config,
           [&](std::size_t g, std::uint64_t task_seed) {
             const double sigma = config.sigma_grid[g / d_count];
             const auto d =
                 static_cast<std::size_t>(config.d_grid[g % d_count]);
             const auto streams = split_streams(task_seed);
             const auto data = sample_cloud(
                 DistributionSpec::data_cloud(Family::gaussian, config.gamma,
                                              d),
                 static_cast<std::size_t>(config.m), streams.first);
             const auto weights = sample_cloud(
                 DistributionSpec::weight_cloud(config.family, sigma, d),
                 static_cast<std::size_t>(config.n_features), streams.second);
             const SpectrumResult sv =
                 figure_singular_values(data, weights, config.normalize);
             return std::vector<double>{sv.sigma_min, sv.sigma_max,
                                        sv.condition_number};
           });
  finalize_aggregates(result);
  return result;
}

AggregateResult run_sv_distribution(const ExperimentConfig& config) {
  config.validate();
  const bool vary_n =
      config.experiment == ExperimentKind::fig2_sv_distribution_vs_N;

  AggregateResult result;
  result.experiment = config.experiment;
  result.resolved_config_json = config.resolved_json();

  const std::size_t outer_count =
      vary_n ? config.n_grid.size() : config.sigma_grid.size();
  for (std::size_t o = 0; o < outer_count; ++o) {
    for (auto d : config.d_grid) {
      GridPointResult point;
      const std::int64_t n =
          vary_n ? config.n_grid[o] : config.n_features;
      point.parameters = {
          vary_n ? std::pair<std::string, std::string>{"N", format_int(n)}
                 : std::pair<std::string, std::string>{
                       "sigma", format_float(config.sigma_grid[o])},
          {"d", format_int(d)}};
      const auto count = static_cast<std::size_t>(
          std::min<std::int64_t>(config.m, n));
      point.statistic_names = sv_stat_names(count);
      point.deviation_stat.assign(count, 0);
      result.grid.push_back(std::move(point));
    }
  }

  const std::size_t d_count = config.d_grid.size();
  run_grid(result.grid, config,
           [&](std::size_t g, std::uint64_t task_seed) {
             const std::size_t o = g / d_count;
             const auto d =
                 static_cast<std::size_t>(config.d_grid[g % d_count]);
             const std::int64_t n =
                 vary_n ? config.n_grid[o] : config.n_features;
             const double sigma =
                 vary_n ? config.sigma : config.sigma_grid[o];
             const auto streams = split_streams(task_seed);
             const auto data = sample_cloud(
                 DistributionSpec::data_cloud(Family::gaussian, config.gamma,
                                              d),
                 static_cast<std::size_t>(config.m), streams.first);
             const auto weights = sample_cloud(
                 DistributionSpec::weight_cloud(config.family, sigma, d),
                 static_cast<std::size_t>(n), streams.second);
             return figure_singular_values(data, weights, config.normalize)
                 .values;  // ascending
           });
  finalize_aggregates(result);
  return result;
}

AggregateResult verify_concentration(const ExperimentConfig& config) {
  config.validate();
  const ExperimentKind kind = config.experiment;
  if (kind != ExperimentKind::verify_thm1 &&
      kind != ExperimentKind::verify_thm2 &&
      kind != ExperimentKind::verify_thm4 &&
      kind != ExperimentKind::verify_thm6) {
    throw ConfigError("verify_concentration handles thm1/thm2/thm4/thm6");
  }
  const bool gaussian_family = config.family == Family::gaussian;
  const bool has_full_expectation =
      gaussian_family && (kind == ExperimentKind::verify_thm1 ||
                          kind == ExperimentKind::verify_thm2 ||
                          kind == ExperimentKind::verify_thm6);

  AggregateResult result;
  result.experiment = kind;
  result.resolved_config_json = config.resolved_json();
  result.emit_exceedance = true;
  result.exceed_threshold = config.eta;

  const double conclusion =
      (kind == ExperimentKind::verify_thm1 ||
       kind == ExperimentKind::verify_thm2)
          ? 2.0 * config.eta
          : config.eta;

  for (auto d : config.d_grid) {
    GridPointResult point;
    point.parameters = {{"d", format_int(d)}};
    switch (kind) {
      case ExperimentKind::verify_thm1:
      case ExperimentKind::verify_thm2:
        point.statistic_names = {"dev_gram_identity"};
        point.deviation_stat = {1};
        if (has_full_expectation) {
          point.statistic_names.push_back("dev_gram_full_expectation");
          point.deviation_stat.push_back(1);
        }
        break;
      case ExperimentKind::verify_thm4:
        point.statistic_names = {"dev_gram_expected_over_data",
                                 "weights_min_sq_dist_over_d"};
        point.deviation_stat = {1, 0};
        break;
      default:  // verify_thm6
        point.statistic_names = {"dev_expected_identity"};
        point.deviation_stat = {1};
        if (has_full_expectation) {
          point.statistic_names.push_back("dev_expected_full_expectation");
          point.deviation_stat.push_back(1);
        }
        break;
    }
    point.statistic_names.push_back("conclusion_bound");
    point.deviation_stat.push_back(0);
    result.grid.push_back(std::move(point));
  }

  run_grid(result.grid, config, [&](std::size_t g, std::uint64_t task_seed) {
    const auto d = static_cast<std::size_t>(config.d_grid[g]);
    const auto m = static_cast<std::size_t>(config.m);
    const auto n = static_cast<std::size_t>(config.n_features);
    const auto streams = split_streams(task_seed);

    std::vector<double> stats;
    switch (kind) {
      case ExperimentKind::verify_thm1: {
        const auto data = sample_cloud(
            DistributionSpec::data_cloud(Family::gaussian, config.gamma, d),
            m, streams.first);
        const auto weights = sample_cloud(
            DistributionSpec::weight_cloud(config.family, config.sigma, d),
            n, streams.second);
        const auto gram =
            gram_over_weights(build_feature_matrix(data, weights));
        stats.push_back(deviation_from_identity(gram));
        if (has_full_expectation) {
          stats.push_back(spectral_norm_hermitian(subtract(
              gram, full_expectation_matrix(n, config.gamma, config.sigma,
                                            d))));
        }
        break;
      }
      case ExperimentKind::verify_thm2: {
        const auto data = sample_cloud(
            DistributionSpec::data_cloud(config.family, config.gamma, d), m,
            streams.first);
        const auto weights = sample_cloud(
            DistributionSpec::weight_cloud(Family::gaussian, config.sigma, d),
            n, streams.second);
        const auto gram = gram_over_data(build_feature_matrix(data, weights));
        stats.push_back(deviation_from_identity(gram));
        if (has_full_expectation) {
          stats.push_back(spectral_norm_hermitian(subtract(
              gram, full_expectation_matrix(m, config.gamma, config.sigma,
                                            d))));
        }
        break;
      }
      case ExperimentKind::verify_thm4: {
        const auto data = sample_cloud(
            DistributionSpec::data_cloud(Family::gaussian, config.gamma, d),
            m, streams.first);
        const auto weights = sample_cloud(
            DistributionSpec::weight_cloud(config.family, config.sigma, d),
            n, streams.second);
        const auto gram =
            gram_over_weights(build_feature_matrix(data, weights));
        const auto expected = expected_gram_over_data(weights, config.gamma);
        stats.push_back(spectral_norm_hermitian(subtract(gram, expected)));
        stats.push_back(separation_report(weights).min_pairwise_sq_distance /
                        static_cast<double>(d));
        break;
      }
      default: {  // verify_thm6: weights only
        const auto weights = sample_cloud(
            DistributionSpec::weight_cloud(config.family, config.sigma, d),
            n, streams.second);
        const auto expected = expected_gram_over_data(weights, config.gamma);
        stats.push_back(deviation_from_identity(expected));
        if (has_full_expectation) {
          stats.push_back(spectral_norm_hermitian(subtract(
              expected, full_expectation_matrix(n, config.gamma, config.sigma,
                                                d))));
        }
        break;
      }
    }
    stats.push_back(conclusion);
    return stats;
  });
  finalize_aggregates(result);

  for (std::size_t g = 0; g < result.grid.size(); ++g) {
    const auto d = config.d_grid[g];
    switch (kind) {
      case ExperimentKind::verify_thm1:
        result.bound_reports.push_back(check_theorem1(
            d, config.m, config.n_features, config.gamma, config.sigma,
            config.delta, config.eta, config.c1, config.c2));
        break;
      case ExperimentKind::verify_thm2:
        result.bound_reports.push_back(check_theorem2(
            d, config.m, config.n_features, config.gamma, config.sigma,
            config.delta, config.eta, config.c1, config.c2));
        break;
      case ExperimentKind::verify_thm4: {
        // weakest separation scale observed across trials
        double r = std::numeric_limits<double>::infinity();
        for (const auto& row : result.grid[g].trial_values) {
          r = std::min(r, row[1]);
        }
        result.bound_reports.push_back(check_theorem4(
            config.m, config.n_features, config.gamma, r, config.delta,
            config.eta, config.c));
        break;
      }
      default:
        result.bound_reports.push_back(check_theorem6(
            d, config.n_features, config.gamma, config.sigma, config.delta,
            config.eta, config.c1));
        break;
    }
  }
  return result;
}

AggregateResult verify_kernel_concentration(const ExperimentConfig& config) {
  config.validate();
  if (config.experiment != ExperimentKind::verify_thm3) {
    throw ConfigError("verify_kernel_concentration handles thm3");
  }

  AggregateResult result;
  result.experiment = config.experiment;
  result.resolved_config_json = config.resolved_json();
  result.emit_exceedance = true;
  result.exceed_threshold = config.eta;

  // Data is sampled once per grid point and frozen across trials; only the
  // weights are resampled.
  std::vector<PointCloud> frozen_data;
  std::vector<double> separation_r;
  for (std::size_t g = 0; g < config.d_grid.size(); ++g) {
    const auto d = static_cast<std::size_t>(config.d_grid[g]);
    std::uint64_t s = stream_seed(config.seed, g) ^ kFrozenDataSalt;
    const std::uint64_t data_seed = splitmix64_next(s);
    frozen_data.push_back(sample_cloud(
        DistributionSpec::data_cloud(Family::gaussian, config.gamma, d),
        static_cast<std::size_t>(config.m), data_seed));
    separation_r.push_back(
        config.m > 1
            ? separation_report(frozen_data.back()).min_pairwise_sq_distance
            : 0.0);

    GridPointResult point;
    point.parameters = {{"d", format_int(config.d_grid[g])}};
    point.statistic_names = {"dev_gram_kernel", "data_min_sq_distance",
                             "conclusion_bound"};
    point.deviation_stat = {1, 0, 0};
    result.grid.push_back(std::move(point));
  }

  run_grid(result.grid, config, [&](std::size_t g, std::uint64_t task_seed) {
    const auto d = static_cast<std::size_t>(config.d_grid[g]);
    const auto streams = split_streams(task_seed);
    const auto weights = sample_cloud(
        DistributionSpec::weight_cloud(Family::gaussian, config.sigma, d),
        static_cast<std::size_t>(config.n_features), streams.second);
    const auto gram =
        gram_over_data(build_feature_matrix(frozen_data[g], weights));
    const auto kernel =
        gaussian_kernel_over_weights(frozen_data[g], config.sigma);
    return std::vector<double>{
        spectral_norm_hermitian(subtract(gram, kernel)), separation_r[g],
        config.eta};
  });
  finalize_aggregates(result);

  for (std::size_t g = 0; g < result.grid.size(); ++g) {
    if (separation_r[g] > 0.0) {
      result.bound_reports.push_back(check_theorem3(
          config.n_features, config.m, config.sigma, separation_r[g],
          config.delta, config.eta, config.c));
    } else {
      // m == 1: no pairs; conditions degenerate
      BoundReport report;
      report.theorem_id = TheoremId::thm3;
      report.conclusion_bound = config.eta;
      report.constants_used = {{"C", config.c},
                               {"failure_probability", config.delta}};
      result.bound_reports.push_back(std::move(report));
    }
  }
  return result;
}

AggregateResult verify_separation(const ExperimentConfig& config) {
  config.validate();
  if (config.experiment != ExperimentKind::verify_thm5) {
    throw ConfigError("verify_separation handles thm5");
  }

  AggregateResult result;
  result.experiment = config.experiment;
  result.resolved_config_json = config.resolved_json();

  const Family families[] = {Family::gaussian, Family::rademacher,
                             Family::uniform};
  for (Family family : families) {
    for (auto d : config.d_grid) {
      GridPointResult point;
      point.parameters = {{"family", family_name(family)},
                          {"d", format_int(d)}};
      point.statistic_names = {"min_pairwise_sq_distance",
                               "separation_threshold", "meets_threshold"};
      point.deviation_stat = {0, 0, 0};
      result.grid.push_back(std::move(point));
    }
  }

  const std::size_t d_count = config.d_grid.size();
  run_grid(result.grid, config, [&](std::size_t g, std::uint64_t task_seed) {
    const Family family = families[g / d_count];
    const auto d = static_cast<std::size_t>(config.d_grid[g % d_count]);
    const auto streams = split_streams(task_seed);
    const auto cloud = sample_cloud(
        DistributionSpec::weight_cloud(family, config.sigma, d),
        static_cast<std::size_t>(config.n_features), streams.second);
    const double min_sq = separation_report(cloud).min_pairwise_sq_distance;
    const double threshold = (1.0 - 2.0 * config.t) * config.sigma *
                             config.sigma * static_cast<double>(d);
    return std::vector<double>{min_sq, threshold,
                               min_sq >= threshold ? 1.0 : 0.0};
  });
  finalize_aggregates(result);

  for (std::size_t g = 0; g < result.grid.size(); ++g) {
    result.bound_reports.push_back(
        check_separation(config.d_grid[g % d_count], config.n_features,
                         config.delta, config.t, config.c));
  }
  return result;
}

AggregateResult run_lemma2_tail(const ExperimentConfig& config) {
  config.validate();
  if (config.experiment != ExperimentKind::lemma2_tail) {
    throw ConfigError("run_lemma2_tail handles lemma2_tail");
  }

  AggregateResult result;
  result.experiment = config.experiment;
  result.resolved_config_json = config.resolved_json();
  result.emit_exceedance = true;
  result.emit_fitted_constant = true;
  result.exceed_threshold = config.t;

  const Family families[] = {Family::gaussian, Family::rademacher,
                             Family::uniform};
  for (Family family : families) {
    for (auto d : config.d_grid) {
      GridPointResult point;
      point.parameters = {{"family", family_name(family)},
                          {"d", format_int(d)}};
      point.statistic_names = {"abs_norm_deviation"};
      point.deviation_stat = {1};
      result.grid.push_back(std::move(point));
    }
  }

  const std::size_t d_count = config.d_grid.size();
  run_grid(result.grid, config, [&](std::size_t g, std::uint64_t task_seed) {
    const Family family = families[g / d_count];
    const auto d = static_cast<std::size_t>(config.d_grid[g % d_count]);
    const DistributionSpec spec{family, 1.0, d};
    const auto draw = sample_cloud(spec, 1, split_streams(task_seed).second);
    double sq = 0.0;
    for (double v : draw.point(0)) sq += v * v;
    return std::vector<double>{
        std::abs(std::sqrt(sq) - std::sqrt(static_cast<double>(d)))};
  });
  finalize_aggregates(result);
  return result;
}

AggregateResult run_experiment(const ExperimentConfig& config) {
  switch (config.experiment) {
    case ExperimentKind::fig1_extreme_sv_vs_d:
      return run_fig1(config);
    case ExperimentKind::fig2_sv_distribution_vs_N:
    case ExperimentKind::fig3_sv_distribution_vs_sigma:
      return run_sv_distribution(config);
    case ExperimentKind::verify_thm1:
    case ExperimentKind::verify_thm2:
    case ExperimentKind::verify_thm4:
    case ExperimentKind::verify_thm6:
      return verify_concentration(config);
    case ExperimentKind::verify_thm3:
      return verify_kernel_concentration(config);
    case ExperimentKind::verify_thm5:
      return verify_separation(config);
    case ExperimentKind::lemma2_tail:
      return run_lemma2_tail(config);
  }
  throw ConfigError("unknown experiment kind");
}

}  // namespace rfspectra
