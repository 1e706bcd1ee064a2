// rfspectra command line front end: dispatches seeded campaigns and bound
// checks from JSON configs and writes CSV/JSON/SVG artifacts.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rfspectra/bounds.hpp"
#include "rfspectra/csv.hpp"
#include "rfspectra/errors.hpp"
#include "rfspectra/experiments.hpp"
#include "rfspectra/features.hpp"
#include "rfspectra/kernels.hpp"
#include "rfspectra/rng.hpp"
#include "rfspectra/sampling.hpp"
#include "rfspectra/spectra.hpp"

namespace {

using nlohmann::json;
using namespace rfspectra;

struct CommonOptions {
  std::string config_path;
  std::string out_dir = ".";
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
};

json load_config(const CommonOptions& opts) {
  std::ifstream in(opts.config_path);
  if (!in) {
    throw ConfigError("cannot read config file: " + opts.config_path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  json obj;
  try {
    obj = json::parse(buffer.str());
  } catch (const json::parse_error& err) {
    throw ConfigError(std::string("invalid config JSON: ") + err.what());
  }
  if (!obj.is_object()) throw ConfigError("config must be a JSON object");

  for (const auto& item : opts.overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ConfigError("--set expects key=value, got: " + item);
    }
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    try {
      obj[key] = json::parse(value);
    } catch (const json::parse_error&) {
      obj[key] = value;  // bare string
    }
  }
  if (opts.seed) obj["seed"] = *opts.seed;
  return obj;
}

std::filesystem::path prepare_out_dir(const CommonOptions& opts) {
  std::filesystem::path dir(opts.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw ConfigError("cannot create output directory: " + dir.string());
  }
  return dir;
}

double get_num(const json& obj, const char* key) {
  if (!obj.contains(key)) {
    throw ConfigError(std::string("config requires key: ") + key);
  }
  return obj.at(key).get<double>();
}

double get_num_or(const json& obj, const char* key, double fallback) {
  return obj.contains(key) ? obj.at(key).get<double>() : fallback;
}

std::int64_t get_int(const json& obj, const char* key) {
  if (!obj.contains(key)) {
    throw ConfigError(std::string("config requires key: ") + key);
  }
  return obj.at(key).get<std::int64_t>();
}

std::int64_t get_int_or(const json& obj, const char* key,
                        std::int64_t fallback) {
  return obj.contains(key) ? obj.at(key).get<std::int64_t>() : fallback;
}

int run_campaign(const CommonOptions& opts,
                 std::optional<ExperimentKind> forced_kind, bool write_svg) {
  const json obj = load_config(opts);
  ExperimentConfig config =
      ExperimentConfig::from_json(obj.dump(), forced_kind);
  config.threads = opts.threads;
  if (!forced_kind &&
      config.experiment <= ExperimentKind::fig3_sv_distribution_vs_sigma) {
    throw ConfigError(
        "the verify subcommand runs verify_* or lemma2_tail campaigns; use "
        "figure1/figure2/figure3 for figure campaigns");
  }

  const auto dir = prepare_out_dir(opts);
  const AggregateResult result = run_experiment(config);

  const std::string stem = experiment_name(config.experiment);
  const auto csv_path = dir / (stem + ".csv");
  write_file_atomic(csv_path, result.to_csv());
  std::cout << "wrote " << csv_path.string() << '\n';

  if (!result.bound_reports.empty()) {
    const auto json_path = dir / (stem + "_bounds.json");
    write_file_atomic(json_path, result.bound_reports_json() + "\n");
    std::cout << "wrote " << json_path.string() << '\n';
  }
  if (write_svg) {
    const auto svg_path = dir / (stem + ".svg");
    write_file_atomic(svg_path, result.to_svg());
    std::cout << "wrote " << svg_path.string() << '\n';
  }
  return 0;
}

int run_spectrum(const CommonOptions& opts) {
  const json obj = load_config(opts);
  const auto m = get_int_or(obj, "m", 100);
  const auto n = get_int_or(obj, "N", 5000);
  const auto d = get_int_or(obj, "d", 10);
  const double gamma = get_num_or(obj, "gamma", 1.0);
  const double sigma = get_num_or(obj, "sigma", 3.0);
  const auto seed = obj.contains("seed")
                        ? obj.at("seed").get<std::uint64_t>()
                        : std::uint64_t{12345};
  const bool normalize =
      obj.contains("normalize") ? obj.at("normalize").get<bool>() : true;
  const Family family =
      obj.contains("family")
          ? family_from_name(obj.at("family").get<std::string>())
          : Family::gaussian;
  if (m < 1 || n < 1 || d < 1) throw ConfigError("m, N, d must be >= 1");

  std::uint64_t s = seed;
  const auto data_seed = splitmix64_next(s);
  const auto weights_seed = splitmix64_next(s);
  const auto data = sample_cloud(
      DistributionSpec::data_cloud(Family::gaussian, gamma,
                                   static_cast<std::size_t>(d)),
      static_cast<std::size_t>(m), data_seed);
  const auto weights = sample_cloud(
      DistributionSpec::weight_cloud(family, sigma,
                                     static_cast<std::size_t>(d)),
      static_cast<std::size_t>(n), weights_seed);
  // Feature-major orientation (N x m): normalized columns are unit-length
  // per-sample feature vectors, so the spectrum concentrates near 1.
  FeatureMatrix a = build_feature_matrix(weights, data);
  if (normalize) a = normalize_columns(a);
  const SpectrumResult sv = singular_values(a);

  const auto dir = prepare_out_dir(opts);
  const auto csv_path = dir / "spectrum.csv";
  write_file_atomic(csv_path,
                    "# config " + obj.dump() + "\n" + spectrum_to_csv(sv));
  std::cout << "wrote " << csv_path.string() << '\n';
  std::cout << "sigma_min=" << format_float(sv.sigma_min)
            << " sigma_max=" << format_float(sv.sigma_max)
            << " condition_number=" << format_float(sv.condition_number)
            << '\n';
  return 0;
}

int run_bounds(const CommonOptions& opts) {
  const json obj = load_config(opts);
  if (!obj.contains("theorem")) {
    throw ConfigError("bounds config requires a \"theorem\" key");
  }
  const TheoremId id =
      theorem_from_name(obj.at("theorem").get<std::string>());

  BoundReport report;
  switch (id) {
    case TheoremId::thm1:
      report = check_theorem1(get_int(obj, "d"), get_int(obj, "m"),
                              get_int(obj, "N"), get_num(obj, "gamma"),
                              get_num(obj, "sigma"), get_num(obj, "delta"),
                              get_num(obj, "eta"), get_num_or(obj, "C1", 1.0),
                              get_num_or(obj, "C2", 1.0));
      break;
    case TheoremId::thm2:
      report = check_theorem2(get_int(obj, "d"), get_int(obj, "m"),
                              get_int(obj, "N"), get_num(obj, "gamma"),
                              get_num(obj, "sigma"), get_num(obj, "delta"),
                              get_num(obj, "eta"), get_num_or(obj, "C1", 1.0),
                              get_num_or(obj, "C2", 1.0));
      break;
    case TheoremId::thm3:
      report = check_theorem3(get_int(obj, "N"), get_int(obj, "m"),
                              get_num(obj, "sigma"), get_num(obj, "R"),
                              get_num(obj, "delta"), get_num(obj, "eta"),
                              get_num_or(obj, "C", 1.0));
      break;
    case TheoremId::thm4:
      report = check_theorem4(get_int(obj, "m"), get_int(obj, "N"),
                              get_num(obj, "gamma"), get_num(obj, "R"),
                              get_num(obj, "delta"), get_num(obj, "eta"),
                              get_num_or(obj, "C", 6.0));
      break;
    case TheoremId::thm5:
      report = check_separation(get_int(obj, "d"), get_int(obj, "N"),
                                get_num(obj, "delta"), get_num(obj, "t"),
                                get_num_or(obj, "C", 1.0));
      break;
    case TheoremId::thm6:
      report = check_theorem6(get_int(obj, "d"), get_int(obj, "N"),
                              get_num(obj, "gamma"), get_num(obj, "sigma"),
                              get_num(obj, "delta"), get_num(obj, "eta"),
                              get_num_or(obj, "C", 1.0));
      break;
    case TheoremId::bernstein: {
      const auto m = get_int(obj, "m");
      const auto n = get_int(obj, "N");
      const double k = get_num(obj, "K");
      const double var = get_num(obj, "variance_param");
      const double t = get_num(obj, "t");
      report.theorem_id = TheoremId::bernstein;
      report.conclusion_bound = bernstein_tail(m, n, k, var, t);
      report.constants_used = {{"m", static_cast<double>(m)},
                               {"N", static_cast<double>(n)},
                               {"K", k},
                               {"variance_param", var},
                               {"t", t}};
      break;
    }
    case TheoremId::chi2: {
      const double z = get_num(obj, "z");
      const auto d = get_int(obj, "d");
      report.theorem_id = TheoremId::chi2;
      report.conclusion_bound = chi_square_chernoff(z, d);
      report.constants_used = {{"z", z}, {"d", static_cast<double>(d)}};
      break;
    }
    case TheoremId::simplified_tail: {
      const auto m = get_int(obj, "m");
      const auto n = get_int(obj, "N");
      const double eta = get_num(obj, "eta");
      report.theorem_id = TheoremId::simplified_tail;
      report.conclusion_bound = simplified_gram_tail(m, n, eta);
      report.constants_used = {{"m", static_cast<double>(m)},
                               {"N", static_cast<double>(n)},
                               {"eta", eta}};
      break;
    }
    case TheoremId::gershgorin:
      throw ConfigError(
          "the gershgorin bound needs a matrix; use the library API");
  }

  const auto dir = prepare_out_dir(opts);
  const auto json_path = dir / "bound_report.json";
  write_file_atomic(json_path, report.to_json() + "\n");
  std::cout << report.to_table();
  std::cout << "wrote " << json_path.string() << '\n';
  return 0;
}

int run_kernel(const CommonOptions& opts) {
  const json obj = load_config(opts);
  if (!obj.contains("kind")) {
    throw ConfigError("kernel config requires a \"kind\" key");
  }
  const std::string kind = obj.at("kind").get<std::string>();
  const double gamma = get_num_or(obj, "gamma", 1.0);
  const double sigma = get_num_or(obj, "sigma", 3.0);
  const auto d = get_int_or(obj, "d", 10);
  const auto seed = obj.contains("seed")
                        ? obj.at("seed").get<std::uint64_t>()
                        : std::uint64_t{12345};
  const Family family =
      obj.contains("family")
          ? family_from_name(obj.at("family").get<std::string>())
          : Family::gaussian;
  if (d < 1) throw ConfigError("d must be >= 1");

  HermitianMatrix matrix;
  if (kind == "over_data") {
    const auto n = get_int_or(obj, "N", 100);
    if (n < 1) throw ConfigError("N must be >= 1");
    const auto weights = sample_cloud(
        DistributionSpec::weight_cloud(family, sigma,
                                       static_cast<std::size_t>(d)),
        static_cast<std::size_t>(n), seed);
    matrix = expected_gram_over_data(weights, gamma);
  } else if (kind == "over_weights") {
    const auto m = get_int_or(obj, "m", 100);
    if (m < 1) throw ConfigError("m must be >= 1");
    const auto data = sample_cloud(
        DistributionSpec::data_cloud(family, gamma,
                                     static_cast<std::size_t>(d)),
        static_cast<std::size_t>(m), seed);
    matrix = gaussian_kernel_over_weights(data, sigma);
  } else if (kind == "full_gaussian") {
    const auto n = get_int_or(obj, "n", get_int_or(obj, "N", 100));
    if (n < 1) throw ConfigError("n must be >= 1");
    matrix = full_expectation_matrix(static_cast<std::size_t>(n), gamma,
                                     sigma, static_cast<std::size_t>(d));
  } else {
    throw ConfigError(
        "kernel kind must be over_data, over_weights, or full_gaussian");
  }

  const auto dir = prepare_out_dir(opts);
  const auto csv_path = dir / "kernel.csv";
  write_file_atomic(csv_path,
                    "# config " + obj.dump() + "\n" + matrix_to_csv(matrix));
  std::cout << "wrote " << csv_path.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "rfspectra: spectra, expectation matrices, concentration bounds, and "
      "Monte Carlo campaigns for complex-exponential random feature "
      "matrices"};
  app.require_subcommand(1);

  CommonOptions opts;
  auto add_common = [&opts](CLI::App* cmd) {
    cmd->add_option("--config", opts.config_path, "JSON config file")
        ->required();
    cmd->add_option("--out", opts.out_dir, "output directory (default .)");
    cmd->add_option("--seed", opts.seed, "override the config seed");
    cmd->add_option("--threads", opts.threads,
                    "worker cap (0 = machine parallelism); never affects "
                    "results");
    cmd->add_option("--set", opts.overrides,
                    "config override key=value (repeatable)");
  };

  auto* spectrum = app.add_subcommand(
      "spectrum", "singular value spectrum of one sampled feature matrix");
  auto* figure1 = app.add_subcommand(
      "figure1", "extreme singular values vs dimension campaign");
  auto* figure2 = app.add_subcommand(
      "figure2", "singular value distribution vs (d, N) campaign");
  auto* figure3 = app.add_subcommand(
      "figure3", "singular value distribution vs (d, sigma) campaign");
  auto* verify = app.add_subcommand(
      "verify", "concentration / separation / norm-tail verification");
  auto* bounds = app.add_subcommand(
      "bounds", "evaluate one bound's hypotheses and conclusion");
  auto* kernel = app.add_subcommand(
      "kernel", "closed-form expectation or kernel matrix export");
  for (auto* cmd :
       {spectrum, figure1, figure2, figure3, verify, bounds, kernel}) {
    add_common(cmd);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (spectrum->parsed()) return run_spectrum(opts);
    if (figure1->parsed()) {
      return run_campaign(opts, ExperimentKind::fig1_extreme_sv_vs_d, true);
    }
    if (figure2->parsed()) {
      return run_campaign(opts, ExperimentKind::fig2_sv_distribution_vs_N,
                          true);
    }
    if (figure3->parsed()) {
      return run_campaign(opts, ExperimentKind::fig3_sv_distribution_vs_sigma,
                          true);
    }
    if (verify->parsed()) return run_campaign(opts, std::nullopt, false);
    if (bounds->parsed()) return run_bounds(opts);
    if (kernel->parsed()) return run_kernel(opts);
    std::cerr << "error: no subcommand selected\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
