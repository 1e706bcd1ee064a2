#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include "rfspectra/errors.hpp"
#include "rfspectra/experiments.hpp"
#include "rfspectra/kernels.hpp"
#include "rfspectra/spectra.hpp"

using namespace rfspectra;

namespace {

ExperimentConfig small_fig1() {
  auto config = ExperimentConfig::defaults_for(
      ExperimentKind::fig1_extreme_sv_vs_d);
  config.m = 20;
  config.n_features = 60;
  config.d_grid = {2, 5};
  config.sigma_grid = {3.0};
  config.trials = 4;
  config.seed = 99;
  return config;
}

}  // namespace

TEST_CASE("config parsing applies kind defaults then overrides") {
  const auto config = ExperimentConfig::from_json(
      R"({"experiment": "verify_thm5", "N": 40, "trials": 17})");
  CHECK(config.experiment == ExperimentKind::verify_thm5);
  CHECK(config.n_features == 40);
  CHECK(config.trials == 17);
  CHECK(config.sigma == 1.0);        // thm5 default
  CHECK(config.d_grid == std::vector<std::int64_t>{50});

  CHECK_THROWS_AS(ExperimentConfig::from_json(R"({"bogus": 1})"),
                  ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_json(R"({})"), ConfigError);
  CHECK_THROWS_AS(
      ExperimentConfig::from_json(R"({"experiment": "verify_thm1"})",
                                  ExperimentKind::fig1_extreme_sv_vs_d),
      ConfigError);
  const auto forced = ExperimentConfig::from_json(
      R"({})", ExperimentKind::fig2_sv_distribution_vs_N);
  CHECK(forced.n_grid == std::vector<std::int64_t>{500, 5000});
}

TEST_CASE("single trial yields zero standard deviation") {
  auto config = small_fig1();
  config.trials = 1;
  const auto result = run_fig1(config);
  for (const auto& point : result.grid) {
    for (double sd : point.std_dev) CHECK(sd == 0.0);
  }
}

TEST_CASE("degenerate 1x1 normalized matrix has unit spectrum") {
  auto config = ExperimentConfig::defaults_for(
      ExperimentKind::fig1_extreme_sv_vs_d);
  config.m = 1;
  config.n_features = 1;
  config.d_grid = {2};
  config.sigma_grid = {1.0};
  config.trials = 3;
  const auto result = run_fig1(config);
  REQUIRE(result.grid.size() == 1);
  for (const auto& row : result.grid[0].trial_values) {
    CHECK(row[0] == doctest::Approx(1.0).epsilon(1e-12));  // sigma_min
    CHECK(row[1] == doctest::Approx(1.0).epsilon(1e-12));  // sigma_max
    CHECK(row[2] == doctest::Approx(1.0).epsilon(1e-12));  // condition
  }
}

TEST_CASE("campaigns are deterministic and thread-count independent") {
  auto config = small_fig1();
  config.threads = 1;
  const auto serial = run_fig1(config);
  config.threads = 4;
  const auto parallel = run_fig1(config);
  CHECK(serial.to_csv() == parallel.to_csv());

  const auto repeat = run_fig1(config);
  CHECK(repeat.to_csv() == parallel.to_csv());
  CHECK(repeat.to_svg() == parallel.to_svg());
}

TEST_CASE("aggregates are recomputable from retained trial values") {
  const auto result = run_fig1(small_fig1());
  for (const auto& point : result.grid) {
    const auto trials = static_cast<double>(point.trial_values.size());
    for (std::size_t s = 0; s < point.statistic_names.size(); ++s) {
      double sum = 0.0;
      for (const auto& row : point.trial_values) sum += row[s];
      const double mean = sum / trials;
      CHECK(point.mean[s] == doctest::Approx(mean).epsilon(1e-12));
      double sq = 0.0;
      for (const auto& row : point.trial_values) {
        sq += (row[s] - mean) * (row[s] - mean);
      }
      CHECK(point.std_dev[s] ==
            doctest::Approx(std::sqrt(sq / (trials - 1.0))).epsilon(1e-12));
    }
  }
}

TEST_CASE("csv layout: config comment, header, one block per grid point") {
  auto config = small_fig1();
  config.trials = 2;
  const auto result = run_fig1(config);
  const auto csv = result.to_csv();
  CHECK(csv.rfind("# config {", 0) == 0);
  CHECK(csv.find("sigma,d,trial,sigma_min,sigma_max,condition_number") !=
        std::string::npos);
  std::size_t lines = 0;
  for (char c : csv) lines += c == '\n';
  // comment + header + 2 grid points x (2 trials + mean + std)
  CHECK(lines == 2 + 2 * 4);
}

TEST_CASE("sv distribution outputs stay sorted ascending") {
  auto config = ExperimentConfig::defaults_for(
      ExperimentKind::fig2_sv_distribution_vs_N);
  config.m = 15;
  config.n_grid = {30, 90};
  config.d_grid = {3, 8};
  config.trials = 3;
  config.seed = 5;
  const auto result = run_sv_distribution(config);
  REQUIRE(result.grid.size() == 4);
  for (const auto& point : result.grid) {
    REQUIRE(point.statistic_names.size() == 15);
    for (const auto& row : point.trial_values) {
      for (std::size_t i = 1; i < row.size(); ++i) {
        CHECK(row[i] >= row[i - 1]);
      }
    }
  }
}

TEST_CASE("verify_thm6 with a huge variance product concentrates hard") {
  auto config = ExperimentConfig::defaults_for(ExperimentKind::verify_thm6);
  config.n_features = 100;
  config.gamma = 1.0;
  config.sigma = 10.0;
  config.d_grid = {50};
  config.trials = 2;
  config.seed = 12;
  const auto result = verify_concentration(config);
  REQUIRE(result.grid.size() == 1);
  // entries <= exp(-gamma^2 sigma^2 / 4) = exp(-25) once the weights
  // separate, so the deviation stays below N exp(-25) plus solver noise
  for (const auto& row : result.grid[0].trial_values) {
    CHECK(row[0] < 100.0 * std::exp(-25.0) + 1e-9);
  }
  REQUIRE(result.bound_reports.size() == 1);
  CHECK(result.bound_reports[0].theorem_id == TheoremId::thm6);
}

TEST_CASE("cloned weights drive the conditional expectation to all-ones") {
  const DistributionSpec spec{Family::gaussian, 1.0, 3};
  const PointCloud cloned(spec, 0, 3,
                          {0.4, -1.0, 2.0, 0.4, -1.0, 2.0, 0.4, -1.0, 2.0});
  const auto expected = expected_gram_over_data(cloned, 1.0);
  CHECK(deviation_from_identity(expected) ==
        doctest::Approx(2.0).epsilon(1e-10));  // N - 1 with N = 3
}

TEST_CASE("verify_thm1 emits deviations plus matching bound reports") {
  auto config = ExperimentConfig::defaults_for(ExperimentKind::verify_thm1);
  config.m = 300;
  config.n_features = 20;
  config.d_grid = {6, 12};
  config.trials = 3;
  config.seed = 31;
  const auto result = verify_concentration(config);
  REQUIRE(result.grid.size() == 2);
  REQUIRE(result.bound_reports.size() == 2);
  CHECK(result.bound_reports[0].theorem_id == TheoremId::thm1);
  CHECK(result.grid[0].statistic_names[0] == "dev_gram_identity");
  CHECK(result.grid[0].statistic_names[1] == "dev_gram_full_expectation");
  CHECK(result.emit_exceedance);
  // exceedance lands in [0,1] on deviation columns, NaN elsewhere
  CHECK(result.grid[0].exceedance[0] >= 0.0);
  CHECK(result.grid[0].exceedance[0] <= 1.0);
  CHECK(std::isnan(result.grid[0].exceedance[2]));
  // the conclusion-bound column is the constant 2 eta
  for (const auto& row : result.grid[0].trial_values) {
    CHECK(row[2] == doctest::Approx(2.0 * config.eta));
  }

  // non-gaussian weights drop the closed-form full-expectation column
  config.family = Family::rademacher;
  const auto nongauss = verify_concentration(config);
  CHECK(nongauss.grid[0].statistic_names.size() == 2);
  CHECK(nongauss.grid[0].statistic_names[0] == "dev_gram_identity");
}

TEST_CASE("verify_thm4 exceedance never beats the simplified tail") {
  auto config = ExperimentConfig::defaults_for(ExperimentKind::verify_thm4);
  config.n_features = 9;
  config.eta = 0.7;
  config.delta = 0.2;
  config.d_grid = {10};
  config.trials = 20;
  config.seed = 77;
  config.gamma = 2.0;  // keeps gamma^2 >= (2/R) log(N/eta) at this scale
  // C = 6 sample count: m = ceil(6 eta^-2 N log(2N/delta))
  config.m = static_cast<std::int64_t>(
      std::ceil(6.0 / (config.eta * config.eta) * 9.0 *
                std::log(18.0 / config.delta)));
  const auto result = verify_concentration(config);
  const double fraction = result.grid[0].exceedance[0];
  const double tail =
      simplified_gram_tail(config.m, config.n_features, config.eta);
  const double se = std::sqrt(fraction * (1.0 - fraction) /
                              static_cast<double>(config.trials));
  CHECK(fraction <= tail + 3.0 * se + 1e-12);
  REQUIRE(result.bound_reports.size() == 1);
  CHECK(result.bound_reports[0].all_conditions_hold());
}

TEST_CASE("verify_thm3 with m = 1 gives exactly matching matrices") {
  auto config = ExperimentConfig::defaults_for(ExperimentKind::verify_thm3);
  config.m = 1;
  config.n_features = 50;
  config.d_grid = {5};
  config.trials = 2;
  const auto result = verify_kernel_concentration(config);
  for (const auto& row : result.grid[0].trial_values) {
    CHECK(row[0] <= 1e-12);
  }
}

TEST_CASE("verify_thm3 sanity: huge sigma behaves like the baseline") {
  // As sigma grows the kernel tends to I and the Gram concentrates near I;
  // the deviation stays on the same sqrt(m/N) scale as a moderate-sigma run.
  auto config = ExperimentConfig::defaults_for(ExperimentKind::verify_thm3);
  config.m = 20;
  config.n_features = 400;
  config.d_grid = {6};
  config.trials = 5;
  config.seed = 141;
  config.sigma = 2.0;
  const double baseline = verify_kernel_concentration(config).grid[0].mean[0];
  config.sigma = 40.0;
  const double huge = verify_kernel_concentration(config).grid[0].mean[0];
  CHECK(huge <= 4.0 * baseline);
  CHECK(huge >= baseline / 4.0);
}

TEST_CASE("verify_thm3 freezes the data across trials") {
  auto config = ExperimentConfig::defaults_for(ExperimentKind::verify_thm3);
  config.m = 10;
  config.n_features = 40;
  config.d_grid = {4};
  config.trials = 3;
  const auto result = verify_kernel_concentration(config);
  const auto& point = result.grid[0];
  // the recorded separation R is per-grid-point constant
  for (const auto& row : point.trial_values) {
    CHECK(row[1] == point.trial_values[0][1]);
  }
  REQUIRE(result.bound_reports.size() == 1);
  CHECK(result.bound_reports[0].theorem_id == TheoremId::thm3);
  CHECK(result.bound_reports[0].constants_used.at("R") ==
        doctest::Approx(point.trial_values[0][1]));
}

TEST_CASE("rademacher pairs in one dimension collide half the time") {
  auto config = ExperimentConfig::defaults_for(ExperimentKind::verify_thm5);
  config.n_features = 2;
  config.d_grid = {1};
  config.sigma = 2.0;
  config.t = 0.25;
  config.trials = 400;
  config.seed = 271;
  const auto result = verify_separation(config);
  REQUIRE(result.grid.size() == 3);  // three families
  const auto& rademacher = result.grid[1];
  CHECK(rademacher.parameters[0].second == "rademacher");
  // distance^2 is 0 or 16; the threshold (1-2t) sigma^2 d = 2 separates the
  // two outcomes, each with probability 1/2
  const double meets = rademacher.mean[2];
  CHECK(meets == doctest::Approx(0.5).epsilon(0.15));
  for (const auto& row : rademacher.trial_values) {
    const bool collision = row[0] == 0.0;
    const bool separated = std::abs(row[0] - 16.0) <= 1e-12;
    CHECK((collision || separated));
  }
  // continuous families never collide exactly (their exact-collision
  // probability is zero, so as t -> 1/2 their pass fraction tends to 1)
  for (const auto* point : {&result.grid[0], &result.grid[2]}) {
    for (const auto& row : point->trial_values) {
      CHECK(row[0] > 0.0);
    }
  }
}

TEST_CASE("lemma2 campaign reports fractions and fitted constants") {
  auto config = ExperimentConfig::defaults_for(ExperimentKind::lemma2_tail);
  config.d_grid = {4};
  config.trials = 500;
  config.t = 0.1;
  config.seed = 4;
  const auto result = run_lemma2_tail(config);
  REQUIRE(result.grid.size() == 3);
  CHECK(result.emit_fitted_constant);

  const auto& rademacher = result.grid[1];
  CHECK(rademacher.exceedance[0] == 0.0);  // ||X|| = sqrt(d) exactly
  CHECK(rademacher.fitted_constant[0] > 0.0);

  const auto& gaussian = result.grid[0];
  CHECK(gaussian.exceedance[0] >= 0.0);
  CHECK(gaussian.exceedance[0] <= 1.0);
  CHECK(gaussian.fitted_constant[0] > 0.0);

  const auto csv = result.to_csv();
  CHECK(csv.find("exceedance") != std::string::npos);
  CHECK(csv.find("fitted_C") != std::string::npos);
}

TEST_CASE("run_experiment dispatches on the configured kind") {
  auto config = small_fig1();
  const auto direct = run_fig1(config);
  const auto dispatched = run_experiment(config);
  CHECK(direct.to_csv() == dispatched.to_csv());
}
