#include "rfspectra/sampling.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include <json.hpp>

#include "rfspectra/errors.hpp"
#include "rfspectra/rng.hpp"

namespace rfspectra {

namespace {

using nlohmann::json;

double sq_distance(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    acc += diff * diff;
  }
  return acc;
}

double inner(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace

std::string family_name(Family family) {
  switch (family) {
    case Family::gaussian:
      return "gaussian";
    case Family::rademacher:
      return "rademacher";
    case Family::uniform:
      return "uniform";
  }
  throw ConfigError("unknown family enumerator");
}

Family family_from_name(std::string_view name) {
  if (name == "gaussian") return Family::gaussian;
  if (name == "rademacher") return Family::rademacher;
  if (name == "uniform") return Family::uniform;
  throw ConfigError("unknown family: " + std::string(name));
}

void DistributionSpec::validate() const {
  if (!(per_component_variance > 0.0) ||
      !std::isfinite(per_component_variance)) {
    throw ConfigError("per-component variance must be positive and finite");
  }
  if (dimension == 0) {
    throw ConfigError("dimension must be a positive integer");
  }
}

DistributionSpec DistributionSpec::data_cloud(Family family, double gamma,
                                              std::size_t d) {
  if (!(gamma > 0.0)) throw ConfigError("gamma must be positive");
  if (d == 0) throw ConfigError("dimension must be a positive integer");
  return {family, gamma * gamma / static_cast<double>(d), d};
}

DistributionSpec DistributionSpec::weight_cloud(Family family, double sigma,
                                                std::size_t d) {
  if (!(sigma > 0.0)) throw ConfigError("sigma must be positive");
  if (d == 0) throw ConfigError("dimension must be a positive integer");
  return {family, sigma * sigma, d};
}

std::string DistributionSpec::to_json() const {
  json obj;
  obj["family"] = family_name(family);
  obj["variance"] = per_component_variance;
  obj["d"] = dimension;
  return obj.dump();
}

DistributionSpec DistributionSpec::from_json(const std::string& text) {
  json obj;
  try {
    obj = json::parse(text);
  } catch (const json::parse_error& err) {
    throw ConfigError(std::string("invalid DistributionSpec JSON: ") +
                      err.what());
  }
  if (!obj.is_object() || !obj.contains("family") ||
      !obj.contains("variance") || !obj.contains("d")) {
    throw ConfigError(
        "DistributionSpec JSON requires keys \"family\", \"variance\", \"d\"");
  }
  DistributionSpec spec;
  spec.family = family_from_name(obj.at("family").get<std::string>());
  spec.per_component_variance = obj.at("variance").get<double>();
  const auto d = obj.at("d").get<std::int64_t>();
  if (d <= 0) throw ConfigError("dimension must be a positive integer");
  spec.dimension = static_cast<std::size_t>(d);
  spec.validate();
  return spec;
}

PointCloud::PointCloud(DistributionSpec spec, std::uint64_t seed,
                       std::size_t count, std::vector<double> flat)
    : spec_(spec), seed_(seed), count_(count), flat_(std::move(flat)) {
  if (flat_.size() != count_ * spec_.dimension) {
    throw ConfigError("point cloud storage does not match count * dimension");
  }
}

PointCloud sample_cloud(const DistributionSpec& spec, std::size_t n,
                        std::uint64_t seed) {
  spec.validate();
  if (n == 0) throw ConfigError("cannot sample an empty point cloud");

  const std::size_t d = spec.dimension;
  std::vector<double> flat(n * d);
  Xoshiro256 rng(seed);

  switch (spec.family) {
    case Family::gaussian: {
      NormalSampler normal(rng);
      const double scale = std::sqrt(spec.per_component_variance);
      for (auto& value : flat) value = scale * normal.next();
      break;
    }
    case Family::rademacher: {
      const double magnitude = std::sqrt(spec.per_component_variance);
      for (auto& value : flat) value = magnitude * rng.sign();
      break;
    }
    case Family::uniform: {
      // Half-width sqrt(3 v) gives component variance exactly v.
      const double half_width = std::sqrt(3.0 * spec.per_component_variance);
      for (auto& value : flat)
        value = half_width * (2.0 * rng.uniform01() - 1.0);
      break;
    }
  }
  return PointCloud(spec, seed, n, std::move(flat));
}

SeparationReport separation_report(const PointCloud& cloud) {
  const std::size_t n = cloud.size();
  if (n < 2) {
    throw ConfigError("separation report requires at least two points");
  }
  SeparationReport report;
  report.min_pairwise_sq_distance = std::numeric_limits<double>::infinity();
  report.max_offdiag_inner = 0.0;
  report.min_sq_norm = std::numeric_limits<double>::infinity();

  for (std::size_t j = 0; j < n; ++j) {
    const auto pj = cloud.point(j);
    report.min_sq_norm = std::min(report.min_sq_norm, inner(pj, pj));
    for (std::size_t k = j + 1; k < n; ++k) {
      const auto pk = cloud.point(k);
      report.min_pairwise_sq_distance =
          std::min(report.min_pairwise_sq_distance, sq_distance(pj, pk));
      report.max_offdiag_inner =
          std::max(report.max_offdiag_inner, std::abs(inner(pj, pk)));
    }
  }
  report.delta2 =
      report.max_offdiag_inner / static_cast<double>(cloud.dimension());
  return report;
}

double empirical_norm_tail(const DistributionSpec& spec, std::size_t trials,
                           double threshold, std::uint64_t seed) {
  spec.validate();
  if (spec.per_component_variance != 1.0) {
    throw ConfigError("empirical_norm_tail requires per-component variance 1");
  }
  if (trials == 0) throw ConfigError("trials must be >= 1");

  const double sqrt_d = std::sqrt(static_cast<double>(spec.dimension));
  std::size_t exceed = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    const PointCloud draw = sample_cloud(spec, 1, stream_seed(seed, i));
    const double norm = std::sqrt(inner(draw.point(0), draw.point(0)));
    if (std::abs(norm - sqrt_d) >= threshold) ++exceed;
  }
  return static_cast<double>(exceed) / static_cast<double>(trials);
}

}  // namespace rfspectra
