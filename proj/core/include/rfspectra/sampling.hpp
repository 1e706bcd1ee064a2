#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rfspectra {

/// Per-component sampling family. All three are mean-zero subgaussian.
enum class Family { gaussian, rademacher, uniform };

std::string family_name(Family family);
Family family_from_name(std::string_view name);

/// Per-component law of one point cloud: family, exact per-component
/// variance, and ambient dimension.
///
/// Scaling conventions live in the named constructors: data clouds use
/// per-component variance gamma^2 / d (so E||x||^2 = gamma^2 independent of
/// d); weight clouds use per-component variance sigma^2.
struct DistributionSpec {
  Family family = Family::gaussian;
  double per_component_variance = 1.0;
  std::size_t dimension = 1;

  /// Throws ConfigError on nonpositive variance or zero dimension.
  void validate() const;

  static DistributionSpec data_cloud(Family family, double gamma,
                                     std::size_t d);
  static DistributionSpec weight_cloud(Family family, double sigma,
                                       std::size_t d);

  /// JSON object {"family": ..., "variance": ..., "d": ...}.
  std::string to_json() const;
  static DistributionSpec from_json(const std::string& text);
};

/// n points in R^d with their sampling provenance. Immutable after creation;
/// regenerating with the same (spec, n, seed) is bit-identical.
class PointCloud {
 public:
  PointCloud(DistributionSpec spec, std::uint64_t seed, std::size_t count,
             std::vector<double> flat);

  std::size_t size() const noexcept { return count_; }
  std::size_t dimension() const noexcept { return spec_.dimension; }
  std::span<const double> point(std::size_t i) const {
    return {flat_.data() + i * spec_.dimension, spec_.dimension};
  }
  const DistributionSpec& spec() const noexcept { return spec_; }
  std::uint64_t seed() const noexcept { return seed_; }
  const std::vector<double>& flat() const noexcept { return flat_; }

 private:
  DistributionSpec spec_;
  std::uint64_t seed_ = 0;
  std::size_t count_ = 0;
  std::vector<double> flat_;  // row-major, point-major order
};

/// Pairwise separation diagnostics of a point cloud.
struct SeparationReport {
  double min_pairwise_sq_distance = 0.0;
  double max_offdiag_inner = 0.0;  // max_{j != k} |<p_j, p_k>|
  double delta2 = 0.0;             // max_offdiag_inner / d (points scaled by 1/sqrt(d))
  double min_sq_norm = 0.0;
};

/// Draws n i.i.d. vectors with independent components of exactly
/// `spec.per_component_variance` variance. Deterministic in seed; components
/// are filled point-major from a single stream.
PointCloud sample_cloud(const DistributionSpec& spec, std::size_t n,
                        std::uint64_t seed);

/// Exact O(n^2 d) computation of all four separation fields.
/// Throws ConfigError when the cloud holds fewer than two points.
SeparationReport separation_report(const PointCloud& cloud);

/// Empirical fraction of draws X with | ||X||_2 - sqrt(d) | >= threshold.
/// Requires per-component variance exactly 1. Trial i uses the derived
/// stream seed ^ (i * odd constant).
double empirical_norm_tail(const DistributionSpec& spec, std::size_t trials,
                           double threshold, std::uint64_t seed);

}  // namespace rfspectra
