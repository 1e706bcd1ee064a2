#include "rfspectra/kernels.hpp"

#include <cmath>

#include "rfspectra/errors.hpp"

namespace rfspectra {

namespace {

double sq_distance(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    acc += diff * diff;
  }
  return acc;
}

}  // namespace

HermitianMatrix expected_gram_over_data(const PointCloud& weights,
                                        double gamma) {
  if (!(gamma > 0.0)) throw ConfigError("gamma must be positive");
  if (weights.size() == 0) throw ConfigError("weights cloud is empty");

  const std::size_t n = weights.size();
  const double d = static_cast<double>(weights.dimension());
  HermitianMatrix out(n);
  for (std::size_t j = 0; j < n; ++j) {
    out.set(j, j, 1.0);
    for (std::size_t k = j + 1; k < n; ++k) {
      const double sq = sq_distance(weights.point(j), weights.point(k));
      out.set(j, k, std::exp(-gamma * gamma * sq / (2.0 * d)));
    }
  }
  return out;
}

HermitianMatrix gaussian_kernel_over_weights(const PointCloud& data,
                                             double sigma) {
  if (!(sigma > 0.0)) throw ConfigError("sigma must be positive");
  if (data.size() == 0) throw ConfigError("data cloud is empty");

  const std::size_t m = data.size();
  HermitianMatrix out(m);
  for (std::size_t j = 0; j < m; ++j) {
    out.set(j, j, 1.0);
    for (std::size_t k = j + 1; k < m; ++k) {
      const double sq = sq_distance(data.point(j), data.point(k));
      out.set(j, k, std::exp(-sigma * sigma * sq / 2.0));
    }
  }
  return out;
}

double full_expectation_entry(double gamma, double sigma, std::size_t d) {
  if (!(gamma > 0.0) || !(sigma > 0.0) || d == 0) {
    throw ConfigError("full_expectation_entry requires positive parameters");
  }
  const double dd = static_cast<double>(d);
  const double ratio = 2.0 * gamma * gamma * sigma * sigma / dd;
  return std::exp(-0.5 * dd * std::log1p(ratio));
}

HermitianMatrix full_expectation_matrix(std::size_t n, double gamma,
                                        double sigma, std::size_t d) {
  if (n == 0) throw ConfigError("matrix size must be positive");
  const double off = full_expectation_entry(gamma, sigma, d);
  HermitianMatrix out(n);
  for (std::size_t j = 0; j < n; ++j) {
    out.set(j, j, 1.0);
    for (std::size_t k = j + 1; k < n; ++k) out.set(j, k, off);
  }
  return out;
}

}  // namespace rfspectra
