#include "rfspectra/features.hpp"

#include <cmath>

#include "rfspectra/errors.hpp"

namespace rfspectra {

namespace {

// Pairwise summation of term(i) over [lo, hi); the fixed recursion keeps the
// rounding error O(log n) and the result independent of thread schedule.
template <class Term>
std::complex<double> pairwise_sum(std::size_t lo, std::size_t hi,
                                  const Term& term) {
  if (hi - lo <= 256) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      const std::complex<double> value = term(i);
      re += value.real();
      im += value.imag();
    }
    return {re, im};
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(lo, mid, term) + pairwise_sum(mid, hi, term);
}

}  // namespace

double HermitianMatrix::max_symmetry_residual() const {
  double residual = 0.0;
  for (std::size_t j = 0; j < n_; ++j) {
    residual = std::max(residual, std::abs(at(j, j).imag()));
    for (std::size_t k = j + 1; k < n_; ++k) {
      residual = std::max(residual, std::abs(at(j, k) - std::conj(at(k, j))));
    }
  }
  return residual;
}

double HermitianMatrix::trace_real() const {
  double trace = 0.0;
  for (std::size_t j = 0; j < n_; ++j) trace += at(j, j).real();
  return trace;
}

double HermitianMatrix::frobenius_norm() const {
  double acc = 0.0;
  for (const auto& value : entries_) acc += std::norm(value);
  return std::sqrt(acc);
}

HermitianMatrix subtract(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.size() != b.size()) {
    throw ConfigError("cannot subtract Hermitian matrices of different sizes");
  }
  HermitianMatrix out(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    for (std::size_t k = j; k < a.size(); ++k) {
      out.set(j, k, a.at(j, k) - b.at(j, k));
    }
  }
  return out;
}

HermitianMatrix subtract_identity(const HermitianMatrix& m) {
  HermitianMatrix out(m.size());
  for (std::size_t j = 0; j < m.size(); ++j) {
    for (std::size_t k = j; k < m.size(); ++k) {
      out.set(j, k, j == k ? m.at(j, k) - 1.0 : m.at(j, k));
    }
  }
  return out;
}

FeatureMatrix build_feature_matrix(const PointCloud& data,
                                   const PointCloud& weights) {
  if (data.dimension() != weights.dimension()) {
    throw ConfigError("data and weights must share the same dimension");
  }
  const std::size_t m = data.size();
  const std::size_t n = weights.size();
  const std::size_t d = data.dimension();

  FeatureMatrix a(m, n);
  for (std::size_t j = 0; j < m; ++j) {
    const auto x = data.point(j);
    for (std::size_t k = 0; k < n; ++k) {
      const auto w = weights.point(k);
      double phase = 0.0;
      for (std::size_t c = 0; c < d; ++c) phase += x[c] * w[c];
      a.at(j, k) = {std::cos(phase), std::sin(phase)};
    }
  }
  return a;
}

FeatureMatrix normalize_columns(const FeatureMatrix& a) {
  if (a.normalized) {
    throw ConfigError("feature matrix is already column-normalized");
  }
  FeatureMatrix out = a;
  out.normalized = true;
  for (std::size_t k = 0; k < a.cols; ++k) {
    const std::complex<double> sq_norm = pairwise_sum(
        0, a.rows, [&](std::size_t j) -> std::complex<double> {
          return {std::norm(a.at(j, k)), 0.0};
        });
    const double norm = std::sqrt(sq_norm.real());
    if (!(norm > 0.0)) {
      throw NumericalError("cannot normalize a zero column");
    }
    const double inv = 1.0 / norm;
    for (std::size_t j = 0; j < a.rows; ++j) out.at(j, k) *= inv;
  }
  return out;
}

namespace detail {

HermitianMatrix conjugate_gram(const FeatureMatrix& a, GramSide side,
                               double scale) {
  const std::size_t n =
      side == GramSide::weights ? a.cols : a.rows;  // output size
  const std::size_t depth =
      side == GramSide::weights ? a.rows : a.cols;  // summation axis

  HermitianMatrix gram(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j; k < n; ++k) {
      std::complex<double> sum;
      if (side == GramSide::weights) {
        // (A*A)_{jk} = sum_l conj(A[l][j]) A[l][k]
        sum = pairwise_sum(0, depth, [&](std::size_t l) {
          return std::conj(a.at(l, j)) * a.at(l, k);
        });
      } else {
        // (AA*)_{jk} = sum_l A[j][l] conj(A[k][l])
        sum = pairwise_sum(0, depth, [&](std::size_t l) {
          return a.at(j, l) * std::conj(a.at(k, l));
        });
      }
      gram.set(j, k, sum * scale);
    }
  }
  return gram;
}

}  // namespace detail

HermitianMatrix gram_over_weights(const FeatureMatrix& a) {
  if (a.normalized) {
    throw ConfigError(
        "gram_over_weights expects a raw matrix; the 1/m factor supplies the "
        "normalization");
  }
  return detail::conjugate_gram(a, detail::GramSide::weights,
                                1.0 / static_cast<double>(a.rows));
}

HermitianMatrix gram_over_data(const FeatureMatrix& a) {
  if (a.normalized) {
    throw ConfigError(
        "gram_over_data expects a raw matrix; the 1/N factor supplies the "
        "normalization");
  }
  return detail::conjugate_gram(a, detail::GramSide::data,
                                1.0 / static_cast<double>(a.cols));
}

}  // namespace rfspectra
