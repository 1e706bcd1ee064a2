#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "rfspectra/sampling.hpp"

namespace rfspectra {

/// Dense row-major complex m x N matrix of feature evaluations
/// entries[j*cols + k] = exp(i <x_j, w_k>). Raw entries are unimodular;
/// after column normalization every column has unit l2 norm.
struct FeatureMatrix {
  std::size_t rows = 0;  // m, number of data points
  std::size_t cols = 0;  // N, number of feature weights
  bool normalized = false;
  std::vector<std::complex<double>> entries;

  FeatureMatrix() = default;
  FeatureMatrix(std::size_t m, std::size_t n)
      : rows(m), cols(n), entries(m * n) {}

  std::complex<double>& at(std::size_t j, std::size_t k) {
    return entries[j * cols + k];
  }
  const std::complex<double>& at(std::size_t j, std::size_t k) const {
    return entries[j * cols + k];
  }
};

/// Dense complex Hermitian n x n matrix. set() mirrors the conjugate entry so
/// matrices built through it are Hermitian by construction.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(std::size_t n) : n_(n), entries_(n * n) {}

  std::size_t size() const noexcept { return n_; }

  const std::complex<double>& at(std::size_t j, std::size_t k) const {
    return entries_[j * n_ + k];
  }

  /// Stores v at (j,k) and conj(v) at (k,j).
  void set(std::size_t j, std::size_t k, std::complex<double> v) {
    entries_[j * n_ + k] = v;
    entries_[k * n_ + j] = std::conj(v);
  }

  /// Largest of |M[j][k] - conj(M[k][j])| over pairs and |Im M[j][j]|.
  double max_symmetry_residual() const;

  double trace_real() const;
  double frobenius_norm() const;

  const std::vector<std::complex<double>>& entries() const noexcept {
    return entries_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::complex<double>> entries_;
};

HermitianMatrix subtract(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix subtract_identity(const HermitianMatrix& m);

/// entries[j][k] = exp(i <x_j, w_k>) = (cos, sin) of the inner product.
/// Throws ConfigError when the clouds disagree on dimension.
FeatureMatrix build_feature_matrix(const PointCloud& data,
                                   const PointCloud& weights);

/// Divides each column by its exact l2 norm (1/sqrt(m) for raw unimodular
/// entries). Throws ConfigError when already normalized, NumericalError on a
/// zero column.
FeatureMatrix normalize_columns(const FeatureMatrix& a);

/// (1/m) A* A, N x N. Requires raw (unnormalized) A.
HermitianMatrix gram_over_weights(const FeatureMatrix& a);

/// (1/N) A A*, m x m. Requires raw (unnormalized) A.
HermitianMatrix gram_over_data(const FeatureMatrix& a);

namespace detail {

enum class GramSide { weights, data };

/// scale * A*A (weights side, N x N) or scale * AA* (data side, m x m).
/// One triangle is computed with blocked summation and mirrored.
HermitianMatrix conjugate_gram(const FeatureMatrix& a, GramSide side,
                               double scale);

}  // namespace detail

}  // namespace rfspectra
