#pragma once

#include <complex>
#include <vector>

#include "rfspectra/features.hpp"

namespace rfspectra {

enum class SpectrumKind { singular_values, eigenvalues };

/// Sorted spectrum with its derived statistics.
struct SpectrumResult {
  std::vector<double> values;  // ascending
  SpectrumKind kind = SpectrumKind::eigenvalues;
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  double condition_number = 0.0;  // +inf when flagged infinite
  bool condition_finite = false;

  /// Sorts ascending and fills the derived fields. The condition number is
  /// flagged infinite when sigma_min <= 1e-14 * sigma_max.
  static SpectrumResult from_values(std::vector<double> values,
                                    SpectrumKind kind);
};

/// Eigenvalues plus the residual of the real-embedding pair check.
struct EigenvalueResult {
  std::vector<double> values;      // ascending
  double pairing_residual = 0.0;   // max |lambda[2i] - lambda[2i+1]| of the
                                   // doubled embedding spectrum
};

/// All n real eigenvalues of a complex Hermitian matrix, ascending. Solved on
/// the 2n x 2n real symmetric embedding [[Re,-Im],[Im,Re]], whose spectrum is
/// that of M doubled; deduplicated by taking every second sorted value.
/// Throws NumericalError on symmetry residual > 1e-8 or unpaired doubling.
SpectrumResult hermitian_eigenvalues(const HermitianMatrix& m);
EigenvalueResult hermitian_eigenvalues_detailed(const HermitianMatrix& m);

/// Eigenpairs; vectors[i] pairs with values[i] and has unit l2 norm.
struct HermitianEigenSystem {
  std::vector<double> values;
  std::vector<std::vector<std::complex<double>>> vectors;
  double pairing_residual = 0.0;
};
HermitianEigenSystem hermitian_eigenpairs(const HermitianMatrix& m);

/// Singular values of A: square roots of the eigenvalues of the smaller of
/// A*A and AA* (unscaled); count = min(m, N). Rounding negatives down to
/// -1e-10 * max(1, lambda_max) clamp to zero, anything lower throws.
SpectrumResult singular_values(const FeatureMatrix& a);

/// max |eigenvalue| == ||M||_2 for Hermitian M.
double spectral_norm_hermitian(const HermitianMatrix& m);

/// max |eigenvalue - 1| == ||M - I||_2 for Hermitian M.
double deviation_from_identity(const HermitianMatrix& m);

}  // namespace rfspectra
