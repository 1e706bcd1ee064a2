#include "rfspectra/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rfspectra/errors.hpp"
#include "rfspectra/jacobi.hpp"

namespace rfspectra {

namespace {

constexpr double kSymmetryTolerance = 1e-8;

// [[Re M, -Im M], [Im M, Re M]], row-major 2n x 2n.
std::vector<double> real_embedding(const HermitianMatrix& m) {
  const std::size_t n = m.size();
  std::vector<double> e(4 * n * n);
  const std::size_t stride = 2 * n;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::complex<double> v = m.at(j, k);
      e[j * stride + k] = v.real();
      e[j * stride + (n + k)] = -v.imag();
      e[(n + j) * stride + k] = v.imag();
      e[(n + j) * stride + (n + k)] = v.real();
    }
  }
  return e;
}

void check_hermitian(const HermitianMatrix& m) {
  if (m.size() == 0) throw ConfigError("empty Hermitian matrix");
  if (m.max_symmetry_residual() > kSymmetryTolerance) {
    throw NumericalError("matrix is not Hermitian within tolerance 1e-8");
  }
}

// Collapses the doubled embedding spectrum (sorted ascending) to n values by
// taking every second entry; checks the pairing.
EigenvalueResult collapse_pairs(const std::vector<double>& doubled,
                                double frobenius) {
  EigenvalueResult out;
  out.values.reserve(doubled.size() / 2);
  for (std::size_t i = 0; i + 1 < doubled.size(); i += 2) {
    out.values.push_back(doubled[i]);
    out.pairing_residual =
        std::max(out.pairing_residual, std::abs(doubled[i + 1] - doubled[i]));
  }
  if (out.pairing_residual > 1e-10 * std::max(1.0, frobenius)) {
    throw NumericalError(
        "embedding eigenvalues failed to pair within tolerance");
  }
  return out;
}

}  // namespace

SpectrumResult SpectrumResult::from_values(std::vector<double> values,
                                           SpectrumKind kind) {
  std::sort(values.begin(), values.end());
  SpectrumResult result;
  result.kind = kind;
  result.values = std::move(values);
  if (result.values.empty()) {
    throw ConfigError("empty spectrum");
  }
  result.sigma_min = result.values.front();
  result.sigma_max = result.values.back();
  if (result.sigma_min > 1e-14 * result.sigma_max) {
    result.condition_number = result.sigma_max / result.sigma_min;
    result.condition_finite = true;
  } else {
    result.condition_number = std::numeric_limits<double>::infinity();
    result.condition_finite = false;
  }
  return result;
}

EigenvalueResult hermitian_eigenvalues_detailed(const HermitianMatrix& m) {
  check_hermitian(m);
  const auto embedded = jacobi_eigen(real_embedding(m), 2 * m.size());
  return collapse_pairs(embedded.values, m.frobenius_norm());
}

SpectrumResult hermitian_eigenvalues(const HermitianMatrix& m) {
  return SpectrumResult::from_values(hermitian_eigenvalues_detailed(m).values,
                                     SpectrumKind::eigenvalues);
}

HermitianEigenSystem hermitian_eigenpairs(const HermitianMatrix& m) {
  check_hermitian(m);
  const std::size_t n = m.size();
  const auto embedded = jacobi_eigen(real_embedding(m), 2 * n, true);

  HermitianEigenSystem sys;
  sys.values.reserve(n);
  sys.vectors.reserve(n);
  for (std::size_t i = 0; i + 1 < embedded.values.size(); i += 2) {
    sys.pairing_residual = std::max(
        sys.pairing_residual,
        std::abs(embedded.values[i + 1] - embedded.values[i]));
    sys.values.push_back(embedded.values[i]);
    // Embedding eigenvector [a; b] maps to the complex eigenvector a + i b,
    // already of unit norm.
    std::vector<std::complex<double>> vec(n);
    const double* row = embedded.vectors.data() + i * (2 * n);
    for (std::size_t c = 0; c < n; ++c) vec[c] = {row[c], row[n + c]};
    sys.vectors.push_back(std::move(vec));
  }
  if (sys.pairing_residual > 1e-10 * std::max(1.0, m.frobenius_norm())) {
    throw NumericalError(
        "embedding eigenvalues failed to pair within tolerance");
  }
  return sys;
}

SpectrumResult singular_values(const FeatureMatrix& a) {
  if (a.rows == 0 || a.cols == 0) throw ConfigError("empty feature matrix");
  const auto side = a.rows <= a.cols ? detail::GramSide::data
                                     : detail::GramSide::weights;
  const HermitianMatrix gram = detail::conjugate_gram(a, side, 1.0);
  auto eig = hermitian_eigenvalues_detailed(gram).values;

  const double lambda_max = eig.empty() ? 0.0 : eig.back();
  const double clamp_floor = -1e-10 * std::max(1.0, lambda_max);
  for (auto& lambda : eig) {
    if (lambda < clamp_floor) {
      throw NumericalError(
          "Gram eigenvalue is too negative to clamp before the square root");
    }
    lambda = std::sqrt(std::max(lambda, 0.0));
  }
  return SpectrumResult::from_values(std::move(eig),
                                     SpectrumKind::singular_values);
}

double spectral_norm_hermitian(const HermitianMatrix& m) {
  const auto eig = hermitian_eigenvalues_detailed(m).values;
  return std::max(std::abs(eig.front()), std::abs(eig.back()));
}

double deviation_from_identity(const HermitianMatrix& m) {
  const auto eig = hermitian_eigenvalues_detailed(m).values;
  double deviation = 0.0;
  for (double lambda : eig) {
    deviation = std::max(deviation, std::abs(lambda - 1.0));
  }
  return deviation;
}

}  // namespace rfspectra
