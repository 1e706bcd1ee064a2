#pragma once

#include <cstddef>

#include "rfspectra/features.hpp"
#include "rfspectra/sampling.hpp"

namespace rfspectra {

/// Which expectation a closed-form matrix represents.
enum class ExpectationKind { over_data, over_weights, full_gaussian };

/// E_x[(1/m) A*A] for Gaussian data x ~ N(0, (gamma^2/d) I), conditioned on
/// the weights: N x N real symmetric, unit diagonal, entry (j,k) =
/// exp(-gamma^2 ||w_j - w_k||^2 / (2d)) for j != k.
HermitianMatrix expected_gram_over_data(const PointCloud& weights,
                                        double gamma);

/// E_w[(1/N) A A*] for Gaussian weights w ~ N(0, sigma^2 I): the Gaussian
/// kernel matrix, m x m, unit diagonal, entry (j,k) =
/// exp(-sigma^2 ||x_j - x_k||^2 / 2) for j != k.
HermitianMatrix gaussian_kernel_over_weights(const PointCloud& data,
                                             double sigma);

/// Off-diagonal entry of the full Gaussian-Gaussian expectation:
/// (2 gamma^2 sigma^2 / d + 1)^(-d/2), evaluated via log1p for large d.
double full_expectation_entry(double gamma, double sigma, std::size_t d);

/// n x n matrix with unit diagonal and constant off-diagonal
/// full_expectation_entry(gamma, sigma, d).
HermitianMatrix full_expectation_matrix(std::size_t n, double gamma,
                                        double sigma, std::size_t d);

}  // namespace rfspectra
