#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "rfspectra/errors.hpp"
#include "rfspectra/features.hpp"
#include "rfspectra/rng.hpp"
#include "rfspectra/spectra.hpp"
#include "support/oracles.hpp"

using namespace rfspectra;
namespace oracle = rfspectra::testing;

namespace {

PointCloud make_cloud(std::size_t d, std::vector<double> flat) {
  const std::size_t count = flat.size() / d;
  return PointCloud({Family::gaussian, 1.0, d}, 0, count, std::move(flat));
}

HermitianMatrix diag2(double a, double b) {
  HermitianMatrix m(2);
  m.set(0, 0, a);
  m.set(1, 1, b);
  return m;
}

}  // namespace

TEST_CASE("identity and analytic small matrices") {
  HermitianMatrix identity(3);
  for (std::size_t j = 0; j < 3; ++j) identity.set(j, j, 1.0);
  const auto eig = hermitian_eigenvalues(identity);
  for (double v : eig.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(eig.sigma_min == doctest::Approx(1.0));
  CHECK(eig.sigma_max == doctest::Approx(1.0));
  CHECK(eig.condition_finite);

  HermitianMatrix symmetric(2);
  symmetric.set(0, 0, 2.0);
  symmetric.set(1, 1, 2.0);
  symmetric.set(0, 1, 1.0);
  const auto pair = hermitian_eigenvalues(symmetric).values;
  CHECK(pair[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pair[1] == doctest::Approx(3.0).epsilon(1e-12));

  // [[1, i], [-i, 1]]: characteristic polynomial lambda^2 - 2 lambda.
  HermitianMatrix complex_pair(2);
  complex_pair.set(0, 0, 1.0);
  complex_pair.set(1, 1, 1.0);
  complex_pair.set(0, 1, {0.0, 1.0});
  const auto poly = oracle::char_poly(complex_pair);
  CHECK(poly[0] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(poly[1] == doctest::Approx(-2.0).epsilon(1e-14));
  const auto values = hermitian_eigenvalues(complex_pair).values;
  CHECK(values[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(values[1] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("eigenvalues match the characteristic-polynomial oracle, n <= 4") {
  Xoshiro256 rng(404);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const auto m = oracle::random_hermitian(n, rng);
    const auto values = hermitian_eigenvalues_detailed(m);
    const auto roots = oracle::all_real_roots(oracle::char_poly(m));
    REQUIRE(roots.size() == n);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(values.values[i] - roots[i]) <= 1e-9);
    }
    CHECK(values.pairing_residual <= 1e-10);
  }
}

TEST_CASE("eigenvalue sum vs trace, product vs determinant") {
  Xoshiro256 rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const auto m = oracle::random_hermitian(n, rng);
    const auto values = hermitian_eigenvalues(m).values;

    double sum = 0.0;
    double product = 1.0;
    for (double v : values) {
      sum += v;
      product *= v;
    }
    CHECK(std::abs(sum - m.trace_real()) <= 1e-9 * m.frobenius_norm());

    const auto det = oracle::det_cofactor(m);
    CHECK(std::abs(det.imag()) <= 1e-9);
    CHECK(product ==
          doctest::Approx(det.real()).epsilon(1e-8).scale(
              std::max(1.0, std::abs(det.real()))));
  }
}

TEST_CASE("eigenpairs satisfy the backward-error contract") {
  Xoshiro256 rng(99);
  const auto m = oracle::random_hermitian(6, rng);
  const auto sys = hermitian_eigenpairs(m);
  REQUIRE(sys.values.size() == 6);
  CHECK(sys.pairing_residual <= 1e-10);
  for (std::size_t i = 0; i < 6; ++i) {
    double residual_sq = 0.0;
    double vec_sq = 0.0;
    for (std::size_t r = 0; r < 6; ++r) {
      std::complex<double> mv{0.0, 0.0};
      for (std::size_t c = 0; c < 6; ++c) {
        mv += m.at(r, c) * sys.vectors[i][c];
      }
      residual_sq += std::norm(mv - sys.values[i] * sys.vectors[i][r]);
      vec_sq += std::norm(sys.vectors[i][r]);
    }
    CHECK(std::sqrt(vec_sq) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::sqrt(residual_sq) <= 1e-10 * m.frobenius_norm());
  }
}

TEST_CASE("non-hermitian input is rejected") {
  HermitianMatrix bad(2);
  bad.set(0, 0, {1.0, 1.0});  // conjugate mirroring leaves Im = -1 on diag
  bad.set(1, 1, 1.0);
  CHECK(bad.max_symmetry_residual() > 1e-8);
  CHECK_THROWS_AS(hermitian_eigenvalues(bad), NumericalError);
}

TEST_CASE("singular values of single-row matrices") {
  const auto a = build_feature_matrix(
      make_cloud(1, {0.7}), make_cloud(1, {1.0, -2.0, 0.25, 3.0, 0.4}));
  const auto raw = singular_values(a);
  REQUIRE(raw.values.size() == 1);
  CHECK(raw.values[0] == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));

  const auto normalized = singular_values(normalize_columns(a));
  CHECK(normalized.values[0] ==
        doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
}

TEST_CASE("2x2 singular values match the closed form") {
  const auto a = build_feature_matrix(make_cloud(1, {0.0, std::numbers::pi}),
                                      make_cloud(1, {1.0, 2.0}));
  const auto sv = singular_values(a);

  // Closed form from the eigenvalues of A*A.
  const auto gram = detail::conjugate_gram(a, detail::GramSide::weights, 1.0);
  const auto [lo, hi] = oracle::eigen_2x2(gram.at(0, 0).real(), gram.at(0, 1),
                                          gram.at(1, 1).real());
  CHECK(sv.values[0] ==
        doctest::Approx(std::sqrt(std::max(lo, 0.0))).epsilon(1e-10));
  CHECK(sv.values[1] == doctest::Approx(std::sqrt(hi)).epsilon(1e-10));
}

TEST_CASE("singular values scale linearly and ignore row permutations") {
  const auto data = sample_cloud({Family::gaussian, 0.5, 3}, 6, 3);
  const auto weights = sample_cloud({Family::gaussian, 1.0, 3}, 4, 4);
  const auto a = build_feature_matrix(data, weights);
  const auto sv = singular_values(a);

  SUBCASE("scaling by c scales every value by |c|") {
    FeatureMatrix scaled = a;
    for (auto& entry : scaled.entries) entry *= -2.5;
    const auto sv_scaled = singular_values(scaled);
    for (std::size_t i = 0; i < sv.values.size(); ++i) {
      CHECK(sv_scaled.values[i] ==
            doctest::Approx(2.5 * sv.values[i]).epsilon(1e-12));
    }
  }

  SUBCASE("row permutation leaves the values unchanged") {
    FeatureMatrix permuted = a;
    for (std::size_t k = 0; k < a.cols; ++k) {
      for (std::size_t j = 0; j < a.rows; ++j) {
        permuted.at(j, k) = a.at(a.rows - 1 - j, k);
      }
    }
    const auto sv_perm = singular_values(permuted);
    for (std::size_t i = 0; i < sv.values.size(); ++i) {
      CHECK(std::abs(sv_perm.values[i] - sv.values[i]) <= 1e-10);
    }
  }
}

TEST_CASE("spectral norm and deviation from identity") {
  HermitianMatrix zero(3);
  CHECK(spectral_norm_hermitian(zero) <= 1e-14);

  CHECK(spectral_norm_hermitian(diag2(-3.0, 2.0)) ==
        doctest::Approx(3.0).epsilon(1e-12));
  CHECK(deviation_from_identity(diag2(0.5, 1.9)) ==
        doctest::Approx(0.9).epsilon(1e-12));

  HermitianMatrix identity(4);
  for (std::size_t j = 0; j < 4; ++j) identity.set(j, j, 1.0);
  CHECK(deviation_from_identity(identity) <= 1e-12);

  SUBCASE("matches the root oracle on random 5x5 matrices") {
    Xoshiro256 rng(202);
    for (int trial = 0; trial < 10; ++trial) {
      const auto m = oracle::random_hermitian(4, rng);
      const auto roots = oracle::all_real_roots(oracle::char_poly(m));
      REQUIRE(!roots.empty());
      const double expected =
          std::max(std::abs(roots.front()), std::abs(roots.back()));
      CHECK(spectral_norm_hermitian(m) ==
            doctest::Approx(expected).epsilon(1e-9));
    }
  }

  SUBCASE("deviation of the hand example gram") {
    const auto a = build_feature_matrix(
        make_cloud(1, {0.0, std::numbers::pi}), make_cloud(1, {1.0, 2.0}));
    const auto gram = gram_over_weights(a);
    const auto [lo, hi] = oracle::eigen_2x2(
        gram.at(0, 0).real(), gram.at(0, 1), gram.at(1, 1).real());
    const double expected = std::max(std::abs(lo - 1.0), std::abs(hi - 1.0));
    CHECK(deviation_from_identity(gram) ==
          doctest::Approx(expected).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("condition number flags") {
  const auto finite = SpectrumResult::from_values({0.5, 2.0},
                                                  SpectrumKind::singular_values);
  CHECK(finite.condition_finite);
  CHECK(finite.condition_number == doctest::Approx(4.0));

  const auto rank_deficient =
      SpectrumResult::from_values({0.0, 2.0}, SpectrumKind::singular_values);
  CHECK(!rank_deficient.condition_finite);
  CHECK(std::isinf(rank_deficient.condition_number));
}
