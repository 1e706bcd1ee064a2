#include "rfspectra/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rfspectra/errors.hpp"

namespace rfspectra {

namespace {

constexpr int kMaxSweeps = 64;
constexpr double kConvergenceFactor = 1e-12;  // vs ||M||_F

double frobenius(const std::vector<double>& a) {
  double acc = 0.0;
  for (double v : a) acc += v * v;
  return std::sqrt(acc);
}

}  // namespace

RealSymmetricEigen jacobi_eigen(std::vector<double> a, std::size_t n,
                                bool want_vectors) {
  if (n == 0) throw ConfigError("cannot eigendecompose an empty matrix");
  if (a.size() != n * n) {
    throw ConfigError("matrix storage does not match n*n");
  }

  std::vector<double> v;
  if (want_vectors) {
    v.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
  }

  // Working diagonal plus the classic accumulators: b carries the diagonal
  // refreshed once per sweep, z collects the rotation increments.
  std::vector<double> d(n), b(n), z(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) d[i] = b[i] = a[i * n + i];

  const double tol = kConvergenceFactor * frobenius(a);

  bool converged = false;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    // Off-diagonal mass: abs sum drives the rotation threshold, the
    // Frobenius norm drives the convergence test.
    double abs_sum = 0.0;
    double off_sq = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        abs_sum += std::abs(apq);
        off_sq += 2.0 * apq * apq;
      }
    }
    if (std::sqrt(off_sq) <= tol) {
      converged = true;
      break;
    }

    const double thresh =
        sweep < 3 ? 0.2 * abs_sum / static_cast<double>(n * n) : 0.0;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        const double g = 100.0 * std::abs(apq);

        // After a few sweeps, zero a pivot that no longer perturbs the
        // diagonal at working precision.
        if (sweep > 3 && std::abs(d[p]) + g == std::abs(d[p]) &&
            std::abs(d[q]) + g == std::abs(d[q])) {
          a[p * n + q] = 0.0;
          continue;
        }
        if (std::abs(apq) <= thresh) continue;

        double h = d[q] - d[p];
        double t;
        if (std::abs(h) + g == std::abs(h)) {
          t = apq / h;
        } else {
          const double theta = 0.5 * h / apq;
          t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        h = t * apq;
        z[p] -= h;
        z[q] += h;
        d[p] -= h;
        d[q] += h;
        a[p * n + q] = 0.0;

        // Only the upper triangle is scanned and updated; the lower triangle
        // goes stale and is never read.
        auto rotate = [&](std::size_t rp, std::size_t cp, std::size_t rq,
                          std::size_t cq) {
          const double gg = a[rp * n + cp];
          const double hh = a[rq * n + cq];
          a[rp * n + cp] = gg - s * (hh + gg * tau);
          a[rq * n + cq] = hh + s * (gg - hh * tau);
        };
        for (std::size_t r = 0; r < p; ++r) rotate(r, p, r, q);
        for (std::size_t r = p + 1; r < q; ++r) rotate(p, r, r, q);
        for (std::size_t r = q + 1; r < n; ++r) rotate(p, r, q, r);

        if (want_vectors) {
          for (std::size_t r = 0; r < n; ++r) {
            const double gg = v[r * n + p];
            const double hh = v[r * n + q];
            v[r * n + p] = gg - s * (hh + gg * tau);
            v[r * n + q] = hh + s * (gg - hh * tau);
          }
        }
      }
    }

    for (std::size_t i = 0; i < n; ++i) {
      b[i] += z[i];
      d[i] = b[i];
      z[i] = 0.0;
    }
  }
  if (!converged) {
    throw NumericalError("Jacobi eigensolver failed to converge in 64 sweeps");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return d[i] < d[j]; });

  RealSymmetricEigen result;
  result.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) result.values[i] = d[order[i]];
  if (want_vectors) {
    result.vectors.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t col = order[i];
      for (std::size_t r = 0; r < n; ++r) {
        result.vectors[i * n + r] = v[r * n + col];
      }
    }
  }
  return result;
}

}  // namespace rfspectra
