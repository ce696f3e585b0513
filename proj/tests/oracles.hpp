#pragma once

// Test-side reference routines. They deliberately share no code with the
// library beyond the matrix container so that agreement is meaningful.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "causal_sep/density_matrix.hpp"

namespace oracle {

using causal_sep::DensityMatrix;
using cplx = std::complex<double>;

inline std::vector<int> digits(std::int64_t index, int dim, int parties) {
  std::vector<int> out(static_cast<std::size_t>(parties));
  for (int n = parties - 1; n >= 0; --n) {
    out[static_cast<std::size_t>(n)] = static_cast<int>(index % dim);
    index /= dim;
  }
  return out;
}

inline std::int64_t encode(const std::vector<int>& labels, int dim) {
  std::int64_t idx = 0;
  for (int k : labels) idx = idx * dim + k;
  return idx;
}

inline std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

/// Partial transpose by decoding both indices into labels and swapping the chosen parties.
inline DensityMatrix partial_transpose(const DensityMatrix& rho, const std::vector<int>& parties) {
  const int d = rho.dim();
  const int n = rho.parties();
  DensityMatrix::Matrix out(rho.size(), rho.size());
  for (std::int64_t r = 0; r < rho.size(); ++r) {
    for (std::int64_t c = 0; c < rho.size(); ++c) {
      auto a = digits(r, d, n);
      auto b = digits(c, d, n);
      for (int party : parties) std::swap(a[static_cast<std::size_t>(party)], b[static_cast<std::size_t>(party)]);
      out(r, c) = rho(encode(a, d), encode(b, d));
    }
  }
  return DensityMatrix(d, n, std::move(out), rho.normalized());
}

/// Cyclic Jacobi on the real symmetric embedding [[Re, -Im], [Im, Re]].
///
/// Every eigenvalue of the Hermitian matrix appears twice in the embedding.
inline std::vector<double> jacobi_eigenvalues(const DensityMatrix& rho, int max_sweeps = 100) {
  const std::int64_t n = rho.size();
  const std::int64_t m = 2 * n;
  std::vector<double> a(static_cast<std::size_t>(m * m));
  auto at = [&](std::int64_t i, std::int64_t j) -> double& { return a[static_cast<std::size_t>(i * m + j)]; };
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = 0; j < n; ++j) {
      const cplx z = 0.5 * (rho(i, j) + std::conj(rho(j, i)));
      at(i, j) = z.real();
      at(i + n, j + n) = z.real();
      at(i, j + n) = -z.imag();
      at(i + n, j) = z.imag();
    }
  }
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::int64_t i = 0; i < m; ++i)
      for (std::int64_t j = i + 1; j < m; ++j) off += at(i, j) * at(i, j);
    if (off < 1e-30) break;
    for (std::int64_t p = 0; p < m; ++p) {
      for (std::int64_t q = p + 1; q < m; ++q) {
        const double apq = at(p, q);
        if (std::abs(apq) < 1e-300) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::int64_t k = 0; k < m; ++k) {
          const double akp = at(k, p);
          const double akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::int64_t k = 0; k < m; ++k) {
          const double apk = at(p, k);
          const double aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(static_cast<std::size_t>(m));
  for (std::int64_t i = 0; i < m; ++i) ev[static_cast<std::size_t>(i)] = at(i, i);
  std::sort(ev.begin(), ev.end());
  std::vector<double> out;
  for (std::size_t i = 0; i < ev.size(); i += 2) out.push_back(0.5 * (ev[i] + ev[i + 1]));
  return out;
}

/// Root of f on [lo, hi] by bisection; f(lo) and f(hi) must differ in sign.
inline double bisect(const std::function<double(double)>& f, double lo, double hi, double width = 1e-13) {
  double flo = f(lo);
  for (int it = 0; it < 200 && hi - lo > width; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Hand-rolled random Hermitian matrix (A + A^H)/2 with entries in [-1,1] + i[-1,1].
inline DensityMatrix random_hermitian(std::mt19937_64& rng, int dim, int parties, bool unit_trace) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::int64_t n = ipow(dim, parties);
  DensityMatrix::Matrix a(n, n);
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = 0; j < n; ++j) a(i, j) = cplx(u(rng), u(rng));
  DensityMatrix::Matrix h = 0.5 * (a + a.adjoint());
  if (unit_trace) {
    // Shift the diagonal so the trace is exactly representable as 1.
    const double tr = h.trace().real();
    for (std::int64_t i = 0; i < n; ++i) h(i, i) += (1.0 - tr) / static_cast<double>(n);
  }
  return DensityMatrix(dim, parties, std::move(h), unit_trace);
}

/// EC matrix from its entry formula: diagonal products plus coherent products.
inline DensityMatrix ec_by_entries(int dim, int parties, cplx p, bool strong) {
  const double a = std::abs(p);
  const double x = dim - 1.0;
  const cplx hop = strong ? p : p / x;
  const std::int64_t n = ipow(dim, parties);
  DensityMatrix::Matrix m = DensityMatrix::Matrix::Zero(n, n);
  for (std::int64_t r = 0; r < n; ++r) {
    const auto lr = digits(r, dim, parties);
    for (std::int64_t c = 0; c < n; ++c) {
      const auto lc = digits(c, dim, parties);
      cplx v = 1.0;
      for (int k = 0; k < parties; ++k) {
        const int i = lr[static_cast<std::size_t>(k)];
        const int j = lc[static_cast<std::size_t>(k)];
        if (i != 0 && j == 0) v *= hop;
        else if (i == 0 && j != 0) v *= std::conj(hop);
        else v = 0.0;
      }
      if (r == c) {
        double d = 1.0;
        for (int k : lr) d *= k == 0 ? 1.0 - a : a / x;
        v += d;
      }
      m(r, c) = v;
    }
  }
  return DensityMatrix(dim, parties, std::move(m), true);
}

inline int sign(double v, double tol) { return v > tol ? 1 : (v < -tol ? -1 : 0); }

}  // namespace oracle
