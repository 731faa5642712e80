#pragma once

// Floating-point oracles, deliberately independent of the exact code paths.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "pgl3/curves.hpp"
#include "pgl3/projlinear.hpp"

namespace oracle {

using cd = std::complex<double>;

inline cd root_of_unity(long k, long n) {
  const double t = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
  return {std::cos(t), std::sin(t)};
}

/// Coefficients of prod_{gcd(k,n)=1} (x - zeta^k), rounded to integers.
inline std::vector<long> cyclotomic_poly(long n) {
  std::vector<cd> p{1.0};
  for (long k = 1; k <= n; ++k) {
    if (std::gcd(k, n) != 1) continue;
    std::vector<cd> q(p.size() + 1, 0.0);
    const cd r = root_of_unity(k, n);
    for (std::size_t i = 0; i < p.size(); ++i) {
      q[i + 1] += p[i];
      q[i] -= r * p[i];
    }
    p = q;
  }
  std::vector<long> out;
  for (const auto& c : p) out.push_back(std::lround(c.real()));
  return out;
}

inline cd value(const pgl3::Cyclo& x) {
  cd s = 0;
  const long n = x.conductor();
  for (std::size_t k = 0; k < x.coeffs().size(); ++k)
    s += x.coeffs()[k].get_d() * root_of_unity(static_cast<long>(k), n);
  return s;
}

using M3 = std::array<std::array<cd, 3>, 3>;

inline M3 value(const pgl3::Matrix3& m) {
  M3 out;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) out[r][c] = value(m(r, c));
  return out;
}

/// Roots of t^3 + c2 t^2 + c1 t + c0 by Durand-Kerner.
inline std::array<cd, 3> cubic_roots(cd c2, cd c1, cd c0) {
  auto f = [&](cd t) { return ((t + c2) * t + c1) * t + c0; };
  std::array<cd, 3> z{cd(0.4, 0.9), cd(0.4, 0.9) * cd(0.4, 0.9), cd(0.4, 0.9) * cd(0.4, 0.9) * cd(0.4, 0.9)};
  for (int it = 0; it < 500; ++it)
    for (int i = 0; i < 3; ++i) {
      cd d = 1;
      for (int j = 0; j < 3; ++j)
        if (j != i) d *= z[i] - z[j];
      z[i] -= f(z[i]) / d;
    }
  return z;
}

/// Eigenvalues of a complex 3x3 matrix.
inline std::array<cd, 3> eigenvalues(const M3& m) {
  const cd tr = m[0][0] + m[1][1] + m[2][2];
  const cd e2 = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] - m[0][2] * m[2][0] +
                m[1][1] * m[2][2] - m[1][2] * m[2][1];
  const cd det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                 m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                 m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  return cubic_roots(-tr, e2, -det);
}

/// Exponent k with e ~ zeta_n^k, or -1.
inline int exponent_of(cd e, int n) {
  for (int k = 0; k < n; ++k)
    if (std::abs(e - root_of_unity(k, n)) < 1e-7) return k;
  return -1;
}

/// All (a, b) such that the eigenvalues are {c, c z^a, c z^b}, read off numerically.
inline std::set<std::pair<int, int>> eigen_pairs(const pgl3::Matrix3& m, int n) {
  const auto ev = eigenvalues(value(m));
  std::set<std::pair<int, int>> out;
  for (int anchor = 0; anchor < 3; ++anchor) {
    std::vector<int> ex;
    for (int j = 0; j < 3; ++j)
      if (j != anchor) ex.push_back(exponent_of(ev[j] / ev[anchor], n));
    if (ex[0] < 0 || ex[1] < 0) continue;
    out.insert({ex[0], ex[1]});
    out.insert({ex[1], ex[0]});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Singular points of plane curves

struct NumericPoly {
  std::vector<std::pair<std::array<int, 3>, cd>> terms;

  explicit NumericPoly(const pgl3::HomogeneousPolynomial& f) {
    for (const auto& [e, c] : f.terms()) terms.push_back({e, value(c)});
  }

  std::array<cd, 3> gradient(const std::array<cd, 3>& p) const {
    std::array<cd, 3> g{0.0, 0.0, 0.0};
    for (const auto& [e, c] : terms)
      for (int v = 0; v < 3; ++v) {
        if (e[v] == 0) continue;
        cd t = c * static_cast<double>(e[v]);
        for (int w = 0; w < 3; ++w) t *= std::pow(p[w], e[w] - (w == v ? 1 : 0));
        g[v] += t;
      }
    return g;
  }
};

/// Smallest |grad F(p)| / |p|^(d-1) found by Gauss-Newton from random starts
/// on the three affine charts. Near zero iff the curve has a singular point.
inline double min_gradient_norm(const pgl3::HomogeneousPolynomial& f, int starts = 300, unsigned seed = 7) {
  const NumericPoly np(f);
  const int d = f.degree();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  double best = 1e300;
  auto norm_grad = [&](const std::array<cd, 3>& p) {
    const auto g = np.gradient(p);
    double gn = 0, pn = 0;
    for (int i = 0; i < 3; ++i) gn += std::norm(g[i]), pn += std::norm(p[i]);
    return std::sqrt(gn) / std::pow(std::sqrt(pn), d - 1);
  };
  for (int chart = 0; chart < 3; ++chart)
    for (int s = 0; s < starts; ++s) {
      std::array<cd, 3> p;
      for (auto& x : p) x = cd(nd(rng), nd(rng));
      p[chart] = 1.0;
      for (int it = 0; it < 60; ++it) {
        // Jacobian of grad F in the two free coordinates, by central differences.
        const auto g = np.gradient(p);
        std::array<std::array<cd, 2>, 3> J;
        int col = 0;
        for (int v = 0; v < 3; ++v) {
          if (v == chart) continue;
          const double h = 1e-6;
          auto pp = p, pm = p;
          pp[v] += h;
          pm[v] -= h;
          const auto gp = np.gradient(pp), gm = np.gradient(pm);
          for (int r = 0; r < 3; ++r) J[r][col] = (gp[r] - gm[r]) / (2 * h);
          ++col;
        }
        // Normal equations (J^H J) dx = -J^H g.
        cd A[2][2] = {{0.0, 0.0}, {0.0, 0.0}}, rhs[2] = {0.0, 0.0};
        for (int r = 0; r < 3; ++r)
          for (int i = 0; i < 2; ++i) {
            rhs[i] -= std::conj(J[r][i]) * g[r];
            for (int j = 0; j < 2; ++j) A[i][j] += std::conj(J[r][i]) * J[r][j];
          }
        const cd det = A[0][0] * A[1][1] - A[0][1] * A[1][0];
        if (std::abs(det) < 1e-300) break;
        const cd dx0 = (rhs[0] * A[1][1] - A[0][1] * rhs[1]) / det;
        const cd dx1 = (A[0][0] * rhs[1] - A[1][0] * rhs[0]) / det;
        col = 0;
        for (int v = 0; v < 3; ++v) {
          if (v == chart) continue;
          p[v] += col == 0 ? dx0 : dx1;
          ++col;
        }
        if (std::abs(p[0]) + std::abs(p[1]) + std::abs(p[2]) > 1e6) break;
      }
      const double r = norm_grad(p);
      if (std::isfinite(r)) best = std::min(best, r);
    }
  return best;
}

} // namespace oracle
