#pragma once

#include <cmath>
#include <vector>

#include "hvrep/poly.hpp"

namespace hvrep {

namespace detail {

// Exact determinant by fraction-free-ish Gaussian elimination with division
// (fields, so plain division is fine).  Used for Sylvester evaluations.
template <class K>
K dense_det(std::vector<std::vector<K>> m) {
  int n = static_cast<int>(m.size());
  K det(1);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    double best = 0.0;
    for (int r = col; r < n; ++r) {
      double a = FieldTraits<K>::approx_abs(m[r][col]);
      if (a > best) {
        best = a;
        piv = r;
      }
    }
    if (piv < 0) {
      // approx_abs can underflow for extreme exact values; fall back to an
      // exact nonzero scan before declaring the column empty.
      for (int r = col; r < n; ++r)
        if (!FieldTraits<K>::is_zero(m[r][col])) {
          piv = r;
          break;
        }
    }
    if (piv < 0) return K(0);
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det = det * m[col][col];
    for (int r = col + 1; r < n; ++r) {
      if (FieldTraits<K>::is_zero(m[r][col])) continue;
      K f = m[r][col] / m[col][col];
      for (int c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

// Coefficient forms of f seen as a polynomial in variable `elim`:
// f = sum_k a_k(r1, r2) * elim^k, where (r1, r2) are the remaining variables
// in (x, y, z) order.  Returned as bivariate coefficient tables
// a[k][i] = coefficient of r1^i r2^(deg(a_k) - i).
template <class K>
std::vector<std::vector<K>> elim_coefficients(const HomogeneousPoly<K>& f, int elim,
                                              int r1, int n) {
  int d = f.degree();
  std::vector<std::vector<K>> a(n + 1);
  for (int k = 0; k <= n; ++k) a[k].assign(d - k + 1, K(0));
  for (const auto& [e, v] : f.terms()) {
    int k = e[elim];
    if (k > n) throw ValidationError("inconsistent elimination degree");
    a[k][e[r1]] += v;
  }
  return a;
}

template <class K>
K eval_binary(const std::vector<K>& coeffs, const K& t) {
  // coeffs[i] multiplies r1^i r2^(m-i); evaluated at (r1, r2) = (t, 1).
  K acc(0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
  return acc;
}

}  // namespace detail

// Degree of f in one variable (0 for the zero polynomial).
template <class K>
int degree_in(const HomogeneousPoly<K>& f, int var) {
  int d = 0;
  for (const auto& [e, v] : f.terms()) d = std::max(d, e[var]);
  return d;
}

// Resultant of two homogeneous forms with respect to `elim`, as a binary form
// in the remaining two variables (in (x,y,z) order).  Computed by evaluating
// the Sylvester determinant at interpolation nodes and interpolating back,
// which sidesteps polynomial-entry determinant expansion.
template <class K>
HomogeneousPoly<K> resultant_form(const HomogeneousPoly<K>& f,
                                  const HomogeneousPoly<K>& g, int elim) {
  if (elim < 0 || elim > 2) throw ValidationError("eliminated variable must be 0, 1, or 2");
  if (f.zero() || g.zero()) throw ValidationError("resultant of the zero polynomial");
  int r1 = (elim == 0) ? 1 : 0;
  int r2 = (elim == 2) ? 1 : 2;
  int df = f.degree(), dg = g.degree();
  int n = degree_in(f, elim), m = degree_in(g, elim);

  if (n == 0 && m == 0)
    throw ValidationError("neither polynomial involves the eliminated variable");
  // Degenerate Sylvester cases: res(f, g) = f^m when deg_elim f = 0.
  if (n == 0) return f.pow(m);
  if (m == 0) return g.pow(n);

  // Each Sylvester permutation product is homogeneous of this degree.
  int big_n = m * df + n * dg - n * m;

  auto fa = detail::elim_coefficients(f, elim, r1, n);
  auto ga = detail::elim_coefficients(g, elim, r1, m);

  int s = n + m;
  auto det_at = [&](const K& t) {
    std::vector<std::vector<K>> mat(s, std::vector<K>(s, K(0)));
    for (int row = 0; row < m; ++row)
      for (int k = 0; k <= n; ++k)
        mat[row][row + (n - k)] = detail::eval_binary(fa[k], t);
    for (int row = 0; row < n; ++row)
      for (int k = 0; k <= m; ++k)
        mat[m + row][row + (m - k)] = detail::eval_binary(ga[k], t);
    return detail::dense_det(std::move(mat));
  };

  // Interpolate R(t) = Res(t, 1) of degree <= big_n from big_n + 1 nodes.
  int npts = big_n + 1;
  std::vector<K> nodes(npts), values(npts);
  if constexpr (FieldTraits<K>::exact) {
    for (int i = 0; i < npts; ++i) nodes[i] = K(i) - K(npts / 2);
  } else {
    for (int i = 0; i < npts; ++i) {
      double th = 2.0 * 3.14159265358979323846 * i / npts;
      nodes[i] = K(std::cos(th), std::sin(th));
    }
  }
  for (int i = 0; i < npts; ++i) values[i] = det_at(nodes[i]);

  // Lagrange interpolation via the Newton form (works for both fields).
  std::vector<K> divided = values;
  for (int level = 1; level < npts; ++level)
    for (int i = npts - 1; i >= level; --i)
      divided[i] = (divided[i] - divided[i - 1]) / (nodes[i] - nodes[i - level]);
  std::vector<K> poly(npts, K(0));
  std::vector<K> basis(npts, K(0));
  basis[0] = K(1);
  int basis_deg = 0;
  for (int level = 0; level < npts; ++level) {
    for (int i = 0; i <= basis_deg; ++i) poly[i] += divided[level] * basis[i];
    if (level + 1 < npts) {
      // basis *= (t - nodes[level])
      for (int i = basis_deg + 1; i >= 1; --i)
        basis[i] = basis[i - 1] - nodes[level] * basis[i];
      basis[0] = -nodes[level] * basis[0];
      ++basis_deg;
    }
  }

  HomogeneousPoly<K> out(big_n);
  double scale = 0.0;
  for (const K& v : poly) scale = std::max(scale, FieldTraits<K>::approx_abs(v));
  for (int i = 0; i < npts; ++i) {
    if constexpr (!FieldTraits<K>::exact) {
      if (FieldTraits<K>::approx_abs(poly[i]) <= 1e-13 * scale) continue;
    }
    Exp e{0, 0, 0};
    e[r1] = i;
    e[r2] = big_n - i;
    out.set(e, poly[i]);
  }
  return out;
}

// Resultant dehomogenized to a univariate polynomial: the first remaining
// variable is set to 1 and the result is univariate in the second.
// An identically zero resultant means a shared component.
template <class K>
UnivariatePoly<K> resultant(const HomogeneousPoly<K>& f,
                            const HomogeneousPoly<K>& g, int elim) {
  HomogeneousPoly<K> form = resultant_form(f, g, elim);
  // |Res| is bounded by ||f||^m * ||g||^n (row scales of the Sylvester
  // matrix); an all-coefficients-tiny result relative to that is a zero.
  int n = degree_in(f, elim), m = degree_in(g, elim);
  double bound = std::pow(std::max(1.0, f.max_abs()), m) *
                 std::pow(std::max(1.0, g.max_abs()), n) *
                 std::pow(2.0, n + m);
  bool vanished;
  if constexpr (FieldTraits<K>::exact)
    vanished = form.zero();
  else
    vanished = form.max_abs() <= 1e-10 * bound;
  if (vanished)
    throw NumericalError("resultant vanishes identically: the curves share a component");
  int r1 = (elim == 0) ? 1 : 0;
  int r2 = (elim == 2) ? 1 : 2;
  std::array<K, 3> at{K(0), K(0), K(0)};
  at[r1] = K(1);
  return form.restrict_to_var(r2, at);
}

}  // namespace hvrep
