#pragma once

#include <bit>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "hvrep/poly.hpp"

namespace hvrep {

template <class K>
using PolyMatrix = std::vector<std::vector<HomogeneousPoly<K>>>;

// Symmetric matrix pencil M(x,y,z) = A x + B y + C z with d x d symmetric
// coefficient matrices.
template <class K>
struct SymmetricPencil {
  int d = 0;
  std::vector<std::vector<K>> A, B, C;

  static SymmetricPencil make(std::vector<std::vector<K>> a,
                              std::vector<std::vector<K>> b,
                              std::vector<std::vector<K>> c) {
    SymmetricPencil p;
    p.d = static_cast<int>(a.size());
    p.A = std::move(a);
    p.B = std::move(b);
    p.C = std::move(c);
    p.validate();
    return p;
  }

  void validate() const {
    auto check = [&](const std::vector<std::vector<K>>& m, const char* name) {
      if (static_cast<int>(m.size()) != d)
        throw ValidationError(std::string("matrix ") + name + " has wrong row count");
      for (const auto& row : m)
        if (static_cast<int>(row.size()) != d)
          throw ValidationError(std::string("matrix ") + name + " is not square");
      for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
          double diff = FieldTraits<K>::approx_abs(K(m[i][j] - m[j][i]));
          double scale = std::max(1.0, std::max(FieldTraits<K>::approx_abs(m[i][j]),
                                                FieldTraits<K>::approx_abs(m[j][i])));
          if (diff > 1e-10 * scale)
            throw ValidationError(std::string("matrix ") + name + " is not symmetric");
        }
    };
    check(A, "A");
    check(B, "B");
    check(C, "C");
  }

  // Entry (i,j) as a linear form.
  HomogeneousPoly<K> entry_poly(int i, int j) const {
    HomogeneousPoly<K> p(1);
    p.set({1, 0, 0}, A[i][j]);
    p.add({0, 1, 0}, B[i][j]);
    p.add({0, 0, 1}, C[i][j]);
    return p;
  }

  PolyMatrix<K> entries() const {
    PolyMatrix<K> m(d, std::vector<HomogeneousPoly<K>>(d, HomogeneousPoly<K>(1)));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m[i][j] = entry_poly(i, j);
    return m;
  }

  SymmetricPencil scaled(const K& s) const {
    SymmetricPencil p(*this);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        p.A[i][j] = p.A[i][j] * s;
        p.B[i][j] = p.B[i][j] * s;
        p.C[i][j] = p.C[i][j] * s;
      }
    return p;
  }
};

namespace detail {

// Determinant over the column subset `mask` using the last popcount(mask)
// rows, by cofactor expansion along the first of those rows, memoized on the
// subset.  All entries must share one degree; n <= 8 keeps the memo small.
template <class K>
const HomogeneousPoly<K>& subset_det(const PolyMatrix<K>& m, std::uint32_t mask,
                                     int entry_deg,
                                     std::unordered_map<std::uint32_t, HomogeneousPoly<K>>& memo) {
  auto it = memo.find(mask);
  if (it != memo.end()) return it->second;
  int n = static_cast<int>(m.size());
  int k = std::popcount(mask);
  int row = n - k;
  HomogeneousPoly<K> acc(entry_deg * k);
  int sign = 1;
  for (int j = 0; j < n; ++j) {
    if (!(mask & (1u << j))) continue;
    // Copy: the recursive call may rehash the memo and move the entry.
    HomogeneousPoly<K> sub = subset_det(m, mask & ~(1u << j), entry_deg, memo);
    HomogeneousPoly<K> term = m[row][j] * sub;
    acc = (sign > 0) ? acc + term : acc - term;
    sign = -sign;
  }
  return memo.emplace(mask, std::move(acc)).first->second;
}

}  // namespace detail

// Determinant of a square matrix of homogeneous polynomials (all entries of
// one degree).  Dimension capped at 8: memoized cofactor expansion visits
// 2^n column subsets, which is cheap there and explosive beyond.
template <class K>
HomogeneousPoly<K> polymatrix_det(const PolyMatrix<K>& m) {
  int n = static_cast<int>(m.size());
  if (n == 0) throw ValidationError("determinant of empty matrix");
  if (n > 8) throw ValidationError("matrix dimension above 8 is not supported");
  int entry_deg = -1;
  for (const auto& row : m) {
    if (static_cast<int>(row.size()) != n)
      throw ValidationError("determinant of non-square matrix");
    for (const auto& p : row) {
      if (entry_deg < 0)
        entry_deg = p.degree();
      else if (p.degree() != entry_deg)
        throw ValidationError("matrix entries must share one degree");
    }
  }
  std::unordered_map<std::uint32_t, HomogeneousPoly<K>> memo;
  memo.emplace(0u, HomogeneousPoly<K>(0));
  memo.at(0u).set({0, 0, 0}, K(1));
  return detail::subset_det(m, (1u << n) - 1u, entry_deg, memo);
}

// det(A x + B y + C z) as a homogeneous form of degree d.
template <class K>
HomogeneousPoly<K> det_expand(const SymmetricPencil<K>& p) {
  return polymatrix_det(p.entries());
}

// Adjugate: adj(M)[i][j] = (-1)^(i+j) * minor(M with row j, column i removed).
// Satisfies M * adj(M) = det(M) * Id.
template <class K>
PolyMatrix<K> polymatrix_adjugate(const PolyMatrix<K>& m) {
  int n = static_cast<int>(m.size());
  if (n > 8) throw ValidationError("matrix dimension above 8 is not supported");
  int entry_deg = m.at(0).at(0).degree();
  if (n == 1) {
    PolyMatrix<K> r(1, std::vector<HomogeneousPoly<K>>(1, HomogeneousPoly<K>(0)));
    r[0][0].set({0, 0, 0}, K(1));
    return r;
  }
  PolyMatrix<K> adj(n, std::vector<HomogeneousPoly<K>>(n, HomogeneousPoly<K>(entry_deg * (n - 1))));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      PolyMatrix<K> sub;
      sub.reserve(n - 1);
      for (int r = 0; r < n; ++r) {
        if (r == j) continue;
        std::vector<HomogeneousPoly<K>> row;
        row.reserve(n - 1);
        for (int c = 0; c < n; ++c) {
          if (c == i) continue;
          row.push_back(m[r][c]);
        }
        sub.push_back(std::move(row));
      }
      HomogeneousPoly<K> minor = polymatrix_det(sub);
      adj[i][j] = ((i + j) % 2 == 0) ? minor : minor.scaled(K(-1));
    }
  return adj;
}

// Adjugate of a pencil, as a matrix of degree d-1 forms.
template <class K>
PolyMatrix<K> adjugate_pencil(const SymmetricPencil<K>& p) {
  return polymatrix_adjugate(p.entries());
}

inline SymmetricPencil<Complex> to_complex(const SymmetricPencil<Rational>& p) {
  const int d = p.d;
  auto conv = [d](const std::vector<std::vector<Rational>>& m) {
    std::vector<std::vector<Complex>> r(d, std::vector<Complex>(d));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        r[i][j] = Complex(m[i][j].convert_to<double>(), 0.0);
    return r;
  };
  return SymmetricPencil<Complex>::make(conv(p.A), conv(p.B), conv(p.C));
}

}  // namespace hvrep
