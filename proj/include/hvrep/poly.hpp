#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <string>
#include <vector>

#include "hvrep/errors.hpp"
#include "hvrep/field.hpp"

namespace hvrep {

// Exponent triple (x, y, z).  Map ordering on Exp gives every polynomial a
// deterministic term order.
using Exp = std::array<int, 3>;

inline int exp_total(const Exp& e) { return e[0] + e[1] + e[2]; }

// ---------------------------------------------------------------------------
// Dense univariate polynomial, coefficients in ascending degree order.
// Invariant: empty (the zero polynomial) or nonzero leading coefficient.
// Exact zeros are trimmed; numeric near-zeros are the caller's concern.
// ---------------------------------------------------------------------------
template <class K>
class UnivariatePoly {
 public:
  UnivariatePoly() = default;
  explicit UnivariatePoly(std::vector<K> coeffs) : c_(std::move(coeffs)) {
    trim();
  }

  static UnivariatePoly constant(const K& v) {
    return UnivariatePoly(std::vector<K>{v});
  }

  static UnivariatePoly from_roots(const std::vector<K>& roots, const K& lead) {
    std::vector<K> c{lead};
    for (const K& r : roots) {
      std::vector<K> next(c.size() + 1, K(0));
      for (std::size_t i = 0; i < c.size(); ++i) {
        next[i + 1] += c[i];
        next[i] -= r * c[i];
      }
      c = std::move(next);
    }
    return UnivariatePoly(std::move(c));
  }

  bool zero() const { return c_.empty(); }
  int degree() const { return zero() ? -1 : static_cast<int>(c_.size()) - 1; }

  K coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return K(0);
    return c_[i];
  }

  const std::vector<K>& coeffs() const { return c_; }

  K eval(const K& x) const {
    K acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  UnivariatePoly derivative() const {
    if (c_.size() <= 1) return UnivariatePoly();
    std::vector<K> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * K(static_cast<int>(i));
    return UnivariatePoly(std::move(d));
  }

  UnivariatePoly operator+(const UnivariatePoly& o) const {
    std::vector<K> r(std::max(c_.size(), o.c_.size()), K(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return UnivariatePoly(std::move(r));
  }

  UnivariatePoly operator-(const UnivariatePoly& o) const {
    std::vector<K> r(std::max(c_.size(), o.c_.size()), K(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
    return UnivariatePoly(std::move(r));
  }

  UnivariatePoly operator*(const UnivariatePoly& o) const {
    if (zero() || o.zero()) return UnivariatePoly();
    std::vector<K> r(c_.size() + o.c_.size() - 1, K(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
      for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return UnivariatePoly(std::move(r));
  }

  UnivariatePoly scaled(const K& s) const {
    std::vector<K> r(c_);
    for (K& v : r) v = v * s;
    return UnivariatePoly(std::move(r));
  }

  double max_abs() const {
    double m = 0.0;
    for (const K& v : c_) m = std::max(m, FieldTraits<K>::approx_abs(v));
    return m;
  }

  void trim() {
    while (!c_.empty() && FieldTraits<K>::is_zero(c_.back())) c_.pop_back();
  }

  // Drops coefficients below rel * max|coeff| (numeric noise after
  // cancellation-heavy arithmetic).  No-op on exact fields.
  UnivariatePoly pruned(double rel = 1e-12) const {
    if constexpr (FieldTraits<K>::exact) return *this;
    double cut = rel * max_abs();
    std::vector<K> r(c_);
    for (K& v : r)
      if (FieldTraits<K>::approx_abs(v) <= cut) v = K(0);
    return UnivariatePoly(std::move(r));
  }

 private:
  std::vector<K> c_;
};

// ---------------------------------------------------------------------------
// Sparse homogeneous polynomial in (x, y, z).  Every stored term has total
// degree equal to the declared degree; the zero polynomial keeps its declared
// degree so that sums and matrix entries stay shape-checked.
// ---------------------------------------------------------------------------
template <class K>
class HomogeneousPoly {
 public:
  explicit HomogeneousPoly(int degree = 0) : deg_(degree) {
    if (degree < 0) throw ValidationError("polynomial degree must be >= 0");
  }

  int degree() const { return deg_; }
  bool zero() const { return t_.empty(); }
  const std::map<Exp, K>& terms() const { return t_; }

  void set(const Exp& e, const K& v) {
    if (e[0] < 0 || e[1] < 0 || e[2] < 0 || exp_total(e) != deg_)
      throw ValidationError("monomial exponent does not match declared degree " +
                            std::to_string(deg_));
    if (FieldTraits<K>::is_zero(v))
      t_.erase(e);
    else
      t_[e] = v;
  }

  void add(const Exp& e, const K& v) {
    if (e[0] < 0 || e[1] < 0 || e[2] < 0 || exp_total(e) != deg_)
      throw ValidationError("monomial exponent does not match declared degree " +
                            std::to_string(deg_));
    auto it = t_.find(e);
    K nv = (it == t_.end()) ? v : K(it->second + v);
    if (FieldTraits<K>::is_zero(nv))
      t_.erase(e);
    else
      t_[e] = nv;
  }

  K coeff(const Exp& e) const {
    auto it = t_.find(e);
    return it == t_.end() ? K(0) : it->second;
  }

  HomogeneousPoly operator+(const HomogeneousPoly& o) const {
    require_same_degree(o);
    HomogeneousPoly r(*this);
    for (const auto& [e, v] : o.t_) r.add(e, v);
    return r;
  }

  HomogeneousPoly operator-(const HomogeneousPoly& o) const {
    require_same_degree(o);
    HomogeneousPoly r(*this);
    for (const auto& [e, v] : o.t_) r.add(e, K(-v));
    return r;
  }

  HomogeneousPoly operator*(const HomogeneousPoly& o) const {
    HomogeneousPoly r(deg_ + o.deg_);
    for (const auto& [e1, v1] : t_)
      for (const auto& [e2, v2] : o.t_)
        r.add({e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]}, v1 * v2);
    return r;
  }

  HomogeneousPoly scaled(const K& s) const {
    HomogeneousPoly r(deg_);
    for (const auto& [e, v] : t_) r.set(e, K(v * s));
    return r;
  }

  HomogeneousPoly pow(int n) const {
    if (n < 0) throw ValidationError("negative polynomial power");
    HomogeneousPoly r(0);
    r.set({0, 0, 0}, K(1));
    for (int i = 0; i < n; ++i) r = r * (*this);
    return r;
  }

  HomogeneousPoly derivative(int var) const {
    HomogeneousPoly r(deg_ > 0 ? deg_ - 1 : 0);
    for (const auto& [e, v] : t_) {
      if (e[var] == 0) continue;
      Exp d = e;
      d[var] -= 1;
      r.add(d, K(v * K(e[var])));
    }
    return r;
  }

  K eval(const K& x, const K& y, const K& z) const {
    // Shared power tables; exponents are small.
    std::array<std::vector<K>, 3> pw;
    for (int v = 0; v < 3; ++v) {
      pw[v].resize(deg_ + 1);
      pw[v][0] = K(1);
      const K& base = (v == 0) ? x : (v == 1) ? y : z;
      for (int i = 1; i <= deg_; ++i) pw[v][i] = pw[v][i - 1] * base;
    }
    K acc(0);
    for (const auto& [e, v] : t_) acc += v * pw[0][e[0]] * pw[1][e[1]] * pw[2][e[2]];
    return acc;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& [e, v] : t_) m = std::max(m, FieldTraits<K>::approx_abs(v));
    return m;
  }

  // Substitute the two variables other than `keep` by the given values and
  // return the resulting univariate polynomial in the kept variable.
  UnivariatePoly<K> restrict_to_var(int keep, const std::array<K, 3>& at) const {
    std::vector<K> c(deg_ + 1, K(0));
    for (const auto& [e, v] : t_) {
      K w = v;
      for (int j = 0; j < 3; ++j) {
        if (j == keep) continue;
        for (int p = 0; p < e[j]; ++p) w = w * at[j];
      }
      c[e[keep]] += w;
    }
    return UnivariatePoly<K>(std::move(c));
  }

  // Restriction to the line spanned by p0 and p1: returns the coefficients of
  // the binary form b(s,t) = f(s*p0 + t*p1), index k holding the coefficient
  // of s^k t^(d-k).
  std::vector<K> restrict_to_line(const std::array<K, 3>& p0,
                                  const std::array<K, 3>& p1) const {
    std::vector<K> out(deg_ + 1, K(0));
    for (const auto& [e, v] : t_) {
      // Expand prod_j (s*p0[j] + t*p1[j])^(e[j]) over powers of s.
      std::vector<K> acc{K(1)};
      for (int j = 0; j < 3; ++j) {
        for (int p = 0; p < e[j]; ++p) {
          std::vector<K> nxt(acc.size() + 1, K(0));
          for (std::size_t i = 0; i < acc.size(); ++i) {
            nxt[i + 1] += acc[i] * p0[j];
            nxt[i] += acc[i] * p1[j];
          }
          acc = std::move(nxt);
        }
      }
      for (std::size_t i = 0; i < acc.size(); ++i) out[i] += v * acc[i];
    }
    return out;
  }

  // Drops coefficients below rel * max|coeff|.  No-op on exact fields.
  HomogeneousPoly pruned(double rel = 1e-12) const {
    if constexpr (FieldTraits<K>::exact) return *this;
    double cut = rel * max_abs();
    HomogeneousPoly r(deg_);
    for (const auto& [e, v] : t_)
      if (FieldTraits<K>::approx_abs(v) > cut) r.set(e, v);
    return r;
  }

  bool operator==(const HomogeneousPoly& o) const {
    return deg_ == o.deg_ && t_ == o.t_;
  }

 private:
  void require_same_degree(const HomogeneousPoly& o) const {
    if (deg_ != o.deg_)
      throw ValidationError("degree mismatch: " + std::to_string(deg_) + " vs " +
                            std::to_string(o.deg_));
  }

  int deg_;
  std::map<Exp, K> t_;
};

// f(Ux): substitutes x_i -> sum_j u[i][j] x_j.
template <class K>
HomogeneousPoly<K> apply_linear(const HomogeneousPoly<K>& f,
                                const std::vector<std::vector<K>>& u) {
  if (u.size() != 3 || u[0].size() != 3 || u[1].size() != 3 || u[2].size() != 3)
    throw ValidationError("coordinate change must be a 3x3 matrix");
  std::array<HomogeneousPoly<K>, 3> form = {
      HomogeneousPoly<K>(1), HomogeneousPoly<K>(1), HomogeneousPoly<K>(1)};
  for (int i = 0; i < 3; ++i) {
    form[i].set({1, 0, 0}, u[i][0]);
    form[i].add({0, 1, 0}, u[i][1]);
    form[i].add({0, 0, 1}, u[i][2]);
  }
  HomogeneousPoly<K> out(f.degree());
  for (const auto& [e, c] : f.terms()) {
    HomogeneousPoly<K> term(0);
    term.set({0, 0, 0}, c);
    for (int i = 0; i < 3; ++i) term = term * form[i].pow(e[i]);
    out = out + term;
  }
  return out;
}

inline HomogeneousPoly<Complex> to_complex(const HomogeneousPoly<Rational>& p) {
  HomogeneousPoly<Complex> r(p.degree());
  for (const auto& [e, v] : p.terms())
    r.set(e, Complex(v.convert_to<double>(), 0.0));
  return r;
}

inline UnivariatePoly<Complex> to_complex(const UnivariatePoly<Rational>& p) {
  std::vector<Complex> c;
  c.reserve(p.coeffs().size());
  for (const auto& v : p.coeffs()) c.emplace_back(v.convert_to<double>(), 0.0);
  return UnivariatePoly<Complex>(std::move(c));
}

// Relative distance between two polynomials of the same degree:
// max |coeff difference| / max(1, max |coeff of a|).
template <class K>
double rel_poly_distance(const HomogeneousPoly<K>& a, const HomogeneousPoly<K>& b) {
  HomogeneousPoly<K> d = a - b;
  return d.max_abs() / std::max(1.0, a.max_abs());
}

}  // namespace hvrep
