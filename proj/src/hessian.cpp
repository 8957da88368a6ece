#include "hvrep/hessian.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "hvrep/errors.hpp"
#include "hvrep/roots.hpp"

namespace hvrep {

SymmetricPencil<Complex> hessian_matrix(const HomogeneousPoly<Complex>& g) {
  if (g.degree() != 3)
    throw ValidationError("hessian_matrix expects a cubic form");
  std::vector<std::vector<Complex>> a(3, std::vector<Complex>(3)),
      b(3, std::vector<Complex>(3)), c(3, std::vector<Complex>(3));
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      const HomogeneousPoly<Complex> second = g.derivative(i).derivative(j);
      a[i][j] = a[j][i] = second.coeff({1, 0, 0});
      b[i][j] = b[j][i] = second.coeff({0, 1, 0});
      c[i][j] = c[j][i] = second.coeff({0, 0, 1});
    }
  }
  return SymmetricPencil<Complex>::make(a, b, c);
}

namespace {

// All ten degree-3 exponent triples, in the map order of HomogeneousPoly.
std::vector<Exp> cubic_monomials() {
  std::vector<Exp> out;
  for (int i = 3; i >= 0; --i)
    for (int j = 3 - i; j >= 0; --j) out.push_back({i, j, 3 - i - j});
  return out;
}

std::vector<std::vector<Complex>> add_scaled(
    const std::vector<std::vector<Complex>>& p,
    const std::vector<std::vector<Complex>>& q, Complex t, Complex scale) {
  const int n = static_cast<int>(p.size());
  std::vector<std::vector<Complex>> r(n, std::vector<Complex>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r[i][j] = scale * (t * p[i][j] + q[i][j]);
  return r;
}

}  // namespace

std::vector<HessianSolution> han_representations(
    const HomogeneousPoly<Complex>& f, double tol) {
  if (f.degree() != 3)
    throw ValidationError("hessian representations need a cubic form");

  const SymmetricPencil<Complex> P = hessian_matrix(f);
  const HomogeneousPoly<Complex> hes_f = det_expand(P);
  const SymmetricPencil<Complex> Q = hessian_matrix(hes_f);

  // det(t P + Q) is cubic in t; the t^k coefficient is the sum of the
  // mixed determinants taking k rows from P and the rest from Q.
  std::array<HomogeneousPoly<Complex>, 4> G = {
      HomogeneousPoly<Complex>(3), HomogeneousPoly<Complex>(3),
      HomogeneousPoly<Complex>(3), HomogeneousPoly<Complex>(3)};
  const PolyMatrix<Complex> pm = P.entries();
  const PolyMatrix<Complex> qm = Q.entries();
  for (int mask = 0; mask < 8; ++mask) {
    PolyMatrix<Complex> rows(3);
    int k = 0;
    for (int i = 0; i < 3; ++i) {
      if (mask & (1 << i)) {
        rows[i] = pm[i];
        ++k;
      } else {
        rows[i] = qm[i];
      }
    }
    G[k] = G[k] + polymatrix_det(rows);
  }

  // Rank-1 condition between the ten t-cubics G_e and the constants f_e.
  const std::vector<Exp> monos = cubic_monomials();
  std::vector<UnivariatePoly<Complex>> ge;
  std::vector<Complex> fe;
  for (const Exp& e : monos) {
    ge.emplace_back(std::vector<Complex>{G[0].coeff(e), G[1].coeff(e),
                                         G[2].coeff(e), G[3].coeff(e)});
    fe.push_back(f.coeff(e));
  }

  // Pivot: the coordinate whose t^3 coefficient (the Hessian cubic itself)
  // is largest, so the pivot cubic genuinely has degree 3.
  std::size_t pivot = 0;
  for (std::size_t e = 1; e < monos.size(); ++e)
    if (std::abs(G[3].coeff(monos[e])) > std::abs(G[3].coeff(monos[pivot])))
      pivot = e;

  std::vector<UnivariatePoly<Complex>> minors;
  double minor_scale = 0.0;
  std::size_t largest = 0;
  for (std::size_t e = 0; e < monos.size(); ++e) {
    if (e == pivot) continue;
    UnivariatePoly<Complex> h =
        ge[e].scaled(fe[pivot]) - ge[pivot].scaled(fe[e]);
    const double norm = h.max_abs();
    if (norm > minor_scale) {
      minor_scale = norm;
      largest = minors.size();
    }
    minors.push_back(std::move(h));
  }
  if (minor_scale <= 1e-12 * std::max(1.0, hes_f.max_abs() * f.max_abs()))
    throw ValidationError(
        "degenerate cubic: rank-1 minors vanish identically");

  std::vector<Complex> candidates;
  for (const RootCluster& rc : poly_roots(minors[largest].pruned()))
    candidates.push_back(rc.value);

  std::vector<Complex> accepted;
  for (const Complex& t : candidates) {
    const double at = std::max(1.0, std::abs(t));
    const double budget = tol * minor_scale * at * at * at;
    bool ok = true;
    for (const auto& h : minors) {
      if (std::abs(h.eval(t)) > budget) {
        ok = false;
        break;
      }
    }
    if (ok) accepted.push_back(t);
  }
  if (accepted.size() != 3)
    throw ValidationError(
        "degenerate cubic: expected exactly three rank-drop points, found " +
        std::to_string(accepted.size()));

  std::sort(accepted.begin(), accepted.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });

  double fnorm2 = 0.0;
  for (const Complex& v : fe) fnorm2 += std::norm(v);

  std::vector<HessianSolution> out;
  for (const Complex& t : accepted) {
    HessianSolution sol;
    sol.t = t;
    Complex dot(0.0);
    for (std::size_t e = 0; e < fe.size(); ++e)
      dot += ge[e].eval(t) * std::conj(fe[e]);
    sol.s = dot / fnorm2;
    const Complex scale = std::pow(sol.s, Complex(-1.0 / 3.0));
    sol.pencil = SymmetricPencil<Complex>::make(add_scaled(P.A, Q.A, t, scale),
                                                add_scaled(P.B, Q.B, t, scale),
                                                add_scaled(P.C, Q.C, t, scale));
    out.push_back(std::move(sol));
  }
  return out;
}

}  // namespace hvrep
