#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>
#include <vector>

#include "hvrep/dixon.hpp"
#include "hvrep/errors.hpp"
#include "hvrep/field.hpp"
#include "hvrep/homotopy.hpp"
#include "hvrep/normalize.hpp"
#include "hvrep/pencil.hpp"
#include "hvrep/poly.hpp"

using namespace hvrep;

namespace {

using CMat = std::vector<std::vector<Complex>>;

HomogeneousPoly<Complex> lin(double a, double b, double c) {
  HomogeneousPoly<Complex> p(1);
  p.set({1, 0, 0}, Complex(a));
  p.add({0, 1, 0}, Complex(b));
  p.add({0, 0, 1}, Complex(c));
  return p;
}

// (x - y)(x + y)(x + 2y) - x z^2, expanded.
HomogeneousPoly<Complex> rigid_cubic() {
  HomogeneousPoly<Complex> f(3);
  f.set({3, 0, 0}, Complex(1.0));
  f.add({2, 1, 0}, Complex(2.0));
  f.add({1, 2, 0}, Complex(-1.0));
  f.add({0, 3, 0}, Complex(-2.0));
  f.add({1, 0, 2}, Complex(-1.0));
  return f;
}

// 2x^4 + y^4 + z^4 - 3x^2y^2 - 3x^2z^2 + y^2z^2
HomogeneousPoly<Complex> sample_quartic() {
  HomogeneousPoly<Complex> f(4);
  f.set({4, 0, 0}, Complex(2.0));
  f.add({0, 4, 0}, Complex(1.0));
  f.add({0, 0, 4}, Complex(1.0));
  f.add({2, 2, 0}, Complex(-3.0));
  f.add({2, 0, 2}, Complex(-3.0));
  f.add({0, 2, 2}, Complex(1.0));
  return f;
}

SymmetricPencil<Complex> quartic_seed_pencil() {
  const int d = 4;
  const double bdiag[] = {-2.0, -1.0, 1.0, 3.0};
  const double cm[4][4] = {{1, 2, -1, 1},  //
                           {2, 0, 1, -2},
                           {-1, 1, -1, 1},
                           {1, -2, 1, 2}};
  CMat A(d, std::vector<Complex>(d, Complex(0.0))), B = A, C = A;
  for (int i = 0; i < d; ++i) {
    A[i][i] = Complex(1.0);
    B[i][i] = Complex(bdiag[i]);
    for (int j = 0; j < d; ++j) C[i][j] = Complex(cm[i][j]);
  }
  return SymmetricPencil<Complex>::make(A, B, C);
}

const SolveResult& cubic_solution() {
  static const SolveResult res = solve_representations(rigid_cubic());
  return res;
}

SymmetricPencil<Complex> class_pencil(const NormalizedCurve& curve,
                                      const CMat& C) {
  const int d = static_cast<int>(curve.betas.size());
  CMat A(d, std::vector<Complex>(d, Complex(0.0))), B = A;
  for (int i = 0; i < d; ++i) {
    A[i][i] = Complex(1.0);
    B[i][i] = curve.betas[i];
  }
  return SymmetricPencil<Complex>::make(A, B, C);
}

double cmat_distance(const CMat& a, const CMat& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      m = std::max(m, std::abs(a[i][j] - b[i][j]));
  return m;
}

bool same_class(const CMat& got, const CMat& want, double tol) {
  return cmat_distance(canonical_sign_representative(got),
                       canonical_sign_representative(want)) <= tol;
}

std::vector<Complex> random_direction(Rng& rng, int d) {
  std::vector<Complex> u(d);
  for (int i = 0; i < d; ++i)
    u[i] = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  return u;
}

double on_curve_error(const HomogeneousPoly<Complex>& f,
                      const std::array<Complex, 3>& p) {
  return std::abs(f.eval(p[0], p[1], p[2])) / std::max(1.0, f.max_abs());
}

}  // namespace

TEST_CASE("contact curve is the matching adjugate entry") {
  const SymmetricPencil<Complex> M = quartic_seed_pencil();
  const PolyMatrix<Complex> adj = adjugate_pencil(M);

  const std::vector<Complex> e1 = {Complex(1.0), Complex(0.0), Complex(0.0),
                                   Complex(0.0)};
  const std::vector<Complex> e2 = {Complex(0.0), Complex(1.0), Complex(0.0),
                                   Complex(0.0)};
  CHECK(rel_poly_distance(contact_curve(M, e1), adj[0][0]) <= 1e-12);
  CHECK(rel_poly_distance(mixed_contact_form(M, e1, e2), adj[0][1]) <= 1e-12);

  Rng rng(11);
  const std::vector<Complex> u = random_direction(rng, 4);
  CHECK(rel_poly_distance(mixed_contact_form(M, u, u), contact_curve(M, u)) <=
        1e-12);

  const std::vector<Complex> too_short = {Complex(1.0)};
  CHECK_THROWS_AS(contact_curve(M, too_short), ValidationError);
}

TEST_CASE("mixed form squared reduces to the curve product") {
  // u^T adj(M) u times v^T adj(M) v differs from (u^T adj(M) v)^2 by a
  // multiple of det(M): the adjugate has rank one modulo the determinant.
  const SolveResult& sol = cubic_solution();
  std::vector<SymmetricPencil<Complex>> pencils;
  pencils.push_back(class_pencil(sol.curve, sol.classes[0].C));
  pencils.push_back(quartic_seed_pencil());

  Rng rng(23);
  for (const auto& M : pencils) {
    const HomogeneousPoly<Complex> f = det_expand(M);
    for (int trial = 0; trial < 10; ++trial) {
      const std::vector<Complex> u = random_direction(rng, M.d);
      const std::vector<Complex> v = random_direction(rng, M.d);
      const HomogeneousPoly<Complex> guv = mixed_contact_form(M, u, v);
      const HomogeneousPoly<Complex> p =
          contact_curve(M, u) * contact_curve(M, v) - guv * guv;
      if (p.zero()) continue;
      CHECK(ideal_remainder(p, f) <= 1e-8);
    }
  }
}

TEST_CASE("ideal reduction accepts multiples and flags outsiders") {
  const HomogeneousPoly<Complex> f = rigid_cubic();
  const HomogeneousPoly<Complex> q = lin(1.0, 2.0, -1.0) * lin(0.5, -1.0, 3.0);
  CHECK(ideal_remainder(f * q, f) <= 1e-12);

  HomogeneousPoly<Complex> p = f * q;
  HomogeneousPoly<Complex> bump(p.degree());
  bump.set({0, 0, p.degree()}, Complex(0.1));
  p = p + bump;
  CHECK(ideal_remainder(p, f) > 1e-4);

  CHECK_THROWS_AS(ideal_remainder(lin(1, 1, 1), f), ValidationError);
}

TEST_CASE("contact detection accepts adjugate curves of a representation") {
  const SolveResult& sol = cubic_solution();
  const HomogeneousPoly<Complex> f3 = rigid_cubic();
  const std::vector<Complex> u3 = {Complex(1.0), Complex(0.7), Complex(-0.4)};
  for (const auto& cls : sol.classes) {
    const SymmetricPencil<Complex> M = class_pencil(sol.curve, cls.C);
    const HomogeneousPoly<Complex> g = contact_curve(M, u3);
    const ContactResult res = is_contact(f3, g);
    CHECK(res.contact);
    CHECK_FALSE(res.has_offender);
    REQUIRE(res.config.contact_points.size() == 3);
    for (const auto& p : res.config.contact_points) {
      CHECK(on_curve_error(f3, p) <= 1e-8);
      CHECK(on_curve_error(g, p) <= 1e-8);
    }
  }

  const SymmetricPencil<Complex> M4 = quartic_seed_pencil();
  const HomogeneousPoly<Complex> f4 = det_expand(M4);
  const std::vector<Complex> u4 = {Complex(0.3), Complex(-1.1), Complex(0.8),
                                   Complex(0.9)};
  const ContactResult res4 = is_contact(f4, contact_curve(M4, u4));
  CHECK(res4.contact);
  REQUIRE(res4.config.contact_points.size() == 6);
  for (const auto& p : res4.config.contact_points)
    CHECK(on_curve_error(f4, p) <= 1e-8);
}

TEST_CASE("contact detection rejects transversal and non-reduced curves") {
  const HomogeneousPoly<Complex> f3 = rigid_cubic();

  // A generic conic meets the cubic in six simple points.
  HomogeneousPoly<Complex> conic(2);
  conic.set({2, 0, 0}, Complex(1.0));
  conic.add({0, 2, 0}, Complex(1.0));
  conic.add({0, 0, 2}, Complex(1.0));
  const ContactResult transversal = is_contact(f3, conic);
  CHECK_FALSE(transversal.contact);
  CHECK(transversal.has_offender);

  // A squared line has even intersection multiplicities everywhere, but its
  // gradient vanishes along the line, so the tangency certificate fails.
  const HomogeneousPoly<Complex> ell = lin(1.0, 1.0, 1.0);
  const ContactResult squared = is_contact(f3, ell * ell);
  CHECK_FALSE(squared.contact);
  CHECK(squared.has_offender);

  CHECK_THROWS_AS(is_contact(f3, f3), ValidationError);
}

TEST_CASE("reconstruction reproduces the cubic classes") {
  const SolveResult& sol = cubic_solution();
  const HomogeneousPoly<Complex> f3 = rigid_cubic();
  const std::vector<std::vector<Complex>> dirs = {
      {Complex(1.0), Complex(0.6), Complex(-0.3)},
      {Complex(-0.2), Complex(1.0), Complex(0.9)}};

  for (const auto& cls : sol.classes) {
    const SymmetricPencil<Complex> M = class_pencil(sol.curve, cls.C);
    for (const auto& u : dirs) {
      const DixonResult dr = dixon_complete(f3, contact_curve(M, u));
      CHECK(dr.residual <= 1e-8);
      for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(dr.pencil.A[i][i] - Complex(1.0)) <= 1e-9);
        CHECK(std::abs(dr.pencil.B[i][i] - sol.curve.betas[i]) <= 1e-7);
      }
      CHECK(same_class(dr.pencil.C, cls.C, 1e-6));
      CHECK(rank1_check(dr.mhat, f3));
    }
  }
}

TEST_CASE("reconstruction refuses elimination through a base point") {
  // For the class with a zero (2,3) coupling, the adjugate entry at e1 has
  // no z term at all: both it and the cubic pass through (0:0:1), and no
  // contact point there can be seen by eliminating z.
  const SolveResult& sol = cubic_solution();
  const HomogeneousPoly<Complex> f3 = rigid_cubic();
  const std::vector<Complex> e1 = {Complex(1.0), Complex(0.0), Complex(0.0)};
  bool found = false;
  for (const auto& cls : sol.classes) {
    if (std::abs(cls.C[1][2]) > 1e-8) continue;
    found = true;
    const SymmetricPencil<Complex> M = class_pencil(sol.curve, cls.C);
    CHECK_THROWS_AS(dixon_complete(f3, contact_curve(M, e1)), NumericalError);
  }
  CHECK(found);
}

TEST_CASE("reconstruction reproduces the quartic seed") {
  const SymmetricPencil<Complex> M4 = quartic_seed_pencil();
  const HomogeneousPoly<Complex> f4 = det_expand(M4);
  const std::vector<std::vector<Complex>> dirs = {
      {Complex(1.0), Complex(0.5), Complex(-0.7), Complex(0.2)},
      {Complex(0.9, 0.1), Complex(-0.3, 0.4), Complex(0.5), Complex(1.0)}};

  for (const auto& u : dirs) {
    const DixonResult dr = dixon_complete(f4, contact_curve(M4, u));
    CHECK(dr.residual <= 1e-8);
    for (int i = 0; i < 4; ++i)
      CHECK(std::abs(dr.pencil.B[i][i] - M4.B[i][i]) <= 1e-7);
    CHECK(same_class(dr.pencil.C, M4.C, 1e-6));
    CHECK(rank1_check(dr.mhat, f4));

    PolyMatrix<Complex> bad = dr.mhat;
    HomogeneousPoly<Complex> bump(3);
    bump.set({3, 0, 0}, Complex(1e-3));
    bad[1][1] = bad[1][1] + bump;
    CHECK_FALSE(rank1_check(bad, f4));
  }
}

TEST_CASE("squared-line contact products are syzygetic") {
  // b = y - lambda x is a bitangent of the quartic: on y = lambda x the
  // quartic restricts to a perfect square when 3 lambda^4 - 6 lambda^2 = 1.
  const HomogeneousPoly<Complex> f = sample_quartic();
  const double lambda = std::sqrt(1.0 + 2.0 / std::sqrt(3.0));
  const HomogeneousPoly<Complex> b = lin(-lambda, 1.0, 0.0);
  const HomogeneousPoly<Complex> ell = lin(1.0, 1.0, 1.0);
  const HomogeneousPoly<Complex> g = ell * ell * b;

  // The squared line hides the certificate failure from the multiplicity
  // count, but the completed matrix is genuinely rank-deficient.
  CHECK_FALSE(is_contact(f, g).contact);
  CHECK_THROWS_WITH_AS(dixon_complete(f, g), doctest::Contains("syzygetic"),
                       ValidationError);
}
