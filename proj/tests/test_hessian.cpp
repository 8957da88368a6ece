#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <hvrep/hessian.hpp>
#include <hvrep/homotopy.hpp>
#include <hvrep/normalize.hpp>
#include <hvrep/pencil.hpp>
#include <hvrep/poly.hpp>

#include <cmath>
#include <complex>
#include <vector>

using namespace hvrep;

namespace {

using CMat = std::vector<std::vector<Complex>>;

HomogeneousPoly<Complex> hesse_cubic(double m) {
  HomogeneousPoly<Complex> f(3);
  f.set({3, 0, 0}, 1.0);
  f.set({0, 3, 0}, 1.0);
  f.set({0, 0, 3}, 1.0);
  if (m != 0.0) f.set({1, 1, 1}, -m);
  return f;
}

// (x - y)(x + y)(x + 2y) - x z^2 expanded.
HomogeneousPoly<Complex> rigid_cubic() {
  HomogeneousPoly<Complex> f(3);
  f.set({3, 0, 0}, 1.0);
  f.set({2, 1, 0}, 2.0);
  f.set({1, 2, 0}, -1.0);
  f.set({0, 3, 0}, -2.0);
  f.set({1, 0, 2}, -1.0);
  return f;
}

bool equal_up_to_sign_conjugation(const CMat& c1, const CMat& c2, double tol) {
  const int d = static_cast<int>(c1.size());
  for (int bits = 0; bits < (1 << (d - 1)); ++bits) {
    std::vector<double> s(d, 1.0);
    for (int i = 1; i < d; ++i) s[i] = (bits >> (i - 1)) & 1 ? -1.0 : 1.0;
    double worst = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        worst = std::max(worst, std::abs(s[i] * s[j] * c1[i][j] - c2[i][j]));
    if (worst <= tol) return true;
  }
  return false;
}

// |t^3 - a t + c0| smallness certificate for the Hesse-family parameter.
void check_hesse_solutions(double m, const std::vector<HessianSolution>& sols) {
  const double a = 12.0 * std::pow(m, 4) + 2592.0 * m;
  const double c0 = -16.0 * std::pow(m, 6) + 8640.0 * std::pow(m, 3) + 93312.0;
  const double s2 = a;
  const double s1 = 48.0 * std::pow(m, 6) - 25920.0 * std::pow(m, 3) - 279936.0;
  const double s0 = 48.0 * std::pow(m, 8) + 20736.0 * std::pow(m, 5) +
                    2239488.0 * std::pow(m, 2);
  const double scale = std::max({std::abs(a), std::abs(c0), 1.0});
  REQUIRE(sols.size() == 3);
  for (const HessianSolution& sol : sols) {
    const Complex t = sol.t;
    const double at = std::max(1.0, std::abs(t));
    CHECK(std::abs(t * t * t - a * t + c0) < 1e-6 * scale * at * at * at);
    const Complex s_formula = s2 * t * t + s1 * t + s0;
    CHECK(std::abs(sol.s - s_formula) <
          1e-6 * std::max(1.0, std::abs(s_formula)));
  }
}

}  // namespace

TEST_CASE("hessian_matrix is the matrix of second partials") {
  // Degenerate: x^3 has a rank-1 Hessian with zero determinant.
  HomogeneousPoly<Complex> cube(3);
  cube.set({3, 0, 0}, 1.0);
  const auto hx = hessian_matrix(cube);
  CHECK(std::abs(hx.A[0][0] - Complex(6.0)) < 1e-15);
  double rest = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i != 0 || j != 0) rest = std::max(rest, std::abs(hx.A[i][j]));
      rest = std::max(rest, std::abs(hx.B[i][j]));
      rest = std::max(rest, std::abs(hx.C[i][j]));
    }
  CHECK(rest == 0.0);
  CHECK(det_expand(hx).max_abs() == 0.0);

  // x^3 + y^3 + z^3: diag(6x, 6y, 6z), determinant 216 xyz.
  const auto hf = hessian_matrix(hesse_cubic(0.0));
  CHECK(std::abs(hf.A[0][0] - Complex(6.0)) < 1e-15);
  CHECK(std::abs(hf.B[1][1] - Complex(6.0)) < 1e-15);
  CHECK(std::abs(hf.C[2][2] - Complex(6.0)) < 1e-15);
  const auto hes = det_expand(hf);
  CHECK(std::abs(hes.coeff({1, 1, 1}) - Complex(216.0)) < 1e-12);
  CHECK(std::abs(hes.max_abs() - 216.0) < 1e-12);

  // The x^3 + y^3 + z^3 - m xyz family places -m z, -m y, -m x off-diagonal.
  const auto hm = hessian_matrix(hesse_cubic(2.0));
  CHECK(std::abs(hm.C[0][1] - Complex(-2.0)) < 1e-15);
  CHECK(std::abs(hm.B[0][2] - Complex(-2.0)) < 1e-15);
  CHECK(std::abs(hm.A[1][2] - Complex(-2.0)) < 1e-15);

  HomogeneousPoly<Complex> quartic(4);
  quartic.set({4, 0, 0}, 1.0);
  CHECK_THROWS_AS(hessian_matrix(quartic), ValidationError);
}

TEST_CASE("hesse family: recovered (s, t) satisfy the closed-form relations") {
  for (double m : {0.0, 1.0, 5.0}) {
    CAPTURE(m);
    const auto f = hesse_cubic(m);
    const auto sols = han_representations(f);
    check_hesse_solutions(m, sols);

    // The three t are distinct and every pencil reproduces f.
    for (std::size_t i = 0; i < sols.size(); ++i) {
      for (std::size_t j = i + 1; j < sols.size(); ++j)
        CHECK(std::abs(sols[i].t - sols[j].t) > 1e-3);
      CHECK(rel_poly_distance(f, det_expand(sols[i].pencil)) < 1e-8);
    }
  }
}

TEST_CASE("fermat cubic: t^3 = -93312 and s = -279936 t") {
  const auto sols = han_representations(hesse_cubic(0.0));
  REQUIRE(sols.size() == 3);
  for (const HessianSolution& sol : sols) {
    CHECK(std::abs(sol.t * sol.t * sol.t + 93312.0) < 1e-6 * 93312.0);
    CHECK(std::abs(sol.s + 279936.0 * sol.t) < 1e-6 * std::abs(sol.s));
  }
  // One real t (the real cube root of -93312), two conjugate complex ones.
  int real_t = 0;
  for (const auto& sol : sols)
    if (std::abs(sol.t.imag()) < 1e-6) ++real_t;
  CHECK(real_t == 1);
}

TEST_CASE("hessian pencils match the homotopy classes of the test cubic") {
  const auto f = rigid_cubic();
  const auto sols = han_representations(f);
  REQUIRE(sols.size() == 3);
  for (const auto& sol : sols)
    CHECK(rel_poly_distance(f, det_expand(sol.pencil)) < 1e-8);

  TrackerSettings settings;
  const SolveResult hom = solve_representations(f, settings);
  REQUIRE(hom.classes.size() == 3);

  // Each Hessian pencil normalizes onto exactly one homotopy class, and
  // the three land on three different classes.
  std::vector<int> hits(3, 0);
  for (const auto& sol : sols) {
    const NormalizedPencil np = normalize_pencil(sol.pencil);
    int matched = -1;
    for (int k = 0; k < 3; ++k) {
      if (equal_up_to_sign_conjugation(np.C, hom.classes[k].C, 1e-6)) {
        CHECK(matched == -1);
        matched = k;
      }
    }
    REQUIRE(matched >= 0);
    ++hits[matched];
  }
  for (int k = 0; k < 3; ++k) CHECK(hits[k] == 1);
}

TEST_CASE("the t-values are invariant under unimodular coordinate changes") {
  const auto f = rigid_cubic();
  const auto base = han_representations(f);

  const std::vector<std::vector<Complex>> u = {
      {1.0, 2.0, 1.0}, {1.0, 3.0, 2.0}, {1.0, 3.0, 3.0}};  // det = 1
  const auto moved = han_representations(apply_linear(f, u));
  REQUIRE(moved.size() == base.size());
  for (std::size_t i = 0; i < base.size(); ++i)
    CHECK(std::abs(base[i].t - moved[i].t) <
          1e-6 * std::max(1.0, std::abs(base[i].t)));
}

TEST_CASE("singular cubics are rejected") {
  // Hes(x^3 + y^3) = 0: every minor vanishes identically.
  HomogeneousPoly<Complex> two_cubes(3);
  two_cubes.set({3, 0, 0}, 1.0);
  two_cubes.set({0, 3, 0}, 1.0);
  CHECK_THROWS_AS(han_representations(two_cubes), ValidationError);

  HomogeneousPoly<Complex> cube(3);
  cube.set({3, 0, 0}, 1.0);
  CHECK_THROWS_AS(han_representations(cube), ValidationError);

  HomogeneousPoly<Complex> quartic(4);
  quartic.set({4, 0, 0}, 1.0);
  CHECK_THROWS_AS(han_representations(quartic), ValidationError);
}
