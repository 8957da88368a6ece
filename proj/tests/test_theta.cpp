#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "hvrep/errors.hpp"
#include "hvrep/field.hpp"
#include "hvrep/theta.hpp"

using namespace hvrep;

namespace {

constexpr double kPi = std::numbers::pi;

PeriodMatrix random_omega(int g, Rng& rng) {
  std::vector<std::vector<double>> A(g, std::vector<double>(g));
  for (auto& row : A)
    for (double& v : row) v = rng.uniform(-1.0, 1.0);
  std::vector<std::vector<Complex>> om(g, std::vector<Complex>(g));
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      double y = (i == j) ? 0.3 : 0.0;
      for (int k = 0; k < g; ++k) y += A[k][i] * A[k][j];
      const double x = rng.uniform(-0.5, 0.5);
      om[i][j] = Complex(x, y);
    }
  for (int i = 0; i < g; ++i)
    for (int j = i + 1; j < g; ++j) om[i][j] = om[j][i] = (om[i][j] + om[j][i]) / 2.0;
  return PeriodMatrix::make(om);
}

std::vector<Complex> random_u(int g, Rng& rng) {
  std::vector<Complex> u(g);
  for (auto& v : u) v = Complex(rng.uniform(-0.8, 0.8), rng.uniform(-0.8, 0.8));
  return u;
}

// exp(pi * Im(u)' Y^{-1} Im(u)): magnitude of the dominant lattice term, the
// scale against which absolute theta errors must be judged.
double peak(const std::vector<Complex>& u, const PeriodMatrix& om) {
  const int g = om.g;
  std::vector<std::vector<double>> M(g, std::vector<double>(g + 1));
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < g; ++j) M[i][j] = om.omega[i][j].imag();
    M[i][g] = u[i].imag();
  }
  for (int c = 0; c < g; ++c) {
    int p = c;
    for (int r = c + 1; r < g; ++r)
      if (std::abs(M[r][c]) > std::abs(M[p][c])) p = r;
    std::swap(M[c], M[p]);
    for (int r = 0; r < g; ++r) {
      if (r == c) continue;
      const double m = M[r][c] / M[c][c];
      for (int j = c; j <= g; ++j) M[r][j] -= m * M[c][j];
    }
  }
  double q = 0.0;
  for (int i = 0; i < g; ++i) q += u[i].imag() * M[i][g] / M[i][i];
  return std::exp(kPi * q);
}

ThetaCharacteristic make_char(std::vector<int> a2, std::vector<int> b2) {
  ThetaCharacteristic c;
  c.a2 = std::move(a2);
  c.b2 = std::move(b2);
  return c;
}

HomogeneousPoly<Complex> lin(Complex a, Complex b, Complex c) {
  HomogeneousPoly<Complex> l(1);
  l.set({1, 0, 0}, a);
  l.add({0, 1, 0}, b);
  l.add({0, 0, 1}, c);
  return l;
}

}  // namespace

TEST_CASE("theta oracle and lattice shifts at genus one") {
  PeriodMatrix om = PeriodMatrix::make({{Complex(0.0, 1.0)}});
  // Direct summation oracle for theta(0; i).
  CHECK(std::abs(theta({Complex(0.0)}, om) - Complex(1.0864348112133080146)) <=
        1e-12);

  Rng rng(11);
  for (int t = 0; t < 5; ++t) {
    const std::vector<Complex> u = random_u(1, rng);
    const Complex base = theta(u, om);
    // Integer shift leaves theta unchanged.
    CHECK(std::abs(theta({u[0] + 1.0}, om) - base) <= 1e-11 * peak(u, om));
    // Lattice shift by the period i multiplies by exp(pi*i*(-2u - i)).
    const Complex factor =
        std::exp(Complex(0.0, kPi) * (-2.0 * u[0] - Complex(0.0, 1.0)));
    const std::vector<Complex> us{u[0] + Complex(0.0, 1.0)};
    const double scale =
        std::max({1.0, peak(us, om), std::abs(factor) * peak(u, om)});
    CHECK(std::abs(theta(us, om) - factor * base) <= 1e-10 * scale);
  }
}

TEST_CASE("quasi-periodicity holds across random period matrices") {
  Rng rng(23);
  for (int g = 1; g <= 3; ++g) {
    for (int trial = 0; trial < 10; ++trial) {
      const PeriodMatrix om = random_omega(g, rng);
      const std::vector<Complex> u = random_u(g, rng);
      std::vector<double> mi(g), ni(g);
      for (int i = 0; i < g; ++i) {
        mi[i] = std::floor(rng.uniform(-2.0, 3.0));
        ni[i] = std::floor(rng.uniform(-2.0, 3.0));
      }
      std::vector<Complex> us(g);
      Complex ex(0.0);
      for (int i = 0; i < g; ++i) {
        us[i] = u[i] + mi[i];
        Complex row(0.0);
        for (int j = 0; j < g; ++j) row += om.omega[i][j] * ni[j];
        us[i] += row;
        ex += -2.0 * ni[i] * u[i] - ni[i] * row;
      }
      const Complex factor = std::exp(Complex(0.0, kPi) * ex);
      const Complex lhs = theta(us, om);
      const Complex rhs = factor * theta(u, om);
      const double scale =
          std::max({1.0, peak(us, om), std::abs(factor) * peak(u, om)});
      CHECK(std::abs(lhs - rhs) <= 1e-9 * scale);
    }
  }
}

TEST_CASE("characteristic parity governs theta symmetry") {
  Rng rng(31);
  for (int g = 1; g <= 3; ++g) {
    const PeriodMatrix om = random_omega(g, rng);
    const std::vector<Complex> zero(g, Complex(0.0));
    for (const ThetaCharacteristic& ch : enumerate_chars(g)) {
      // Odd characteristics vanish at the origin; even gradients do.
      if (!ch.is_even()) {
        CHECK(std::abs(theta_char(ch, zero, om)) <= 1e-9);
      } else {
        for (const Complex& gi : grad_theta_char(ch, zero, om))
          CHECK(std::abs(gi) <= 1e-9);
      }
      for (int t = 0; t < 5; ++t) {
        const std::vector<Complex> u = random_u(g, rng);
        std::vector<Complex> mu(g);
        for (int i = 0; i < g; ++i) mu[i] = -u[i];
        const double sign = ch.is_even() ? 1.0 : -1.0;
        const double scale = std::max(1.0, peak(u, om));
        CHECK(std::abs(theta_char(ch, mu, om) - sign * theta_char(ch, u, om)) <=
              1e-9 * scale);
      }
    }
  }
}

TEST_CASE("characteristic shift equals the exponential-prefactor definition") {
  Rng rng(47);
  const PeriodMatrix om = random_omega(2, rng);
  const std::vector<Complex> u = random_u(2, rng);

  const ThetaCharacteristic zero_char = make_char({0, 0}, {0, 0});
  CHECK(std::abs(theta_char(zero_char, u, om) - theta(u, om)) <=
        1e-12 * std::max(1.0, peak(u, om)));

  for (const ThetaCharacteristic& ch : enumerate_chars(2)) {
    std::vector<Complex> shifted(2);
    Complex ex(0.0);
    for (int i = 0; i < 2; ++i) {
      const double a = 0.5 * ch.a2[i], b = 0.5 * ch.b2[i];
      shifted[i] = u[i] + b;
      Complex row(0.0);
      for (int j = 0; j < 2; ++j) row += om.omega[i][j] * (0.5 * ch.a2[j]);
      shifted[i] += row;
      ex += a * row + 2.0 * a * (u[i] + b);
    }
    const Complex pref = std::exp(Complex(0.0, kPi) * ex);
    const Complex direct = theta_char(ch, u, om);
    const Complex via_shift = pref * theta(shifted, om);
    const double scale =
        std::max({1.0, peak(shifted, om) * std::abs(pref), std::abs(direct)});
    CHECK(std::abs(direct - via_shift) <= 1e-9 * scale);
  }
}

TEST_CASE("gradient matches central finite differences") {
  Rng rng(59);
  const double h = 1e-5;
  for (int g = 1; g <= 3; ++g) {
    const PeriodMatrix om = random_omega(g, rng);
    const auto chars = enumerate_chars(g);
    for (int pick : {1, (1 << (2 * g)) - 1}) {
      const ThetaCharacteristic& ch = chars[pick];
      const std::vector<Complex> u = random_u(g, rng);
      const std::vector<Complex> grad = grad_theta_char(ch, u, om);
      double gscale = 1.0;
      for (const Complex& v : grad) gscale = std::max(gscale, std::abs(v));
      for (int i = 0; i < g; ++i) {
        std::vector<Complex> up = u, dn = u;
        up[i] += h;
        dn[i] -= h;
        const Complex fd =
            (theta_char(ch, up, om) - theta_char(ch, dn, om)) / (2.0 * h);
        CHECK(std::abs(fd - grad[i]) <= 1e-6 * gscale);
      }
    }
  }

  // Odd characteristic at the origin has a nonzero gradient (genus one).
  const PeriodMatrix om1 = PeriodMatrix::make({{Complex(0.0, 1.0)}});
  const auto g1 =
      grad_theta_char(make_char({1}, {1}), {Complex(0.0)}, om1);
  CHECK(std::abs(g1[0]) > 1.0);
}

TEST_CASE("truncation tolerance bounds the discarded tail") {
  Rng rng(67);
  for (int g : {1, 2}) {
    const PeriodMatrix om = random_omega(g, rng);
    const std::vector<Complex> u = random_u(g, rng);
    const double scale = std::max(1.0, peak(u, om));
    const Complex coarse = theta(u, om, 1e-6);
    // Doubling the truncation radius must move the value by less than tol.
    CHECK(std::abs(detail::theta_radius_scaled(u, om, 1e-6, 2.0) - coarse) <=
          1e-6 * scale);
    CHECK(std::abs(theta(u, om, 1e-12) - coarse) <= 1e-6 * scale);
  }

  // A nearly-degenerate imaginary part needs more than 10^7 lattice points.
  const PeriodMatrix flat = PeriodMatrix::make(
      {{Complex(0.0, 1e-8), Complex(0.0)}, {Complex(0.0), Complex(0.0, 1e-8)}});
  CHECK_THROWS_AS(theta({Complex(0.0), Complex(0.0)}, flat), NumericalError);

  CHECK_THROWS_AS(PeriodMatrix::make({{Complex(0.0, -1.0)}}), ValidationError);
  CHECK_THROWS_AS(
      PeriodMatrix::make(
          {{Complex(0.0, 1.0), Complex(1.0)}, {Complex(0.0), Complex(0.0, 1.0)}}),
      ValidationError);
}

TEST_CASE("characteristic census matches the parity formulas") {
  const auto count = [](int g) {
    const auto chars = enumerate_chars(g);
    int even = 0;
    for (const auto& c : chars) even += c.is_even();
    return std::pair<int, int>(static_cast<int>(chars.size()), even);
  };
  CHECK(count(1) == std::pair<int, int>(4, 3));
  CHECK(count(2) == std::pair<int, int>(16, 10));
  CHECK(count(3) == std::pair<int, int>(64, 36));

  const auto chars = enumerate_chars(3);
  CHECK(chars[0].a2 == std::vector<int>{0, 0, 0});
  CHECK(chars[0].b2 == std::vector<int>{0, 0, 0});
  // Inner loop runs over b2, so index 8 starts the a2 = 001 block.
  CHECK(chars[8].a2 == std::vector<int>{0, 0, 1});
  CHECK(chars[8].b2 == std::vector<int>{0, 0, 0});
}

TEST_CASE("real even characteristics reproduce the printed label table") {
  const RealEvenChars rec = real_even_chars(3, 2);
  const std::vector<std::pair<std::vector<int>, std::vector<int>>> expected{
      {{0, 0, 0}, {0, 0, 0}}, {{0, 0, 0}, {0, 0, 1}}, {{0, 0, 0}, {0, 1, 0}},
      {{0, 0, 0}, {0, 1, 1}}, {{0, 0, 0}, {1, 0, 0}}, {{0, 0, 0}, {1, 0, 1}},
      {{0, 0, 0}, {1, 1, 0}}, {{0, 0, 0}, {1, 1, 1}}, {{0, 0, 1}, {0, 0, 0}},
      {{0, 0, 1}, {0, 1, 0}}, {{0, 0, 1}, {1, 0, 0}}, {{0, 0, 1}, {1, 1, 0}}};
  REQUIRE(rec.real_evens.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(rec.real_evens[i].a2 == expected[i].first);
    CHECK(rec.real_evens[i].b2 == expected[i].second);
  }
  REQUIRE(rec.definite.size() == 8);
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(rec.definite[i].a2 == std::vector<int>{0, 0, 0});
    CHECK(rec.definite[i].b2 == expected[i].second);
  }

  const RealEvenChars rec1 = real_even_chars(1, 2);
  REQUIRE(rec1.real_evens.size() == 3);
  CHECK(rec1.definite.size() == 2);

  const RealEvenChars rec6 = real_even_chars(6, 3);
  CHECK(rec6.real_evens.size() == 160);
  CHECK(rec6.definite.size() == 64);

  // Odd conjugation-block rank has no real structure.
  CHECK_THROWS_AS(real_even_chars(3, 3), ValidationError);
  CHECK_THROWS_AS(real_even_chars(3, 9), ValidationError);
}

TEST_CASE("representation formula rejects mismatched inputs") {
  NormalizedCurve nc;
  nc.f = HomogeneousPoly<Complex>(3);
  nc.f.set({3, 0, 0}, Complex(1.0));
  nc.betas = {Complex(-1.0), Complex(1.0), Complex(2.0)};
  nc.cdiag = {Complex(0.0), Complex(0.0), Complex(0.0)};

  CurvePeriodData data;
  data.g = 1;
  data.omega = PeriodMatrix::make({{Complex(0.0, 1.0)}});
  data.points.resize(3);
  for (int j = 0; j < 3; ++j) {
    data.points[j].beta = nc.betas[j].real();
    data.points[j].phi = {Complex(0.1 * (j + 1))};
    data.points[j].r = {Complex(1.0)};
  }

  const ThetaCharacteristic even = make_char({0}, {0});
  const ThetaCharacteristic odd = make_char({1}, {1});
  CHECK_THROWS_AS(hv_representation(nc, data, odd, odd, 1e-6),
                  ValidationError);  // delta must be even
  CHECK_THROWS_AS(hv_representation(nc, data, even, even, 1e-6),
                  ValidationError);  // eps must be odd

  CurvePeriodData wrong = data;
  wrong.points.pop_back();
  CHECK_THROWS_AS(hv_representation(nc, wrong, even, odd, 1e-6),
                  ValidationError);

  wrong = data;
  wrong.points[1].beta = 7.0;
  CHECK_THROWS_AS(hv_representation(nc, wrong, even, odd, 1e-6),
                  ValidationError);
}

TEST_CASE("bitangent detection classifies line contact") {
  // Completely reducible quartic: every component line divides it.
  HomogeneousPoly<Complex> f(4);
  f.set({2, 1, 1}, Complex(1.0));
  f.add({1, 2, 1}, Complex(1.0));
  f.add({1, 1, 2}, Complex(1.0));
  CHECK(is_bitangent(f, lin(0, 0, 1)));
  CHECK(is_bitangent(f, lin(0, 1, 0)));
  CHECK(is_bitangent(f, lin(1, 1, 1)));
  // A line through two of the four line-pair intersection points.
  CHECK(is_bitangent(f, lin(0, 1, 1)));
  CHECK(is_bitangent(f, lin(1, 1, 0)));
  // A generic line crosses the four components transversally.
  CHECK(!is_bitangent(f, lin(1, 2, 3)));

  // Smooth quartic with a known bitangent y = lambda x.
  HomogeneousPoly<Complex> q(4);
  q.set({4, 0, 0}, Complex(2.0));
  q.add({0, 4, 0}, Complex(1.0));
  q.add({0, 0, 4}, Complex(1.0));
  q.add({2, 2, 0}, Complex(-3.0));
  q.add({2, 0, 2}, Complex(-3.0));
  q.add({0, 2, 2}, Complex(1.0));
  const double lambda = std::sqrt(1.0 + 2.0 / std::sqrt(3.0));
  CHECK(is_bitangent(q, lin(-lambda, 1.0, 0.0)));
  // Tangent at (1, 0, 1) only: one double root plus two simple ones.
  CHECK(!is_bitangent(q, lin(1.0, 0.0, -1.0)));
  CHECK(!is_bitangent(q, lin(1.0, 2.0, 3.0)));

  CHECK_THROWS_AS(is_bitangent(lin(1, 1, 1) * lin(1, -1, 0), lin(1, 0, 0)),
                  ValidationError);
  CHECK_THROWS_AS(is_bitangent(q, lin(1, 1, 1) * lin(1, -1, 0)),
                  ValidationError);
}

TEST_CASE("bitangent formula guards its preconditions") {
  CurvePeriodData data;
  data.g = 3;
  data.omega = PeriodMatrix::make({{Complex(0.0, 1.0), Complex(0.0), Complex(0.0)},
                                   {Complex(0.0), Complex(0.0, 1.0), Complex(0.0)},
                                   {Complex(0.0), Complex(0.0), Complex(0.0, 1.0)}});
  const ThetaCharacteristic odd = make_char({1, 0, 0}, {1, 0, 0});
  const ThetaCharacteristic even = make_char({0, 0, 0}, {0, 0, 0});

  CHECK_THROWS_AS(bitangent_from_char(even, data), ValidationError);
  CHECK_THROWS_AS(bitangent_from_char(odd, data), ValidationError);  // no omega1

  data.omega1 = {{Complex(1.0), Complex(0.0), Complex(0.0)},
                 {Complex(0.0), Complex(1.0), Complex(0.0)},
                 {Complex(0.0), Complex(0.0), Complex(1.0)}};
  const HomogeneousPoly<Complex> b = bitangent_from_char(odd, data);
  CHECK(b.degree() == 1);
  double norm = 0.0;
  for (const Complex c : {b.coeff({1, 0, 0}), b.coeff({0, 1, 0}), b.coeff({0, 0, 1})})
    norm += std::norm(c);
  CHECK(std::abs(norm - 1.0) <= 1e-9);

  CurvePeriodData g1;
  g1.g = 1;
  g1.omega = PeriodMatrix::make({{Complex(0.0, 1.0)}});
  g1.omega1 = {{Complex(1.0)}};
  CHECK_THROWS_AS(bitangent_from_char(make_char({1}, {1}), g1),
                  ValidationError);
}
