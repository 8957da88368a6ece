#include "hvrep/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "hvrep/errors.hpp"
#include "hvrep/normalize.hpp"
#include "hvrep/roots.hpp"

namespace hvrep {

namespace {

// Reduces tau = p2/p1 into the standard fundamental domain by transforming
// the basis itself, so the lattice Z p1 + Z p2 never changes: translations
// p2 -= n p1 and inversions (p2, p1) <- (-p1, p2).  Boundary convention:
// Re tau in (-1/2, 1/2] and, on the unit circle, Re tau >= 0.
void reduce_basis(Complex& p2, Complex& p1) {
  Complex tau = p2 / p1;
  if (std::abs(tau.imag()) < 1e-14 * std::abs(tau))
    throw NumericalError("period lattice is degenerate");
  if (tau.imag() < 0.0) {
    p2 = -p2;
    tau = -tau;
  }
  for (int it = 0; it < 64; ++it) {
    const double n = std::floor(tau.real() + 0.5);
    if (n != 0.0) {
      p2 -= Complex(n) * p1;
      tau = p2 / p1;
    }
    if (std::abs(tau) < 1.0 - 1e-14) {
      const Complex t = p1;
      p1 = p2;
      p2 = -t;
      tau = p2 / p1;
    } else {
      break;
    }
  }
  if (std::abs(std::abs(tau) - 1.0) <= 1e-9 && tau.real() < -1e-12) {
    const Complex t = p1;
    p1 = p2;
    p2 = -t;
    tau = p2 / p1;
  }
  if (tau.real() <= -0.5 + 1e-12) p2 += p1;
}

}  // namespace

Complex carlson_rf(Complex x, Complex y, Complex z) {
  int zeros = 0;
  for (const Complex& v : {x, y, z}) zeros += (std::abs(v) == 0.0);
  if (zeros > 1)
    throw ValidationError("carlson_rf allows at most one zero argument");
  for (int it = 0; it < 200; ++it) {
    const Complex sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    const Complex lam = sx * sy + sy * sz + sz * sx;
    x = 0.25 * (x + lam);
    y = 0.25 * (y + lam);
    z = 0.25 * (z + lam);
    const Complex mu = (x + y + z) / 3.0;
    const double spread = std::max({std::abs(x - mu), std::abs(y - mu),
                                    std::abs(z - mu)});
    if (spread <= 1e-10 * std::abs(mu)) break;
  }
  const Complex mu = (x + y + z) / 3.0;
  const Complex dx = (mu - x) / mu, dy = (mu - y) / mu, dz = (mu - z) / mu;
  const Complex e2 = dx * dy - dz * dz;
  const Complex e3 = dx * dy * dz;
  return (1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) /
         std::sqrt(mu);
}

EllipticModel elliptic_model(const UnivariatePoly<Complex>& q) {
  if (q.degree() != 3)
    throw ValidationError("elliptic model expects a cubic polynomial");
  double cscale = 0.0;
  for (const Complex& c : q.coeffs()) cscale = std::max(cscale, std::abs(c));
  for (const Complex& c : q.coeffs())
    if (std::abs(c.imag()) > 1e-10 * cscale)
      throw ValidationError("elliptic model expects real coefficients");
  const double lead = q.coeff(3).real();

  const std::vector<RootCluster> clusters = poly_roots(q, 1e-12, 1e-8);
  std::vector<Complex> roots;
  for (const RootCluster& cl : clusters) {
    if (cl.multiplicity != 1)
      throw ValidationError("branch points must be distinct");
    roots.push_back(cl.value);
  }

  double rscale = 1.0;
  for (const Complex& r : roots) rscale = std::max(rscale, std::abs(r));
  bool all_real = true;
  for (const Complex& r : roots)
    all_real = all_real && std::abs(r.imag()) <= 1e-8 * rscale;

  EllipticModel m;
  m.q = q;
  Complex p1, p2;
  if (all_real) {
    std::vector<double> e{roots[0].real(), roots[1].real(), roots[2].real()};
    std::sort(e.begin(), e.end());
    const double sk = std::sqrt(std::abs(lead));
    const double j12 =
        2.0 * carlson_rf(Complex(0.0), Complex(e[2] - e[1]), Complex(e[2] - e[0]))
                  .real() /
        sk;
    const double j23 =
        2.0 * carlson_rf(Complex(0.0), Complex(e[1] - e[0]), Complex(e[2] - e[0]))
                  .real() /
        sk;
    // The integrand 1/sqrt(q) is real where q > 0 and -i/sqrt|q| where q < 0;
    // the sign of q on each open segment fixes the phase.
    const auto with_phase = [&](double lo, double hi, double mag) {
      const double s = q.eval(Complex(0.5 * (lo + hi))).real();
      return s >= 0.0 ? Complex(mag, 0.0) : Complex(0.0, -mag);
    };
    m.seg12 = with_phase(e[0], e[1], j12);
    m.seg23 = with_phase(e[1], e[2], j23);
    m.branch = {Complex(e[0]), Complex(e[1]), Complex(e[2])};
    p1 = 2.0 * m.seg12;
    p2 = 2.0 * m.seg23;
  } else {
    // One real root er and a conjugate pair p.  The two half-basis integrals
    // run from er to the branch point at infinity and from er to p; the
    // second uses the substitution v = er + 1/s, which moves er to infinity
    // and turns the path into a branch-point-to-infinity Carlson form.
    std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
      return std::abs(a.imag()) < std::abs(b.imag());
    });
    const Complex er = roots[0].real();
    Complex p = roots[1].imag() > 0.0 ? roots[1] : roots[2];
    const Complex pc = std::conj(p);
    const Complex kc(lead);
    m.seg12 = 2.0 * carlson_rf(Complex(0.0), er - p, er - pc) / std::sqrt(kc);
    const Complex r1 = -1.0 / (er - p);
    const Complex r2 = -1.0 / (er - pc);
    const Complex kprime = kc * (er - p) * (er - pc);
    m.seg23 = 2.0 * carlson_rf(r1, Complex(0.0), r1 - r2) / std::sqrt(kprime);
    m.branch = {er, p, pc};
    p1 = 2.0 * m.seg12;
    p2 = 2.0 * m.seg23;
  }

  reduce_basis(p2, p1);
  m.omega1 = p1;
  m.omega2 = p2;
  m.tau = p2 / p1;
  return m;
}

std::vector<Complex> half_period_assignment(const EllipticModel& model) {
  double rscale = 1.0;
  for (const Complex& b : model.branch)
    rscale = std::max(rscale, std::abs(b));
  for (const Complex& b : model.branch)
    if (std::abs(b.imag()) > 1e-8 * rscale)
      throw ValidationError(
          "half-period assignment needs three real branch points");

  const Complex o1 = model.omega1, o2 = model.omega2;
  const double det = o1.real() * o2.imag() - o2.real() * o1.imag();
  const std::vector<Complex> aj{Complex(0.0), model.seg12,
                                model.seg12 + model.seg23};
  std::vector<Complex> out;
  std::vector<std::pair<int, int>> seen;
  for (const Complex& A : aj) {
    const double x1 = (A.real() * o2.imag() - A.imag() * o2.real()) / det;
    const double x2 = (A.imag() * o1.real() - A.real() * o1.imag()) / det;
    const double t1 = 2.0 * x1, t2 = 2.0 * x2;
    if (std::abs(t1 - std::round(t1)) > 1e-6 ||
        std::abs(t2 - std::round(t2)) > 1e-6)
      throw NumericalError(
          "doubled Abel-Jacobi value misses the half-period lattice");
    const int pb = ((static_cast<long>(std::llround(t1)) % 2) + 2) % 2;
    const int sb = ((static_cast<long>(std::llround(t2)) % 2) + 2) % 2;
    for (const auto& sp : seen)
      if (sp.first == pb && sp.second == sb)
        throw NumericalError("branch points collide on the half-period lattice");
    seen.emplace_back(pb, sb);
    out.push_back(0.5 * (Complex(pb) + Complex(sb) * model.tau));
  }
  return out;
}

CurvePeriodData build_period_data(const HomogeneousPoly<Complex>& f) {
  if (f.degree() != 3)
    throw ValidationError("period data generation expects a cubic curve");
  const NormalizedCurve nc = normalize_input(f);
  if (!nc.real_betas)
    throw ValidationError(
        "curve must split into three distinct real linear factors over z = 0");

  // Monomial support: p(x, y) plus the single mixed term -x z^2.
  const double fscale = nc.f.max_abs();
  for (const auto& [e, c] : nc.f.terms()) {
    const bool in_p = e[2] == 0;
    const bool is_xz2 = e[0] == 1 && e[1] == 0 && e[2] == 2;
    if (!in_p && !is_xz2 && std::abs(c) > 1e-10 * fscale)
      throw ValidationError("curve is not in the p(x,y) - x z^2 chart form");
  }
  if (std::abs(nc.f.coeff({1, 0, 2}) + 1.0) > 1e-8)
    throw ValidationError(
        "curve must be scaled so the x z^2 coefficient is -1 after making the "
        "x^3 coefficient 1");

  std::vector<double> b(3);
  for (int j = 0; j < 3; ++j) {
    if (std::abs(nc.betas[j]) < 1e-9)
      throw ValidationError(
          "a vanishing beta puts a branch point at infinity; unsupported");
    b[j] = nc.betas[j].real();
  }

  // q(v) = (1 + b0 v)(1 + b1 v)(1 + b2 v): own chart x = 1, z^2 = q(v).
  const UnivariatePoly<Complex> q{
      std::vector<Complex>{Complex(1.0), Complex(b[0] + b[1] + b[2]),
                           Complex(b[0] * b[1] + b[0] * b[2] + b[1] * b[2]),
                           Complex(b[0] * b[1] * b[2])}};
  const EllipticModel model = elliptic_model(q);
  const std::vector<Complex> phis = half_period_assignment(model);
  const UnivariatePoly<Complex> qd = q.derivative();

  CurvePeriodData data;
  data.g = 1;
  data.omega = PeriodMatrix::make({{model.tau}});
  data.omega1 = {{model.omega1}};
  for (int j = 0; j < 3; ++j) {
    const double v = -1.0 / b[j];
    int idx = -1;
    for (int mten = 0; mten < 3; ++mten)
      if (std::abs(model.branch[mten] - Complex(v)) <=
          1e-6 * std::max(1.0, std::abs(v)))
        idx = mten;
    if (idx < 0)
      throw NumericalError("branch point does not match any chart image");
    PeriodPoint pt;
    pt.beta = b[j];
    pt.phi = {phis[idx]};
    pt.r = {2.0 / (model.omega1 * qd.eval(Complex(v)))};
    data.points.push_back(std::move(pt));
  }
  return data;
}

}  // namespace hvrep
