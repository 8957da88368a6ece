#include "hvrep/theta.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "hvrep/errors.hpp"
#include "hvrep/roots.hpp"

namespace hvrep {

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::MatrixXcd to_eigen(const std::vector<std::vector<Complex>>& m) {
  const int n = static_cast<int>(m.size());
  Eigen::MatrixXcd out(n, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(m[i].size()) != n)
      throw ValidationError("matrix rows must all have the same length");
    for (int j = 0; j < n; ++j) out(i, j) = m[i][j];
  }
  return out;
}

struct LatticeSum {
  Complex value{0.0, 0.0};
  std::vector<Complex> grad;
};

// Truncated sum over the shifted lattice m + a:
//   sum_m exp(pi*i*((m+a)' Omega (m+a) + 2 (m+a)'(u+b)))
// together with its u-gradient when want_grad is set.  Terms are kept inside
// the ellipsoid ||Y^(1/2)(m + a + Y^{-1} Im u)|| <= R, with R solving
//   pi R^2 = ln(1.1/tol) + g ln((R+2)/h),  h = min(1, sqrt(lambda_min)/2),
// so the discarded tail is below tol relative to the largest term magnitude.
LatticeSum theta_sum(const std::vector<Complex>& u, const PeriodMatrix& omega,
                     double tol, const std::vector<double>& a,
                     const std::vector<double>& b, double radius_scale,
                     bool want_grad) {
  const int g = omega.g;
  if (static_cast<int>(u.size()) != g)
    throw ValidationError("theta argument length does not match the genus");

  const Eigen::MatrixXcd Om = to_eigen(omega.omega);
  const Eigen::MatrixXd Y = Om.imag();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Y);
  const double lambda_min = es.eigenvalues()(0);
  const Eigen::MatrixXd Yinv = es.operatorInverseSqrt() * es.operatorInverseSqrt();

  Eigen::VectorXd y(g);
  for (int i = 0; i < g; ++i) y(i) = u[i].imag();
  const Eigen::VectorXd off = Yinv * y;

  // Ellipsoid center for m, and the truncation radius.
  Eigen::VectorXd ctr(g);
  for (int i = 0; i < g; ++i) ctr(i) = a[i] + off(i);

  const double target = std::log(1.1 / std::clamp(tol, 1e-300, 0.1));
  const double h = std::min(1.0, 0.5 * std::sqrt(lambda_min));
  double R = std::sqrt(std::max(1.0, target / kPi));
  for (int it = 0; it < 16; ++it)
    R = std::sqrt((target + g * std::log((R + 2.0) / h)) / kPi);
  R = std::max(R, 1.5) * radius_scale;

  std::vector<long> lo(g), hi(g);
  double count = 1.0;
  for (int i = 0; i < g; ++i) {
    const double box = std::sqrt(Yinv(i, i)) * R;
    lo[i] = static_cast<long>(std::ceil(-ctr(i) - box));
    hi[i] = static_cast<long>(std::floor(-ctr(i) + box));
    count *= std::max(0.0, static_cast<double>(hi[i] - lo[i] + 1));
  }
  if (count > 1e7)
    throw NumericalError(
        "theta truncation radius requires more than 10^7 lattice points");

  LatticeSum out;
  out.grad.assign(want_grad ? g : 0, Complex(0.0));
  if (count == 0.0) return out;

  const Complex ipi(0.0, kPi);
  const double r2 = R * R * (1.0 + 1e-12);
  std::vector<long> m(lo.begin(), lo.end());
  Eigen::VectorXd w(g), v(g);
  std::vector<Complex> ub(g);
  for (int i = 0; i < g; ++i) ub[i] = u[i] + Complex(b[i]);
  while (true) {
    for (int i = 0; i < g; ++i) w(i) = static_cast<double>(m[i]) + ctr(i);
    if (w.dot(Y * w) <= r2) {
      for (int i = 0; i < g; ++i) v(i) = static_cast<double>(m[i]) + a[i];
      Complex phase(0.0);
      for (int i = 0; i < g; ++i) {
        Complex row(0.0);
        for (int j = 0; j < g; ++j) row += Om(i, j) * v(j);
        phase += v(i) * (row + 2.0 * ub[i]);
      }
      const Complex term = std::exp(ipi * phase);
      out.value += term;
      if (want_grad)
        for (int i = 0; i < g; ++i) out.grad[i] += 2.0 * ipi * v(i) * term;
    }
    int k = g - 1;
    while (k >= 0 && m[k] == hi[k]) {
      m[k] = lo[k];
      --k;
    }
    if (k < 0) break;
    ++m[k];
  }
  return out;
}

std::vector<double> half_vector(const std::vector<int>& bits, int g,
                                const char* what) {
  if (static_cast<int>(bits.size()) != g)
    throw ValidationError(std::string(what) +
                          " label length does not match the genus");
  std::vector<double> v(g);
  for (int i = 0; i < g; ++i) {
    if (bits[i] != 0 && bits[i] != 1)
      throw ValidationError(std::string(what) + " labels must be 0/1");
    v[i] = 0.5 * bits[i];
  }
  return v;
}

// Magnitude of the dominant lattice-sum term, exp(pi * y' Y^{-1} y): the
// natural scale against which theta values at argument u should be judged.
double peak_scale(const std::vector<Complex>& u, const PeriodMatrix& omega) {
  const int g = omega.g;
  Eigen::MatrixXd Y(g, g);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) Y(i, j) = omega.omega[i][j].imag();
  Eigen::VectorXd y(g);
  for (int i = 0; i < g; ++i) y(i) = u[i].imag();
  const double q = y.dot(Y.llt().solve(y));
  return std::exp(kPi * q);
}

std::vector<Complex> phi_difference(const CurvePeriodData& data, int j,
                                    int k) {
  std::vector<Complex> du(data.g);
  for (int i = 0; i < data.g; ++i)
    du[i] = data.points[k].phi[i] - data.points[j].phi[i];
  return du;
}

}  // namespace

PeriodMatrix PeriodMatrix::make(std::vector<std::vector<Complex>> omega) {
  PeriodMatrix pm;
  pm.g = static_cast<int>(omega.size());
  if (pm.g < 1) throw ValidationError("period matrix must be nonempty");
  const Eigen::MatrixXcd Om = to_eigen(omega);
  double scale = std::max(1.0, Om.cwiseAbs().maxCoeff());
  if ((Om - Om.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw ValidationError("period matrix must be symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Om.imag());
  if (es.eigenvalues()(0) <= 0.0)
    throw ValidationError(
        "period matrix must have positive definite imaginary part");
  pm.omega = std::move(omega);
  return pm;
}

int ThetaCharacteristic::parity() const {
  if (a2.size() != b2.size())
    throw ValidationError("characteristic labels must have equal length");
  int s = 0;
  for (std::size_t i = 0; i < a2.size(); ++i) s += a2[i] * b2[i];
  return s & 1;
}

Complex theta(const std::vector<Complex>& u, const PeriodMatrix& omega,
              double tol) {
  const std::vector<double> zero(omega.g, 0.0);
  return theta_sum(u, omega, tol, zero, zero, 1.0, false).value;
}

Complex theta_char(const ThetaCharacteristic& eps,
                   const std::vector<Complex>& u, const PeriodMatrix& omega,
                   double tol) {
  const std::vector<double> a = half_vector(eps.a2, omega.g, "characteristic");
  const std::vector<double> b = half_vector(eps.b2, omega.g, "characteristic");
  return theta_sum(u, omega, tol, a, b, 1.0, false).value;
}

std::vector<Complex> grad_theta_char(const ThetaCharacteristic& eps,
                                     const std::vector<Complex>& u,
                                     const PeriodMatrix& omega, double tol) {
  const std::vector<double> a = half_vector(eps.a2, omega.g, "characteristic");
  const std::vector<double> b = half_vector(eps.b2, omega.g, "characteristic");
  return theta_sum(u, omega, tol, a, b, 1.0, true).grad;
}

namespace detail {
Complex theta_radius_scaled(const std::vector<Complex>& u,
                            const PeriodMatrix& omega, double tol,
                            double radius_scale) {
  const std::vector<double> zero(omega.g, 0.0);
  return theta_sum(u, omega, tol, zero, zero, radius_scale, false).value;
}
}  // namespace detail

std::vector<ThetaCharacteristic> enumerate_chars(int g) {
  if (g < 1 || g > 12)
    throw ValidationError("characteristic enumeration expects 1 <= g <= 12");
  std::vector<ThetaCharacteristic> out;
  out.reserve(std::size_t(1) << (2 * g));
  for (long av = 0; av < (1L << g); ++av)
    for (long bv = 0; bv < (1L << g); ++bv) {
      ThetaCharacteristic c;
      c.a2.resize(g);
      c.b2.resize(g);
      for (int i = 0; i < g; ++i) {
        c.a2[i] = static_cast<int>((av >> (g - 1 - i)) & 1);
        c.b2[i] = static_cast<int>((bv >> (g - 1 - i)) & 1);
      }
      out.push_back(std::move(c));
    }
  return out;
}

RealEvenChars real_even_chars(int g, int k) {
  if (k < 1 || k > g + 1)
    throw ValidationError("real characteristic count expects 1 <= k <= g+1");
  const int r = g - k + 1;
  if (r % 2 != 0)
    throw ValidationError(
        "conjugation block rank g-k+1 must be even for a real structure");
  RealEvenChars out;
  for (const ThetaCharacteristic& c : enumerate_chars(g)) {
    if (!c.is_even()) continue;
    bool real = true;
    for (int i = 0; i < r; ++i) real = real && c.a2[i] == 0;
    if (!real) continue;
    out.real_evens.push_back(c);
    if (std::all_of(c.a2.begin(), c.a2.end(), [](int v) { return v == 0; }))
      out.definite.push_back(c);
  }
  return out;
}

SymmetricPencil<Complex> hv_representation(const NormalizedCurve& nc,
                                           const CurvePeriodData& data,
                                           const ThetaCharacteristic& delta,
                                           const ThetaCharacteristic& eps,
                                           double tol) {
  const int d = static_cast<int>(nc.betas.size());
  const int g = data.g;
  if (data.omega.g != g)
    throw ValidationError("period data genus does not match its matrix");
  if (static_cast<int>(data.points.size()) != d)
    throw ValidationError("period data must carry one point per beta");
  for (int j = 0; j < d; ++j) {
    const PeriodPoint& pt = data.points[j];
    if (static_cast<int>(pt.phi.size()) != g ||
        static_cast<int>(pt.r.size()) != g)
      throw ValidationError("period point vectors must have genus length");
    if (std::abs(Complex(pt.beta) - nc.betas[j]) >
        1e-6 * std::max(1.0, std::abs(nc.betas[j])))
      throw ValidationError("period data betas do not match the curve");
  }
  if (!delta.is_even())
    throw ValidationError("delta characteristic must be even");
  if (eps.is_even())
    throw ValidationError("eps characteristic must be odd");

  const double ttol = 1e-12;
  const std::vector<Complex> zero(g, Complex(0.0));
  const Complex th0 = theta_char(delta, zero, data.omega, ttol);
  if (std::abs(th0) < tol)
    throw ValidationError(
        "theta[delta](0) vanishes; the chosen delta admits no representation");
  const std::vector<Complex> ge = grad_theta_char(eps, zero, data.omega, ttol);

  std::vector<Complex> sq(d);
  for (int j = 0; j < d; ++j) {
    if (std::abs(nc.betas[j]) < 1e-12)
      throw ValidationError("theta formula needs nonzero betas");
    Complex dot(0.0);
    for (int i = 0; i < g; ++i) dot += data.points[j].r[i] * ge[i];
    sq[j] = std::sqrt(dot / nc.betas[j]);
  }

  std::vector<std::vector<Complex>> off(d, std::vector<Complex>(d, Complex(0.0)));
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      const std::vector<Complex> du = phi_difference(data, j, k);
      const Complex num = theta_char(delta, du, data.omega, ttol);
      const Complex den = theta_char(eps, du, data.omega, ttol);
      if (std::abs(den) < 1e-8 * peak_scale(du, data.omega))
        throw ValidationError(
            "theta[eps] vanishes at a pairwise difference; pick another eps");
      const Complex c =
          (nc.betas[k] - nc.betas[j]) / th0 * (num / den) * sq[j] * sq[k];
      off[j][k] = c;
      off[k][j] = c;
    }

  // One global scalar on the off-diagonal block is left undetermined; fix it
  // against the coefficient of x^(d-2) z^2 of f, which depends on C only
  // through sum_{j<k} (c_jj c_kk - c_jk^2).
  Complex sum_qq(0.0), sum_cc(0.0);
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      sum_qq += nc.cdiag[j] * nc.cdiag[k];
      sum_cc += off[j][k] * off[j][k];
    }
  const Complex target = nc.f.coeff({d - 2, 0, 2});
  std::vector<Complex> mus{Complex(1.0)};
  if (std::abs(sum_cc) > 1e-200) {
    const Complex mu = std::sqrt((sum_qq - target) / sum_cc);
    mus = {mu, -mu};
  }

  std::vector<std::vector<Complex>> A(d, std::vector<Complex>(d, Complex(0.0)));
  std::vector<std::vector<Complex>> B = A;
  for (int j = 0; j < d; ++j) {
    A[j][j] = Complex(1.0);
    B[j][j] = nc.betas[j];
  }

  SymmetricPencil<Complex> best;
  double best_res = -1.0;
  for (const Complex& mu : mus) {
    std::vector<std::vector<Complex>> C(d, std::vector<Complex>(d, Complex(0.0)));
    for (int j = 0; j < d; ++j) {
      C[j][j] = nc.cdiag[j];
      for (int k = 0; k < d; ++k)
        if (k != j) C[j][k] = mu * off[j][k];
    }
    SymmetricPencil<Complex> cand = SymmetricPencil<Complex>::make(A, B, C);
    const double res = rel_poly_distance(nc.f, det_expand(cand));
    if (best_res < 0.0 || res < best_res) {
      best_res = res;
      best = cand;
    }
  }
  if (best_res > tol)
    throw NumericalError("calibrated determinant residual " +
                         std::to_string(best_res) + " exceeds tolerance");
  return best;
}

ThetaCharacteristic pick_odd_eps(const CurvePeriodData& data, double tol) {
  const double ttol = 1e-12;
  const double gate = 1e-2 * tol;
  for (const ThetaCharacteristic& eps : enumerate_chars(data.g)) {
    if (eps.is_even()) continue;
    bool ok = true;
    const int d = static_cast<int>(data.points.size());
    for (int j = 0; j < d && ok; ++j)
      for (int k = j + 1; k < d && ok; ++k) {
        const std::vector<Complex> du = phi_difference(data, j, k);
        const Complex den = theta_char(eps, du, data.omega, ttol);
        ok = std::abs(den) >= gate * peak_scale(du, data.omega);
      }
    if (ok) return eps;
  }
  throw ValidationError(
      "no odd characteristic keeps theta away from zero at all pairwise "
      "differences");
}

HomogeneousPoly<Complex> bitangent_from_char(const ThetaCharacteristic& eps,
                                             const CurvePeriodData& data) {
  if (eps.is_even())
    throw ValidationError("bitangent formula requires an odd characteristic");
  if (data.g != 3)
    throw ValidationError("bitangent formula is specific to genus 3");
  if (data.omega1.empty())
    throw ValidationError("period data lacks the alpha-period block omega1");

  const std::vector<Complex> zero(3, Complex(0.0));
  const std::vector<Complex> gr = grad_theta_char(eps, zero, data.omega);
  const Eigen::MatrixXcd O1 = to_eigen(data.omega1);
  if (O1.rows() != 3)
    throw ValidationError("omega1 must be a 3x3 matrix");
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(O1.transpose());
  if (!lu.isInvertible())
    throw ValidationError("omega1 block is not invertible");
  Eigen::Vector3cd rhs;
  for (int i = 0; i < 3; ++i) rhs(i) = gr[i];
  Eigen::Vector3cd w = lu.solve(rhs);

  double norm = w.norm();
  if (norm < 1e-300)
    throw NumericalError("bitangent coefficients vanished");
  w /= norm;
  int big = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(w(i)) > std::abs(w(big))) big = i;
  w *= std::conj(w(big)) / std::abs(w(big));

  HomogeneousPoly<Complex> line(1);
  line.set({1, 0, 0}, w(0));
  line.add({0, 1, 0}, w(1));
  line.add({0, 0, 1}, w(2));
  return line;
}

bool is_bitangent(const HomogeneousPoly<Complex>& f,
                  const HomogeneousPoly<Complex>& line, double tol) {
  if (f.degree() != 4)
    throw ValidationError("bitangent test expects a quartic curve");
  if (line.degree() != 1)
    throw ValidationError("bitangent test expects a linear form");

  const std::array<Complex, 3> coef{line.coeff({1, 0, 0}),
                                    line.coeff({0, 1, 0}),
                                    line.coeff({0, 0, 1})};
  int piv = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(coef[i]) > std::abs(coef[piv])) piv = i;

  // Two independent points spanning the line.
  std::array<Complex, 3> P0{}, P1{};
  const int i1 = (piv + 1) % 3, i2 = (piv + 2) % 3;
  P0[i1] = Complex(1.0);
  P0[piv] = -coef[i1] / coef[piv];
  P1[i2] = Complex(1.0);
  P1[piv] = -coef[i2] / coef[piv];

  const auto at = [&](const Complex& s, const std::array<Complex, 3>& A,
                      const std::array<Complex, 3>& B) {
    return f.eval(s * A[0] + B[0], s * A[1] + B[1], s * A[2] + B[2]);
  };

  // Identically-zero restriction: the line divides f.
  const double fscale = std::max(1.0, f.max_abs());
  bool allzero = true;
  for (double s : {0.37, -0.81, 1.13, -1.57, 2.03}) {
    double nrm = 1.0;
    for (int i = 0; i < 3; ++i)
      nrm = std::max(nrm, std::abs(Complex(s) * P0[i] + P1[i]));
    if (std::abs(at(Complex(s), P0, P1)) > 1e-10 * fscale * std::pow(nrm, 4)) {
      allzero = false;
      break;
    }
  }
  if (allzero) return true;

  // Restrict f to the line through a chart whose point at infinity avoids the
  // intersection points, so every root of the binary quartic stays finite.
  const std::array<double, 5> nodes{0.0, 1.0, -1.0, 2.0, -2.0};
  std::vector<Complex> qc(5, Complex(0.0));
  for (double shift : {0.0, -1.0, 2.0, 3.0, -2.0}) {
    std::array<Complex, 3> A;
    for (int i = 0; i < 3; ++i) A[i] = P0[i] + Complex(shift) * P1[i];
    Eigen::MatrixXcd V(5, 5);
    Eigen::VectorXcd vals(5);
    for (int r = 0; r < 5; ++r) {
      Complex p(1.0);
      for (int c = 0; c < 5; ++c) {
        V(r, c) = p;
        p *= Complex(nodes[r]);
      }
      vals(r) = at(Complex(nodes[r]), A, P1);
    }
    const Eigen::VectorXcd sol = V.fullPivLu().solve(vals);
    double qmax = 0.0;
    for (int c = 0; c < 5; ++c) qmax = std::max(qmax, std::abs(sol(c)));
    for (int c = 0; c < 5; ++c) qc[c] = sol(c);
    if (qmax > 0.0 && std::abs(sol(4)) >= 1e-8 * qmax) break;
  }

  const UnivariatePoly<Complex> q{std::vector<Complex>(qc.begin(), qc.end())};
  if (q.zero()) return true;
  const double radius = std::max(1e-6, std::sqrt(tol));
  int total = 0;
  for (const RootCluster& cl : poly_roots(q, 1e-12, radius)) {
    if (cl.multiplicity % 2 != 0) return false;
    total += cl.multiplicity;
  }
  return (4 - total) % 2 == 0;
}

}  // namespace hvrep
