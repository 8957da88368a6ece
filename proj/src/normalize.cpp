#include "hvrep/normalize.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

#include "hvrep/errors.hpp"
#include "hvrep/roots.hpp"

namespace hvrep {

namespace {

bool complex_less(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

// Flags an all-real beta list and snaps the stray imaginary parts to zero.
bool snap_real_betas(std::vector<Complex>& betas) {
  double scale = 1.0;
  for (const Complex& b : betas) scale = std::max(scale, std::abs(b));
  for (const Complex& b : betas)
    if (std::abs(b.imag()) > 1e-8 * scale) return false;
  for (Complex& b : betas) b = Complex(b.real(), 0.0);
  return true;
}

}  // namespace

NormalizedCurve normalize_input(const HomogeneousPoly<Complex>& f,
                                double cluster_radius) {
  const int d = f.degree();
  if (d < 1) throw ValidationError("curve degree must be at least 1");
  const Complex lead = f.coeff({d, 0, 0});
  if (std::abs(lead) <= 1e-12 * std::max(1.0, f.max_abs()))
    throw ValidationError(
        "coefficient of x^" + std::to_string(d) +
        " vanishes: the curve passes through (1:0:0) and cannot be scaled "
        "monic");

  NormalizedCurve out;
  out.f = f.scaled(Complex(1.0, 0.0) / lead);

  const std::array<Complex, 3> at{Complex(0.0), Complex(1.0), Complex(0.0)};
  const UnivariatePoly<Complex> p = out.f.restrict_to_var(0, at);
  const std::vector<RootCluster> clusters = poly_roots(p, 1e-12, cluster_radius);
  if (static_cast<int>(clusters.size()) != d)
    throw ValidationError(
        "repeated beta: f(x,y,0) is not squarefree, so the pencil's "
        "y-coefficient cannot have distinct diagonal entries");

  out.betas.reserve(d);
  for (const RootCluster& c : clusters) out.betas.push_back(-c.value);
  std::sort(out.betas.begin(), out.betas.end(), complex_less);
  out.real_betas = snap_real_betas(out.betas);

  const UnivariatePoly<Complex> pz = out.f.derivative(2).restrict_to_var(0, at);
  out.cdiag.resize(d);
  for (int i = 0; i < d; ++i) {
    Complex den(1.0, 0.0);
    for (int j = 0; j < d; ++j)
      if (j != i) den *= out.betas[j] - out.betas[i];
    out.cdiag[i] = pz.eval(-out.betas[i]) / den;
  }
  return out;
}

ClassCounts class_counts(int d) {
  if (d < 2) throw ValidationError("class counts are defined for degree >= 2");
  ClassCounts out;
  out.d = d;
  out.g = (d - 1) * (d - 2) / 2;
  out.k = (d + 1) / 2;
  const int g = out.g;
  out.definite_count = BigInt(1) << g;
  const bool pm3_mod_8 = (d % 8 == 3) || (d % 8 == 5);
  if (g == 0) {
    // Conics: a single class, real and definite.
    out.complex_count = 1;
    out.real_count = 1;
  } else {
    out.complex_count = (BigInt(1) << (g - 1)) * ((BigInt(1) << g) + 1);
    // For these degrees one class degenerates on a generic curve.
    if (d >= 11 && pm3_mod_8) out.complex_count -= 1;
    out.real_count = (BigInt(1) << (g - 1)) * ((BigInt(1) << (out.k - 1)) + 1);
  }
  out.real_or_one_less = pm3_mod_8;
  out.bezout_full = 1;
  for (int gamma = 2; gamma <= d; ++gamma)
    out.bezout_full *=
        boost::multiprecision::pow(BigInt(gamma), unsigned(d - gamma + 1));
  out.bezout_reduced = out.bezout_full >> (d - 1);
  return out;
}

NormalizedPencil normalize_pencil(const SymmetricPencil<Complex>& M,
                                  double tol) {
  const int d = M.d;
  using Mat = Eigen::MatrixXcd;
  Mat A(d, d), B(d, d), C(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      A(i, j) = M.A[i][j];
      B(i, j) = M.B[i][j];
      C(i, j) = M.C[i][j];
    }

  Eigen::FullPivLU<Mat> lu(A);
  if (!lu.isInvertible())
    throw ValidationError(
        "pencil's x-coefficient matrix is singular; congruence to the "
        "identity fails");
  const Complex det_a = lu.determinant();

  const Mat W = lu.solve(B);
  Eigen::ComplexEigenSolver<Mat> es(W, /*computeEigenvectors=*/true);
  if (es.info() != Eigen::Success)
    throw NumericalError("eigendecomposition of A^-1 B did not converge");

  double eig_scale = 1.0;
  for (int i = 0; i < d; ++i)
    eig_scale = std::max(eig_scale, std::abs(es.eigenvalues()(i)));
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if (std::abs(es.eigenvalues()(i) - es.eigenvalues()(j)) <=
          1e-8 * eig_scale)
        throw ValidationError(
            "A^-1 B has a repeated eigenvalue: the betas must be pairwise "
            "distinct for the normalized form to exist");

  std::vector<int> order(d);
  for (int i = 0; i < d; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return complex_less(es.eigenvalues()(a), es.eigenvalues()(b));
  });

  // Rows of U are the eigenvectors of A^-1 B rescaled so v^T A v = 1 (the
  // bilinear form, not the Hermitian one); symmetry of A and B makes
  // distinct-eigenvalue eigenvectors automatically A-orthogonal.
  Mat U(d, d);
  const double a_scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  for (int r = 0; r < d; ++r) {
    Eigen::VectorXcd v = es.eigenvectors().col(order[r]);
    const Complex q = (v.transpose() * A * v)(0, 0);
    if (std::abs(q) <= 1e-10 * a_scale * v.squaredNorm())
      throw NumericalError(
          "eigenvector of A^-1 B is isotropic for A; cannot rescale the "
          "congruence to reach the identity");
    v /= std::sqrt(q);
    U.row(r) = v.transpose();
  }

  const Mat Bn = U * B * U.transpose();
  const Mat Cn_raw = U * C * U.transpose();
  const Mat Cn = 0.5 * (Cn_raw + Cn_raw.transpose());

  NormalizedPencil out;
  out.curve.betas.resize(d);
  for (int i = 0; i < d; ++i) out.curve.betas[i] = Bn(i, i);
  out.curve.real_betas = snap_real_betas(out.curve.betas);
  out.curve.cdiag.resize(d);
  for (int i = 0; i < d; ++i) out.curve.cdiag[i] = Cn(i, i);

  std::vector<std::vector<Complex>> id_m(d, std::vector<Complex>(d, 0.0));
  std::vector<std::vector<Complex>> diag_m(d, std::vector<Complex>(d, 0.0));
  std::vector<std::vector<Complex>> c_m(d, std::vector<Complex>(d, 0.0));
  out.U.assign(d, std::vector<Complex>(d, 0.0));
  for (int i = 0; i < d; ++i) {
    id_m[i][i] = 1.0;
    diag_m[i][i] = out.curve.betas[i];
    for (int j = 0; j < d; ++j) {
      c_m[i][j] = Cn(i, j);
      out.U[i][j] = U(i, j);
    }
  }
  out.C = c_m;

  const SymmetricPencil<Complex> normalized =
      SymmetricPencil<Complex>::make(id_m, diag_m, c_m);
  const HomogeneousPoly<Complex> fn = det_expand(normalized);
  const HomogeneousPoly<Complex> target =
      det_expand(M).scaled(Complex(1.0, 0.0) / det_a);
  out.residual = rel_poly_distance(target, fn);
  if (out.residual > tol)
    throw NumericalError(
        "normalized pencil does not reproduce det(M)/det(A): residual " +
        std::to_string(out.residual));
  out.curve.f = fn.pruned();
  return out;
}

HyperbolicityReport is_hyperbolic(const HomogeneousPoly<Complex>& f,
                                  const std::array<double, 3>& e, int samples,
                                  std::uint64_t seed, double imag_tol) {
  double max_im = 0.0;
  for (const auto& [ex, v] : f.terms())
    max_im = std::max(max_im, std::abs(v.imag()));
  if (max_im > 1e-10 * std::max(1.0, f.max_abs()))
    throw ValidationError("hyperbolicity is defined for real polynomials");

  const int d = f.degree();
  const std::array<Complex, 3> ec{Complex(e[0]), Complex(e[1]), Complex(e[2])};
  const double e_scale =
      std::max({1.0, std::abs(e[0]), std::abs(e[1]), std::abs(e[2])});
  const Complex fe = f.eval(ec[0], ec[1], ec[2]);
  if (std::abs(fe) <=
      1e-12 * std::max(1.0, f.max_abs()) * std::pow(e_scale, d))
    throw ValidationError("direction lies on the curve: f(e) = 0");

  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    const std::array<double, 3> v{rng.uniform(-1.0, 1.0),
                                  rng.uniform(-1.0, 1.0),
                                  rng.uniform(-1.0, 1.0)};
    const std::array<Complex, 3> vc{Complex(v[0]), Complex(v[1]),
                                    Complex(v[2])};
    // restrict_to_line index k holds the coefficient of s^k t^(d-k), so the
    // univariate polynomial in t reads the list backwards.
    const std::vector<Complex> bin = f.restrict_to_line(vc, ec);
    std::vector<Complex> ct(d + 1);
    for (int m = 0; m <= d; ++m) ct[m] = bin[d - m];
    const std::vector<Complex> roots =
        aberth_roots(UnivariatePoly<Complex>(std::move(ct)));
    // An m-fold real root is computed as a ring of m roots of radius about
    // eps^(1/m); clusters get that much imaginary slack before failure.  The
    // neighbor radius covers the widest ring the root finder can emit (the
    // d-fold one) so that ring orientation cannot split a cluster.
    const double near_radius = 4.0 * std::pow(1e-11, 1.0 / d);
    for (const Complex& r : roots) {
      const double im = std::abs(r.imag());
      const double root_scale = std::max(1.0, std::abs(r));
      if (im <= imag_tol * root_scale) continue;
      int m_near = 0;
      for (const Complex& r2 : roots)
        if (std::abs(r2 - r) <= near_radius * root_scale) ++m_near;
      if (m_near >= 2 && im <= std::pow(1e-11, 1.0 / m_near) * root_scale)
        continue;
      return {false, v};
    }
  }
  return {true, {0.0, 0.0, 0.0}};
}

}  // namespace hvrep
