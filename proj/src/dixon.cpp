#include "hvrep/dixon.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>

#include "hvrep/errors.hpp"
#include "hvrep/homotopy.hpp"
#include "hvrep/normalize.hpp"
#include "hvrep/resultant.hpp"
#include "hvrep/roots.hpp"

namespace hvrep {

namespace {

std::vector<Exp> monomials_of(int k) {
  std::vector<Exp> out;
  for (int i = k; i >= 0; --i)
    for (int j = k - i; j >= 0; --j) out.push_back({i, j, k - i - j});
  return out;
}

Eigen::VectorXcd coeff_vec(const HomogeneousPoly<Complex>& p,
                           const std::vector<Exp>& monos) {
  Eigen::VectorXcd v(monos.size());
  for (std::size_t i = 0; i < monos.size(); ++i) v(i) = p.coeff(monos[i]);
  return v;
}

HomogeneousPoly<Complex> poly_of(const Eigen::VectorXcd& v,
                                 const std::vector<Exp>& monos, int degree) {
  HomogeneousPoly<Complex> p(degree);
  for (std::size_t i = 0; i < monos.size(); ++i)
    if (v(static_cast<long>(i)) != Complex(0.0)) p.add(monos[i], v(i));
  return p;
}

// Matrix of the multiplication map h -> f h from degree-k coefficients to
// degree-(k + deg f) coefficients.
Eigen::MatrixXcd mult_matrix(const HomogeneousPoly<Complex>& f, int k) {
  const std::vector<Exp> cols = monomials_of(k);
  const std::vector<Exp> rows = monomials_of(k + f.degree());
  Eigen::MatrixXcd m =
      Eigen::MatrixXcd::Zero(rows.size(), cols.size());
  std::map<Exp, int> row_of;
  for (std::size_t r = 0; r < rows.size(); ++r)
    row_of[rows[r]] = static_cast<int>(r);
  for (std::size_t c = 0; c < cols.size(); ++c) {
    for (const auto& [e, val] : f.terms()) {
      const Exp sum{e[0] + cols[c][0], e[1] + cols[c][1], e[2] + cols[c][2]};
      m(row_of.at(sum), c) += val;
    }
  }
  return m;
}

struct ProjectiveCluster {
  Complex x, y;  // homogeneous coordinates of the (x : y) direction
  int mult = 0;
};

// Roots of the resultant form over the projective (x : y) line, found in
// two complementary charts.  The chart cut |x/y| < boundary is retried with
// other boundaries when a cluster straddles the cut.  Returns an empty
// optional if no boundary reaches the expected multiplicity total.
std::optional<std::vector<ProjectiveCluster>> resultant_clusters(
    const HomogeneousPoly<Complex>& R, int expected_total, double radius) {
  const UnivariatePoly<Complex> pa =
      R.restrict_to_var(0, {Complex(0.0), Complex(1.0), Complex(0.0)});
  const UnivariatePoly<Complex> pb =
      R.restrict_to_var(1, {Complex(1.0), Complex(0.0), Complex(0.0)});
  const auto roots_a = poly_roots(pa.pruned(), 1e-12, radius);
  const auto roots_b = poly_roots(pb.pruned(), 1e-12, radius);

  for (double boundary : {2.0, 1.6180339887498949, 2.718281828459045}) {
    std::vector<ProjectiveCluster> clusters;
    int total = 0;
    for (const RootCluster& rc : roots_a) {
      if (std::abs(rc.value) < boundary) {
        clusters.push_back({rc.value, Complex(1.0), rc.multiplicity});
        total += rc.multiplicity;
      }
    }
    for (const RootCluster& rc : roots_b) {
      if (std::abs(rc.value) <= 1.0 / boundary) {
        clusters.push_back({Complex(1.0), rc.value, rc.multiplicity});
        total += rc.multiplicity;
      }
    }
    if (total == expected_total) return clusters;
  }
  return std::nullopt;
}

// Tangency polish: Gauss-Newton on the overdetermined system
// {f = 0, grad f x grad g = 0} in the affine chart that pins the point's
// largest coordinate to 1.  Using all three cross-product components avoids
// picking a chart minor that happens to degenerate at the point; the step
// clamp, wander guard, and final residual comparison keep a bad solve from
// replacing a decent starting root with a spurious stationary point.
std::array<Complex, 3> polish_tangency(const HomogeneousPoly<Complex>& f,
                                       const HomogeneousPoly<Complex>& g,
                                       std::array<Complex, 3> p) {
  int pin = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(p[i]) > std::abs(p[pin])) pin = i;
  const Complex pivot = p[pin];
  for (int i = 0; i < 3; ++i) p[i] /= pivot;
  const int a = pin == 0 ? 1 : 0;
  const int b = pin == 2 ? 1 : 2;

  std::array<HomogeneousPoly<Complex>, 3> df, dg;
  std::array<std::array<HomogeneousPoly<Complex>, 3>, 3> ddf, ddg;
  for (int i = 0; i < 3; ++i) {
    df[i] = f.derivative(i);
    dg[i] = g.derivative(i);
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      ddf[i][j] = df[i].derivative(j);
      ddg[i][j] = dg[i].derivative(j);
    }
  const double fs = std::max(1.0, f.max_abs());
  const double gs = std::max(1.0, g.max_abs());

  std::array<Complex, 3> q = p;
  for (int it = 0; it < 20; ++it) {
    Complex vf[3], vg[3];
    for (int i = 0; i < 3; ++i) {
      vf[i] = df[i].eval(q[0], q[1], q[2]);
      vg[i] = dg[i].eval(q[0], q[1], q[2]);
    }
    Eigen::Vector4cd F;
    F(0) = f.eval(q[0], q[1], q[2]) / fs;
    for (int k = 0; k < 3; ++k) {
      const int i = (k + 1) % 3, j = (k + 2) % 3;
      F(k + 1) = (vf[i] * vg[j] - vf[j] * vg[i]) / (fs * gs);
    }
    Eigen::Matrix<Complex, 4, 2> J;
    for (int col = 0; col < 2; ++col) {
      const int v = col == 0 ? a : b;
      J(0, col) = vf[v] / fs;
      for (int k = 0; k < 3; ++k) {
        const int i = (k + 1) % 3, j = (k + 2) % 3;
        J(k + 1, col) = (ddf[i][v].eval(q[0], q[1], q[2]) * vg[j] +
                         vf[i] * ddg[j][v].eval(q[0], q[1], q[2]) -
                         ddf[j][v].eval(q[0], q[1], q[2]) * vg[i] -
                         vf[j] * ddg[i][v].eval(q[0], q[1], q[2])) /
                        (fs * gs);
      }
    }
    Eigen::Vector2cd delta = J.colPivHouseholderQr().solve(-F);
    double dn = std::sqrt(std::norm(delta(0)) + std::norm(delta(1)));
    if (!std::isfinite(dn)) break;
    if (dn > 0.05) {
      delta *= 0.05 / dn;
      dn = 0.05;
    }
    q[a] += delta(0);
    q[b] += delta(1);
    if (std::abs(q[a] - p[a]) + std::abs(q[b] - p[b]) > 0.2) {
      q = p;
      break;
    }
    if (dn <= 1e-13) break;
  }

  const double f0 = std::abs(f.eval(p[0], p[1], p[2]));
  const double g0 = std::abs(g.eval(p[0], p[1], p[2]));
  const double f1 = std::abs(f.eval(q[0], q[1], q[2]));
  const double g1 = std::abs(g.eval(q[0], q[1], q[2]));
  if (f1 > f0 + 1e-10 * fs || g1 > g0 + 1e-10 * gs) return p;
  return q;
}

std::array<Complex, 3> sup_normalize(std::array<Complex, 3> p) {
  int pin = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(p[i]) > std::abs(p[pin])) pin = i;
  const Complex pivot = p[pin];
  for (int i = 0; i < 3; ++i) p[i] /= pivot;
  return p;
}

ContactResult analyze_clusters(const HomogeneousPoly<Complex>& f,
                               const HomogeneousPoly<Complex>& g,
                               const std::vector<ProjectiveCluster>& clusters,
                               double radius);

// Multiplicity analysis of the f-g intersection shared by is_contact and
// dixon_complete; the geometric tangency certificate is applied only by
// is_contact, so that syzygetic inputs still reach Dixon's determinant test.
ContactResult contact_multiplicities(const HomogeneousPoly<Complex>& f,
                                     const HomogeneousPoly<Complex>& g) {
  const int d = f.degree();
  if (g.degree() != d - 1)
    throw ValidationError("contact curve must have degree one less");
  if (f.zero() || g.zero())
    throw ValidationError("contact test on the zero polynomial");

  const int nf = degree_in(f, 2), ng = degree_in(g, 2);
  if ((d - nf) > 0 && (d - 1 - ng) > 0)
    throw NumericalError(
        "both curves pass through (0:0:1); cannot eliminate z");

  const HomogeneousPoly<Complex> R = resultant_form(f, g, 2);
  const double bound = std::pow(std::max(1.0, f.max_abs()), ng) *
                       std::pow(std::max(1.0, g.max_abs()), nf) *
                       std::pow(2.0, nf + ng);
  if (R.max_abs() <= 1e-10 * bound)
    throw NumericalError("curves share a component");

  const int total = d * (d - 1);

  // A root of multiplicity 2k splits under coefficient noise eps into a
  // star of width eps^(1/2k), so high multiplicities need a coarse
  // clustering radius.  Start fine and escalate; a spurious merge of
  // genuinely distinct roots is caught below because g then fails to
  // vanish on the merged cluster's fiber.
  ContactResult first_fail;
  bool have_fail = false;
  for (double radius : {1e-6, 1e-5, 1e-3}) {
    const auto clusters = resultant_clusters(R, total, radius);
    if (!clusters) continue;
    ContactResult out = analyze_clusters(f, g, *clusters, radius);
    if (out.contact) return out;
    if (!have_fail) {
      first_fail = out;
      have_fail = true;
    }
  }
  if (!have_fail)
    throw NumericalError(
        "intersection clusters straddle every chart boundary tried");
  return first_fail;
}

// One pass of the fiber-by-fiber contact analysis at a fixed clustering
// radius: every cluster's multiplicity must split into even shares across
// the fiber roots where g vanishes.
ContactResult analyze_clusters(const HomogeneousPoly<Complex>& f,
                               const HomogeneousPoly<Complex>& g,
                               const std::vector<ProjectiveCluster>& clusters,
                               double radius) {
  ContactResult out;
  out.config.f = f;
  out.config.g = g;
  out.contact = true;

  for (const ProjectiveCluster& cl : clusters) {
    if (cl.mult % 2 != 0) {
      out.contact = false;
      if (!out.has_offender) {
        out.has_offender = true;
        out.offending_root =
            std::abs(cl.y) > 0.0
                ? cl.x / cl.y
                : Complex(std::numeric_limits<double>::infinity(), 0.0);
      }
      continue;
    }
    // Recover z from the fiber f(x0, y0, .) = 0.  One fiber may carry
    // several contact points (e.g. when g has a line factor with no z
    // term, every touching point of that line shares one (x : y) ratio),
    // so the cluster multiplicity is split across the fiber roots where g
    // vanishes, in proportion to their multiplicities in the fiber.
    const UnivariatePoly<Complex> h =
        f.restrict_to_var(2, {cl.x, cl.y, Complex(0.0)}).pruned();
    std::vector<RootCluster> candidates;
    int mu_sum = 0;
    if (!h.zero() && h.degree() >= 1) {
      for (const RootCluster& rc : poly_roots(h, 1e-12, radius)) {
        const double coord =
            std::max({1.0, std::abs(cl.x), std::abs(cl.y), std::abs(rc.value)});
        const double scale =
            std::max(1.0, g.max_abs()) * std::pow(coord, g.degree());
        if (std::abs(g.eval(cl.x, cl.y, rc.value)) <= 1e-6 * scale) {
          candidates.push_back(rc);
          mu_sum += rc.multiplicity;
        }
      }
    }
    bool ok = !candidates.empty();
    for (const RootCluster& rc : candidates) {
      const int share_num = cl.mult * rc.multiplicity;
      if (share_num % mu_sum != 0 || (share_num / mu_sum) % 2 != 0) {
        ok = false;
        break;
      }
    }
    if (!ok) {
      out.contact = false;
      if (!out.has_offender) {
        out.has_offender = true;
        out.offending_root =
            std::abs(cl.y) > 0.0
                ? cl.x / cl.y
                : Complex(std::numeric_limits<double>::infinity(), 0.0);
      }
      continue;
    }
    for (const RootCluster& rc : candidates) {
      const std::array<Complex, 3> polished =
          sup_normalize(polish_tangency(f, g, {cl.x, cl.y, rc.value}));
      const int copies = cl.mult * rc.multiplicity / (2 * mu_sum);
      for (int rep = 0; rep < copies; ++rep)
        out.config.contact_points.push_back(polished);
    }
  }
  return out;
}

}  // namespace

HomogeneousPoly<Complex> mixed_contact_form(const SymmetricPencil<Complex>& M,
                                            const std::vector<Complex>& u,
                                            const std::vector<Complex>& v) {
  if (static_cast<int>(u.size()) != M.d || static_cast<int>(v.size()) != M.d)
    throw ValidationError("direction vector size must match the pencil");
  const PolyMatrix<Complex> adj = adjugate_pencil(M);
  HomogeneousPoly<Complex> out(M.d - 1);
  for (int i = 0; i < M.d; ++i)
    for (int j = 0; j < M.d; ++j)
      out = out + adj[i][j].scaled(u[i] * v[j]);
  return out.pruned();
}

HomogeneousPoly<Complex> contact_curve(const SymmetricPencil<Complex>& M,
                                       const std::vector<Complex>& u) {
  return mixed_contact_form(M, u, u);
}

ContactResult is_contact(const HomogeneousPoly<Complex>& f,
                         const HomogeneousPoly<Complex>& g, double tol) {
  ContactResult out = contact_multiplicities(f, g);
  if (!out.contact) return out;

  // Tangency certificate: at each contact point both gradients must be
  // nonzero and parallel.  Even multiplicities alone also arise from
  // non-reduced curves (a squared line meets f doubly everywhere), which
  // are not contact curves; their gradient vanishes along the point set.
  const std::array<HomogeneousPoly<Complex>, 3> df = {
      f.derivative(0), f.derivative(1), f.derivative(2)};
  const std::array<HomogeneousPoly<Complex>, 3> dg = {
      g.derivative(0), g.derivative(1), g.derivative(2)};
  const double fscale = std::max(1.0, f.max_abs());
  const double gscale = std::max(1.0, g.max_abs());
  const double parallel_tol = std::max(1e-4, 10.0 * tol);
  for (const auto& p : out.config.contact_points) {
    std::array<Complex, 3> gf, gg;
    for (int i = 0; i < 3; ++i) {
      gf[i] = df[i].eval(p[0], p[1], p[2]);
      gg[i] = dg[i].eval(p[0], p[1], p[2]);
    }
    const double nf = std::sqrt(std::norm(gf[0]) + std::norm(gf[1]) +
                                std::norm(gf[2]));
    const double ng = std::sqrt(std::norm(gg[0]) + std::norm(gg[1]) +
                                std::norm(gg[2]));
    const Complex cx = gf[1] * gg[2] - gf[2] * gg[1];
    const Complex cy = gf[2] * gg[0] - gf[0] * gg[2];
    const Complex cz = gf[0] * gg[1] - gf[1] * gg[0];
    const double cross =
        std::sqrt(std::norm(cx) + std::norm(cy) + std::norm(cz));
    if (nf <= 1e-7 * fscale || ng <= 1e-7 * gscale ||
        cross > parallel_tol * nf * ng) {
      out.contact = false;
      out.has_offender = true;
      out.offending_root =
          std::abs(p[1]) > 0.0
              ? p[0] / p[1]
              : Complex(std::numeric_limits<double>::infinity(), 0.0);
      break;
    }
  }
  return out;
}

double ideal_remainder(const HomogeneousPoly<Complex>& p,
                       const HomogeneousPoly<Complex>& f) {
  const int k = p.degree() - f.degree();
  if (k < 0) throw ValidationError("ideal_remainder: degree too small");
  if (p.zero()) return 0.0;
  const Eigen::MatrixXcd A = mult_matrix(f, k);
  const Eigen::VectorXcd b = coeff_vec(p, monomials_of(p.degree()));
  const Eigen::VectorXcd q = A.colPivHouseholderQr().solve(b);
  return (A * q - b).norm() / std::max(1.0, b.norm());
}

bool rank1_check(const PolyMatrix<Complex>& mhat,
                 const HomogeneousPoly<Complex>& f, double tol) {
  const int n = static_cast<int>(mhat.size());
  if (n < 2) return true;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
          const HomogeneousPoly<Complex> minor =
              mhat[i][k] * mhat[j][l] - mhat[i][l] * mhat[j][k];
          if (minor.zero()) continue;
          if (ideal_remainder(minor, f) > tol) return false;
        }
  return true;
}

DixonResult dixon_complete(const HomogeneousPoly<Complex>& f,
                           const HomogeneousPoly<Complex>& g, double tol) {
  const int d = f.degree();
  if (d < 2) throw ValidationError("dixon reconstruction needs degree >= 2");

  const ContactResult raw = contact_multiplicities(f, g);
  if (!raw.contact)
    throw ValidationError(
        "not a contact curve: odd intersection multiplicity found");
  const auto& pts = raw.config.contact_points;

  // Evaluation matrix of the degree-(d-1) monomials at the contact points;
  // its nullspace is the space of such curves through all of them.
  const std::vector<Exp> monosA = monomials_of(d - 1);
  const int k1 = static_cast<int>(monosA.size());
  Eigen::MatrixXcd E(pts.size(), k1);
  for (std::size_t r = 0; r < pts.size(); ++r) {
    for (int c = 0; c < k1; ++c) {
      Complex v(1.0);
      for (int i = 0; i < 3; ++i)
        for (int q = 0; q < monosA[c][i]; ++q) v *= pts[r][i];
      E(r, c) = v;
    }
    const double rn = E.row(r).norm();
    if (rn > 0.0) E.row(r) /= rn;
  }

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(E, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  int rank = 0;
  for (long i = 0; i < sigma.size(); ++i)
    if (sigma(i) > 1e-8 * sigma(0)) ++rank;
  const int null_dim = k1 - rank;
  if (null_dim != d)
    throw NumericalError("contact nullspace has dimension " +
                         std::to_string(null_dim) + ", expected " +
                         std::to_string(d));
  const Eigen::MatrixXcd nullb = svd.matrixV().rightCols(null_dim);

  // Basis of the nullspace led by g itself, the rest orthonormal to it.
  Eigen::VectorXcd gv = coeff_vec(g, monosA);
  const Eigen::VectorXcd gproj = nullb * (nullb.adjoint() * gv);
  if ((gproj - gv).norm() > 1e-5 * gv.norm())
    throw NumericalError("contact curve does not vanish on its own points");
  std::vector<Eigen::VectorXcd> basis;
  basis.push_back(gproj.normalized());
  for (int c = 0; c < null_dim && static_cast<int>(basis.size()) < d; ++c) {
    Eigen::VectorXcd w = nullb.col(c);
    for (const auto& bvec : basis) w -= bvec * (bvec.adjoint() * w);
    if (w.norm() > 1e-6) basis.push_back(w.normalized());
  }
  if (static_cast<int>(basis.size()) != d)
    throw NumericalError("could not complete the contact-curve basis");

  PolyMatrix<Complex> mhat(
      d, std::vector<HomogeneousPoly<Complex>>(d, HomogeneousPoly<Complex>(d - 1)));
  for (int i = 0; i < d; ++i) {
    const HomogeneousPoly<Complex> row = poly_of(basis[i], monosA, d - 1);
    mhat[0][i] = row;
    mhat[i][0] = row;
  }

  // One factorization serves every membership solve
  //   m_1i m_1j = m_11 m_ij + f q_ij.
  const Eigen::MatrixXcd ag = mult_matrix(mhat[0][0], d - 1);
  const Eigen::MatrixXcd af = mult_matrix(f, d - 2);
  Eigen::MatrixXcd lhs(ag.rows(), ag.cols() + af.cols());
  lhs << ag, af;
  const auto qr = lhs.colPivHouseholderQr();
  const std::vector<Exp> monos2 = monomials_of(2 * (d - 1));
  for (int i = 1; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      const Eigen::VectorXcd rhs = coeff_vec(mhat[0][i] * mhat[0][j], monos2);
      const Eigen::VectorXcd sol = qr.solve(rhs);
      if ((lhs * sol - rhs).norm() > 1e-6 * std::max(1.0, rhs.norm()))
        throw NumericalError("contact ideal membership failed");
      mhat[i][j] = poly_of(sol.head(k1), monosA, d - 1);
      mhat[j][i] = mhat[i][j];
    }
  }

  const HomogeneousPoly<Complex> det = polymatrix_det(mhat);
  if (det.max_abs() <= 1e-8)
    throw ValidationError(
        "syzygetic contact curve: completed matrix has zero determinant");

  // adj(M-hat) = f^(d-2) times a linear pencil, entrywise.
  const PolyMatrix<Complex> adj = polymatrix_adjugate(mhat);
  const HomogeneousPoly<Complex> fpow = f.pow(d - 2);
  const Eigen::MatrixXcd div = mult_matrix(fpow, 1);
  const auto qr_div = div.colPivHouseholderQr();
  const std::vector<Exp> monos_adj = monomials_of((d - 1) * (d - 1));
  double adj_scale = 0.0;
  for (const auto& row : adj)
    for (const auto& entry : row) adj_scale = std::max(adj_scale, entry.max_abs());

  std::vector<std::vector<Complex>> A(d, std::vector<Complex>(d, Complex(0.0)));
  auto B = A, C = A;
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      const HomogeneousPoly<Complex> entry = adj[i][j] + adj[j][i];
      const Eigen::VectorXcd rhs = coeff_vec(entry, monos_adj) * 0.5;
      const Eigen::VectorXcd sol = qr_div.solve(rhs);
      if ((div * sol - rhs).norm() > 1e-6 * std::max(adj_scale, 1.0))
        throw ValidationError(
            "syzygetic contact curve: adjugate is not divisible by the "
            "required power of the curve");
      A[i][j] = A[j][i] = sol(0);
      B[i][j] = B[j][i] = sol(1);
      C[i][j] = C[j][i] = sol(2);
    }
  }
  SymmetricPencil<Complex> pencil = SymmetricPencil<Complex>::make(A, B, C);

  // det(pencil) = kappa f; rescale by the principal d-th root.
  const HomogeneousPoly<Complex> det_l = det_expand(pencil);
  Complex dot(0.0);
  double fn2 = 0.0;
  for (const auto& [e, v] : f.terms()) {
    dot += det_l.coeff(e) * std::conj(v);
    fn2 += std::norm(v);
  }
  const Complex kappa = dot / fn2;
  if (std::abs(kappa) < 1e-12)
    throw ValidationError("syzygetic contact curve: determinant collapses");
  pencil = pencil.scaled(std::pow(kappa, Complex(-1.0 / d)));

  DixonResult out;
  out.mhat = mhat;

  // Final polish: move to the normalized frame and Newton-refine the
  // off-diagonal entries against the curve's own coefficient system.
  try {
    const NormalizedPencil np = normalize_pencil(pencil, 1e-2);
    const NormalizedCurve nc = normalize_input(f);
    const OffDiagSystem sys = build_offdiag_system(nc);
    std::vector<Complex> c;
    c.reserve(sys.n);
    for (const auto& [i, j] : sys.unknowns) c.push_back(np.C[i][j]);
    refine_offdiag(sys, c);
    std::vector<std::vector<Complex>> id(d, std::vector<Complex>(d, Complex(0.0))),
        bd = id, cd = id;
    for (int i = 0; i < d; ++i) {
      id[i][i] = Complex(1.0);
      bd[i][i] = nc.betas[i];
      cd[i][i] = nc.cdiag[i];
    }
    for (int k = 0; k < sys.n; ++k) {
      const auto& [i, j] = sys.unknowns[k];
      cd[i][j] = cd[j][i] = c[k];
    }
    out.pencil = SymmetricPencil<Complex>::make(id, bd, cd);
    out.residual = rel_poly_distance(nc.f, det_expand(out.pencil));
  } catch (const std::runtime_error&) {
    out.pencil = pencil;
    out.residual = rel_poly_distance(f, det_expand(pencil));
  }
  if (out.residual > tol)
    throw NumericalError("reconstructed pencil residual " +
                         std::to_string(out.residual) + " above tolerance");
  return out;
}

}  // namespace hvrep
