#include "hvrep/homotopy.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "hvrep/errors.hpp"
#include "hvrep/pencil.hpp"

namespace hvrep {

namespace {

double inf_norm(const std::vector<Complex>& v) {
  double m = 0.0;
  for (const Complex& z : v) m = std::max(m, std::abs(z));
  return m;
}

bool all_finite(const std::vector<Complex>& v) {
  for (const Complex& z : v)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

// Coefficients of prod_i (1 + v_i t); index b gives e_b.
std::vector<Complex> elementary_symmetric(const std::vector<Complex>& vals) {
  std::vector<Complex> e(vals.size() + 1, Complex(0.0));
  e[0] = Complex(1.0);
  std::size_t top = 0;
  for (const Complex& v : vals) {
    ++top;
    for (std::size_t b = top; b >= 1; --b) e[b] += v * e[b - 1];
  }
  return e;
}

// Parity of the permutation sending sorted `from` to `perm`.
int permutation_sign(const std::vector<int>& from,
                     const std::vector<int>& perm) {
  const int m = static_cast<int>(from.size());
  std::vector<int> rank(m);
  for (int k = 0; k < m; ++k) {
    rank[k] = static_cast<int>(
        std::lower_bound(from.begin(), from.end(), perm[k]) - from.begin());
  }
  int inversions = 0;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      if (rank[a] > rank[b]) ++inversions;
  return (inversions % 2 == 0) ? 1 : -1;
}

}  // namespace

MultiPoly::MultiPoly(int nvars,
                     const std::map<std::vector<int>, Complex>& terms)
    : n_(nvars) {
  for (const auto& [exp, coeff] : terms) {
    if (coeff == Complex(0.0)) continue;
    Term t;
    t.coeff = coeff;
    int total = 0;
    for (int v = 0; v < n_; ++v) {
      if (exp[v] > 0) {
        t.nz.emplace_back(v, exp[v]);
        total += exp[v];
      }
    }
    deg_ = std::max(deg_, total);
    terms_.push_back(std::move(t));
  }
}

Complex MultiPoly::eval(const std::vector<Complex>& x) const {
  Complex acc(0.0);
  for (const Term& t : terms_) {
    Complex v = t.coeff;
    for (const auto& [var, e] : t.nz) {
      Complex p = x[var];
      for (int q = 1; q < e; ++q) p *= x[var];
      v *= p;
    }
    acc += v;
  }
  return acc;
}

MultiPoly MultiPoly::derivative(int var) const {
  std::map<std::vector<int>, Complex> out;
  for (const Term& t : terms_) {
    std::vector<int> exp(n_, 0);
    int e_var = 0;
    for (const auto& [v, e] : t.nz) {
      exp[v] = e;
      if (v == var) e_var = e;
    }
    if (e_var == 0) continue;
    exp[var] -= 1;
    out[exp] += t.coeff * static_cast<double>(e_var);
  }
  return MultiPoly(n_, out);
}

OffDiagSystem build_offdiag_system(const NormalizedCurve& nc) {
  OffDiagSystem sys;
  sys.d = static_cast<int>(nc.betas.size());
  sys.betas = nc.betas;
  sys.cdiag = nc.cdiag;
  sys.f = nc.f;
  const int d = sys.d;
  if (d < 2) throw ValidationError("off-diagonal system needs degree >= 2");
  sys.n = d * (d - 1) / 2;

  std::vector<std::vector<int>> uidx(d, std::vector<int>(d, -1));
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      uidx[i][j] = uidx[j][i] = static_cast<int>(sys.unknowns.size());
      sys.unknowns.emplace_back(i, j);
    }
  }

  for (int g = d; g >= 2; --g) {
    for (int b = 0; b <= d - g; ++b) {
      const Exp mono{d - g - b, b, g};
      std::map<std::vector<int>, Complex> terms;

      // Enumerate subsets S of {0..d-1} with |S| = g.
      std::vector<int> S(g);
      std::iota(S.begin(), S.end(), 0);
      while (true) {
        std::vector<Complex> rest;
        rest.reserve(d - g);
        for (int i = 0, k = 0; i < d; ++i) {
          if (k < g && S[k] == i) {
            ++k;
          } else {
            rest.push_back(sys.betas[i]);
          }
        }
        const Complex esym = elementary_symmetric(rest)[b];
        if (esym != Complex(0.0)) {
          // det(C_S) by permutation expansion; diagonal entries are the
          // fixed cdiag values, off-diagonal entries are unknowns.
          std::vector<int> perm = S;
          do {
            Complex coeff = esym * static_cast<double>(permutation_sign(S, perm));
            std::vector<int> exp(sys.n, 0);
            for (int k = 0; k < g; ++k) {
              const int i = S[k], j = perm[k];
              if (i == j) {
                coeff *= sys.cdiag[i];
              } else {
                exp[uidx[i][j]] += 1;
              }
            }
            if (coeff != Complex(0.0)) terms[exp] += coeff;
          } while (std::next_permutation(perm.begin(), perm.end()));
        }

        // Next g-subset in lexicographic order.
        int k = g - 1;
        while (k >= 0 && S[k] == d - g + k) --k;
        if (k < 0) break;
        ++S[k];
        for (int q = k + 1; q < g; ++q) S[q] = S[q - 1] + 1;
      }

      terms[std::vector<int>(sys.n, 0)] -= nc.f.coeff(mono);
      sys.equations.emplace_back(sys.n, terms);
      sys.degrees.push_back(g);
      sys.monomials.push_back(mono);
    }
  }
  return sys;
}

std::vector<Complex> eval_offdiag_system(const OffDiagSystem& sys,
                                         const std::vector<Complex>& c) {
  std::vector<Complex> out(sys.equations.size());
  for (std::size_t i = 0; i < sys.equations.size(); ++i)
    out[i] = sys.equations[i].eval(c);
  return out;
}

namespace {

// Everything one thread needs to track paths independently.
struct TrackContext {
  const OffDiagSystem* sys = nullptr;
  const TrackerSettings* st = nullptr;
  std::vector<std::vector<MultiPoly>> jac;  // d(equation i)/d(c_k)
  Complex gamma;
  std::vector<Complex> s;                    // start-system constants
  std::vector<std::vector<Complex>> roots;   // start roots per unknown
  std::vector<long> stride;                  // mixed-radix decoding
  long total = 0;
};

void eval_target(const TrackContext& ctx, const std::vector<Complex>& c,
                 std::vector<Complex>& F) {
  const auto& eqs = ctx.sys->equations;
  for (std::size_t i = 0; i < eqs.size(); ++i) F[i] = eqs[i].eval(c);
}

// Jacobian of H(., t); the start system contributes only on the diagonal.
void eval_homotopy_jacobian(const TrackContext& ctx,
                            const std::vector<Complex>& c, double t,
                            Eigen::MatrixXcd& J) {
  const int n = ctx.sys->n;
  const double w = 1.0 - t;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) J(i, k) = w * ctx.jac[i][k].eval(c);
  for (int k = 0; k < n; ++k) {
    const int g = ctx.sys->degrees[k];
    Complex p(1.0);
    for (int q = 1; q < g; ++q) p *= c[k];
    J(k, k) += ctx.gamma * t * static_cast<double>(g) * p;
  }
}

void eval_start(const TrackContext& ctx, const std::vector<Complex>& c,
                std::vector<Complex>& G) {
  const int n = ctx.sys->n;
  for (int k = 0; k < n; ++k) {
    Complex p = c[k];
    for (int q = 1; q < ctx.sys->degrees[k]; ++q) p *= c[k];
    G[k] = p - ctx.s[k];
  }
}

PathResult track_one(const TrackContext& ctx, long index) {
  const int n = ctx.sys->n;
  const TrackerSettings& st = *ctx.st;

  PathResult res;
  res.start_index = index;

  std::vector<Complex> c(n);
  for (int k = 0; k < n; ++k)
    c[k] = ctx.roots[k][(index / ctx.stride[k]) % ctx.sys->degrees[k]];

  Eigen::MatrixXcd J(n, n);
  Eigen::VectorXcd rhs(n);
  std::vector<Complex> F(n), G(n), trial(n);

  auto homotopy_value = [&](const std::vector<Complex>& at, double t,
                            Eigen::VectorXcd& out) {
    eval_target(ctx, at, F);
    eval_start(ctx, at, G);
    for (int i = 0; i < n; ++i)
      out(i) = ctx.gamma * t * G[i] + (1.0 - t) * F[i];
  };

  // Newton corrector at fixed t; true when the last update is small.
  auto correct = [&](std::vector<Complex>& at, double t) {
    for (int it = 0; it < st.max_corrector_iters; ++it) {
      homotopy_value(at, t, rhs);
      eval_homotopy_jacobian(ctx, at, t, J);
      Eigen::VectorXcd delta = J.partialPivLu().solve(-rhs);
      if (!delta.allFinite()) return false;
      for (int k = 0; k < n; ++k) at[k] += delta(k);
      double norm = 0.0;
      for (int k = 0; k < n; ++k) norm = std::max(norm, std::abs(delta(k)));
      if (norm <= st.newton_tol * std::max(1.0, inf_norm(at))) return true;
    }
    return false;
  };

  double t = 1.0;
  double h = st.initial_step;
  int consecutive = 0;
  while (t > 0.0) {
    const double step = std::min(h, t);

    // Euler predictor: J dc/dt = -dH/dt, dH/dt = gamma G - F.
    eval_homotopy_jacobian(ctx, c, t, J);
    eval_target(ctx, c, F);
    eval_start(ctx, c, G);
    for (int i = 0; i < n; ++i) rhs(i) = -(ctx.gamma * G[i] - F[i]);
    Eigen::VectorXcd v = J.partialPivLu().solve(rhs);

    double tn = t - step;
    if (tn < 1e-16) tn = 0.0;
    bool ok = v.allFinite();
    if (ok) {
      for (int k = 0; k < n; ++k) trial[k] = c[k] - step * v(k);
      ok = all_finite(trial) && correct(trial, tn);
    }

    if (ok) {
      c = trial;
      t = tn;
      if (++consecutive >= 4) {
        h = std::min(h * 1.5, 0.2);
        consecutive = 0;
      }
    } else {
      consecutive = 0;
      h *= 0.5;
      if (h < st.min_step) {
        // A path stuck near t = 0 with a huge norm is running to infinity.
        res.status =
            inf_norm(c) > 1e6 ? PathStatus::diverged : PathStatus::failed;
        res.c = c;
        return res;
      }
    }
    if (inf_norm(c) > st.divergence_bound) {
      res.status = PathStatus::diverged;
      res.c = c;
      return res;
    }
  }

  // Endpoint refinement: plain Newton on the target system.
  for (int it = 0; it < 30; ++it) {
    eval_target(ctx, c, F);
    for (int i = 0; i < n; ++i) {
      rhs(i) = -F[i];
      for (int k = 0; k < n; ++k) J(i, k) = ctx.jac[i][k].eval(c);
    }
    Eigen::VectorXcd delta = J.partialPivLu().solve(rhs);
    if (!delta.allFinite()) break;
    for (int k = 0; k < n; ++k) c[k] += delta(k);
    if (!all_finite(c) || inf_norm(c) > st.divergence_bound) {
      res.status = PathStatus::diverged;
      res.c = c;
      return res;
    }
    double norm = 0.0;
    for (int k = 0; k < n; ++k) norm = std::max(norm, std::abs(delta(k)));
    if (norm <= st.endpoint_tol * std::max(1.0, inf_norm(c))) {
      res.status = PathStatus::converged;
      res.c = c;
      return res;
    }
  }
  res.status = PathStatus::failed;
  res.c = c;
  return res;
}

}  // namespace

TrackSummary track_all(const OffDiagSystem& sys,
                       const TrackerSettings& settings) {
  const int n = sys.n;
  if (static_cast<int>(sys.equations.size()) != n)
    throw ValidationError("off-diagonal system is not square");

  TrackContext ctx;
  ctx.sys = &sys;
  ctx.st = &settings;
  ctx.jac.assign(n, std::vector<MultiPoly>(n));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) ctx.jac[i][k] = sys.equations[i].derivative(k);

  Rng rng(settings.seed);
  ctx.gamma = rng.unit();
  ctx.s.resize(n);
  for (int k = 0; k < n; ++k) ctx.s[k] = rng.unit();

  ctx.roots.resize(n);
  for (int k = 0; k < n; ++k) {
    const int g = sys.degrees[k];
    const double theta = std::arg(ctx.s[k]);
    ctx.roots[k].resize(g);
    for (int j = 0; j < g; ++j)
      ctx.roots[k][j] = std::polar(1.0, (theta + 2.0 * M_PI * j) / g);
  }

  ctx.stride.assign(n, 1);
  for (int k = n - 2; k >= 0; --k)
    ctx.stride[k] = ctx.stride[k + 1] * sys.degrees[k + 1];
  ctx.total = ctx.stride[0] * sys.degrees[0];

  TrackSummary summary;
  summary.total = ctx.total;
  summary.paths.resize(ctx.total);

  const int threads = std::max(1, settings.threads);
  if (threads == 1 || ctx.total < 2) {
    for (long i = 0; i < ctx.total; ++i)
      summary.paths[i] = track_one(ctx, i);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int tid = 0; tid < threads; ++tid) {
      const long lo = ctx.total * tid / threads;
      const long hi = ctx.total * (tid + 1) / threads;
      pool.emplace_back([&ctx, &summary, lo, hi] {
        for (long i = lo; i < hi; ++i) summary.paths[i] = track_one(ctx, i);
      });
    }
    for (std::thread& th : pool) th.join();
  }

  for (const PathResult& p : summary.paths) {
    switch (p.status) {
      case PathStatus::converged: ++summary.converged; break;
      case PathStatus::diverged: ++summary.diverged; break;
      case PathStatus::failed: ++summary.failed; break;
    }
  }
  return summary;
}

bool refine_offdiag(const OffDiagSystem& sys, std::vector<Complex>& c,
                    double tol, int max_iters) {
  const int n = sys.n;
  if (static_cast<int>(c.size()) != n)
    throw ValidationError("refine_offdiag: wrong unknown count");
  std::vector<std::vector<MultiPoly>> jac(n, std::vector<MultiPoly>(n));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) jac[i][k] = sys.equations[i].derivative(k);
  Eigen::MatrixXcd J(n, n);
  Eigen::VectorXcd rhs(n);
  for (int it = 0; it < max_iters; ++it) {
    for (int i = 0; i < n; ++i) {
      rhs(i) = -sys.equations[i].eval(c);
      for (int k = 0; k < n; ++k) J(i, k) = jac[i][k].eval(c);
    }
    Eigen::VectorXcd delta = J.partialPivLu().solve(rhs);
    if (!delta.allFinite()) return false;
    double norm = 0.0, cnorm = 0.0;
    for (int k = 0; k < n; ++k) {
      c[k] += delta(k);
      norm = std::max(norm, std::abs(delta(k)));
      cnorm = std::max(cnorm, std::abs(c[k]));
    }
    if (norm <= tol * std::max(1.0, cnorm)) return true;
  }
  return false;
}

const char* reality_name(Reality r) {
  switch (r) {
    case Reality::definite: return "definite";
    case Reality::real_nondefinite: return "real-nondefinite";
    case Reality::complex_class: return "complex";
  }
  return "unknown";
}

Reality classify_class(const std::vector<std::vector<Complex>>& C,
                       double tol) {
  const int d = static_cast<int>(C.size());
  double scale = 1.0;
  double max_imag = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      scale = std::max(scale, std::abs(C[i][j]));
      max_imag = std::max(max_imag, std::abs(C[i][j].imag()));
    }
  }
  if (max_imag <= tol * scale) return Reality::definite;

  for (std::uint64_t bits = 0; bits < (1ull << (d - 1)); ++bits) {
    std::vector<double> s(d, 1.0);
    for (int i = 1; i < d; ++i)
      if (bits & (1ull << (i - 1))) s[i] = -1.0;
    double err = 0.0;
    for (int i = 0; i < d && err <= tol * scale; ++i)
      for (int j = 0; j < d; ++j)
        err = std::max(err, std::abs(std::conj(C[i][j]) - s[i] * s[j] * C[i][j]));
    if (err <= tol * scale) return Reality::real_nondefinite;
  }
  return Reality::complex_class;
}

std::vector<std::vector<Complex>> canonical_sign_representative(
    std::vector<std::vector<Complex>> C) {
  const int d = static_cast<int>(C.size());
  double scale = 1.0;
  for (const auto& row : C)
    for (const Complex& z : row) scale = std::max(scale, std::abs(z));
  const double near_zero = 1e-8 * scale;

  std::vector<int> s(d, 0);
  s[0] = 1;
  // Sweep until stable: a column whose first-row entry vanishes anchors to
  // the first already-fixed row with a usable entry.
  for (int sweep = 0; sweep < d; ++sweep) {
    bool progress = false;
    for (int j = 1; j < d; ++j) {
      if (s[j] != 0) continue;
      for (int i = 0; i < d; ++i) {
        if (i == j || s[i] == 0) continue;
        const Complex e = static_cast<double>(s[i]) * C[i][j];
        if (std::abs(e) <= near_zero) continue;
        if (std::abs(e.real()) > 1e-3 * std::abs(e))
          s[j] = e.real() > 0.0 ? 1 : -1;
        else
          s[j] = e.imag() > 0.0 ? 1 : -1;
        progress = true;
        break;
      }
    }
    if (!progress) break;
  }
  for (int j = 1; j < d; ++j)
    if (s[j] == 0) s[j] = 1;

  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      C[i][j] *= static_cast<double>(s[i] * s[j]);
  return C;
}

namespace {

int reality_rank(Reality r) {
  switch (r) {
    case Reality::definite: return 0;
    case Reality::real_nondefinite: return 1;
    case Reality::complex_class: return 2;
  }
  return 3;
}

// Smallest distance between c2 and any sign conjugate of c1.
double orbit_distance(const OffDiagSystem& sys, const std::vector<Complex>& c1,
                      const std::vector<Complex>& c2) {
  const int d = sys.d;
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t bits = 0; bits < (1ull << (d - 1)); ++bits) {
    std::vector<double> s(d, 1.0);
    for (int i = 1; i < d; ++i)
      if (bits & (1ull << (i - 1))) s[i] = -1.0;
    double dist = 0.0;
    for (int k = 0; k < sys.n && dist < best; ++k) {
      const auto& [i, j] = sys.unknowns[k];
      dist = std::max(dist, std::abs(s[i] * s[j] * c1[k] - c2[k]));
    }
    best = std::min(best, dist);
  }
  return best;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int m) : parent(m) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

std::vector<RepresentationClass> dedupe_signorbit(
    const OffDiagSystem& sys, const std::vector<PathResult>& endpoints,
    double cluster_tol, double classify_tol) {
  std::vector<int> keep;
  for (std::size_t i = 0; i < endpoints.size(); ++i)
    if (endpoints[i].status == PathStatus::converged)
      keep.push_back(static_cast<int>(i));
  const int m = static_cast<int>(keep.size());

  // Sign conjugation preserves every |c_k|, so the sum of moduli is a
  // grouping key; only endpoints with nearby sums need the orbit search.
  std::vector<double> feature(m);
  double scale = 1.0;
  for (int a = 0; a < m; ++a) {
    double sum = 0.0;
    for (const Complex& z : endpoints[keep[a]].c) sum += std::abs(z);
    feature[a] = sum;
    scale = std::max(scale, inf_norm(endpoints[keep[a]].c));
  }
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (feature[a] != feature[b]) return feature[a] < feature[b];
    return keep[a] < keep[b];
  });

  UnionFind uf(m);
  const double window = cluster_tol * scale * std::max(1, sys.n);
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      if (feature[order[b]] - feature[order[a]] > window) break;
      const auto& c1 = endpoints[keep[order[a]]].c;
      const auto& c2 = endpoints[keep[order[b]]].c;
      const double tol = cluster_tol * std::max({1.0, inf_norm(c1), inf_norm(c2)});
      if (orbit_distance(sys, c1, c2) <= tol) uf.unite(order[a], order[b]);
    }
  }

  std::map<int, std::vector<int>> groups;  // root -> endpoint list
  for (int a = 0; a < m; ++a) groups[uf.find(a)].push_back(a);

  std::vector<RepresentationClass> classes;
  for (auto& [root, members] : groups) {
    int rep = members.front();
    for (int a : members)
      if (keep[a] < keep[rep]) rep = a;

    const std::vector<Complex>& c = endpoints[keep[rep]].c;
    const int d = sys.d;
    std::vector<std::vector<Complex>> C(d, std::vector<Complex>(d, Complex(0.0)));
    for (int i = 0; i < d; ++i) C[i][i] = sys.cdiag[i];
    for (int k = 0; k < sys.n; ++k) {
      const auto& [i, j] = sys.unknowns[k];
      C[i][j] = C[j][i] = c[k];
    }

    RepresentationClass cls;
    cls.C = canonical_sign_representative(C);
    cls.multiplicity = static_cast<int>(members.size());
    cls.reality = classify_class(cls.C, classify_tol);

    std::vector<std::vector<Complex>> A(d, std::vector<Complex>(d, Complex(0.0)));
    std::vector<std::vector<Complex>> B(d, std::vector<Complex>(d, Complex(0.0)));
    for (int i = 0; i < d; ++i) {
      A[i][i] = Complex(1.0);
      B[i][i] = sys.betas[i];
    }
    const auto pencil = SymmetricPencil<Complex>::make(A, B, cls.C);
    cls.residual = rel_poly_distance(sys.f, det_expand(pencil));
    classes.push_back(std::move(cls));
  }

  std::sort(classes.begin(), classes.end(),
            [](const RepresentationClass& a, const RepresentationClass& b) {
              const int ra = reality_rank(a.reality);
              const int rb = reality_rank(b.reality);
              if (ra != rb) return ra < rb;
              if (a.residual != b.residual) return a.residual < b.residual;
              const int d = static_cast<int>(a.C.size());
              for (int i = 0; i < d; ++i) {
                for (int j = i; j < d; ++j) {
                  const Complex& x = a.C[i][j];
                  const Complex& y = b.C[i][j];
                  if (x.real() != y.real()) return x.real() < y.real();
                  if (x.imag() != y.imag()) return x.imag() < y.imag();
                }
              }
              return false;
            });
  return classes;
}

SolveResult solve_representations(const HomogeneousPoly<Complex>& f,
                                  const TrackerSettings& settings) {
  SolveResult out;
  out.curve = normalize_input(f);
  const OffDiagSystem sys = build_offdiag_system(out.curve);
  const TrackSummary summary = track_all(sys, settings);
  out.total_paths = summary.total;
  out.converged_paths = summary.converged;
  out.diverged_paths = summary.diverged;
  out.failed_paths = summary.failed;
  out.classes = dedupe_signorbit(sys, summary.paths, settings.cluster_tol,
                                 settings.classify_tol);
  return out;
}

}  // namespace hvrep
