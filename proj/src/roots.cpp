#include "hvrep/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hvrep {

namespace {

// p and p' at z in one Horner pass.
void eval_with_deriv(const std::vector<Complex>& c, const Complex& z,
                     Complex& p, Complex& dp) {
  p = Complex(0, 0);
  dp = Complex(0, 0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    dp = dp * z + p;
    p = p * z + *it;
  }
}

}  // namespace

std::vector<Complex> aberth_roots(const UnivariatePoly<Complex>& p, double tol,
                                  int max_iter) {
  if (p.zero()) throw ValidationError("root finding on the zero polynomial");
  int deg = p.degree();
  if (deg < 1) return {};

  // Deflate exact roots at the origin, then work with a monic copy.
  std::vector<Complex> c = p.coeffs();
  int zero_roots = 0;
  while (zero_roots < deg && c[zero_roots] == Complex(0, 0)) ++zero_roots;
  c.erase(c.begin(), c.begin() + zero_roots);
  int n = static_cast<int>(c.size()) - 1;

  std::vector<Complex> z;
  z.reserve(deg);
  for (int i = 0; i < zero_roots; ++i) z.emplace_back(0, 0);
  if (n == 0) return z;

  Complex lead = c.back();
  for (auto& v : c) v /= lead;

  // Cauchy bound: all roots lie within 1 + max |a_i| of the origin.
  double bound = 0.0;
  for (int i = 0; i < n; ++i) bound = std::max(bound, std::abs(c[i]));
  double radius = 0.8 * (1.0 + bound);

  std::vector<Complex> w(n);
  for (int k = 0; k < n; ++k) {
    double t = 2.0 * 3.14159265358979323846 * k / n + 0.3929;
    w[k] = radius * Complex(std::cos(t), std::sin(t));
  }

  double coeff_norm = 0.0;
  for (const auto& v : c) coeff_norm += std::abs(v);

  bool converged = false;
  for (int iter = 0; iter < max_iter && !converged; ++iter) {
    double max_step = 0.0;
    for (int k = 0; k < n; ++k) {
      Complex pv, dv;
      eval_with_deriv(c, w[k], pv, dv);
      if (pv == Complex(0, 0)) continue;
      if (dv == Complex(0, 0)) {
        // Critical point hit exactly; nudge and retry next sweep.
        w[k] += Complex(1e-8 * (1.0 + std::abs(w[k])), 1e-8);
        max_step = 1.0;
        continue;
      }
      Complex nk = pv / dv;
      Complex s(0, 0);
      for (int j = 0; j < n; ++j)
        if (j != k) s += Complex(1, 0) / (w[k] - w[j]);
      Complex denom = Complex(1, 0) - nk * s;
      Complex step = (std::abs(denom) < 1e-300) ? nk : nk / denom;
      w[k] -= step;
      max_step = std::max(max_step, std::abs(step) / std::max(1.0, std::abs(w[k])));
    }
    if (max_step < 1e-15) converged = true;
  }

  // Residual acceptance: |p(z)| small relative to the coefficient mass at the
  // root's scale.  Near-multiple roots split by ~sqrt(eps), whose residual is
  // ~eps, so this passes for them too.
  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    Complex pv, dv;
    eval_with_deriv(c, w[k], pv, dv);
    double scale = coeff_norm * std::pow(std::max(1.0, std::abs(w[k])), n);
    worst = std::max(worst, std::abs(pv) / scale);
  }
  if (worst > std::max(tol, 1e-11))
    throw NumericalError("root iteration did not converge (worst residual " +
                         std::to_string(worst) + " over " + std::to_string(n) +
                         " roots)");

  for (const auto& v : w) z.push_back(v);
  return z;
}

std::vector<RootCluster> poly_roots(const UnivariatePoly<Complex>& p, double tol,
                                    double cluster_radius) {
  std::vector<Complex> roots = aberth_roots(p, tol);
  int n = static_cast<int>(roots.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(roots[i] - roots[j]) <= cluster_radius) parent[find(i)] = find(j);

  std::vector<RootCluster> out;
  std::vector<int> done(n, 0);
  for (int i = 0; i < n; ++i) {
    int r = find(i);
    if (done[r]) continue;
    done[r] = 1;
    Complex sum(0, 0);
    int count = 0;
    for (int j = 0; j < n; ++j)
      if (find(j) == r) {
        sum += roots[j];
        ++count;
      }
    out.push_back({sum / static_cast<double>(count), count});
  }
  std::sort(out.begin(), out.end(), [](const RootCluster& a, const RootCluster& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  return out;
}

}  // namespace hvrep
