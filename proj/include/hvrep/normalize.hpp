#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "hvrep/field.hpp"
#include "hvrep/pencil.hpp"
#include "hvrep/poly.hpp"

namespace hvrep {

// A plane curve in the normalized frame in which the representation problem
// is posed: f is monic in x, the pencil's x-coefficient is the identity, its
// y-coefficient is diag(betas), and the diagonal of the z-coefficient C is
// forced by the coefficients of the monomials x^i y^(d-i-1) z of f.
struct NormalizedCurve {
  HomogeneousPoly<Complex> f;  // scaled so the coefficient of x^d equals 1
  std::vector<Complex> betas;  // pairwise distinct, ascending by (Re, Im)
  std::vector<Complex> cdiag;  // forced diagonal of the C matrix
  bool real_betas = false;     // all betas real to within 1e-8 of their scale
};

// Scales f monic and extracts betas (the negated roots of f(x,1,0)) and the
// forced C diagonal.
//
// The diagonal is computed from the identity
//   (d/dz f)(-beta_i, 1, 0) = c_ii * prod_{j != i} (beta_j - beta_i),
// which follows by expanding det(Id x + diag(beta) y + C z) to first order
// in z and evaluating at the root (x, y) = (-beta_i, 1) of every other
// diagonal factor.  The equivalent quotient beta_i * f_z / f_y degenerates
// to 0/0 at beta_i = 0; the product form does not.
//
// Throws ValidationError if the coefficient of x^d vanishes or two betas
// collide within cluster_radius.
NormalizedCurve normalize_input(const HomogeneousPoly<Complex>& f,
                                double cluster_radius = 1e-6);

// Exact counts of equivalence classes of symmetric linear determinantal
// representations of a generic smooth plane curve of degree d, together with
// the Bezout numbers of the off-diagonal polynomial system.
struct ClassCounts {
  int d = 0;  // curve degree
  int g = 0;  // curve genus (d-1)(d-2)/2
  int k = 0;  // ceil(d/2), controls the real count
  BigInt complex_count;           // classes over the complex numbers
  BigInt real_count;              // real classes of a hyperbolic curve
  bool real_or_one_less = false;  // real_count may drop by one (d = +-3 mod 8)
  BigInt definite_count;          // 2^g definite classes
  BigInt bezout_full;             // Bezout number of the square c_ij system
  BigInt bezout_reduced;          // bezout_full / 2^(d-1) sign orbits
};

// complex_count = 2^(g-1) (2^g + 1), minus one for d >= 11 with d = +-3
// mod 8; real_count = 2^(g-1) (2^(k-1) + 1); definite_count = 2^g; degree 2
// has genus 0 and a single class in every column.  bezout_full is
// prod_{gamma=2..d} gamma^(d-gamma+1), the product of the degrees of the
// off-diagonal equations.  Throws ValidationError for d < 2.
ClassCounts class_counts(int d);

// Result of normalizing a symmetric pencil by congruence: U M(x,y,z) U^T has
// x-coefficient Id and y-coefficient diag(curve.betas); C is the transformed
// z-coefficient.
struct NormalizedPencil {
  NormalizedCurve curve;
  std::vector<std::vector<Complex>> C;
  std::vector<std::vector<Complex>> U;
  double residual = 0.0;  // relative det mismatch against det(M)/det(A)
};

// Simultaneous diagonalization of the x- and y-coefficients by congruence,
// computed from the eigendecomposition of A^{-1} B: the eigenvectors are
// A-orthogonal when the eigenvalues are distinct, and bilinear rescaling
// v / sqrt(v^T A v) turns them into the rows of U.  Throws ValidationError
// if A is singular or A^{-1} B has a repeated eigenvalue; NumericalError if
// an eigenvector is isotropic for A or the determinant of the normalized
// pencil misses det(M)/det(A) by more than tol.
NormalizedPencil normalize_pencil(const SymmetricPencil<Complex>& M,
                                  double tol = 1e-8);

// Probabilistic hyperbolicity screen: for `samples` random real directions v
// the roots of t -> f(v + t e) must all be real.  Not a decision procedure.
struct HyperbolicityReport {
  bool hyperbolic = false;
  std::array<double, 3> witness{0.0, 0.0, 0.0};  // failing v (when !hyperbolic)
};

// Requires real f with f(e) != 0 (ValidationError otherwise).  A root counts
// as real when |Im| <= imag_tol * max(1, |root|); a cluster of m mutually
// close roots is granted the larger allowance (1e-11)^(1/m), the radius to
// which an m-fold real root splits at working precision (so, e.g., f = x^d
// passes even though its d-fold roots are computed with O(eps^(1/d)) error).
HyperbolicityReport is_hyperbolic(const HomogeneousPoly<Complex>& f,
                                  const std::array<double, 3>& e,
                                  int samples = 200, std::uint64_t seed = 0,
                                  double imag_tol = 1e-7);

}  // namespace hvrep
