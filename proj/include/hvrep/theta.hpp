#pragma once

#include <vector>

#include "hvrep/field.hpp"
#include "hvrep/normalize.hpp"
#include "hvrep/pencil.hpp"
#include "hvrep/poly.hpp"

namespace hvrep {

// A g x g Riemann period matrix: symmetric, with positive definite imaginary
// part (a point of the Siegel upper half-space).
struct PeriodMatrix {
  int g = 0;
  std::vector<std::vector<Complex>> omega;

  // Validates shape, symmetry (to 1e-10 of the largest entry) and positive
  // definiteness of the imaginary part.  Throws ValidationError otherwise.
  static PeriodMatrix make(std::vector<std::vector<Complex>> omega);
};

// A half-integer theta characteristic a + Omega b, stored by the binary
// labels 2a, 2b in {0,1}^g.  Parity is (2a).(2b) mod 2; odd characteristics
// give odd theta functions (vanishing at 0), even ones give even functions.
struct ThetaCharacteristic {
  std::vector<int> a2;
  std::vector<int> b2;

  int parity() const;
  bool is_even() const { return parity() == 0; }
};

// Per-point period data: the point Q_j = (-beta_j : 1 : 0), its image
// phi(Q_j) under the Abel-Jacobi map (any fixed base point; only differences
// are ever used), and the vector r_j of normalized-differential numerator
// values at Q_j.
struct PeriodPoint {
  double beta = 0.0;
  std::vector<Complex> phi;
  std::vector<Complex> r;
};

// Period data of a curve of genus g: the period matrix Omega, optionally the
// alpha-period block Omega1 (required only by the bitangent formula), and one
// PeriodPoint per intersection of the curve with {z = 0}, sorted by beta.
struct CurvePeriodData {
  int g = 0;
  PeriodMatrix omega;
  std::vector<std::vector<Complex>> omega1;  // empty when absent
  std::vector<PeriodPoint> points;
};

// Riemann theta function  theta(u) = sum_m exp(pi*i*(m' Omega m + 2 m' u))
// over integer vectors m, truncated to the ellipsoid
// ||Im(Omega)^(1/2) (m + offset)|| <= R with offset = Im(Omega)^{-1} Im(u),
// R chosen from a Gaussian tail bound so the discarded mass is at most tol
// relative to the peak term magnitude exp(pi * Im(u)' Im(Omega)^{-1} Im(u)).
// Throws NumericalError when the truncation would need more than 10^7
// lattice points.
Complex theta(const std::vector<Complex>& u, const PeriodMatrix& omega,
              double tol = 1e-12);

// Theta with characteristic eps = a + Omega b (a = eps.a2/2, b = eps.b2/2):
//   theta[eps](u) = exp(pi*i*(a' Omega a + 2 a'(u+b))) * theta(u + Omega a + b),
// evaluated as the equivalent half-integer-shifted lattice sum.
Complex theta_char(const ThetaCharacteristic& eps,
                   const std::vector<Complex>& u, const PeriodMatrix& omega,
                   double tol = 1e-12);

// Gradient of theta[eps] at u, by term-wise differentiation of the sum.
std::vector<Complex> grad_theta_char(const ThetaCharacteristic& eps,
                                     const std::vector<Complex>& u,
                                     const PeriodMatrix& omega,
                                     double tol = 1e-12);

namespace detail {
// theta with the truncation radius scaled by radius_scale; the public
// functions use radius_scale = 1.  Exposed so tests can confirm that
// enlarging the radius moves the value by less than tol.
Complex theta_radius_scaled(const std::vector<Complex>& u,
                            const PeriodMatrix& omega, double tol,
                            double radius_scale);
}  // namespace detail

// All 2^(2g) characteristics: a2 ascending in the outer loop, b2 ascending in
// the inner loop, both read as big-endian bit strings (index 0 is the most
// significant bit).  2^(g-1)(2^g + 1) of them are even.
std::vector<ThetaCharacteristic> enumerate_chars(int g);

// Even characteristics fixed by complex conjugation when the homology basis
// puts the conjugation matrix H in its block-diagonal normal form of rank
// r = g - k + 1: exactly those with a2_1 = ... = a2_r = 0.  The definite
// sublist is a2 = 0 entirely.  Sizes 2^(g-1)(2^(k-1)+1) and 2^g.  Both lists
// keep enumeration order, so the definite labels come first in real_evens.
// Throws ValidationError when k is out of range or r is odd.
struct RealEvenChars {
  std::vector<ThetaCharacteristic> real_evens;
  std::vector<ThetaCharacteristic> definite;
};
RealEvenChars real_even_chars(int g, int k);

// Symmetric determinantal representation f = det(x Id + y diag(betas) + z C)
// from theta values on the curve's Jacobian: the diagonal of C comes from
// nc.cdiag and the off-diagonal entries are
//   c_jk = ((beta_k - beta_j) / theta[delta](0))
//          * (theta[delta](phi_k - phi_j) / theta[eps](phi_k - phi_j))
//          * sqrt((r_j . grad theta[eps](0)) / beta_j)
//          * sqrt((r_k . grad theta[eps](0)) / beta_k),
// with principal square roots, followed by a single-scalar calibration of the
// off-diagonal block against the coefficient of x^(d-2) z^2 of f (the result
// of the raw formula is correct only up to one global constant).  delta must
// be even with |theta[delta](0)| >= tol, eps must be odd.  Theta sums are
// evaluated at truncation tolerance 1e-12; tol gates the vanishing checks and
// the final determinant residual.  Throws ValidationError for parity or data
// mismatches, vanishing theta[delta](0), or vanishing eps denominators, and
// NumericalError when calibration cannot push the residual below tol.
SymmetricPencil<Complex> hv_representation(const NormalizedCurve& nc,
                                           const CurvePeriodData& data,
                                           const ThetaCharacteristic& delta,
                                           const ThetaCharacteristic& eps,
                                           double tol = 1e-6);

// First odd characteristic (in enumeration order) whose theta value stays
// away from zero at every pairwise difference phi_k - phi_j of the data
// points.  Throws ValidationError when none qualifies.
ThetaCharacteristic pick_odd_eps(const CurvePeriodData& data,
                                 double tol = 1e-6);

// Bitangent line of a genus-3 curve from an odd characteristic:
//   b_eps = (grad theta[eps](0))' * Omega1^{-1} * (x, y, z)',
// normalized to unit coefficient norm with the largest coefficient rotated to
// the positive real axis.  Requires g = 3 and an invertible omega1 block.
HomogeneousPoly<Complex> bitangent_from_char(const ThetaCharacteristic& eps,
                                             const CurvePeriodData& data);

// True when the restriction of the quartic f to the line is a binary quartic
// whose roots all have even multiplicity (two double roots, or one quadruple
// root, or identically zero when the line divides f).  Root clustering uses
// radius max(1e-6, sqrt(tol)) so tangency points split by coefficient noise
// of order tol are still recognized as double roots.
bool is_bitangent(const HomogeneousPoly<Complex>& f,
                  const HomogeneousPoly<Complex>& line, double tol = 1e-6);

}  // namespace hvrep
