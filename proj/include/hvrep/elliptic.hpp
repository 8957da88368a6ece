#pragma once

#include <vector>

#include "hvrep/field.hpp"
#include "hvrep/poly.hpp"
#include "hvrep/theta.hpp"

namespace hvrep {

// Genus-1 period model of the double cover w^2 = q(v) of the v-line, for a
// real cubic q.  The period basis (omega1, omega2) spans the lattice of
// dv/w-periods, with tau = omega2/omega1 reduced into the standard
// fundamental domain (Im tau > 0; real branch points give Re tau in {0, 1/2}).
struct EllipticModel {
  UnivariatePoly<Complex> q;    // the cubic, coefficients real to tolerance
  std::vector<Complex> branch;  // the 3 finite branch points (4th is infinity)
  Complex seg12{0.0, 0.0};      // integral of dv/w over [e1, e2] (real case)
  Complex seg23{0.0, 0.0};      // integral of dv/w over [e2, e3] (real case)
  Complex omega1{0.0, 0.0};     // alpha period (normalizing period)
  Complex omega2{0.0, 0.0};     // beta period
  Complex tau{0.0, 0.0};        // omega2 / omega1, fundamental-domain reduced
};

// Carlson symmetric integral R_F(x, y, z) by the duplication theorem, valid
// for arguments off the negative real axis (principal square roots), at most
// one of them zero.
Complex carlson_rf(Complex x, Complex y, Complex z);

// Builds the period model of w^2 = q(v) for a cubic q with real coefficients
// and distinct roots: either three real roots (segment integrals between
// consecutive branch points) or one real root and a conjugate pair (complex
// Carlson arguments).  Throws ValidationError for degree != 3, non-real
// coefficients, or clustered roots.
EllipticModel elliptic_model(const UnivariatePoly<Complex>& q);

// Half-period images {0, 1/2, tau/2, (1+tau)/2} of the three finite branch
// points under the Abel-Jacobi map normalized by omega1, in branch order.
// The base branch point (smallest real part) maps to 0; the fourth half
// period belongs to the branch point at infinity.  Requires three real branch
// points.  Throws NumericalError when a doubled value misses the lattice by
// more than 1e-6 (quadrature or branch failure).
std::vector<Complex> half_period_assignment(const EllipticModel& model);

// Full genus-1 period data for a cubic in the form p(x, y) - x z^2 with p a
// product of three distinct real linear factors: period matrix [[tau]],
// omega1 block, and per-point (beta_j, phi(Q_j), r_j) records where
// phi(Q_j) is the half period of the branch point v_j = -1/beta_j and
// r_j = 2 / (omega1 q'(v_j)) is the normalized-differential numerator value.
// Points are sorted by beta, matching normalize_input.  Throws
// ValidationError when f is not of the stated form (wrong monomial support,
// x z^2 coefficient != -1 after monic scaling, complex or vanishing betas).
CurvePeriodData build_period_data(const HomogeneousPoly<Complex>& f);

}  // namespace hvrep
