#pragma once

#include <vector>

#include "hvrep/field.hpp"
#include "hvrep/pencil.hpp"
#include "hvrep/poly.hpp"

namespace hvrep {

// One of the three determinantal representations of a smooth plane cubic
// obtained from the Hessian pencil: s f = Hes(t f + Hes f), and
// pencil = s^{-1/3} (second-partials matrix of t f + Hes f).
struct HessianSolution {
  Complex s{};
  Complex t{};
  SymmetricPencil<Complex> pencil;
};

// 3x3 symmetric matrix of second partial derivatives of a cubic; every
// entry is a linear form and the determinant is the Hessian cubic of g.
SymmetricPencil<Complex> hessian_matrix(const HomogeneousPoly<Complex>& g);

// All three (s, t) pairs for which the ten coefficients of
// Hes(t f + Hes f) are proportional to those of f, each converted to a
// determinantal representation of f.  The rank-1 condition is imposed by
// cross 2x2 minors against a pivot coordinate; candidate t values are the
// roots of the largest minor, kept only when every minor vanishes there.
// Throws when the input is not smooth enough to produce exactly three.
std::vector<HessianSolution> han_representations(
    const HomogeneousPoly<Complex>& f, double tol = 1e-6);

}  // namespace hvrep
