#pragma once

#include <array>
#include <vector>

#include "hvrep/field.hpp"
#include "hvrep/pencil.hpp"
#include "hvrep/poly.hpp"

namespace hvrep {

// A curve g of degree d-1 touching f everywhere it meets it: the full
// intersection divisor has even multiplicities, generically d(d-1)/2
// tangency points (each listed once per multiplicity-2 pair).
struct ContactConfiguration {
  HomogeneousPoly<Complex> f{0};
  HomogeneousPoly<Complex> g{0};
  std::vector<std::array<Complex, 3>> contact_points;
};

struct ContactResult {
  bool contact = false;
  ContactConfiguration config;
  bool has_offender = false;
  Complex offending_root{};  // projective x/y ratio of an odd-multiplicity root
};

// u^T adj(M) u: the contact curve of the representation M at direction u.
HomogeneousPoly<Complex> contact_curve(const SymmetricPencil<Complex>& M,
                                       const std::vector<Complex>& u);

// u^T adj(M) v for two directions (contact_curve is the diagonal case).
HomogeneousPoly<Complex> mixed_contact_form(const SymmetricPencil<Complex>& M,
                                            const std::vector<Complex>& u,
                                            const std::vector<Complex>& v);

// Decides contact by eliminating z, clustering the resultant roots over two
// complementary charts of the (x : y) line, and demanding (1) the
// multiplicity total d(d-1), (2) all multiplicities even, and (3) a
// geometric tangency certificate at every point: both gradients nonzero and
// parallel.  (3) rejects non-reduced inputs such as squared lines, whose
// intersection multiplicities are even for the wrong reason.
ContactResult is_contact(const HomogeneousPoly<Complex>& f,
                         const HomogeneousPoly<Complex>& g, double tol = 1e-6);

// Least-squares ideal reduction: the relative norm of the remainder of p
// after subtracting the best multiple q f (q of degree deg p - deg f).
double ideal_remainder(const HomogeneousPoly<Complex>& p,
                       const HomogeneousPoly<Complex>& f);

struct DixonResult {
  SymmetricPencil<Complex> pencil;   // normalized frame: x Id + y diag + z C
  PolyMatrix<Complex> mhat;          // the intermediate rank-1 (mod f) matrix
  double residual = 0.0;             // relative det mismatch against f
};

// Dixon's reconstruction: from a contact curve g of f, build the d x d
// matrix M-hat of degree-(d-1) forms whose first row spans the curves
// through the contact points (first entry g itself), complete the remaining
// entries through the ideal-membership relations
//   m_1i m_1j = m_11 m_ij + f q_ij,
// divide adj(M-hat) by f^(d-2) entrywise, and rescale so the determinant is
// f.  Inputs whose contact divisor is syzygetic collapse the determinant or
// break the division; both raise an error.
DixonResult dixon_complete(const HomogeneousPoly<Complex>& f,
                           const HomogeneousPoly<Complex>& g,
                           double tol = 1e-6);

// Every 2x2 minor of mhat reduces to 0 modulo f within tol.
bool rank1_check(const PolyMatrix<Complex>& mhat,
                 const HomogeneousPoly<Complex>& f, double tol = 1e-8);

}  // namespace hvrep
