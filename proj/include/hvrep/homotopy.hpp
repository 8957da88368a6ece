#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "hvrep/field.hpp"
#include "hvrep/normalize.hpp"
#include "hvrep/poly.hpp"

namespace hvrep {

// Sparse polynomial in n complex unknowns; immutable once constructed.
class MultiPoly {
 public:
  MultiPoly() = default;
  MultiPoly(int nvars, const std::map<std::vector<int>, Complex>& terms);

  int nvars() const { return n_; }
  int degree() const { return deg_; }
  std::size_t term_count() const { return terms_.size(); }

  Complex eval(const std::vector<Complex>& x) const;
  MultiPoly derivative(int var) const;

 private:
  struct Term {
    std::vector<std::pair<int, int>> nz;  // (variable, exponent > 0)
    Complex coeff;
  };
  int n_ = 0;
  int deg_ = 0;
  std::vector<Term> terms_;
};

// The square polynomial system for the off-diagonal entries of C, one
// equation per coefficient of x^a y^b z^g in
//   det(Id x + diag(betas) y + C z) - f,   g >= 2.
// Writing the determinant as
//   sum_S det(C_S) z^|S| prod_{i not in S} (x + beta_i y)
// over index subsets S, the equation for x^a y^b z^g reads
//   sum_{|S|=g} det(C_S) e_b(betas off S) = f_{a,b,g},
// with e_b the elementary symmetric polynomial.  Equations are ordered by
// descending degree g (ties by ascending power of y); unknowns c_ij are
// ordered lexicographically by (i, j).
struct OffDiagSystem {
  int d = 0;                                 // curve degree
  int n = 0;                                 // d(d-1)/2 unknowns
  std::vector<std::pair<int, int>> unknowns; // (i, j) with i < j
  std::vector<MultiPoly> equations;
  std::vector<int> degrees;                  // z-power g of each equation
  std::vector<Exp> monomials;                // (a, b, g) label per equation
  std::vector<Complex> betas, cdiag;
  HomogeneousPoly<Complex> f;                // monic target curve
};

OffDiagSystem build_offdiag_system(const NormalizedCurve& nc);

// Equation values at a given off-diagonal vector (unknowns order).
std::vector<Complex> eval_offdiag_system(const OffDiagSystem& sys,
                                         const std::vector<Complex>& c);

struct TrackerSettings {
  double initial_step = 0.1;
  double min_step = 1e-14;      // below this the path is declared failed
  double newton_tol = 1e-8;     // corrector convergence during tracking
  int max_corrector_iters = 3;
  double divergence_bound = 1e8;
  double endpoint_tol = 1e-12;  // final Newton refinement at t = 0
  std::uint64_t seed = 0;       // start-system constants and gamma
  int threads = 1;
  double cluster_tol = 1e-6;    // sign-orbit clustering of endpoints
  double classify_tol = 1e-6;   // reality classification
};

enum class PathStatus { converged, diverged, failed };

struct PathResult {
  PathStatus status = PathStatus::failed;
  std::vector<Complex> c;  // endpoint; meaningful when converged
  long start_index = 0;
};

struct TrackSummary {
  std::vector<PathResult> paths;  // indexed by start-point index
  long total = 0;
  long converged = 0;
  long diverged = 0;
  long failed = 0;
};

// Tracks every start point of the total-degree homotopy
//   H(c, t) = gamma t (c_k^{g_k} - s_k)_k + (1 - t) F(c)
// from t = 1 to t = 0 with an Euler predictor and Newton corrector.  The
// unit-modulus constants gamma and s_k are drawn from the seed (gamma
// first, then s_0, s_1, ...).  Step control: halve on corrector failure,
// grow by 1.5 after four consecutive successes; a path failing below
// min_step is reported as failed (or diverged when its norm already
// exceeds 1e6); norms above divergence_bound flag divergence.  Paths are
// independent, so the result does not depend on the thread count.
TrackSummary track_all(const OffDiagSystem& sys,
                       const TrackerSettings& settings);

// Newton-polishes an approximate solution of the system in place; true when
// the update norm drops below tol (relative) within max_iters iterations.
bool refine_offdiag(const OffDiagSystem& sys, std::vector<Complex>& c,
                    double tol = 1e-12, int max_iters = 30);

enum class Reality { definite, real_nondefinite, complex_class };

const char* reality_name(Reality r);

// definite: all entries real within tol (sign conjugation never changes
// |Im|, and in the normalized frame the x-coefficient Id is positive
// definite, so real C means a definite representation).  real_nondefinite:
// conj(C) = D C D for some sign matrix D = diag(+-1).  Otherwise complex.
Reality classify_class(const std::vector<std::vector<Complex>>& C,
                       double tol = 1e-6);

struct RepresentationClass {
  std::vector<std::vector<Complex>> C;  // canonical sign representative
  double residual = 0.0;  // relative det mismatch against the curve
  Reality reality = Reality::complex_class;
  int multiplicity = 0;   // endpoints merged into this class
};

// Fixes the sign-conjugation gauge: D = diag(s), s_1 = +1, chosen so every
// first-row entry has positive real part (imaginary part positive when the
// real part is below 1e-3 of the entry).  Entries within 1e-8 of zero defer
// to the first usable anchor entry in an already-fixed row; columns with no
// anchor keep s_j = +1.
std::vector<std::vector<Complex>> canonical_sign_representative(
    std::vector<std::vector<Complex>> C);

// Groups converged endpoints that coincide after some sign conjugation,
// emits one canonical representative per group with its reality tag,
// determinant residual and group size (expected 2^(d-1)), sorted by
// (reality, residual, entries).
std::vector<RepresentationClass> dedupe_signorbit(
    const OffDiagSystem& sys, const std::vector<PathResult>& endpoints,
    double cluster_tol = 1e-6, double classify_tol = 1e-6);

struct SolveResult {
  NormalizedCurve curve;
  std::vector<RepresentationClass> classes;
  long total_paths = 0;
  long converged_paths = 0;
  long diverged_paths = 0;
  long failed_paths = 0;
};

// normalize_input -> build_offdiag_system -> track_all -> dedupe_signorbit.
// Path failures are reported in the counters, never silently dropped.
SolveResult solve_representations(const HomogeneousPoly<Complex>& f,
                                  const TrackerSettings& settings = {});

}  // namespace hvrep
