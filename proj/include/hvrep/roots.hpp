#pragma once

#include <vector>

#include "hvrep/poly.hpp"

namespace hvrep {

struct RootCluster {
  Complex value;
  int multiplicity = 1;
};

// All complex roots of p by simultaneous Aberth-Ehrlich iteration, unclustered,
// in no particular order beyond determinism.  Throws ValidationError for the
// zero polynomial and NumericalError if the iteration fails to converge.
std::vector<Complex> aberth_roots(const UnivariatePoly<Complex>& p,
                                  double tol = 1e-12, int max_iter = 400);

// Roots grouped into clusters of radius cluster_radius (approximate multiple
// roots); cluster value is the member mean, which cancels the leading
// splitting error of a multiple root.  Output sorted by (Re, Im).
std::vector<RootCluster> poly_roots(const UnivariatePoly<Complex>& p,
                                    double tol = 1e-12,
                                    double cluster_radius = 1e-6);

}  // namespace hvrep
