#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "hvrep/errors.hpp"
#include "hvrep/field.hpp"
#include "hvrep/pencil.hpp"
#include "hvrep/poly.hpp"
#include "hvrep/theta.hpp"

namespace hvrep {

// A partition of {1,...,8} into two 4-element halves I | I^c, stored as the
// sorted half containing the index 1.
struct Partition8 {
  std::array<int, 4> I{};

  // Validates the entries (distinct, each in 1..8, one of them 1) and sorts.
  static Partition8 make(std::array<int, 4> idx);
  std::array<int, 4> complement() const;
  std::string str() const;  // concatenated digits, e.g. "1238"

  friend bool operator==(const Partition8&, const Partition8&) = default;
  friend auto operator<=>(const Partition8&, const Partition8&) = default;
};

// One cell of Cayley's 8x8 table for genus-3 theta characteristics: even
// cells carry the base-class marker (empty) or a partition naming a
// determinantal-representation class; odd cells carry the index pair {i, j}
// of a bitangent b_ij.
struct CayleyCell {
  enum class Kind { empty, partition, pair };
  Kind kind = Kind::empty;
  Partition8 partition{};     // set when kind == partition
  std::array<int, 2> pair{};  // set when kind == pair; pair[0] < pair[1]

  std::string str() const;  // "" / "1238" / "15"
};

// Hardcoded table lookup for a genus-3 characteristic. Rows are indexed by
// the b2 label and columns by the a2 label, both in the order
// 000,100,010,110,001,101,011,111 (leftmost label bit varies fastest).
// Renditions of the classical table sometimes duplicate the 4-tuple 1235 and
// omit 1258; here the cell (a2=010, b2=100) is 1258, the unique completion
// in which every partition appears exactly once and the sum rule
// char({i,j}) + char({k,l}) = char({i,j,k,l}) holds for disjoint pairs.
// Throws ValidationError unless the characteristic has genus-3 labels.
CayleyCell cayley_lookup(const ThetaCharacteristic& ch);

// Partitions I | I^c fixed setwise (image I or I^c) by an involution pi,
// given as 1-based images pi[i-1] = pi(i). pi must be a product of four
// disjoint transpositions; throws ValidationError otherwise. Any such pi
// fixes exactly 11 partitions: 3 unions of two transposition orbits and 8
// transversals picking one index from each orbit.
std::vector<Partition8> real_partitions(const std::array<int, 8>& pi);

// 8x8 symmetric matrix of degree-1 forms with zero diagonal, indexed 0..7.
template <class K>
struct BitangentMatrix {
  PolyMatrix<K> b;

  static BitangentMatrix make(PolyMatrix<K> entries) {
    if (entries.size() != 8)
      throw ValidationError("bitangent matrix must be 8x8");
    for (const auto& row : entries)
      if (row.size() != 8)
        throw ValidationError("bitangent matrix must be 8x8");
    for (int i = 0; i < 8; ++i) {
      if (entries[i][i].degree() != 1 || !entries[i][i].zero())
        throw ValidationError("bitangent matrix diagonal must be zero forms");
      for (int j = 0; j < 8; ++j) {
        if (entries[i][j].degree() != 1)
          throw ValidationError("bitangent matrix entries must be linear");
        if (!(entries[i][j] - entries[j][i]).zero())
          throw ValidationError("bitangent matrix must be symmetric");
      }
    }
    return BitangentMatrix{std::move(entries)};
  }
};

// Result of checking one principal 4x4 minor of the matrix against f.
template <class K>
struct MinorCheck {
  std::array<int, 4> idx{};  // 0-based principal row/column set, increasing
  K scale{};                 // minor ~ scale * f
  double residual = 0.0;     // max|minor - scale f| / (max|f| max(1,|scale|))
};

template <class K>
struct BitangentMatrixReport {
  std::vector<MinorCheck<K>> minors;  // all 70 index sets, lexicographic
  int nonzero = 0;                    // minors with scale != 0
  double max_residual = 0.0;
  bool all_multiples = false;  // true when max_residual <= the given tol
};

// Checks that every principal 4x4 minor of B is a scalar multiple of f.
// The scale of each minor is read off at f's largest coefficient, so exact
// coefficient fields give exact scales and exactly zero residuals.
template <class K>
BitangentMatrixReport<K> verify_bitangent_matrix(const HomogeneousPoly<K>& f,
                                                 const BitangentMatrix<K>& B,
                                                 double tol = 1e-9) {
  if (f.degree() != 4)
    throw ValidationError("bitangent matrix verification expects a quartic");
  if (f.zero()) throw ValidationError("cannot verify against the zero curve");

  Exp top{4, 0, 0};
  double best = -1.0;
  for (const auto& [e, c] : f.terms()) {
    const double a = FieldTraits<K>::approx_abs(c);
    if (a > best) best = a, top = e;
  }
  const K ftop = f.coeff(top);
  const double fscale = f.max_abs();

  BitangentMatrixReport<K> rep;
  for (int a = 0; a < 8; ++a)
    for (int b = a + 1; b < 8; ++b)
      for (int c = b + 1; c < 8; ++c)
        for (int d = c + 1; d < 8; ++d) {
          const std::array<int, 4> idx{a, b, c, d};
          PolyMatrix<K> sub(4, std::vector<HomogeneousPoly<K>>(
                                   4, HomogeneousPoly<K>(1)));
          for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) sub[i][j] = B.b[idx[i]][idx[j]];
          const HomogeneousPoly<K> minor = polymatrix_det(sub);

          MinorCheck<K> chk;
          chk.idx = idx;
          chk.scale = minor.coeff(top) / ftop;
          const double sabs = FieldTraits<K>::approx_abs(chk.scale);
          chk.residual = (minor - f.scaled(chk.scale)).max_abs() /
                         (fscale * std::max(1.0, sabs));
          if (!FieldTraits<K>::is_zero(chk.scale)) ++rep.nonzero;
          rep.max_residual = std::max(rep.max_residual, chk.residual);
          rep.minors.push_back(std::move(chk));
        }
  rep.all_multiples = rep.max_residual <= tol;
  return rep;
}

// One bitangent line of a genus-3 curve, labeled through Cayley's table.
struct LabeledBitangent {
  ThetaCharacteristic eps;        // odd characteristic
  std::array<int, 2> pair{};      // table label {i, j}
  HomogeneousPoly<Complex> line;  // normalized line
};

struct BitangentSet {
  std::vector<LabeledBitangent> lines;  // 28, in characteristic order
  BitangentMatrix<Complex> matrix;      // entry (i-1, j-1) = line of {i, j}
};

// Evaluates the gradient line formula at every odd genus-3 characteristic
// and arranges the lines into the 8x8 grid by their table labels. The
// construction does not determine per-entry scalings, so the grid satisfies
// the minor-multiple property only up to a scalar per entry. Requires g = 3
// period data with an invertible omega1 block (ValidationError otherwise)
// and propagates theta evaluation errors.
BitangentSet bitangents_from_periods(const CurvePeriodData& data);

}  // namespace hvrep
