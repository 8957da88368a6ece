#pragma once

#include <string>
#include <vector>

#include "hvrep/field.hpp"
#include "hvrep/pencil.hpp"
#include "hvrep/poly.hpp"
#include "hvrep/theta.hpp"
#include "json.hpp"

namespace hvrep {

// ---------- file plumbing ----------

// Parses a JSON file; throws ValidationError carrying the path and the
// parser's position diagnostics on failure (missing file included).
nlohmann::json load_json_file(const std::string& path);

// Writes 2-space-indented JSON plus a trailing newline.
void save_json_file(const std::string& path, const nlohmann::json& j);

// 64-bit FNV-1a digest of the file bytes, as 16 hex digits.
std::string file_digest(const std::string& path);

// ---------- atoms ----------

// Complex numbers serialize as [re, im]; doubles keep full precision.
nlohmann::json complex_to_json(const Complex& z);
Complex complex_from_json(const nlohmann::json& j);

// Rationals serialize as decimal-free "p/q" strings ("p" also accepted).
Rational rational_from_string(const std::string& s);

// "a2;b2" labels, e.g. "010;100" for a2 = (0,1,0), b2 = (1,0,0).
ThetaCharacteristic char_from_string(const std::string& s);
std::string char_to_string(const ThetaCharacteristic& ch);

// Comma-separated complex components, each "re" or "re:im",
// e.g. "1,0:-2,3.5" -> (1, -2i, 3.5).
std::vector<Complex> complex_list_from_string(const std::string& s);

// ---------- polynomials ----------
// {"degree": d, "field": "rational"|"complex",
//  "terms": [{"exp": [i,j,k], "coeff": "p/q"} | {"exp": [i,j,k], "re": r, "im": s}]}

// A parsed polynomial in either coefficient field; the complex form is
// always populated (converted from the rational one when needed).
struct PolyInput {
  bool rational = false;
  HomogeneousPoly<Rational> rat{0};
  HomogeneousPoly<Complex> cpx{0};
};

PolyInput poly_from_json(const nlohmann::json& j);
nlohmann::json poly_to_json(const HomogeneousPoly<Rational>& p);
nlohmann::json poly_to_json(const HomogeneousPoly<Complex>& p);

// ---------- pencils ----------
// {"d": n, "field": "rational"|"complex", "A": [[entry]], "B": ..., "C": ...}
// with entry = "p/q" or [re, im] to match the field.

struct PencilInput {
  bool rational = false;
  SymmetricPencil<Rational> rat;
  SymmetricPencil<Complex> cpx;  // always populated
};

PencilInput pencil_from_json(const nlohmann::json& j);
nlohmann::json pencil_to_json(const SymmetricPencil<Rational>& p);
nlohmann::json pencil_to_json(const SymmetricPencil<Complex>& p);

// ---------- period data ----------
// {"genus": g, "omega": [[[re,im], ...]], "omega1": [[[re,im], ...]]
//  (optional), "points": [{"beta": b, "phi": [[re,im],...],
//  "r": [[re,im],...]}]}

nlohmann::json period_data_to_json(const CurvePeriodData& d);
CurvePeriodData period_data_from_json(const nlohmann::json& j);

}  // namespace hvrep
