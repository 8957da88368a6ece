#include "hvrep/jsonio.hpp"

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hvrep/errors.hpp"

namespace hvrep {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ValidationError(where + ": " + what);
}

const json& need(const json& j, const char* key, const char* where) {
  if (!j.is_object() || !j.contains(key))
    fail(where, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

Exp exp_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3)
    fail("polynomial term", "\"exp\" must be a 3-element array");
  Exp e{};
  for (int i = 0; i < 3; ++i) {
    if (!j[i].is_number_integer() || j[i].get<long>() < 0)
      fail("polynomial term", "exponents must be nonnegative integers");
    e[i] = j[i].get<int>();
  }
  return e;
}

std::vector<std::vector<Complex>> complex_matrix_from_json(const json& j,
                                                           const char* where) {
  if (!j.is_array() || j.empty()) fail(where, "expected a nonempty 2D array");
  std::vector<std::vector<Complex>> m;
  for (const json& row : j) {
    if (!row.is_array() || row.size() != j.size())
      fail(where, "matrix must be square");
    std::vector<Complex> r;
    for (const json& cell : row) r.push_back(complex_from_json(cell));
    m.push_back(std::move(r));
  }
  return m;
}

json complex_matrix_to_json(const std::vector<std::vector<Complex>>& m) {
  json rows = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const Complex& z : row) r.push_back(complex_to_json(z));
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace

json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(path, "cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail(path, e.what());
  }
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(path, "cannot open file for writing");
  out << j.dump(2) << "\n";
  if (!out) fail(path, "write failed");
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(path, "cannot open file");
  std::uint64_t h = 1469598103934665603ull;
  char c;
  while (in.get(c)) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

json complex_to_json(const Complex& z) {
  return json::array({z.real(), z.imag()});
}

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail("complex value", "expected [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Rational rational_from_string(const std::string& s) {
  if (s.empty()) fail("rational value", "empty string");
  for (char c : s)
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' ||
          c == '+' || c == '/'))
      fail("rational value", "\"" + s + "\" is not a p/q string");
  try {
    return Rational(s);
  } catch (const std::exception& e) {
    fail("rational value", "\"" + s + "\": " + e.what());
  }
}

ThetaCharacteristic char_from_string(const std::string& s) {
  const auto sep = s.find(';');
  if (sep == std::string::npos)
    fail("characteristic", "\"" + s + "\" lacks the a2;b2 separator");
  ThetaCharacteristic ch;
  auto bits = [&](const std::string& part) {
    std::vector<int> v;
    for (char c : part) {
      if (c == ',' || c == ' ') continue;
      if (c != '0' && c != '1')
        fail("characteristic", "labels must be binary strings like 100;010");
      v.push_back(c - '0');
    }
    return v;
  };
  ch.a2 = bits(s.substr(0, sep));
  ch.b2 = bits(s.substr(sep + 1));
  if (ch.a2.empty() || ch.a2.size() != ch.b2.size())
    fail("characteristic", "a2 and b2 must have equal positive length");
  return ch;
}

std::string char_to_string(const ThetaCharacteristic& ch) {
  std::string s;
  for (int v : ch.a2) s += static_cast<char>('0' + v);
  s += ';';
  for (int v : ch.b2) s += static_cast<char>('0' + v);
  return s;
}

std::vector<Complex> complex_list_from_string(const std::string& s) {
  std::vector<Complex> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto sep = tok.find(':');
    try {
      if (sep == std::string::npos) {
        out.emplace_back(std::stod(tok), 0.0);
      } else {
        out.emplace_back(std::stod(tok.substr(0, sep)),
                         std::stod(tok.substr(sep + 1)));
      }
    } catch (const std::exception&) {
      fail("complex list", "cannot parse component \"" + tok + "\"");
    }
  }
  if (out.empty()) fail("complex list", "no components in \"" + s + "\"");
  return out;
}

PolyInput poly_from_json(const json& j) {
  const char* where = "polynomial";
  // Accept report payloads that wrap the polynomial under a known key, so
  // files produced with --out can be fed straight back in.
  for (const char* key : {"f", "contact_curve", "polynomial"})
    if (j.is_object() && !j.contains("degree") && j.contains(key))
      return poly_from_json(j.at(key));
  const int degree = need(j, "degree", where).get<int>();
  if (degree < 0 || degree > 64) fail(where, "unreasonable degree");
  const std::string field = need(j, "field", where).get<std::string>();
  const json& terms = need(j, "terms", where);
  if (!terms.is_array()) fail(where, "\"terms\" must be an array");

  PolyInput out;
  if (field == "rational") {
    out.rational = true;
    out.rat = HomogeneousPoly<Rational>(degree);
    for (const json& t : terms)
      out.rat.add(exp_from_json(need(t, "exp", where)),
                  rational_from_string(need(t, "coeff", where).get<std::string>()));
    out.cpx = to_complex(out.rat);
  } else if (field == "complex") {
    out.cpx = HomogeneousPoly<Complex>(degree);
    for (const json& t : terms)
      out.cpx.add(exp_from_json(need(t, "exp", where)),
                  Complex(need(t, "re", where).get<double>(),
                          need(t, "im", where).get<double>()));
  } else {
    fail(where, "field must be \"rational\" or \"complex\"");
  }
  return out;
}

json poly_to_json(const HomogeneousPoly<Rational>& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms())
    terms.push_back({{"exp", {e[0], e[1], e[2]}}, {"coeff", rational_str(c)}});
  return {{"degree", p.degree()}, {"field", "rational"}, {"terms", terms}};
}

json poly_to_json(const HomogeneousPoly<Complex>& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms())
    terms.push_back(
        {{"exp", {e[0], e[1], e[2]}}, {"re", c.real()}, {"im", c.imag()}});
  return {{"degree", p.degree()}, {"field", "complex"}, {"terms", terms}};
}

PencilInput pencil_from_json(const json& j) {
  const char* where = "pencil";
  if (j.is_object() && !j.contains("d") && j.contains("pencil"))
    return pencil_from_json(j.at("pencil"));
  if (j.is_object() && !j.contains("d") && j.contains("pencils")) {
    const json& arr = j.at("pencils");
    if (!arr.is_array() || arr.empty())
      fail(where, "\"pencils\" wrapper must be a nonempty array");
    return pencil_from_json(arr.at(0));
  }
  const int d = need(j, "d", where).get<int>();
  if (d < 1 || d > 64) fail(where, "unreasonable dimension");
  const std::string field = need(j, "field", where).get<std::string>();

  PencilInput out;
  auto parse = [&](const char* key, auto reader) {
    const json& m = need(j, key, where);
    if (!m.is_array() || static_cast<int>(m.size()) != d)
      fail(where, std::string("matrix \"") + key + "\" has wrong row count");
    using Entry = decltype(reader(m[0][0]));
    std::vector<std::vector<Entry>> rows;
    for (const json& row : m) {
      if (!row.is_array() || static_cast<int>(row.size()) != d)
        fail(where, std::string("matrix \"") + key + "\" is not square");
      std::vector<Entry> r;
      for (const json& cell : row) r.push_back(reader(cell));
      rows.push_back(std::move(r));
    }
    return rows;
  };

  if (field == "rational") {
    out.rational = true;
    auto rd = [](const json& c) {
      return rational_from_string(c.get<std::string>());
    };
    out.rat = SymmetricPencil<Rational>::make(parse("A", rd), parse("B", rd),
                                              parse("C", rd));
    auto lift = [&](const std::vector<std::vector<Rational>>& m) {
      std::vector<std::vector<Complex>> r(m.size());
      for (std::size_t i = 0; i < m.size(); ++i)
        for (const Rational& v : m[i])
          r[i].emplace_back(v.convert_to<double>(), 0.0);
      return r;
    };
    out.cpx = SymmetricPencil<Complex>::make(lift(out.rat.A), lift(out.rat.B),
                                             lift(out.rat.C));
  } else if (field == "complex") {
    auto rd = [](const json& c) { return complex_from_json(c); };
    out.cpx = SymmetricPencil<Complex>::make(parse("A", rd), parse("B", rd),
                                             parse("C", rd));
  } else {
    fail(where, "field must be \"rational\" or \"complex\"");
  }
  return out;
}

json pencil_to_json(const SymmetricPencil<Rational>& p) {
  auto mat = [](const std::vector<std::vector<Rational>>& m) {
    json rows = json::array();
    for (const auto& row : m) {
      json r = json::array();
      for (const Rational& v : row) r.push_back(rational_str(v));
      rows.push_back(std::move(r));
    }
    return rows;
  };
  return {{"d", p.d},
          {"field", "rational"},
          {"A", mat(p.A)},
          {"B", mat(p.B)},
          {"C", mat(p.C)}};
}

json pencil_to_json(const SymmetricPencil<Complex>& p) {
  return {{"d", p.d},
          {"field", "complex"},
          {"A", complex_matrix_to_json(p.A)},
          {"B", complex_matrix_to_json(p.B)},
          {"C", complex_matrix_to_json(p.C)}};
}

json period_data_to_json(const CurvePeriodData& d) {
  json out{{"genus", d.g}, {"omega", complex_matrix_to_json(d.omega.omega)}};
  if (!d.omega1.empty()) out["omega1"] = complex_matrix_to_json(d.omega1);
  json pts = json::array();
  for (const PeriodPoint& p : d.points) {
    json phi = json::array(), r = json::array();
    for (const Complex& z : p.phi) phi.push_back(complex_to_json(z));
    for (const Complex& z : p.r) r.push_back(complex_to_json(z));
    pts.push_back({{"beta", p.beta}, {"phi", phi}, {"r", r}});
  }
  out["points"] = pts;
  return out;
}

CurvePeriodData period_data_from_json(const json& j) {
  const char* where = "period data";
  CurvePeriodData d;
  d.g = need(j, "genus", where).get<int>();
  if (d.g < 1 || d.g > 16) fail(where, "unreasonable genus");
  d.omega =
      PeriodMatrix::make(complex_matrix_from_json(need(j, "omega", where),
                                                  where));
  if (static_cast<int>(d.omega.omega.size()) != d.g)
    fail(where, "omega size disagrees with the genus");
  if (j.contains("omega1")) {
    d.omega1 = complex_matrix_from_json(j.at("omega1"), where);
    if (static_cast<int>(d.omega1.size()) != d.g)
      fail(where, "omega1 size disagrees with the genus");
  }
  const json& pts = need(j, "points", where);
  if (!pts.is_array()) fail(where, "\"points\" must be an array");
  for (const json& p : pts) {
    PeriodPoint pt;
    pt.beta = need(p, "beta", where).get<double>();
    for (const json& z : need(p, "phi", where))
      pt.phi.push_back(complex_from_json(z));
    for (const json& z : need(p, "r", where))
      pt.r.push_back(complex_from_json(z));
    if (static_cast<int>(pt.phi.size()) != d.g ||
        static_cast<int>(pt.r.size()) != d.g)
      fail(where, "point vectors must have genus-length components");
    d.points.push_back(std::move(pt));
  }
  return d;
}

}  // namespace hvrep
