#include "hvrep/cli.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "CLI11.hpp"
#include "hvrep/dixon.hpp"
#include "hvrep/elliptic.hpp"
#include "hvrep/errors.hpp"
#include "hvrep/field.hpp"
#include "hvrep/hessian.hpp"
#include "hvrep/homotopy.hpp"
#include "hvrep/jsonio.hpp"
#include "hvrep/normalize.hpp"
#include "hvrep/pencil.hpp"
#include "hvrep/poly.hpp"
#include "hvrep/quartic.hpp"
#include "hvrep/theta.hpp"

namespace hvrep {

namespace {

using nlohmann::json;

struct GlobalOpts {
  double tol = 1e-6;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string format = "text";  // "text" | "json"
  bool quiet = false;
};

// The canonical run report. Wall-clock timing deliberately goes to stderr
// (suppressed by --quiet) instead of into this object, so that report output
// is byte-for-byte reproducible for fixed inputs and seed.
json base_report(const std::string& subcommand, const GlobalOpts& gl) {
  return {{"subcommand", subcommand},
          {"inputs", json::object()},
          {"settings",
           {{"tol", gl.tol}, {"seed", gl.seed}, {"threads", gl.threads}}},
          {"warnings", json::array()}};
}

void note_input(json& report, const std::string& flag,
                const std::string& path) {
  report["inputs"][flag] = {{"path", path}, {"fnv1a", file_digest(path)}};
}

void emit(const json& report, const std::string& text, const GlobalOpts& gl,
          std::ostream& out) {
  if (gl.format == "json")
    out << report.dump(2) << "\n";
  else
    out << text;
}

std::string cx_str(const Complex& z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g%+.12gi", z.real(), z.imag());
  return buf;
}

json cmat_to_json(const std::vector<std::vector<Complex>>& m) {
  json rows = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const Complex& z : row) r.push_back(complex_to_json(z));
    rows.push_back(std::move(r));
  }
  return rows;
}

json normalized_curve_json(const NormalizedCurve& nc) {
  json betas = json::array(), cdiag = json::array();
  for (const Complex& b : nc.betas) betas.push_back(complex_to_json(b));
  for (const Complex& c : nc.cdiag) cdiag.push_back(complex_to_json(c));
  return {{"f", poly_to_json(nc.f)},
          {"betas", betas},
          {"cdiag", cdiag},
          {"real_betas", nc.real_betas}};
}

// ---------------------------------------------------------------- normalize

int run_normalize(const std::string& input, const std::string& outfile,
                  const GlobalOpts& gl, std::ostream& out) {
  const PolyInput pin = poly_from_json(load_json_file(input));
  const NormalizedCurve nc = normalize_input(pin.cpx);

  json report = base_report("normalize", gl);
  note_input(report, "input", input);
  report["result"] = normalized_curve_json(nc);
  if (!outfile.empty()) save_json_file(outfile, report["result"]);

  std::string text = "degree " + std::to_string(nc.f.degree()) +
                     (nc.real_betas ? ", real betas:" : ", betas:");
  for (const Complex& b : nc.betas) text += " " + cx_str(b);
  text += "\n";
  emit(report, text, gl, out);
  return 0;
}

// ------------------------------------------------------------------- counts

int run_counts(int degree, const GlobalOpts& gl, std::ostream& out) {
  const ClassCounts c = class_counts(degree);
  json report = base_report("counts", gl);
  report["result"] = {{"degree", c.d},
                      {"genus", c.g},
                      {"k", c.k},
                      {"complex", c.complex_count.str()},
                      {"real", c.real_count.str()},
                      {"real_or_one_less", c.real_or_one_less},
                      {"definite", c.definite_count.str()},
                      {"bezout_full", c.bezout_full.str()},
                      {"bezout_reduced", c.bezout_reduced.str()}};
  std::string text = "degree " + std::to_string(c.d) + ": complex " +
                     c.complex_count.str() + ", real " + c.real_count.str() +
                     (c.real_or_one_less ? " (or one less)" : "") +
                     ", definite " + c.definite_count.str() + "\nbezout " +
                     c.bezout_full.str() + " (" + c.bezout_reduced.str() +
                     " sign orbits)\n";
  emit(report, text, gl, out);
  return 0;
}

// -------------------------------------------------------------------- solve

int run_solve(const std::string& input, const std::string& outfile,
              const GlobalOpts& gl, std::ostream& out, std::ostream& err) {
  const PolyInput pin = poly_from_json(load_json_file(input));

  TrackerSettings ts;
  ts.seed = gl.seed;
  ts.threads = std::max(1, gl.threads);
  ts.cluster_tol = gl.tol;
  ts.classify_tol = gl.tol;

  const auto t0 = std::chrono::steady_clock::now();
  const SolveResult res = solve_representations(pin.cpx, ts);
  const auto t1 = std::chrono::steady_clock::now();
  if (!gl.quiet)
    err << "solve: "
        << std::chrono::duration<double>(t1 - t0).count() << " s, "
        << res.total_paths << " paths\n";

  json classes = json::array();
  int definite = 0, realnd = 0, cplx = 0;
  for (const RepresentationClass& cls : res.classes) {
    (cls.reality == Reality::definite
         ? definite
         : cls.reality == Reality::real_nondefinite ? realnd : cplx)++;
    classes.push_back({{"C", cmat_to_json(cls.C)},
                       {"residual", cls.residual},
                       {"reality", reality_name(cls.reality)},
                       {"orbit", cls.multiplicity}});
  }

  json result = {{"curve", normalized_curve_json(res.curve)},
                 {"classes", classes},
                 {"paths",
                  {{"total", res.total_paths},
                   {"converged", res.converged_paths},
                   {"diverged", res.diverged_paths},
                   {"failed", res.failed_paths}}}};

  json report = base_report("solve", gl);
  note_input(report, "input", input);
  report["result"] = result;
  if (!outfile.empty()) save_json_file(outfile, result);

  char buf[160];
  std::snprintf(buf, sizeof buf,
                "%zu classes: %d definite, %d real-nondefinite, %d complex\n"
                "paths: %ld total, %ld converged, %ld diverged, %ld failed\n",
                res.classes.size(), definite, realnd, cplx, res.total_paths,
                res.converged_paths, res.diverged_paths, res.failed_paths);
  emit(report, buf, gl, out);
  return 0;
}

// ------------------------------------------------------------------ hessian

int run_hessian(const std::string& input, const std::string& outfile,
                const GlobalOpts& gl, std::ostream& out) {
  const PolyInput pin = poly_from_json(load_json_file(input));
  const std::vector<HessianSolution> sols =
      han_representations(pin.cpx, gl.tol);

  json arr = json::array();
  std::string text;
  for (const HessianSolution& h : sols) {
    const double res = rel_poly_distance(det_expand(h.pencil), pin.cpx);
    arr.push_back({{"s", complex_to_json(h.s)},
                   {"t", complex_to_json(h.t)},
                   {"pencil", pencil_to_json(h.pencil)},
                   {"residual", res}});
    char buf[128];
    std::snprintf(buf, sizeof buf, "t = %s, residual %.3e\n",
                  cx_str(h.t).c_str(), res);
    text += buf;
  }

  json report = base_report("hessian", gl);
  note_input(report, "input", input);
  report["result"] = {{"pencils", arr}};
  if (!outfile.empty()) save_json_file(outfile, report["result"]);
  emit(report, text, gl, out);
  return 0;
}

// -------------------------------------------------------------------- dixon

int run_dixon(const std::string& curve, const std::string& contact,
              const std::string& outfile, const GlobalOpts& gl,
              std::ostream& out) {
  const PolyInput f = poly_from_json(load_json_file(curve));
  const PolyInput g = poly_from_json(load_json_file(contact));
  const DixonResult dr = dixon_complete(f.cpx, g.cpx, gl.tol);
  const Reality reality = classify_class(dr.pencil.C, gl.tol);

  json result = {{"pencil", pencil_to_json(dr.pencil)},
                 {"residual", dr.residual},
                 {"reality", reality_name(reality)}};
  json report = base_report("dixon", gl);
  note_input(report, "curve", curve);
  note_input(report, "contact", contact);
  report["result"] = result;
  if (!outfile.empty()) save_json_file(outfile, result);

  char buf[96];
  std::snprintf(buf, sizeof buf, "residual %.3e, class %s\n", dr.residual,
                reality_name(reality));
  emit(report, buf, gl, out);
  return 0;
}

// ------------------------------------------------------------------ contact

int run_contact(const std::string& pencil, const std::string& ustr,
                const std::string& outfile, const GlobalOpts& gl,
                std::ostream& out) {
  const PencilInput M = pencil_from_json(load_json_file(pencil));
  const std::vector<Complex> u = complex_list_from_string(ustr);
  if (static_cast<int>(u.size()) != M.cpx.d)
    throw ValidationError("direction u must have exactly d components");

  const HomogeneousPoly<Complex> g = contact_curve(M.cpx, u);
  const ContactResult chk = is_contact(det_expand(M.cpx), g, gl.tol);

  json result = {{"contact_curve", poly_to_json(g)},
                 {"is_contact", chk.contact}};
  json report = base_report("contact", gl);
  note_input(report, "pencil", pencil);
  report["result"] = result;
  if (!outfile.empty()) save_json_file(outfile, result);

  std::string text = std::string("contact curve of degree ") +
                     std::to_string(g.degree()) +
                     (chk.contact ? ", contact verified\n"
                                  : ", contact NOT verified\n");
  emit(report, text, gl, out);
  return 0;
}

// --------------------------------------------------------------- theta-eval

int run_theta_eval(const std::string& omega_file, const std::string& ustr,
                   const std::string& charstr, bool want_grad,
                   const GlobalOpts& gl, std::ostream& out) {
  const json jo = load_json_file(omega_file);
  const json& jm = jo.is_object() ? jo.at("omega") : jo;
  std::vector<std::vector<Complex>> m;
  for (const json& row : jm) {
    std::vector<Complex> r;
    for (const json& cell : row) r.push_back(complex_from_json(cell));
    m.push_back(std::move(r));
  }
  const PeriodMatrix pm = PeriodMatrix::make(std::move(m));
  const std::vector<Complex> u = complex_list_from_string(ustr);
  if (static_cast<int>(u.size()) != pm.g)
    throw ValidationError("u must have exactly genus components");

  ThetaCharacteristic ch;
  ch.a2.assign(pm.g, 0);
  ch.b2.assign(pm.g, 0);
  if (!charstr.empty()) {
    ch = char_from_string(charstr);
    if (static_cast<int>(ch.a2.size()) != pm.g)
      throw ValidationError("characteristic length must equal the genus");
  }

  const Complex v = theta_char(ch, u, pm, gl.tol);
  json result = {{"value", complex_to_json(v)}};
  std::string text = "theta = " + cx_str(v) + "\n";
  if (want_grad) {
    const std::vector<Complex> gr = grad_theta_char(ch, u, pm, gl.tol);
    json arr = json::array();
    for (const Complex& z : gr) arr.push_back(complex_to_json(z));
    result["grad"] = arr;
    text += "grad =";
    for (const Complex& z : gr) text += " " + cx_str(z);
    text += "\n";
  }

  json report = base_report("theta-eval", gl);
  note_input(report, "omega", omega_file);
  report["result"] = result;
  emit(report, text, gl, out);
  return 0;
}

// ----------------------------------------------------------------- hv-theta

int run_hv_theta(const std::string& curve, const std::string& periods,
                 const std::string& deltastr, const std::string& epsstr,
                 const std::string& outfile, const GlobalOpts& gl,
                 std::ostream& out) {
  const PolyInput f = poly_from_json(load_json_file(curve));
  const CurvePeriodData data =
      period_data_from_json(load_json_file(periods));
  const NormalizedCurve nc = normalize_input(f.cpx);

  const ThetaCharacteristic delta = char_from_string(deltastr);
  const ThetaCharacteristic eps = epsstr.empty()
                                      ? pick_odd_eps(data, gl.tol)
                                      : char_from_string(epsstr);

  const SymmetricPencil<Complex> pencil =
      hv_representation(nc, data, delta, eps, gl.tol);
  const double residual = rel_poly_distance(det_expand(pencil), nc.f);
  if (residual > std::max(gl.tol, 1e-10))
    throw NumericalError("theta-formula pencil does not reproduce the curve "
                         "(residual " +
                         std::to_string(residual) + ")");
  const Reality reality = classify_class(pencil.C, gl.tol);

  json result = {{"pencil", pencil_to_json(pencil)},
                 {"delta", char_to_string(delta)},
                 {"eps", char_to_string(eps)},
                 {"residual", residual},
                 {"reality", reality_name(reality)}};
  json report = base_report("hv-theta", gl);
  note_input(report, "curve", curve);
  note_input(report, "periods", periods);
  report["result"] = result;
  if (!outfile.empty()) save_json_file(outfile, result);

  char buf[128];
  std::snprintf(buf, sizeof buf, "delta [%s]: residual %.3e, class %s\n",
                char_to_string(delta).c_str(), residual,
                reality_name(reality));
  emit(report, buf, gl, out);
  return 0;
}

// --------------------------------------------------------- elliptic-periods

int run_elliptic_periods(const std::string& curve, const std::string& outfile,
                         const GlobalOpts& gl, std::ostream& out) {
  const PolyInput f = poly_from_json(load_json_file(curve));
  const CurvePeriodData data = build_period_data(f.cpx);

  json result = period_data_to_json(data);
  json report = base_report("elliptic-periods", gl);
  note_input(report, "curve", curve);
  report["result"] = result;
  if (!outfile.empty()) save_json_file(outfile, result);

  std::string text = "tau = " + cx_str(data.omega.omega[0][0]) +
                     ", omega1 = " + cx_str(data.omega1[0][0]) + "\n";
  for (const PeriodPoint& p : data.points) {
    char beta[32];
    std::snprintf(beta, sizeof beta, "%g", p.beta);
    text += std::string("beta ") + beta + ": phi " + cx_str(p.phi[0]) +
            ", r " + cx_str(p.r[0]) + "\n";
  }
  emit(report, text, gl, out);
  return 0;
}

// --------------------------------------------------------------- bitangents

int run_bitangents(const std::string& curve, const std::string& periods,
                   const std::string& outfile, const GlobalOpts& gl,
                   std::ostream& out) {
  const PolyInput f = poly_from_json(load_json_file(curve));
  if (f.cpx.degree() != 4)
    throw ValidationError("bitangent enumeration expects a quartic curve");
  const CurvePeriodData data =
      period_data_from_json(load_json_file(periods));

  const BitangentSet set = bitangents_from_periods(data);
  json lines = json::array();
  int tangent_count = 0;
  for (const LabeledBitangent& lb : set.lines) {
    const bool ok = is_bitangent(f.cpx, lb.line, gl.tol);
    tangent_count += ok ? 1 : 0;
    lines.push_back({{"pair", {lb.pair[0], lb.pair[1]}},
                     {"char", char_to_string(lb.eps)},
                     {"line", poly_to_json(lb.line)},
                     {"tangent", ok}});
  }

  json result = {{"lines", lines}, {"count", static_cast<int>(set.lines.size())}};
  json report = base_report("bitangents", gl);
  note_input(report, "curve", curve);
  note_input(report, "periods", periods);
  report["result"] = result;
  if (!outfile.empty()) save_json_file(outfile, result);

  std::string text = std::to_string(set.lines.size()) + " lines, " +
                     std::to_string(tangent_count) + " verified bitangent\n";
  emit(report, text, gl, out);
  return 0;
}

// ------------------------------------------------------------------- cayley

int run_cayley(const std::string& charstr, bool all, const GlobalOpts& gl,
               std::ostream& out) {
  if (charstr.empty() && !all)
    throw ValidationError("cayley needs --char or --all");

  auto cell_json = [](const ThetaCharacteristic& ch) {
    const CayleyCell cell = cayley_lookup(ch);
    const char* kind = cell.kind == CayleyCell::Kind::empty ? "empty"
                       : cell.kind == CayleyCell::Kind::partition
                           ? "partition"
                           : "pair";
    return json{{"char", char_to_string(ch)},
                {"kind", kind},
                {"cell", cell.str()},
                {"parity", ch.parity()}};
  };

  json report = base_report("cayley", gl);
  std::string text;
  if (all) {
    json arr = json::array();
    for (const ThetaCharacteristic& ch : enumerate_chars(3)) {
      arr.push_back(cell_json(ch));
      const CayleyCell cell = cayley_lookup(ch);
      text += char_to_string(ch) + " -> " +
              (cell.kind == CayleyCell::Kind::empty ? "(base)" : cell.str()) +
              "\n";
    }
    report["result"] = {{"cells", arr}};
  } else {
    const ThetaCharacteristic ch = char_from_string(charstr);
    report["result"] = cell_json(ch);
    const CayleyCell cell = cayley_lookup(ch);
    text = char_to_string(ch) + " -> " +
           (cell.kind == CayleyCell::Kind::empty ? "(base)" : cell.str()) +
           "\n";
  }
  emit(report, text, gl, out);
  return 0;
}

// ----------------------------------------------------------------- classify

int run_classify(const std::string& pencil, const GlobalOpts& gl,
                 std::ostream& out) {
  const PencilInput M = pencil_from_json(load_json_file(pencil));
  const int d = M.cpx.d;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const Complex want = i == j ? Complex(1.0) : Complex(0.0);
      if (std::abs(M.cpx.A[i][j] - want) > gl.tol ||
          (i != j && std::abs(M.cpx.B[i][j]) > gl.tol))
        throw ValidationError(
            "classify expects a normalized pencil (A = Id, B diagonal)");
    }

  const Reality reality = classify_class(M.cpx.C, gl.tol);
  json report = base_report("classify", gl);
  note_input(report, "pencil", pencil);
  report["result"] = {{"reality", reality_name(reality)}};
  emit(report, std::string(reality_name(reality)) + "\n", gl, out);
  return 0;
}

// ------------------------------------------------------------------- verify

int run_verify(const std::string& curve, const std::string& pencil,
               const GlobalOpts& gl, std::ostream& out) {
  const PolyInput f = poly_from_json(load_json_file(curve));
  const PencilInput M = pencil_from_json(load_json_file(pencil));

  json result;
  double residual = 0.0;
  std::string scale_text;
  if (f.rational && M.rational) {
    // Exact path: the determinant must be an exact scalar multiple.
    const HomogeneousPoly<Rational> det = det_expand(M.rat);
    Exp top{0, 0, 0};
    double best = -1.0;
    for (const auto& [e, c] : f.rat.terms()) {
      const double a = FieldTraits<Rational>::approx_abs(c);
      if (a > best) best = a, top = e;
    }
    const Rational scale = det.coeff(top) / f.rat.coeff(top);
    const HomogeneousPoly<Rational> diff = det - f.rat.scaled(scale);
    residual = diff.zero() ? 0.0 : diff.max_abs() / f.rat.max_abs();
    result["scale"] = rational_str(scale);
    result["exact"] = true;
    scale_text = rational_str(scale);
  } else {
    const HomogeneousPoly<Complex> det = det_expand(M.cpx);
    Exp top{0, 0, 0};
    double best = -1.0;
    for (const auto& [e, c] : f.cpx.terms()) {
      const double a = std::abs(c);
      if (a > best) best = a, top = e;
    }
    const Complex scale = det.coeff(top) / f.cpx.coeff(top);
    residual = (det - f.cpx.scaled(scale)).max_abs() /
               (f.cpx.max_abs() * std::max(1.0, std::abs(scale)));
    result["scale"] = complex_to_json(scale);
    result["exact"] = false;
    scale_text = cx_str(scale);
  }

  const bool ok = residual <= gl.tol;
  result["residual"] = residual;
  result["ok"] = ok;

  json report = base_report("verify", gl);
  note_input(report, "curve", curve);
  note_input(report, "pencil", pencil);
  report["result"] = result;

  char buf[160];
  std::snprintf(buf, sizeof buf, "det(pencil) = %s * f, residual %.3e: %s\n",
                scale_text.c_str(), residual, ok ? "ok" : "MISMATCH");
  emit(report, buf, gl, out);
  return ok ? 0 : 3;
}

// ----------------------------------------------------------------- plotdata

// Zero crossings of F on an n x n grid over the window, by linear
// interpolation along grid edges wherever the sampled sign changes.
std::vector<std::array<double, 2>> zero_crossings(
    const std::function<double(double, double)>& F,
    const std::array<double, 4>& win, int n) {
  const double y0 = win[0], y1 = win[1], z0 = win[2], z1 = win[3];
  std::vector<std::vector<double>> v(n + 1, std::vector<double>(n + 1));
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j)
      v[i][j] = F(y0 + (y1 - y0) * i / n, z0 + (z1 - z0) * j / n);

  std::vector<std::array<double, 2>> pts;
  auto cross = [&](double a, double b, double pa0, double pa1, double pb0,
                   double pb1) {
    if (a == 0.0) {
      pts.push_back({pa0, pa1});
      return;
    }
    if (a * b < 0.0) {
      const double t = a / (a - b);
      pts.push_back({pa0 + t * (pb0 - pa0), pa1 + t * (pb1 - pa1)});
    }
  };
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      const double y = y0 + (y1 - y0) * i / n;
      const double z = z0 + (z1 - z0) * j / n;
      if (i < n)
        cross(v[i][j], v[i + 1][j], y, z, y0 + (y1 - y0) * (i + 1) / n, z);
      if (j < n)
        cross(v[i][j], v[i][j + 1], y, z, y, z0 + (z1 - z0) * (j + 1) / n);
    }
  return pts;
}

int run_plotdata(const std::string& input, const std::string& pencil,
                 const std::string& window, int grid,
                 const std::string& outfile, const GlobalOpts& gl,
                 std::ostream& out) {
  const PolyInput f = poly_from_json(load_json_file(input));
  std::array<double, 4> win{-4.0, 4.0, -4.0, 4.0};
  if (!window.empty()) {
    const std::vector<Complex> w = complex_list_from_string(window);
    if (w.size() != 4)
      throw ValidationError("window must be \"ymin,ymax,zmin,zmax\"");
    for (int i = 0; i < 4; ++i) win[i] = w[i].real();
    if (win[0] >= win[1] || win[2] >= win[3])
      throw ValidationError("window bounds must be increasing");
  }
  if (grid < 8 || grid > 4096)
    throw ValidationError("grid size must lie in 8..4096");

  // Chart x = 1: sample the real curve f(1, y, z) = 0.
  const HomogeneousPoly<Complex>& fc = f.cpx;
  const auto curve_pts = zero_crossings(
      [&](double y, double z) {
        return fc.eval(Complex(1.0), Complex(y), Complex(z)).real();
      },
      win, grid);

  json result = {{"chart", "x=1"},
                 {"window", {win[0], win[1], win[2], win[3]}},
                 {"curve_points", json::array()}};
  for (const auto& p : curve_pts)
    result["curve_points"].push_back({p[0], p[1]});

  std::string text = std::to_string(curve_pts.size()) + " curve points";

  if (!pencil.empty()) {
    const PencilInput M = pencil_from_json(load_json_file(pencil));
    const int d = M.cpx.d;
    Eigen::MatrixXd A(d, d), B(d, d), C(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        if (std::abs(M.cpx.A[i][j].imag()) > gl.tol ||
            std::abs(M.cpx.B[i][j].imag()) > gl.tol ||
            std::abs(M.cpx.C[i][j].imag()) > gl.tol)
          throw ValidationError(
              "spectrahedron scan needs a real symmetric pencil");
        A(i, j) = M.cpx.A[i][j].real();
        B(i, j) = M.cpx.B[i][j].real();
        C(i, j) = M.cpx.C[i][j].real();
      }
    const auto boundary_pts = zero_crossings(
        [&](double y, double z) {
          Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A + y * B + z * C,
                                                            Eigen::EigenvaluesOnly);
          return es.eigenvalues().minCoeff();
        },
        win, grid);
    result["boundary_points"] = json::array();
    for (const auto& p : boundary_pts)
      result["boundary_points"].push_back({p[0], p[1]});
    text += ", " + std::to_string(boundary_pts.size()) + " boundary points";
  }
  text += "\n";

  json report = base_report("plotdata", gl);
  note_input(report, "input", input);
  if (!pencil.empty()) note_input(report, "pencil", pencil);
  report["result"] = result;
  if (!outfile.empty()) save_json_file(outfile, result);
  emit(report, text, gl, out);
  return 0;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{
      "Symmetric determinantal representations of plane curves:\n"
      "solve, classify, and verify f(x,y,z) = det(Ax + By + Cz)."};
  app.require_subcommand(1);

  GlobalOpts gl;
  app.add_option("--tol", gl.tol, "numerical tolerance")
      ->capture_default_str();
  app.add_option("--seed", gl.seed, "random seed")->capture_default_str();
  app.add_option("--threads", gl.threads, "worker threads")
      ->capture_default_str();
  app.add_option("--format", gl.format, "output format: text | json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_flag("--quiet", gl.quiet, "suppress progress output on stderr");

  std::string input, curve, contact, pencil, periods, omega_file, outfile;
  std::string ustr, charstr, deltastr, epsstr, window;
  int degree = 0, grid = 257;
  bool want_grad = false, all_cells = false;

  CLI::App* c_norm = app.add_subcommand("normalize", "normalized curve data");
  c_norm->add_option("--input", input, "polynomial JSON")->required();
  c_norm->add_option("--out", outfile, "output JSON path");

  CLI::App* c_counts =
      app.add_subcommand("counts", "class counts for a smooth curve");
  c_counts->add_option("--degree", degree, "curve degree")->required();

  CLI::App* c_solve =
      app.add_subcommand("solve", "all representation classes by homotopy");
  c_solve->add_option("--input", input, "polynomial JSON")->required();
  c_solve->add_option("--out", outfile, "classes JSON path");

  CLI::App* c_hess =
      app.add_subcommand("hessian", "cubic representations via the Hessian");
  c_hess->add_option("--input", input, "cubic polynomial JSON")->required();
  c_hess->add_option("--out", outfile, "pencils JSON path");

  CLI::App* c_dixon =
      app.add_subcommand("dixon", "representation from a contact curve");
  c_dixon->add_option("--curve", curve, "curve polynomial JSON")->required();
  c_dixon->add_option("--contact", contact, "contact curve JSON")->required();
  c_dixon->add_option("--out", outfile, "pencil JSON path");

  CLI::App* c_contact =
      app.add_subcommand("contact", "contact curve of a pencil");
  c_contact->add_option("--pencil", pencil, "pencil JSON")->required();
  c_contact->add_option("--u", ustr, "direction u1,u2,...,ud")->required();
  c_contact->add_option("--out", outfile, "polynomial JSON path");

  CLI::App* c_theta =
      app.add_subcommand("theta-eval", "evaluate a theta function");
  c_theta->add_option("--omega", omega_file, "period matrix JSON")->required();
  c_theta->add_option("--u", ustr, "argument, components re[:im]")->required();
  c_theta->add_option("--char", charstr, "characteristic a2;b2");
  c_theta->add_flag("--grad", want_grad, "also compute the gradient");

  CLI::App* c_hv = app.add_subcommand(
      "hv-theta", "representation from theta functions and period data");
  c_hv->add_option("--curve", curve, "curve polynomial JSON")->required();
  c_hv->add_option("--periods", periods, "period data JSON")->required();
  c_hv->add_option("--delta", deltastr, "even characteristic a2;b2")
      ->required();
  c_hv->add_option("--eps", epsstr, "odd characteristic a2;b2");
  c_hv->add_option("--out", outfile, "pencil JSON path");

  CLI::App* c_ell = app.add_subcommand(
      "elliptic-periods", "genus-1 period data of a cubic curve");
  c_ell->add_option("--curve", curve, "cubic polynomial JSON")->required();
  c_ell->add_option("--out", outfile, "period data JSON path");

  CLI::App* c_bit = app.add_subcommand(
      "bitangents", "the 28 bitangents from genus-3 period data");
  c_bit->add_option("--curve", curve, "quartic polynomial JSON")->required();
  c_bit->add_option("--periods", periods, "period data JSON")->required();
  c_bit->add_option("--out", outfile, "bitangents JSON path");

  CLI::App* c_cay =
      app.add_subcommand("cayley", "characteristic-to-class table queries");
  c_cay->add_option("--char", charstr, "characteristic a2;b2");
  c_cay->add_flag("--all", all_cells, "print all 64 cells");

  CLI::App* c_cls =
      app.add_subcommand("classify", "reality class of a normalized pencil");
  c_cls->add_option("--pencil", pencil, "pencil JSON")->required();

  CLI::App* c_ver =
      app.add_subcommand("verify", "check det(pencil) against a curve");
  c_ver->add_option("--curve", curve, "curve polynomial JSON")->required();
  c_ver->add_option("--pencil", pencil, "pencil JSON")->required();

  CLI::App* c_plot = app.add_subcommand(
      "plotdata", "real curve samples and spectrahedron boundary");
  c_plot->add_option("--input", input, "polynomial JSON")->required();
  c_plot->add_option("--pencil", pencil, "definite pencil JSON");
  c_plot->add_option("--window", window, "ymin,ymax,zmin,zmax");
  c_plot->add_option("--grid", grid, "samples per axis")
      ->capture_default_str();
  c_plot->add_option("--out", outfile, "points JSON path");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*c_norm) return run_normalize(input, outfile, gl, out);
    if (*c_counts) return run_counts(degree, gl, out);
    if (*c_solve) return run_solve(input, outfile, gl, out, err);
    if (*c_hess) return run_hessian(input, outfile, gl, out);
    if (*c_dixon) return run_dixon(curve, contact, outfile, gl, out);
    if (*c_contact) return run_contact(pencil, ustr, outfile, gl, out);
    if (*c_theta)
      return run_theta_eval(omega_file, ustr, charstr, want_grad, gl, out);
    if (*c_hv)
      return run_hv_theta(curve, periods, deltastr, epsstr, outfile, gl, out);
    if (*c_ell) return run_elliptic_periods(curve, outfile, gl, out);
    if (*c_bit) return run_bitangents(curve, periods, outfile, gl, out);
    if (*c_cay) return run_cayley(charstr, all_cells, gl, out);
    if (*c_cls) return run_classify(pencil, gl, out);
    if (*c_ver) return run_verify(curve, pencil, gl, out);
    if (*c_plot)
      return run_plotdata(input, pencil, window, grid, outfile, gl, out);
    err << "error: no subcommand selected\n";
    return 2;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed JSON: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace hvrep
