#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hvrep/cli.hpp"
#include "hvrep/elliptic.hpp"
#include "hvrep/field.hpp"
#include "hvrep/jsonio.hpp"
#include "hvrep/pencil.hpp"
#include "hvrep/poly.hpp"
#include "hvrep/theta.hpp"

using namespace hvrep;
using nlohmann::json;

namespace {

struct RunResult {
  int code = -1;
  std::string out, err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  RunResult r;
  r.code = cli_main(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::filesystem::path tmpdir() {
  const auto dir = std::filesystem::temp_directory_path() / "hvrep_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string write_text(const std::string& name, const std::string& content) {
  const auto path = tmpdir() / name;
  std::ofstream(path) << content;
  return path.string();
}

std::string write_json(const std::string& name, const json& j) {
  const auto path = (tmpdir() / name).string();
  save_json_file(path, j);
  return path;
}

// (x - y)(x + y)(x + 2y) - x z^2, a hyperbolic cubic used throughout.
HomogeneousPoly<Rational> intro_cubic() {
  HomogeneousPoly<Rational> f(3);
  f.set({3, 0, 0}, Rational(1));
  f.set({2, 1, 0}, Rational(2));
  f.set({1, 2, 0}, Rational(-1));
  f.set({0, 3, 0}, Rational(-2));
  f.set({1, 0, 2}, Rational(-1));
  return f;
}

HomogeneousPoly<Rational> lin(long cx, long cy, long cz) {
  HomogeneousPoly<Rational> p(1);
  p.set({1, 0, 0}, Rational(cx));
  p.set({0, 1, 0}, Rational(cy));
  p.set({0, 0, 1}, Rational(cz));
  return p;
}

SymmetricPencil<Rational> pencil_from_entries(const PolyMatrix<Rational>& m) {
  int d = static_cast<int>(m.size());
  std::vector<std::vector<Rational>> A(d, std::vector<Rational>(d)), B = A,
                                     C = A;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      A[i][j] = m[i][j].coeff({1, 0, 0});
      B[i][j] = m[i][j].coeff({0, 1, 0});
      C[i][j] = m[i][j].coeff({0, 0, 1});
    }
  return SymmetricPencil<Rational>::make(A, B, C);
}

// Known exact symmetric representation of a rational quartic, plus a second
// matrix whose determinant is 4x the same quartic.
SymmetricPencil<Rational> rational_quartic_pencil() {
  return pencil_from_entries({
      {lin(50, 0, 0), lin(-25, 0, 0), lin(-26, -34, -25), lin(9, 6, 15)},
      {lin(-25, 0, 0), lin(25, 0, 0), lin(27, 18, -20), lin(-9, -6, 0)},
      {lin(-26, -34, -25), lin(27, 18, -20), lin(108, 72, 0),
       lin(-18, -12, 0)},
      {lin(9, 6, 15), lin(-9, -6, 0), lin(-18, -12, 0), lin(6, 4, 0)},
  });
}

SymmetricPencil<Rational> rational_quartic_pencil_alt() {
  return pencil_from_entries({
      {lin(25, 0, 0), lin(0, 0, 0), lin(-32, 12, 0), lin(0, 0, -60)},
      {lin(0, 0, 0), lin(25, 0, 0), lin(0, 0, 10), lin(24, 16, 0)},
      {lin(-32, 12, 0), lin(0, 0, 10), lin(6, 4, 0), lin(0, 0, 0)},
      {lin(0, 0, -60), lin(24, 16, 0), lin(0, 0, 0), lin(6, 4, 0)},
  });
}

HomogeneousPoly<Rational> rational_quartic() {
  HomogeneousPoly<Rational> f(4);
  f.set({4, 0, 0}, Rational(93081));
  f.set({3, 1, 0}, Rational(53516));
  f.set({2, 2, 0}, Rational(-73684));
  f.set({2, 0, 2}, Rational(-369150));
  f.set({1, 3, 0}, Rational(-31504));
  f.set({1, 1, 2}, Rational(-159700));
  f.set({0, 4, 0}, Rational(9216));
  f.set({0, 2, 2}, Rational(57600));
  f.set({0, 0, 4}, Rational(90000));
  return f;
}

}  // namespace

TEST_CASE("help and usage errors exit with the documented codes") {
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"solve", "--help"}).code == 0);
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"counts"}).code == 2);                       // missing --degree
  CHECK(run({"--format", "yaml", "counts", "--degree", "3"}).code == 2);

  const RunResult help = run({"--help"});
  CHECK(help.out.find("solve") != std::string::npos);
  CHECK(help.out.find("verify") != std::string::npos);
}

TEST_CASE("counts reports the quartic census in both formats") {
  const RunResult text = run({"counts", "--degree", "4"});
  CHECK(text.code == 0);
  CHECK(text.out.find("complex 36") != std::string::npos);
  CHECK(text.out.find("real 12") != std::string::npos);
  CHECK(text.out.find("definite 8") != std::string::npos);
  CHECK(text.out.find("288") != std::string::npos);

  const RunResult js = run({"--format", "json", "counts", "--degree", "4"});
  CHECK(js.code == 0);
  const json rep = json::parse(js.out);
  CHECK(rep.at("subcommand") == "counts");
  const json& res = rep.at("result");
  CHECK(res.at("complex") == "36");
  CHECK(res.at("real") == "12");
  CHECK(res.at("definite") == "8");
  CHECK(res.at("bezout_full") == "288");
  CHECK(res.at("bezout_reduced") == "36");
  CHECK(res.at("genus") == 3);
}

TEST_CASE("normalize writes canonical curve data") {
  const std::string in = write_json("cubic.json", poly_to_json(intro_cubic()));
  const std::string out = (tmpdir() / "cubic_norm.json").string();

  const RunResult r = run({"normalize", "--input", in, "--out", out});
  CHECK(r.code == 0);
  CHECK(r.out.find("real betas") != std::string::npos);

  const json nc = load_json_file(out);
  REQUIRE(nc.at("betas").size() == 3);
  const double b0 = nc.at("betas")[0][0].get<double>();
  const double b1 = nc.at("betas")[1][0].get<double>();
  const double b2 = nc.at("betas")[2][0].get<double>();
  CHECK(b0 == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(b1 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(b2 == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(nc.at("real_betas") == true);

  // Normalized f is monic in x^3 and feeds back into the loader.
  const PolyInput back = poly_from_json(nc);
  CHECK(std::abs(back.cpx.coeff({3, 0, 0}) - Complex(1.0)) < 1e-12);
}

TEST_CASE("solve finds the three cubic classes and records path statistics") {
  const std::string in = write_json("cubic.json", poly_to_json(intro_cubic()));
  const std::string out = (tmpdir() / "cubic_classes.json").string();

  const RunResult r =
      run({"--quiet", "solve", "--input", in, "--out", out});
  CHECK(r.code == 0);
  CHECK(r.out.find("3 classes") != std::string::npos);
  CHECK(r.out.find("2 definite") != std::string::npos);

  const json res = load_json_file(out);
  REQUIRE(res.at("classes").size() == 3);
  int definite = 0;
  for (const json& cls : res.at("classes")) {
    CHECK(cls.at("residual").get<double>() <= 1e-8);
    if (cls.at("reality") == "definite") ++definite;
  }
  CHECK(definite == 2);
  CHECK(res.at("paths").at("total") == 12);
  CHECK(res.at("paths").at("converged") == 12);
  CHECK(res.at("paths").at("failed") == 0);
}

TEST_CASE("verify certifies exact rational representations") {
  const std::string f =
      write_json("rq.json", poly_to_json(rational_quartic()));
  const std::string m =
      write_json("rq_m.json", pencil_to_json(rational_quartic_pencil()));
  const std::string m4 =
      write_json("rq_m4.json", pencil_to_json(rational_quartic_pencil_alt()));

  const RunResult r1 = run(
      {"--format", "json", "verify", "--curve", f, "--pencil", m});
  CHECK(r1.code == 0);
  const json rep1 = json::parse(r1.out);
  CHECK(rep1.at("result").at("ok") == true);
  CHECK(rep1.at("result").at("exact") == true);
  CHECK(rep1.at("result").at("scale") == "1/1");
  CHECK(rep1.at("result").at("residual").get<double>() == 0.0);

  const RunResult r4 = run(
      {"--format", "json", "verify", "--curve", f, "--pencil", m4});
  CHECK(r4.code == 0);
  const json rep4 = json::parse(r4.out);
  CHECK(rep4.at("result").at("scale") == "4/1");
  CHECK(rep4.at("result").at("residual").get<double>() == 0.0);

  // A corrupted entry is a mismatch: exit code 3.
  auto bad = rational_quartic_pencil();
  bad.A[0][0] = Rational(51);
  const std::string mb = write_json("rq_bad.json", pencil_to_json(bad));
  const RunResult rb = run({"verify", "--curve", f, "--pencil", mb});
  CHECK(rb.code == 3);
  CHECK(rb.out.find("MISMATCH") != std::string::npos);
}

TEST_CASE("hessian, contact, and dixon round-trip through files") {
  const std::string in = write_json("cubic.json", poly_to_json(intro_cubic()));
  const std::string hess = (tmpdir() / "hess.json").string();
  const std::string g = (tmpdir() / "contact.json").string();
  const std::string dx = (tmpdir() / "dixon.json").string();

  const RunResult rh = run({"hessian", "--input", in, "--out", hess});
  CHECK(rh.code == 0);
  const json hj = load_json_file(hess);
  REQUIRE(hj.at("pencils").size() == 3);
  for (const json& p : hj.at("pencils"))
    CHECK(p.at("residual").get<double>() <= 1e-8);

  const RunResult rc = run(
      {"contact", "--pencil", hess, "--u", "0.3,0.7,1.1", "--out", g});
  CHECK(rc.code == 0);
  CHECK(rc.out.find("contact verified") != std::string::npos);

  const RunResult rd = run(
      {"dixon", "--curve", in, "--contact", g, "--out", dx});
  CHECK(rd.code == 0);

  const RunResult rv = run({"verify", "--curve", in, "--pencil", dx});
  CHECK(rv.code == 0);
  CHECK(rv.out.find("ok") != std::string::npos);
}

TEST_CASE("elliptic periods feed the theta formula end to end") {
  const std::string in = write_json("cubic.json", poly_to_json(intro_cubic()));
  const std::string per = (tmpdir() / "periods.json").string();

  const RunResult rp = run({"elliptic-periods", "--curve", in, "--out", per});
  CHECK(rp.code == 0);
  const json pj = load_json_file(per);
  CHECK(pj.at("genus") == 1);
  REQUIRE(pj.at("points").size() == 3);

  const std::string hv = (tmpdir() / "hv.json").string();
  for (const std::string delta : {"0;0", "0;1"}) {
    const RunResult r = run({"--format", "json", "hv-theta", "--curve", in,
                             "--periods", per, "--delta", delta, "--out", hv});
    CHECK(r.code == 0);
    const json rep = json::parse(r.out);
    CHECK(rep.at("result").at("reality") == "definite");
    CHECK(rep.at("result").at("residual").get<double>() <= 1e-6);

    // The produced pencil certifies against the original curve.
    const RunResult rv = run({"verify", "--curve", in, "--pencil", hv});
    CHECK(rv.code == 0);
  }
  const RunResult rn = run({"--format", "json", "hv-theta", "--curve", in,
                            "--periods", per, "--delta", "1;0"});
  CHECK(rn.code == 0);
  CHECK(json::parse(rn.out).at("result").at("reality") == "real-nondefinite");

  // Explicitly passing the odd auxiliary characteristic changes nothing.
  const RunResult re = run({"hv-theta", "--curve", in, "--periods", per,
                            "--delta", "0;0", "--eps", "1;1"});
  CHECK(re.code == 0);

  // Corrupting the scaling data passes validation but fails numerically.
  json broken = pj;
  broken["points"][0]["r"][0][1] =
      broken["points"][0]["r"][0][1].get<double>() * 1.5;
  const std::string bad = write_json("periods_bad.json", broken);
  const RunResult rbad = run(
      {"hv-theta", "--curve", in, "--periods", bad, "--delta", "0;0"});
  CHECK(rbad.code == 3);
}

TEST_CASE("classify reads a normalized pencil and rejects others") {
  const std::string in = write_json("cubic.json", poly_to_json(intro_cubic()));
  const std::string per = (tmpdir() / "periods.json").string();
  const std::string hv = (tmpdir() / "hv.json").string();
  REQUIRE(run({"elliptic-periods", "--curve", in, "--out", per}).code == 0);
  REQUIRE(run({"hv-theta", "--curve", in, "--periods", per, "--delta", "0;0",
               "--out", hv})
              .code == 0);

  const RunResult r = run({"classify", "--pencil", hv});
  CHECK(r.code == 0);
  CHECK(r.out == "definite\n");

  const std::string m =
      write_json("rq_m.json", pencil_to_json(rational_quartic_pencil()));
  CHECK(run({"classify", "--pencil", m}).code == 2);  // A != identity
}

TEST_CASE("theta-eval matches the classical constant at tau = i") {
  const std::string om = write_json(
      "omega_i.json", json{{"omega", {{{0.0, 1.0}}}}});

  const RunResult r = run({"--format", "json", "--tol", "1e-12", "theta-eval",
                           "--omega", om, "--u", "0"});
  CHECK(r.code == 0);
  const json rep = json::parse(r.out);
  const double re = rep.at("result").at("value")[0].get<double>();
  const double im = rep.at("result").at("value")[1].get<double>();
  // theta(0; i) = pi^(1/4) / Gamma(3/4)
  CHECK(re == doctest::Approx(1.0864348112133080).epsilon(1e-10));
  CHECK(std::abs(im) < 1e-12);

  // An odd characteristic vanishes at u = 0, and its gradient does not.
  const RunResult ro =
      run({"--format", "json", "--tol", "1e-12", "theta-eval", "--omega", om,
           "--u", "0", "--char", "1;1", "--grad"});
  CHECK(ro.code == 0);
  const json orep = json::parse(ro.out);
  CHECK(std::abs(orep.at("result").at("value")[0].get<double>()) < 1e-12);
  CHECK(std::abs(orep.at("result").at("grad")[0][0].get<double>()) +
            std::abs(orep.at("result").at("grad")[0][1].get<double>()) >
        1e-3);

  // Argument length must match the genus.
  CHECK(run({"theta-eval", "--omega", om, "--u", "0,0"}).code == 2);
}

TEST_CASE("cayley answers single and full table queries") {
  const RunResult r1 = run({"cayley", "--char", "100;000"});
  CHECK(r1.code == 0);
  CHECK(r1.out.find("1238") != std::string::npos);

  const RunResult r2 = run({"--format", "json", "cayley", "--char", "100;111"});
  CHECK(r2.code == 0);
  const json rep = json::parse(r2.out);
  CHECK(rep.at("result").at("kind") == "pair");
  CHECK(rep.at("result").at("cell") == "15");
  CHECK(rep.at("result").at("parity") == 1);

  const RunResult rall = run({"cayley", "--all"});
  CHECK(rall.code == 0);
  CHECK(std::count(rall.out.begin(), rall.out.end(), '\n') == 64);

  CHECK(run({"cayley", "--char", "10;00"}).code == 2);  // genus-2 label
  CHECK(run({"cayley"}).code == 2);                     // nothing requested
}

TEST_CASE("bitangents labels 28 distinct pairs from genus-3 period data") {
  // Synthetic period data (random positive-definite imaginary part).
  Rng rng(11);
  std::vector<std::vector<double>> A(3, std::vector<double>(3));
  for (auto& row : A)
    for (double& v : row) v = rng.uniform(-1.0, 1.0);
  std::vector<std::vector<Complex>> om(3, std::vector<Complex>(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double y = (i == j) ? 0.4 : 0.0;
      for (int k = 0; k < 3; ++k) y += A[k][i] * A[k][j];
      om[i][j] = Complex(0.0, y);
    }
  CurvePeriodData data;
  data.g = 3;
  data.omega = PeriodMatrix::make(om);
  data.omega1 = {{Complex(1.0), Complex(0.0), Complex(0.0)},
                 {Complex(0.0), Complex(1.0), Complex(0.0)},
                 {Complex(0.0), Complex(0.0), Complex(1.0)}};
  const std::string per =
      write_json("per3.json", period_data_to_json(data));

  HomogeneousPoly<Rational> q(4);
  q.set({4, 0, 0}, Rational(2));
  q.set({0, 4, 0}, Rational(1));
  q.set({0, 0, 4}, Rational(1));
  q.set({2, 2, 0}, Rational(-3));
  q.set({2, 0, 2}, Rational(-3));
  q.set({0, 2, 2}, Rational(1));
  const std::string f = write_json("quartic.json", poly_to_json(q));
  const std::string out = (tmpdir() / "bitangents.json").string();

  const RunResult r = run({"--format", "json", "bitangents", "--curve", f,
                           "--periods", per, "--out", out});
  CHECK(r.code == 0);
  const json res = load_json_file(out);
  CHECK(res.at("count") == 28);
  REQUIRE(res.at("lines").size() == 28);
  std::set<std::pair<int, int>> pairs;
  for (const json& lb : res.at("lines")) {
    const int a = lb.at("pair")[0].get<int>(), b = lb.at("pair")[1].get<int>();
    CHECK(1 <= a);
    CHECK(a < b);
    CHECK(b <= 8);
    pairs.insert({a, b});
  }
  CHECK(pairs.size() == 28);

  // A cubic curve is rejected before any period work happens.
  const std::string c = write_json("cubic.json", poly_to_json(intro_cubic()));
  CHECK(run({"bitangents", "--curve", c, "--periods", per}).code == 2);
}

TEST_CASE("plotdata samples the real curve and the spectrahedron") {
  const std::string in = write_json("cubic.json", poly_to_json(intro_cubic()));
  const std::string per = (tmpdir() / "periods.json").string();
  const std::string hv = (tmpdir() / "hv.json").string();
  REQUIRE(run({"elliptic-periods", "--curve", in, "--out", per}).code == 0);
  REQUIRE(run({"hv-theta", "--curve", in, "--periods", per, "--delta", "0;0",
               "--out", hv})
              .code == 0);

  const std::string out = (tmpdir() / "plot.json").string();
  const RunResult r = run({"plotdata", "--input", in, "--pencil", hv,
                           "--grid", "129", "--out", out});
  CHECK(r.code == 0);
  const json res = load_json_file(out);
  CHECK(res.at("curve_points").size() > 50);
  CHECK(res.at("boundary_points").size() > 10);

  // Every reported curve point actually lies near the curve.
  const HomogeneousPoly<Rational> f = intro_cubic();
  int checked = 0;
  for (const json& p : res.at("curve_points")) {
    if (++checked > 25) break;
    const double y = p[0].get<double>(), z = p[1].get<double>();
    const double v = to_complex(f).eval(Complex(1.0), Complex(y), Complex(z))
                         .real();
    CHECK(std::abs(v) < 0.5);  // linear interpolation on a coarse grid
  }

  // x^4 = 0 has no real points in the x = 1 chart.
  HomogeneousPoly<Rational> x4(4);
  x4.set({4, 0, 0}, Rational(1));
  const std::string fx = write_json("x4.json", poly_to_json(x4));
  const RunResult rx =
      run({"--format", "json", "plotdata", "--input", fx, "--grid", "32"});
  CHECK(rx.code == 0);
  CHECK(json::parse(rx.out).at("result").at("curve_points").empty());

  CHECK(run({"plotdata", "--input", in, "--window", "1,0,0,1"}).code == 2);
  CHECK(run({"plotdata", "--input", in, "--grid", "4"}).code == 2);
}

TEST_CASE("json reports are byte-for-byte reproducible") {
  const std::string in = write_json("cubic.json", poly_to_json(intro_cubic()));
  const RunResult a =
      run({"--quiet", "--format", "json", "solve", "--input", in});
  const RunResult b =
      run({"--quiet", "--format", "json", "solve", "--input", in});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.err.empty());

  const json rep = json::parse(a.out);
  CHECK(rep.at("inputs").at("input").contains("fnv1a"));
  CHECK(!rep.contains("timing"));
}

TEST_CASE("malformed inputs are rejected with exit code 2") {
  const std::string broken = write_text("broken.json", "{not json");
  CHECK(run({"normalize", "--input", broken}).code == 2);
  CHECK(run({"solve", "--input", tmpdir() / "missing.json"}).code == 2);

  const std::string badfield = write_text(
      "badfield.json",
      R"({"degree":2,"field":"octonion","terms":[]})");
  CHECK(run({"normalize", "--input", badfield}).code == 2);

  // Asymmetric pencil input fails structural validation.
  const std::string asym = write_text("asym.json", R"({
    "d": 2, "field": "rational",
    "A": [["1","2"],["3","4"]],
    "B": [["0","0"],["0","0"]],
    "C": [["0","0"],["0","0"]]})");
  const std::string f = write_json("cubic.json", poly_to_json(intro_cubic()));
  CHECK(run({"verify", "--curve", f, "--pencil", asym}).code == 2);
}
