// qsa -- command-line front end for the superalgebra toolkit.
//
// Exit codes, uniform across subcommands: 0 all requested checks pass,
// 1 a check failed, 2 usage, parse, or I/O errors.
//
// Reports are deterministic: all sampling is counter-based from --seed
// (default 20240611), so rerunning a command with the same options
// reproduces the payload byte for byte.  Timestamps appear only in '#'
// comment header lines of CSV reports, never in the payload.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include <qsa/builtins.hpp>
#include <qsa/conditions.hpp>
#include <qsa/hyperform.hpp>
#include <qsa/io.hpp>
#include <qsa/kernels.hpp>
#include <qsa/quadrature.hpp>
#include <qsa/rng.hpp>
#include <qsa/suite.hpp>

namespace {

using ojson = nlohmann::ordered_json;

struct Options {
  std::string builtin;
  std::string algebra_path;
  std::string slices_path;
  std::string poly_path;
  std::string a0_path;
  std::string a1_path;
  bool a0_default = false;
  bool a1_default = false;
  std::string mode = "exact";
  std::string method = "monte-carlo";
  std::string center;
  std::string point;
  std::string output;
  std::vector<std::string> only;
  int n = 0;
  int m = 0;
  int points = 8;
  int threads = 1;
  long long samples = 100000;
  std::uint64_t seed = 20240611;
  double radius = 1.0;
};

std::string fmt_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

void write_report(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw qsa::ParseError("cannot open output file " + path);
  out << text;
}

void emit_json(const Options& o, const ojson& doc) { write_report(o.output, doc.dump(2) + "\n"); }

ojson elem_json(const qsa::Element<double>& e) {
  ojson a = ojson::array();
  for (int i = 0; i < e.dim(); ++i) a.push_back(e[i]);
  return a;
}

template <class T>
std::vector<T> parse_coords(const std::string& text, int want, const char* what) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    auto b = tok.find_first_not_of(" \t");
    if (b == std::string::npos) throw qsa::ParseError(std::string(what) + ": empty coordinate");
    auto e = tok.find_last_not_of(" \t");
    try {
      out.push_back(qsa::parse_scalar<T>(tok.substr(b, e - b + 1)));
    } catch (const std::exception& ex) {
      throw qsa::ParseError(std::string(what) + ": " + ex.what());
    }
  }
  if (static_cast<int>(out.size()) != want)
    throw qsa::ParseError(std::string(what) + ": expected " + std::to_string(want) +
                          " comma-separated values, got " + std::to_string(out.size()));
  return out;
}

template <class T>
qsa::StructureTable<T> load_table(const Options& o) {
  if (!o.builtin.empty()) return qsa::make_builtin<T>(o.builtin);
  if (!o.algebra_path.empty()) return qsa::read_algebra_file<T>(o.algebra_path);
  throw qsa::ParseError("one of --builtin or --algebra is required");
}

std::string algebra_label(const Options& o) {
  return o.builtin.empty() ? o.algebra_path : o.builtin;
}

// An explicit --slices file pairs with the standard odd basis order;
// builtins fall back to their bundled (possibly reordered) slicing.
template <class T>
qsa::SlicedOddBasis<T> load_slices(const Options& o, const qsa::StructureTable<T>& t) {
  if (!o.slices_path.empty())
    return {qsa::standard_odd_basis(t), qsa::read_slices_file<T>(o.slices_path, t)};
  if (!o.builtin.empty()) return qsa::default_slices(o.builtin, t);
  if (t.q() == 0) return {{}, qsa::trivial_slices<T>()};
  throw qsa::ParseError("file-based algebras with an odd part need --slices");
}

template <class T>
qsa::Superspace<T> make_space(const Options& o, const qsa::StructureTable<T>& t,
                              const qsa::SlicedOddBasis<T>& sl) {
  if (o.n < 0 || o.m < 0 || o.n + o.m == 0)
    throw qsa::ParseError("--n and --m must be nonnegative with n + m >= 1");
  if (o.m > 0 && t.q() == 0)
    throw qsa::ParseError("the algebra has no odd part; --m must be 0");
  return qsa::Superspace<T>(t, sl.slices, o.n, o.m);
}

// ---- algebra verify ------------------------------------------------------

template <class T>
int verify_impl(const Options& o) {
  auto t = load_table<T>(o);
  ojson checks = ojson::array();
  bool all = true;

  auto rep = qsa::validate(t);
  for (const auto& ax : rep.axioms) {
    ojson row;
    row["condition"] = "axiom:" + ax.axiom;
    row["pass"] = ax.pass;
    row["residuals"] = ojson::array();
    ojson diag = ojson::array();
    if (!ax.pass)
      diag.push_back(ax.detail + " (" + std::to_string(ax.violations) + " violations)");
    row["diagnostics"] = diag;
    checks.push_back(row);
    all = all && ax.pass;
  }

  if (o.a0_default || !o.a0_path.empty()) {
    std::vector<qsa::Element<T>> basis =
        o.a0_path.empty() ? qsa::standard_even_basis(t)
                          : qsa::read_basis_vectors_file<T>(o.a0_path, t.dim());
    auto a0 = qsa::verify_a0(t, basis);
    ojson row;
    row["condition"] = "square-sum";
    row["pass"] = a0.pass;
    row["residuals"] = ojson::array({a0.residual});
    row["diagnostics"] = a0.diagnostics;
    checks.push_back(row);
    all = all && a0.pass;
  }

  if (o.a1_default || !o.a1_path.empty()) {
    ojson row;
    row["condition"] = "slice-structure";
    if (t.q() == 0) {
      row["pass"] = true;
      row["residuals"] = ojson::array();
      row["diagnostics"] = ojson::array({"no odd part; nothing to check"});
    } else {
      std::vector<qsa::Element<T>> eps;
      qsa::SliceSpec<T> s;
      if (!o.a1_path.empty()) {
        eps = qsa::standard_odd_basis(t);
        s = qsa::read_slices_file<T>(o.a1_path, t);
      } else {
        if (o.builtin.empty())
          throw qsa::ParseError("--a1-default needs --builtin; use --a1 <file> otherwise");
        auto sl = qsa::default_slices(o.builtin, t);
        eps = sl.eps;
        s = sl.slices;
      }
      auto a1 = qsa::verify_a1(t, eps, s);
      row["pass"] = a1.pass;
      row["residuals"] = a1.slice_residuals;
      row["diagnostics"] = a1.diagnostics;
      all = all && a1.pass;
    }
    checks.push_back(row);
  }

  ojson doc;
  doc["schema_version"] = 1;
  doc["command"] = "algebra verify";
  doc["algebra"] = algebra_label(o);
  doc["mode"] = o.mode;
  doc["checks"] = checks;
  doc["pass"] = all;
  emit_json(o, doc);
  return all ? 0 : 1;
}

int run_algebra_verify(const Options& o) {
  return o.mode == "exact" ? verify_impl<qsa::Rational>(o) : verify_impl<double>(o);
}

// ---- algebra find-i / complexify ----------------------------------------

int run_find_i(const Options& o) {
  auto t = load_table<double>(o);
  auto res = qsa::find_sqrt_minus_one(t, o.seed);
  ojson doc;
  doc["schema_version"] = 1;
  doc["command"] = "algebra find-i";
  doc["algebra"] = algebra_label(o);
  doc["seed"] = o.seed;
  doc["found"] = res.found;
  doc["root"] = res.found ? elem_json(res.root) : ojson::array();
  doc["residual"] = res.residual;
  doc["start_index"] = res.start_index;
  doc["pass"] = res.found;
  emit_json(o, doc);
  return res.found ? 0 : 1;
}

const char* status_name(qsa::ComplexifyStatus s) {
  switch (s) {
    case qsa::ComplexifyStatus::ok:
      return "ok";
    case qsa::ComplexifyStatus::not_central:
      return "not-central";
    case qsa::ComplexifyStatus::not_a_square_root:
      return "not-a-square-root";
    case qsa::ComplexifyStatus::odd_dimension:
      return "odd-dimension";
  }
  return "unknown";
}

int run_complexify(const Options& o) {
  auto t = load_table<double>(o);
  auto res = qsa::find_sqrt_minus_one(t, o.seed);
  ojson doc;
  doc["schema_version"] = 1;
  doc["command"] = "algebra complexify";
  doc["algebra"] = algebra_label(o);
  doc["seed"] = o.seed;
  doc["found"] = res.found;
  bool pass = false;
  if (res.found) {
    doc["root"] = elem_json(res.root);
    doc["residual"] = res.residual;
    auto cx = qsa::complexify(t, res.root);
    pass = cx.status == qsa::ComplexifyStatus::ok &&
           2 * cx.pairs.size() == static_cast<std::size_t>(t.dim());
    doc["status"] = status_name(cx.status);
    if (!cx.message.empty()) doc["message"] = cx.message;
    ojson pairs = ojson::array();
    for (const auto& [b, ib] : cx.pairs)
      pairs.push_back(ojson::array({elem_json(b), elem_json(ib)}));
    doc["pairs"] = pairs;
    doc["complete"] = pass;
  } else {
    doc["status"] = "no-root-found";
  }
  doc["pass"] = pass;
  emit_json(o, doc);
  return pass ? 0 : 1;
}

// ---- kernel sample -------------------------------------------------------

int run_kernel_sample(const Options& o) {
  auto t = load_table<double>(o);
  auto sl = load_slices<double>(o, t);
  auto sp = make_space(o, t, sl);
  qsa::CounterRng rng(o.seed, 0);
  auto field = [&](const qsa::SuperPoint<double>& pt) { return qsa::omega_full_eval(pt, sp); };
  ojson rows = ojson::array();
  double worst = 0.0;
  for (int k = 0; k < o.points; ++k) {
    auto flat = qsa::annulus_point(rng, sp.N(), 0.5, 2.0);
    auto x = qsa::unflatten(sp, flat);
    auto w = qsa::omega_full_eval(x, sp);
    double fd = qsa::norm(qsa::fd_d_second_form(field, x, 1e-4, sp));
    worst = std::max(worst, fd);
    ojson coeffs = ojson::array();
    for (const auto& [omit, c] : w.coeffs) {
      ojson entry;
      entry["omit"] = omit;
      entry["coeffs"] = elem_json(c);
      coeffs.push_back(entry);
    }
    ojson row;
    row["point"] = flat;
    row["coefficients"] = coeffs;
    row["fd_residual"] = fd;
    rows.push_back(row);
  }
  ojson doc;
  doc["schema_version"] = 1;
  doc["command"] = "kernel sample";
  doc["algebra"] = algebra_label(o);
  doc["n"] = o.n;
  doc["m"] = o.m;
  doc["points"] = o.points;
  doc["seed"] = o.seed;
  // Resolved orientation of the radial normalization; the boundary pairing
  // with the outward normal then reproduces constants with weight +1.
  doc["normalization"] = "+1/(N VolB(N) r^N)";
  doc["max_fd_residual"] = worst;
  doc["rows"] = rows;
  emit_json(o, doc);
  return 0;
}

// ---- reproduce -----------------------------------------------------------

int run_reproduce(const Options& o) {
  auto t = load_table<double>(o);
  auto sl = load_slices<double>(o, t);
  auto sp = make_space(o, t, sl);
  auto f = qsa::read_polynomial_file<double>(o.poly_path, sp);
  std::vector<double> cv(sp.N(), 0.0);
  if (!o.center.empty()) cv = parse_coords<double>(o.center, sp.N(), "--center");
  auto c = qsa::unflatten(sp, cv);
  std::vector<double> pv = o.point.empty() ? cv : parse_coords<double>(o.point, sp.N(), "--point");
  auto xp = qsa::unflatten(sp, pv);
  qsa::QuadratureSpec spec;
  spec.method = o.method == "trapezoid" ? qsa::QuadMethod::circle_trapezoid
                                        : qsa::QuadMethod::monte_carlo;
  spec.samples = o.samples;
  spec.seed = o.seed;
  spec.threads = o.threads;
  qsa::BallDomain D{c, o.radius};
  auto got = qsa::reproduce(f, c, xp, D, spec, sp);
  auto want = qsa::eval_qs(f, xp, c, sp);
  double err = 0.0;
  for (int i = 0; i < t.dim(); ++i) err = std::max(err, std::abs(got.value[i] - want[i]));
  // Within three standard errors; 1e-9 absolute covers deterministic quadrature.
  bool pass = err <= std::max(3.0 * got.std_error, 1e-9);
  ojson doc;
  doc["schema_version"] = 1;
  doc["command"] = "reproduce";
  doc["algebra"] = algebra_label(o);
  doc["n"] = o.n;
  doc["m"] = o.m;
  doc["center"] = cv;
  doc["radius"] = o.radius;
  doc["point"] = pv;
  doc["method"] = o.method;
  doc["samples"] = o.samples;
  doc["seed"] = o.seed;
  doc["threads"] = o.threads;
  doc["expected"] = elem_json(want);
  doc["value"] = elem_json(got.value);
  doc["abs_error"] = err;
  doc["stderr"] = got.std_error;
  doc["pass"] = pass;
  emit_json(o, doc);
  return pass ? 0 : 1;
}

// ---- series --------------------------------------------------------------

template <class T>
int expand_impl(const Options& o) {
  auto t = load_table<T>(o);
  auto sl = load_slices<T>(o, t);
  auto sp = make_space(o, t, sl);
  auto f = qsa::read_polynomial_file<T>(o.poly_path, sp);
  std::vector<T> cv(sp.N(), T(0));
  if (!o.center.empty()) cv = parse_coords<T>(o.center, sp.N(), "--center");
  auto c = qsa::unflatten(sp, cv);
  auto rp = qsa::qs_to_real(f, c, sp);
  std::ostringstream txt;
  txt << "# real-coordinate expansion: coef <" << sp.N() << " powers> <" << t.dim()
      << " coefficients>\n";
  qsa::write_real_polynomial(txt, rp);
  write_report(o.output, txt.str());
  return 0;
}

template <class T>
int roundtrip_impl(const Options& o) {
  auto t = load_table<T>(o);
  auto sl = load_slices<T>(o, t);
  auto sp = make_space(o, t, sl);
  auto f = qsa::read_polynomial_file<T>(o.poly_path, sp);
  std::vector<T> cv(sp.N(), T(0));
  if (!o.center.empty()) cv = parse_coords<T>(o.center, sp.N(), "--center");
  auto c = qsa::unflatten(sp, cv);
  auto rp = qsa::qs_to_real(f, c, sp);
  auto back = qsa::real_to_qs(rp, c, sp);
  double max_dev = 0.0;
  auto probe = [&](const qsa::QsPoly<T>& a, const qsa::QsPoly<T>& b) {
    for (const auto& [key, ca] : a.terms) {
      auto it = b.terms.find(key);
      for (int i = 0; i < t.dim(); ++i) {
        T d = it == b.terms.end() ? ca[i] : T(ca[i] - it->second[i]);
        max_dev = std::max(max_dev, std::abs(qsa::to_double(d)));
      }
    }
  };
  probe(f, back);
  probe(back, f);
  bool pass = qsa::is_exact_v<T> ? max_dev == 0.0 : max_dev < 1e-9;
  ojson doc;
  doc["schema_version"] = 1;
  doc["command"] = "series roundtrip";
  doc["algebra"] = algebra_label(o);
  doc["n"] = o.n;
  doc["m"] = o.m;
  doc["mode"] = o.mode;
  doc["terms"] = f.terms.size();
  doc["expanded_terms"] = rp.terms.size();
  doc["max_deviation"] = max_dev;
  doc["pass"] = pass;
  emit_json(o, doc);
  return pass ? 0 : 1;
}

// ---- suite ---------------------------------------------------------------

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    out += ch;
    if (ch == '"') out += '"';
  }
  out += '"';
  return out;
}

std::string utc_now() {
  std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

int run_suite(const Options& o) {
  const auto& reg = qsa::criterion_registry();
  std::vector<std::string> ids;
  if (o.only.empty()) {
    for (const auto& [id, fn] : reg) ids.push_back(id);
  } else {
    for (const auto& want : o.only) {
      bool known = false;
      for (const auto& [id, fn] : reg) known = known || id == want;
      if (!known) {
        std::cerr << "qsa suite: unknown criterion id '" << want << "'\nknown ids:";
        for (const auto& [id, fn] : reg) std::cerr << " " << id;
        std::cerr << "\n";
        return 2;
      }
    }
    for (const auto& [id, fn] : reg)
      if (std::find(o.only.begin(), o.only.end(), id) != o.only.end()) ids.push_back(id);
  }
  std::ostringstream csv;
  csv << "# suite report\n";
  csv << "# schema_version 1\n";
  csv << "# generated " << utc_now() << "\n";
  csv << "id,expected,observed,tolerance,pass\n";
  bool all = true;
  for (const auto& id : ids) {
    auto r = qsa::run_criterion(id);
    all = all && r.pass;
    csv << r.id << ',' << csv_quote(r.expected) << ',' << csv_quote(r.observed) << ','
        << fmt_g(r.tolerance) << ',' << (r.pass ? "true" : "false") << "\n";
  }
  write_report(o.output, csv.str());
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "superalgebra toolkit: structure-table checks, kernel sampling, reproduction "
      "integrals, series expansion, and the acceptance suite"};
  app.require_subcommand(1);
  Options o;
  int rc = 0;

  auto add_source = [&o](CLI::App* cmd) {
    auto* b = cmd->add_option(
        "--builtin", o.builtin,
        "builtin algebra: complex, hyperbolic, mixed12, complex_grassmann:<g>");
    auto* f = cmd->add_option("--algebra", o.algebra_path, "structure-table file");
    b->excludes(f);
    f->excludes(b);
  };
  auto add_space = [&o](CLI::App* cmd) {
    cmd->add_option("--n", o.n, "even coordinate count")->required();
    cmd->add_option("--m", o.m, "odd coordinate count")->required();
    cmd->add_option("--slices", o.slices_path,
                    "slice-structure file (defaults to the builtin's bundled slicing)");
  };
  auto add_output = [&o](CLI::App* cmd) {
    cmd->add_option("--output", o.output, "write the report to this file instead of stdout");
  };

  auto* algebra = app.add_subcommand("algebra", "structure-table checks and complex structure");
  algebra->require_subcommand(1);

  auto* verify = algebra->add_subcommand(
      "verify", "check the algebra axioms plus optional square-sum and slice conditions");
  add_source(verify);
  verify->add_flag("--a0-default", o.a0_default, "square-sum check on the standard even basis");
  verify->add_option("--a0", o.a0_path, "even-basis file for the square-sum check");
  verify->add_flag("--a1-default", o.a1_default, "slice check with the builtin's bundled slicing");
  verify->add_option("--a1", o.a1_path,
                     "slice file for the slice check (standard odd basis order)");
  verify->add_option("--mode", o.mode, "arithmetic backend (default exact)")
      ->check(CLI::IsMember({"exact", "float"}));
  add_output(verify);
  verify->callback([&] { rc = run_algebra_verify(o); });

  auto* findi =
      algebra->add_subcommand("find-i", "Newton search for a central square root of -1");
  add_source(findi);
  findi->add_option("--seed", o.seed, "search seed (default 20240611)");
  add_output(findi);
  findi->callback([&] { rc = run_find_i(o); });

  auto* cplx = algebra->add_subcommand(
      "complexify", "pair the algebra into complex planes under a found root");
  add_source(cplx);
  cplx->add_option("--seed", o.seed, "search seed (default 20240611)");
  add_output(cplx);
  cplx->callback([&] { rc = run_complexify(o); });

  auto* kernel = app.add_subcommand("kernel", "kernel evaluation");
  kernel->require_subcommand(1);
  auto* sample = kernel->add_subcommand(
      "sample", "evaluate the kernel at random points and report closedness residuals");
  add_source(sample);
  add_space(sample);
  sample->add_option("--points", o.points, "number of sample points (default 8)");
  sample->add_option("--seed", o.seed, "sampling seed (default 20240611)");
  add_output(sample);
  sample->callback([&] { rc = run_kernel_sample(o); });

  auto* repr = app.add_subcommand("reproduce",
                                  "reproduce a polynomial's value from its boundary integral");
  add_source(repr);
  add_space(repr);
  repr->add_option("--f", o.poly_path, "polynomial file")->required();
  repr->add_option("--center", o.center,
                   "ball center, comma-separated flat coordinates (default origin)");
  repr->add_option("--radius", o.radius, "ball radius (default 1)");
  repr->add_option("--point", o.point, "evaluation point (default: the center)");
  repr->add_option("--samples", o.samples, "sample count / trapezoid nodes (default 100000)");
  repr->add_option("--seed", o.seed, "sampling seed (default 20240611)");
  repr->add_option("--method", o.method, "monte-carlo | trapezoid (default monte-carlo)")
      ->check(CLI::IsMember({"monte-carlo", "trapezoid"}));
  repr->add_option("--threads", o.threads,
                   "worker threads; results are thread-count independent");
  add_output(repr);
  repr->callback([&] { rc = run_reproduce(o); });

  auto* series = app.add_subcommand("series", "hypervariable series expansion");
  series->require_subcommand(1);
  auto* expand = series->add_subcommand("expand", "expand a polynomial into real coordinates");
  add_source(expand);
  add_space(expand);
  expand->add_option("--f", o.poly_path, "polynomial file")->required();
  expand->add_option("--center", o.center, "expansion center (default origin)");
  expand->add_option("--mode", o.mode, "arithmetic backend (default exact)")
      ->check(CLI::IsMember({"exact", "float"}));
  add_output(expand);
  expand->callback(
      [&] { rc = o.mode == "exact" ? expand_impl<qsa::Rational>(o) : expand_impl<double>(o); });

  auto* rtrip =
      series->add_subcommand("roundtrip", "expand into real coordinates, collect back, compare");
  add_source(rtrip);
  add_space(rtrip);
  rtrip->add_option("--f", o.poly_path, "polynomial file")->required();
  rtrip->add_option("--center", o.center, "expansion center (default origin)");
  rtrip->add_option("--mode", o.mode, "arithmetic backend (default exact)")
      ->check(CLI::IsMember({"exact", "float"}));
  add_output(rtrip);
  rtrip->callback([&] {
    rc = o.mode == "exact" ? roundtrip_impl<qsa::Rational>(o) : roundtrip_impl<double>(o);
  });

  auto* suite =
      app.add_subcommand("suite", "run the acceptance criteria and emit a CSV summary");
  suite->add_option("--only", o.only, "run only these criterion ids (repeatable)");
  add_output(suite);
  suite->callback([&] { rc = run_suite(o); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const qsa::ParseError& e) {
    std::cerr << "qsa: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "qsa: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
