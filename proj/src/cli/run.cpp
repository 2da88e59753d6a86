#include "indefsl/cli/run.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "indefsl/classify.hpp"
#include "indefsl/cli/document.hpp"
#include "indefsl/cli/parse.hpp"
#include "indefsl/construction.hpp"
#include "indefsl/error.hpp"
#include "indefsl/kernels.hpp"
#include "indefsl/spectrum.hpp"
#include "indefsl/weyl.hpp"

namespace indefsl::cli {

namespace {

struct Common {
  std::string q;
  std::string class_left;
  std::string class_right;
  double tol = 0.0;
  double X_max = 16384.0;
  std::string out_path;
  std::string format = "doc";
};

struct Output {
  Json doc;
  std::string csv;  // non-empty when --format csv was honoured
};

void add_common(CLI::App* sub, Common& c, double default_tol, bool needs_q) {
  c.tol = default_tol;
  auto* q = sub->add_option("--q", c.q, "potential expression in x");
  if (needs_q) q->required();
  sub->add_option("--class-left", c.class_left, "tail tag at -inf");
  sub->add_option("--class-right", c.class_right, "tail tag at +inf");
  sub->add_option("--tol", c.tol, "tolerance")->capture_default_str();
  sub->add_option("--X-max", c.X_max, "largest truncation length")->capture_default_str();
  sub->add_option("--out", c.out_path, "write the result here instead of stdout");
  sub->add_option("--format", c.format, "doc or csv")->check(CLI::IsMember({"doc", "csv"}))->capture_default_str();
}

Potential potential_of(const Common& c) {
  return parse_potential(c.q, parse_tail_class(c.class_left), parse_tail_class(c.class_right));
}

weyl::Options weyl_options(const Common& c) {
  if (!(c.tol > 0.0)) throw ConfigError("--tol must be positive");
  if (!(c.X_max >= 8.0)) throw ConfigError("--X-max must be at least 8");
  weyl::Options o;
  o.X_max = c.X_max;
  return o;
}

Json potential_inputs(const Common& c, const Potential& q) {
  return Json{{"q", c.q},
              {"parsed", q.description()},
              {"class_left", indefsl::to_string(q.left_class())},
              {"class_right", indefsl::to_string(q.right_class())}};
}

Json tolerances(const Common& c) { return Json{{"tol", c.tol}, {"X_max", c.X_max}, {"integrator_tol", ode::default_tol}}; }

std::string csv_number(double v) { return fmt::format("{:.17g}", v); }

spectrum::Rect parse_rect(const std::string& text) {
  const auto v = parse_list(text, 4, "--rect");
  return {v[0], v[1], v[2], v[3]};
}

std::vector<double> geometric_grid(double lo, double hi, int n) {
  if (!(lo > 0.0 && lo < hi) || n < 2) throw ConfigError("--axis needs 0 < lo < hi and n >= 2");
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  g.back() = hi;
  return g;
}

struct MfuncArgs {
  std::string side = "plus";
  std::string kind = "m";
  std::vector<std::string> lambdas;
  std::string grid;
};

Output run_mfunc(const Common& c, const MfuncArgs& a) {
  const Potential q = potential_of(c);
  const auto opt = weyl_options(c);
  const Side side = a.side == "plus" ? Side::plus : Side::minus;
  std::vector<std::complex<double>> lams;
  for (const auto& s : a.lambdas) lams.push_back(parse_complex(s));
  if (!a.grid.empty()) {
    const auto g = parse_list(a.grid, 6, "--lambda-grid");
    const int nre = static_cast<int>(g[2]), nim = static_cast<int>(g[5]);
    if (nre < 1 || nim < 1) throw ConfigError("--lambda-grid counts must be positive");
    for (int j = 0; j < nim; ++j)
      for (int i = 0; i < nre; ++i)
        lams.emplace_back(nre == 1 ? g[0] : g[0] + (g[1] - g[0]) * i / (nre - 1),
                          nim == 1 ? g[3] : g[3] + (g[4] - g[3]) * j / (nim - 1));
  }
  if (lams.empty()) throw ConfigError("mfunc needs --lambda or --lambda-grid");
  Json values = Json::array();
  std::string csv = "re_lambda,im_lambda,re_value,im_value,error_bound,X\n";
  for (const auto& l : lams) {
    if (l.imag() == 0.0) throw ConfigError(fmt::format("λ = {} is real; m-coefficients need Im λ ≠ 0", l.real()));
    const auto m = a.kind == "M" ? weyl::big_M(q, side, l, c.tol, opt) : weyl::m_coefficient(q, side, l, c.tol, opt);
    values.push_back(to_json(m));
    csv += fmt::format("{},{},{},{},{},{}\n", csv_number(l.real()), csv_number(l.imag()), csv_number(m.value.real()),
                       csv_number(m.value.imag()), csv_number(m.error_bound), csv_number(m.X));
  }
  Json in = potential_inputs(c, q);
  in["side"] = a.side;
  in["kind"] = a.kind;
  Json lam_in = Json::array();
  for (const auto& l : lams) lam_in.push_back(complex_json(l));
  in["lambda"] = lam_in;
  Output o{make_document("mfunc", in, tolerances(c), Json{{"values", values}}), {}};
  if (c.format == "csv") o.csv = csv;
  return o;
}

struct EigsArgs {
  std::string rect;
  std::string axis;
  bool count_only = false;
};

Output run_eigs(const Common& c, const EigsArgs& a) {
  if (c.format == "csv") throw ConfigError("csv output is only available for mfunc and scan");
  const Potential q = potential_of(c);
  spectrum::ContourOptions copt;
  copt.weyl = weyl_options(c);
  Json in = potential_inputs(c, q);
  Json outputs;
  if (!a.rect.empty() == !a.axis.empty()) throw ConfigError("eigs needs exactly one of --rect or --axis");
  if (!a.rect.empty()) {
    const auto r = parse_rect(a.rect);
    in["rect"] = Json::array({r.re_lo, r.re_hi, r.im_lo, r.im_hi});
    if (a.count_only) {
      outputs["count"] = spectrum::count_nonreal(q, r, c.tol, copt);
    } else {
      const auto set = spectrum::locate_nonreal(q, r, c.tol, copt);
      if (!spectrum::closed_under_conjugation(set, 1e-12))
        throw InvariantError("eigenvalue set is not closed under conjugation");
      outputs["count"] = set.points.size() / 2;
      outputs["eigenvalues"] = to_json(set);
    }
  } else {
    const auto v = parse_list(a.axis, 3, "--axis");
    in["axis"] = Json::array({v[0], v[1], v[2]});
    const auto roots = spectrum::axis_scan(q, v[0], v[1], static_cast<int>(v[2]), c.tol, copt.weyl);
    spectrum::EigenvalueSet set;
    set.method = spectrum::Method::axis_scan;
    set.region = {-0.0, 0.0, v[0], v[1]};
    for (double e : roots) set.points.push_back({{0.0, e}, 0.0, 1});
    for (double e : roots) set.points.push_back({{0.0, -e}, 0.0, 1});
    Json eps = Json::array();
    for (double e : roots) eps.push_back(e);
    outputs["count"] = roots.size();
    outputs["eps"] = eps;
    outputs["eigenvalues"] = to_json(set);
  }
  return {make_document("eigs", in, tolerances(c), outputs), {}};
}

Output run_classify(const Common& c) {
  if (c.format == "csv") throw ConfigError("csv output is only available for mfunc and scan");
  const Potential q = potential_of(c);
  classify::ModelOptions mo;
  mo.tol = c.tol;
  const auto rep = classify::classify(q, mo);
  return {make_document("classify", potential_inputs(c, q), Json{{"tol", c.tol}}, to_json(rep)), {}};
}

Output run_construct(const Common& c, int atoms) {
  if (c.format == "csv") throw ConfigError("csv output is only available for mfunc and scan");
  const auto m = construction::build_measure(atoms);
  const auto z = construction::find_zero_sequence(m);
  const auto cert = construction::certify_theorem(m, z);
  Json outputs{{"measure", to_json(m)}, {"zeros", to_json(z)}, {"certificate", to_json(cert)}};
  const construction::SupGrid g;
  Json tol{{"root_bisection", "machine precision"},
           {"sup_grid", Json{{"uniform_cells", g.uniform_cells}, {"log_cells", g.log_cells}, {"E_max", g.E_max}}}};
  return {make_document("construct", Json{{"atoms", atoms}}, tol, outputs), {}};
}

struct ScanArgs {
  std::string what = "re_M_axis";
  std::string axis;
  std::string rect;
  int n = 21;
};

Output run_scan(const Common& c, const ScanArgs& a) {
  const Potential q = potential_of(c);
  const auto opt = weyl_options(c);
  Json in = potential_inputs(c, q);
  in["what"] = a.what;
  Json rows = Json::array();
  std::string csv;
  if (a.what == "re_M_axis") {
    if (a.axis.empty()) throw ConfigError("scan re_M_axis needs --axis lo,hi,n");
    const auto v = parse_list(a.axis, 3, "--axis");
    in["axis"] = Json::array({v[0], v[1], v[2]});
    csv = "eps,re_M_plus\n";
    for (double e : geometric_grid(v[0], v[1], static_cast<int>(v[2]))) {
      const double r = weyl::big_M(q, Side::plus, {0.0, e}, c.tol, opt).value.real();
      rows.push_back(Json{{"eps", e}, {"re_M_plus", r}});
      csv += fmt::format("{},{}\n", csv_number(e), csv_number(r));
    }
  } else if (a.what == "abs_D") {
    if (a.rect.empty()) throw ConfigError("scan abs_D needs --rect");
    const auto r = parse_rect(a.rect);
    if (a.n < 2) throw ConfigError("--n must be at least 2");
    in["rect"] = Json::array({r.re_lo, r.re_hi, r.im_lo, r.im_hi});
    in["n"] = a.n;
    csv = "re,im,abs_D\n";
    for (int j = 0; j < a.n; ++j) {
      for (int i = 0; i < a.n; ++i) {
        const std::complex<double> l{r.re_lo + (r.re_hi - r.re_lo) * i / (a.n - 1),
                                     r.im_lo + (r.im_hi - r.im_lo) * j / (a.n - 1)};
        if (l.imag() == 0.0) throw ConfigError("abs_D grid touches the real axis");
        const double d = std::abs(spectrum::dispersion(q, l, c.tol, opt));
        rows.push_back(Json{{"re", l.real()}, {"im", l.imag()}, {"abs_D", d}});
        csv += fmt::format("{},{},{}\n", csv_number(l.real()), csv_number(l.imag()), csv_number(d));
      }
    }
  } else {
    throw ConfigError("scan --what must be re_M_axis or abs_D");
  }
  Output o{make_document("scan", in, tolerances(c), Json{{"rows", rows}}), {}};
  if (c.format == "csv") o.csv = csv;
  return o;
}

void emit(const Output& o, const Common& c, std::ostream& out) {
  const std::string text = o.csv.empty() ? serialize(o.doc) : o.csv;
  if (c.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out_path, std::ios::binary);
  if (!f) throw ConfigError("cannot open '" + c.out_path + "' for writing");
  f << text;
  if (!f) throw ConfigError("failed writing '" + c.out_path + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral toolkit for Sturm-Liouville operators with indefinite weight sgn(x)", "indefsl"};
  app.require_subcommand(1);
  std::string kernel = "auto";
  app.add_option("--kernel", kernel, "inner-loop backend")->check(CLI::IsMember({"auto", "scalar", "avx2"}));
  app.set_version_flag("--version", std::string(tool_version));

  Common cm, ce, cc, ck, cs;
  MfuncArgs ma;
  auto* mfunc = app.add_subcommand("mfunc", "Titchmarsh-Weyl coefficients m± or M± at given λ");
  add_common(mfunc, cm, 1e-8, true);
  mfunc->add_option("--side", ma.side)->check(CLI::IsMember({"plus", "minus"}))->capture_default_str();
  mfunc->add_option("--kind", ma.kind, "m (half-line) or M (indefinite)")
      ->check(CLI::IsMember({"m", "M"}))
      ->capture_default_str();
  mfunc->add_option("--lambda", ma.lambdas, "spectral parameter, e.g. 0+1i (repeatable)");
  mfunc->add_option("--lambda-grid", ma.grid, "re_lo,re_hi,n_re,im_lo,im_hi,n_im");

  EigsArgs ea;
  auto* eigs = app.add_subcommand("eigs", "non-real eigenvalues in a rectangle, or on the imaginary axis");
  add_common(eigs, ce, 1e-8, true);
  eigs->add_option("--rect", ea.rect, "re_lo,re_hi,im_lo,im_hi");
  eigs->add_option("--axis", ea.axis, "eps_lo,eps_hi,n (even potentials)");
  eigs->add_flag("--count-only", ea.count_only, "winding number only");

  auto* cls = app.add_subcommand("classify", "definitizability report");
  add_common(cls, cc, 1e-10, true);

  int atoms = 8;
  auto* cons = app.add_subcommand("construct", "measure with non-real eigenvalues accumulating at 0");
  add_common(cons, ck, 1e-10, false);
  cons->add_option("--atoms", atoms, "number of atoms K")->capture_default_str();

  ScanArgs sa;
  auto* scan = app.add_subcommand("scan", "grids of Re M+(iε) or |D(λ)| for plotting");
  add_common(scan, cs, 1e-8, true);
  scan->add_option("--what", sa.what)->check(CLI::IsMember({"re_M_axis", "abs_D"}))->capture_default_str();
  scan->add_option("--axis", sa.axis, "eps_lo,eps_hi,n (geometric)");
  scan->add_option("--rect", sa.rect, "re_lo,re_hi,im_lo,im_hi");
  scan->add_option("--n", sa.n, "grid points per direction")->capture_default_str();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : static_cast<int>(ErrorKind::config);
  }

  try {
    if (kernel == "scalar") kernels::set_backend(kernels::Backend::scalar);
    if (kernel == "avx2") kernels::set_backend(kernels::Backend::avx2);
    if (*mfunc) emit(run_mfunc(cm, ma), cm, out);
    if (*eigs) emit(run_eigs(ce, ea), ce, out);
    if (*cls) emit(run_classify(cc), cc, out);
    if (*cons) emit(run_construct(ck, atoms), ck, out);
    if (*scan) emit(run_scan(cs, sa), cs, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ErrorKind::numerical);
  }
  return 0;
}

}  // namespace indefsl::cli
