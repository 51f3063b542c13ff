#include <complex>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include "resurgent/resurgent.hpp"

namespace {

using namespace resurgent;
using cd = std::complex<double>;

struct CommandConfig {
  std::vector<std::string> inputs;
  std::string out;
  std::string series_path, builtin, contour_path, gamma;
  std::string t = "1,0", at, pade = "8/8", route = "auto", suite = "all", format = "json", t_range, form = "cycle",
              var = "p", kind = "xi";
  double delta = 0.1, R = 4.0, xi = 0.05, radius_hint = 1.0;
  int theta_nodes = 256, K = 20, qp = -1;
  bool inverse = false;
  std::vector<std::string> oracle_args;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::InvalidArgument, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TruncatedSeries load_series(const std::string& path) { return parse_series(read_file(path)); }

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) fail(ErrorKind::InvalidArgument, "cannot write '" + out + "'");
  f << text;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  fail(ErrorKind::InvalidArgument, "cannot parse " + what + " from '" + s + "'");
}

// "re,im" or "re".
cd parse_complex(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) return {parse_double(s, "complex number"), 0.0};
  return {parse_double(s.substr(0, comma), "real part"), parse_double(s.substr(comma + 1), "imaginary part")};
}

// "q=0.3,p=0.2", or "q1=..,q2=..,p1=..,p2=.." for several degrees of freedom.
std::pair<std::vector<cd>, std::vector<cd>> parse_point(const std::string& s, std::size_t ndof) {
  std::vector<cd> q(ndof, 0.0), p(ndof, 0.0);
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) fail(ErrorKind::InvalidArgument, "expected name=value in '" + item + "'");
    const std::string name = item.substr(0, eq);
    const double v = parse_double(item.substr(eq + 1), name);
    if (name[0] != 'q' && name[0] != 'p') fail(ErrorKind::UnknownVariable, "unknown coordinate '" + name + "'");
    std::size_t i = 0;
    if (name.size() > 1) {
      const double d = parse_double(name.substr(1), "coordinate index");
      if (d < 1 || d != static_cast<double>(static_cast<std::size_t>(d)))
        fail(ErrorKind::UnknownVariable, "bad coordinate '" + name + "'");
      i = static_cast<std::size_t>(d) - 1;
    }
    if (i >= ndof) fail(ErrorKind::UnknownVariable, "coordinate '" + name + "' exceeds ndof");
    (name[0] == 'q' ? q : p)[i] = v;
  }
  return {q, p};
}

std::pair<int, int> parse_pade(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) fail(ErrorKind::InvalidArgument, "Pade degrees must look like L/M");
  const double L = parse_double(s.substr(0, slash), "L"), M = parse_double(s.substr(slash + 1), "M");
  if (L < 0 || M < 0 || L != static_cast<int>(L) || M != static_cast<int>(M))
    fail(ErrorKind::InvalidArgument, "Pade degrees must be non-negative integers");
  return {static_cast<int>(L), static_cast<int>(M)};
}

SeriesKind parse_kind(const std::string& s) {
  if (s == "t") return SeriesKind::T;
  if (s == "xi") return SeriesKind::Xi;
  fail(ErrorKind::InvalidArgument, "kind must be t or xi");
}

std::string dump(const ordered_json& j) { return j.dump() + "\n"; }

int cmd_binary(const std::string& name, const CommandConfig& c) {
  const auto f = load_series(c.inputs.at(0));
  const auto g = load_series(c.inputs.at(1));
  TruncatedSeries h = f;
  if (name == "star") {
    if (f.kind() != g.kind()) fail(ErrorKind::KindMismatch, "inputs have different kinds");
    h = f.kind() == SeriesKind::T ? star_product(f, g) : dual_star(f, g);
  } else if (name == "dual-star") {
    if (c.route == "direct")
      h = dual_star_direct(f, g);
    else if (c.route == "conjugated")
      h = dual_star_conjugated(f, g);
    else if (c.route == "auto")
      h = dual_star(f, g);
    else
      fail(ErrorKind::InvalidArgument, "route must be auto, direct or conjugated");
  } else if (name == "bullet") {
    h = bullet_product(f, g);
  } else if (name == "hurwitz") {
    h = hurwitz_convolution(f, g);
  } else {
    h = hadamard_product(f, g);
  }
  emit(serialize(h), c.out);
  return 0;
}

int cmd_borel(const CommandConfig& c) {
  const auto f = load_series(c.inputs.at(0));
  emit(serialize(c.inverse ? inverse_borel(f) : borel_transform(f)), c.out);
  return 0;
}

int cmd_laplace(const CommandConfig& c) {
  const cd t = parse_complex(c.t);
  if (!c.builtin.empty() && c.builtin != "euler") fail(ErrorKind::InvalidArgument, "unknown builtin '" + c.builtin + "'");
  if (c.builtin.empty() == c.series_path.empty())
    fail(ErrorKind::InvalidArgument, "give exactly one of --series and --builtin");
  if (c.gamma.empty() == c.contour_path.empty())
    fail(ErrorKind::InvalidArgument, "give exactly one of --contour and --gamma");
  if (!c.gamma.empty() && c.gamma != "plus" && c.gamma != "minus")
    fail(ErrorKind::InvalidArgument, "gamma must be plus or minus");

  NumericValue v;
  if (!c.builtin.empty() && !c.gamma.empty()) {
    const auto [plus, minus] = numeric::euler_functions(t, c.delta, c.R);
    v = c.gamma == "plus" ? plus : minus;
  } else {
    const auto path = c.gamma.empty() ? numeric::parse_contour(read_file(c.contour_path))
                                      : numeric::euler_contour(c.gamma == "minus", c.delta, c.R);
    if (!c.builtin.empty()) {
      v = numeric::laplace_sum<double>([](cd xi) { return numeric::euler_borel_germ<double>(xi); }, path, t);
    } else {
      const auto g = load_series(c.series_path);
      const auto [q, p] = parse_point(c.at, g.ndof());
      v = numeric::laplace_sum_series(g, path, t, q, p);
    }
  }
  emit(dump(numeric::to_json(v)), c.out);
  return 0;
}

int cmd_stokes(const CommandConfig& c) {
  if (c.format != "json" && c.format != "csv") fail(ErrorKind::InvalidArgument, "format must be json or csv");
  std::vector<cd> ts;
  if (c.t_range.empty()) {
    ts.push_back(parse_complex(c.t));
  } else {
    std::stringstream ss(c.t_range);
    std::string lo, hi, n;
    if (!std::getline(ss, lo, ':') || !std::getline(ss, hi, ':') || !std::getline(ss, n))
      fail(ErrorKind::InvalidArgument, "t range must look like lo:hi:count");
    const double a = parse_double(lo, "range start"), b = parse_double(hi, "range end"),
                 count = parse_double(n, "sample count");
    if (count < 1 || count != static_cast<int>(count)) fail(ErrorKind::InvalidArgument, "sample count must be >= 1");
    const int m = static_cast<int>(count);
    for (int i = 0; i < m; ++i) ts.emplace_back(m == 1 ? a : a + (b - a) * i / (m - 1), 0.0);
  }
  std::ostringstream out;
  if (c.format == "csv") {
    out << "t_re,t_im,value_re,value_im,closed_re,closed_im,relative_deviation\n";
    out.precision(17);
    for (const auto& t : ts) {
      const auto r = numeric::stokes_report(t, c.delta, c.R);
      out << t.real() << ',' << t.imag() << ',' << r.difference.value.real() << ',' << r.difference.value.imag() << ','
          << r.closed_form.real() << ',' << r.closed_form.imag() << ',' << r.relative_deviation << '\n';
    }
  } else if (ts.size() == 1 && c.t_range.empty()) {
    out << dump(numeric::to_json(numeric::stokes_report(ts[0], c.delta, c.R)));
  } else {
    ordered_json arr = ordered_json::array();
    for (const auto& t : ts) {
      ordered_json rec{{"t", numeric::complex_json(t)}};
      rec.update(numeric::to_json(numeric::stokes_report(t, c.delta, c.R)));
      arr.push_back(std::move(rec));
    }
    out << dump(arr);
  }
  emit(out.str(), c.out);
  return 0;
}

int cmd_cycle(const CommandConfig& c) {
  const auto f = load_series(c.inputs.at(0));
  const auto g = load_series(c.inputs.at(1));
  const auto [q, p] = parse_point(c.at, f.ndof());
  numeric::CycleResult r;
  if (c.form == "cycle")
    r = numeric::vanishing_cycle_product(f, g, c.xi, q, p, {c.theta_nodes, c.radius_hint});
  else if (c.form == "contour")
    r = numeric::hadamard_contour_product(f, g, c.xi, q.at(0), p.at(0), c.theta_nodes, 0, c.radius_hint);
  else
    fail(ErrorKind::InvalidArgument, "form must be cycle or contour");
  emit(dump(numeric::to_json(r)), c.out);
  return 0;
}

int cmd_poles(const CommandConfig& c) {
  if (c.series_path.empty()) fail(ErrorKind::InvalidArgument, "--series is required");
  const auto f = load_series(c.series_path);
  const auto [q, p] = parse_point(c.at, f.ndof());
  const auto [L, M] = parse_pade(c.pade);
  emit(dump(numeric::to_json(numeric::borel_plane_singularities(f, q, p, L, M))), c.out);
  return 0;
}

int cmd_verify(const CommandConfig& c) {
  const auto report = verify::run_suite(c.suite);
  emit(dump(verify::to_json(report)), c.out);
  return report.passed() ? 0 : 1;
}

int cmd_oracle(const CommandConfig& c) {
  if (c.oracle_args.empty()) fail(ErrorKind::InvalidArgument, "oracle name required");
  const std::string& name = c.oracle_args[0];
  const std::vector<std::string> args(c.oracle_args.begin() + 1, c.oracle_args.end());
  auto need = [&](std::size_t n) {
    if (args.size() != n)
      fail(ErrorKind::InvalidArgument, "oracle '" + name + "' takes " + std::to_string(n) + " argument(s)");
  };
  auto rat = [&](std::size_t i) { return parse_rational(args[i]); };
  TruncatedSeries s = zero_series(SeriesKind::T, 1, Caps{0, 0});
  if (name == "euler") {
    need(0);
    s = oracles::euler_series(c.K, c.qp < 0 ? 0 : c.qp);
  } else if (name == "dual-pole") {
    need(0);
    s = oracles::dual_pole_series(c.K, c.qp < 0 ? 2 * c.K : c.qp);
  } else if (name == "elliptic-k") {
    need(0);
    s = oracles::elliptic_k_series(c.K);
  } else if (name == "hypergeometric") {
    need(2);
    s = oracles::hypergeometric_series(rat(0), rat(1), c.K);
  } else if (name == "binomial") {
    need(1);
    if (c.var != "p" && c.var != "q") fail(ErrorKind::UnknownVariable, "var must be p or q");
    s = oracles::binomial_power_series(rat(0), c.var == "p" ? p_var() : q_var(), c.qp < 0 ? c.K : c.qp,
                                       parse_kind(c.kind), c.qp < 0 ? 0 : c.K);
  } else if (name == "general-pole") {
    need(4);
    s = oracles::general_pole_star_oracle(rat(0), rat(1), rat(2), rat(3), c.K, c.qp < 0 ? 2 * c.K : c.qp);
  } else {
    fail(ErrorKind::InvalidArgument,
         "unknown oracle '" + name + "' (euler, dual-pole, elliptic-k, hypergeometric, binomial, general-pole)");
  }
  emit(serialize(s), c.out);
  return 0;
}

void report_error(std::string_view kind, const std::string& message) {
  std::cerr << ordered_json{{"error", kind}, {"message", message}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and numeric products of formal series in (t, q, p)"};
  app.require_subcommand(1);
  CommandConfig c;

  auto add_out = [&](CLI::App* sub) { sub->add_option("-o,--out", c.out, "Output file (default stdout)"); };
  for (const char* name : {"star", "dual-star", "bullet", "hurwitz", "hadamard"}) {
    auto* sub = app.add_subcommand(name, std::string(name) + " product of two series files");
    sub->add_option("f", c.inputs, "Input series files")->required()->expected(2);
    add_out(sub);
    if (std::string(name) == "dual-star")
      sub->add_option("--route", c.route, "auto, direct or conjugated")->capture_default_str();
  }
  auto* borel = app.add_subcommand("borel", "Formal Borel transform");
  borel->add_option("f", c.inputs, "Input series file")->required()->expected(1);
  borel->add_flag("--inverse", c.inverse, "Inverse transform");
  add_out(borel);

  auto* laplace = app.add_subcommand("laplace", "Laplace sum along a contour");
  laplace->add_option("--series", c.series_path, "xi-series file");
  laplace->add_option("--builtin", c.builtin, "Builtin Borel germ (euler)");
  laplace->add_option("--contour", c.contour_path, "Contour JSON file");
  laplace->add_option("--gamma", c.gamma, "Euler detour contour (plus|minus)");
  laplace->add_option("--t", c.t, "t as re,im")->capture_default_str();
  laplace->add_option("--at", c.at, "Slice point, e.g. q=0.3,p=0.2");
  laplace->add_option("--delta", c.delta, "Detour height")->capture_default_str();
  laplace->add_option("--R", c.R, "Detour end on the real axis")->capture_default_str();
  add_out(laplace);

  auto* stokes = app.add_subcommand("stokes", "E_- minus E_+ against the closed form");
  stokes->add_option("--t", c.t, "t as re,im")->capture_default_str();
  stokes->add_option("--t-range", c.t_range, "Real samples lo:hi:count");
  stokes->add_option("--format", c.format, "json or csv")->capture_default_str();
  stokes->add_option("--delta", c.delta, "Detour height")->capture_default_str();
  stokes->add_option("--R", c.R, "Detour end on the real axis")->capture_default_str();
  add_out(stokes);

  auto* cycle = app.add_subcommand("cycle-product", "Vanishing-cycle evaluation of the dual product");
  cycle->add_option("f", c.inputs, "Input xi-series files")->required()->expected(2);
  cycle->add_option("--xi", c.xi, "Positive xi")->capture_default_str();
  cycle->add_option("--at", c.at, "Centre, e.g. q=0.1,p=0.1");
  cycle->add_option("--theta-nodes", c.theta_nodes, "Angular nodes per degree of freedom")->capture_default_str();
  cycle->add_option("--radius-hint", c.radius_hint, "Flag evaluations reaching this modulus")->capture_default_str();
  cycle->add_option("--form", c.form, "cycle or contour")->capture_default_str();
  add_out(cycle);

  auto* poles = app.add_subcommand("poles", "Borel-plane singularities at a slice");
  poles->add_option("--series", c.series_path, "Series file")->required();
  poles->add_option("--at", c.at, "Slice point, e.g. q=0.3,p=0.2");
  poles->add_option("--pade", c.pade, "Pade degrees L/M")->capture_default_str();
  add_out(poles);

  auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
  verify_cmd->add_option("--suite", c.suite, "algebra, borel, numeric or all")->capture_default_str();
  add_out(verify_cmd);

  auto* oracle = app.add_subcommand("oracle", "Emit a named reference series");
  oracle->add_option("name", c.oracle_args, "Oracle name followed by its rational arguments")->required();
  oracle->add_option("--K", c.K, "t cap")->capture_default_str();
  oracle->add_option("--qp", c.qp, "qp cap");
  oracle->add_option("--var", c.var, "Variable for binomial (p|q)")->capture_default_str();
  oracle->add_option("--kind", c.kind, "Kind for binomial (t|xi)")->capture_default_str();
  add_out(oracle);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("UsageError", e.what());
    return 2;
  }

  try {
    const auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "borel") return cmd_borel(c);
    if (name == "laplace") return cmd_laplace(c);
    if (name == "stokes") return cmd_stokes(c);
    if (name == "cycle-product") return cmd_cycle(c);
    if (name == "poles") return cmd_poles(c);
    if (name == "verify") return cmd_verify(c);
    if (name == "oracle") return cmd_oracle(c);
    return cmd_binary(name, c);
  } catch (const Error& e) {
    report_error(e.name(), e.what());
    return e.is_numeric() ? 3 : 2;
  } catch (const std::exception& e) {
    report_error("InternalError", e.what());
    return 2;
  }
}
