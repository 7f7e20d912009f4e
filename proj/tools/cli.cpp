#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "weingarten/analysis.hpp"
#include "weingarten/classify.hpp"
#include "weingarten/emit.hpp"
#include "weingarten/error.hpp"
#include "weingarten/params.hpp"
#include "weingarten/suite.hpp"

namespace weingarten::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw Error(ErrorCode::InvalidArgument, "bad value for " + key + ": " + text);
  return v;
}

// Parameter flags shared by trace, classify and mesh.
struct ParamFlags {
  std::optional<double> K, m, n, a, b, c;
  double theta0 = 0.0;

  void attach(CLI::App* app) {
    auto* k = app->add_option("--K", K, "constant Gauss curvature");
    auto* om = app->add_option("--m", m, "k1 = m k2 + n");
    auto* on = app->add_option("--n", n);
    auto* oa = app->add_option("--a", a, "a k1 + b k2 = c");
    auto* ob = app->add_option("--b", b);
    auto* oc = app->add_option("--c", c);
    for (CLI::Option* o : {om, on, oa, ob, oc}) o->excludes(k);
    for (CLI::Option* o : {om, on}) {
      o->excludes(oa)->excludes(ob)->excludes(oc);
    }
    app->add_option("--theta0", theta0, "starting angle");
  }

  // Throws Error for incomplete groups or degenerate and trivial relations.
  WeingartenSpec spec() const {
    if (K) return GaussConstant{*K};
    if (m || n) {
      if (!m || !n) throw Error(ErrorCode::InvalidArgument, "--m and --n go together");
      return spec_from_linear(1.0, -*m, *n);
    }
    if (a || b || c) {
      if (!a || !b || !c) throw Error(ErrorCode::InvalidArgument, "--a, --b and --c go together");
      return spec_from_linear(*a, *b, *c);
    }
    throw Error(ErrorCode::InvalidArgument, "one of --K, --m/--n or --a/--b/--c is required");
  }
};

struct FlagError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

TraceOptions load_options(const std::string& config_path) {
  std::string path = config_path;
  if (path.empty()) {
    if (const char* env = std::getenv("WEINGARTEN_CONFIG")) path = env;
  }
  if (path.empty()) return {};
  std::ifstream is(path);
  if (!is) throw FlagError("cannot read config file " + path);
  return parse_config(is);
}

void write_to(const std::string& path, std::ostream& out, auto&& writer) {
  if (path.empty() || path == "-") {
    writer(out);
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::IoError, "cannot open " + path);
  writer(os);
}

}  // namespace

TraceOptions parse_config(std::istream& source, TraceOptions base) {
  static const std::map<std::string, double TraceOptions::*> reals = {
      {"s_max", &TraceOptions::s_max},         {"z_floor", &TraceOptions::z_floor},
      {"rel_tol", &TraceOptions::rel_tol},     {"abs_tol", &TraceOptions::abs_tol},
      {"max_step", &TraceOptions::max_step},   {"event_tol", &TraceOptions::event_tol},
      {"max_turn", &TraceOptions::max_turn},   {"fixed_step", &TraceOptions::fixed_step},
  };
  std::string line;
  int lineno = 0;
  while (std::getline(source, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::InvalidArgument, "config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (auto it = reals.find(key); it != reals.end()) {
      base.*(it->second) = parse_real(key, value);
    } else if (key == "integrator") {
      if (value == "dormand_prince") {
        base.integrator = Integrator::DormandPrince;
      } else if (value == "rk4") {
        base.integrator = Integrator::FixedRK4;
      } else {
        throw Error(ErrorCode::InvalidArgument, "integrator must be dormand_prince or rk4");
      }
    } else if (key == "stop_at_symmetry") {
      if (value != "true" && value != "false") throw Error(ErrorCode::InvalidArgument, "stop_at_symmetry must be true or false");
      base.stop_at_symmetry = value == "true";
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown config key: " + key);
    }
  }
  base.validate();
  return base;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rotational Weingarten surfaces in hyperbolic space: trace, classify, export", "weingarten"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "key = value file overriding trace options (else $WEINGARTEN_CONFIG)");

  ParamFlags tp, cp, mp;
  std::string trace_format = "csv", trace_out;
  auto* trace_cmd = app.add_subcommand("trace", "trace the generating curve");
  tp.attach(trace_cmd);
  trace_cmd->add_option("--format", trace_format)->check(CLI::IsMember({"csv", "json"}));
  trace_cmd->add_option("--out", trace_out, "output file, default standard output");

  std::string classify_out;
  auto* classify_cmd = app.add_subcommand("classify", "predict the regime and check it against a trace");
  cp.attach(classify_cmd);
  classify_cmd->add_option("--out", classify_out);

  std::string figures_dir;
  auto* figures_cmd = app.add_subcommand("figures", "write the six figure SVGs");
  figures_cmd->add_option("--out-dir", figures_dir)->required();

  double t_width = 0.0;
  std::size_t cols = 0;
  std::string mesh_out;
  auto* mesh_cmd = app.add_subcommand("mesh", "sweep the curve into an OBJ surface patch");
  mp.attach(mesh_cmd);
  mesh_cmd->add_option("--t-width", t_width, "half width of the horizontal sweep")->required();
  mesh_cmd->add_option("--cols", cols, "vertices across the sweep")->required();
  mesh_cmd->add_option("--out", mesh_out)->required();

  std::string verify_dir = "acceptance_figures";
  auto* verify_cmd = app.add_subcommand("verify", "run the acceptance suite");
  verify_cmd->add_option("--figure-dir", verify_dir, "where the figure criterion writes its SVGs");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  // Validation: everything up to here is a flag error.
  TraceOptions opts;
  ParamFlags* params = trace_cmd->parsed() ? &tp : classify_cmd->parsed() ? &cp : mesh_cmd->parsed() ? &mp : nullptr;
  WeingartenSpec spec = GaussConstant{0.0};
  double theta0 = 0.0;
  try {
    opts = load_options(config_path);
    if (params) {
      spec = params->spec();
      theta0 = normalize_angle(params->theta0);
      regime_of(spec, theta0);
      const bool traceable = std::holds_alternative<GaussConstant>(spec) || std::holds_alternative<LinearPrincipal>(spec);
      if (!traceable && !classify_cmd->parsed()) {
        throw Error(ErrorCode::UnsupportedSpec, "a constant principal curvature has no generating curve to trace");
      }
    }
    if (mesh_cmd->parsed() && (cols < 2 || !(t_width > 0.0))) {
      throw Error(ErrorCode::InvalidArgument, "need --cols >= 2 and --t-width > 0");
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (trace_cmd->parsed()) {
      const GeneratingCurve curve = trace(spec, InitialConditions::with_angle(theta0), opts);
      write_to(trace_out, out, [&](std::ostream& os) {
        write_curve(curve, trace_format == "json" ? CurveFormat::JSON : CurveFormat::CSV, os);
      });
      return 0;
    }
    if (classify_cmd->parsed()) {
      const ClassificationReport report = predict(spec, theta0);
      VerificationOutcome outcome;
      if (report.regime == RegimeLabel::ConstantPC) {
        outcome.notes.push_back("constant principal curvature: surfaces listed, no curve traced");
      } else {
        outcome = verify(spec, trace(spec, InitialConditions::with_angle(theta0), opts), report);
      }
      write_to(classify_out, out, [&](std::ostream& os) { os << classification_json(spec, theta0, report, outcome); });
      for (const Mismatch& m : outcome.mismatches) {
        err << "mismatch " << m.feature << ": predicted " << m.predicted << ", measured " << m.measured << '\n';
      }
      return outcome.passed ? 0 : 1;
    }
    if (mesh_cmd->parsed()) {
      const GeneratingCurve curve = trace(spec, InitialConditions::with_angle(theta0), opts);
      const SurfaceMesh mesh = sweep_mesh(curve, t_width, cols);
      write_to(mesh_out, out, [&](std::ostream& os) { write_obj(mesh, os); });
      return 0;
    }
    if (figures_cmd->parsed()) {
      const suite::FigureRun run = suite::write_figures(figures_dir, opts);
      for (const auto& path : run.written) out << path.string() << '\n';
      for (const suite::PanelCheck& pc : run.checks) {
        if (pc.gated && !pc.outcome.passed) err << pc.figure << " " << pc.panel << ": prediction not matched\n";
      }
      return run.all_passed ? 0 : 1;
    }
    const auto results = suite::run_acceptance(verify_dir, opts);
    out << suite::format_table(results);
    bool all = true;
    for (const auto& r : results) all = all && r.passed;
    return all ? 0 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace weingarten::cli
