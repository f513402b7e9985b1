// anosovlab: build representations, run diagnostics, export chart curves.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "anosovlab/report.hpp"

using namespace anosovlab;
using nlohmann::json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_check_failed = 1;
constexpr int exit_input = 2;

struct Failure {
  std::string type;
  std::string message;
};

[[noreturn]] void fail(std::string type, std::string message) {
  throw Failure{std::move(type), std::move(message)};
}

int report_error(const Failure& f) {
  const json err = {{"error", {{"type", f.type}, {"message", f.message}}}};
  std::cerr << err.dump() << "\n";
  return exit_input;
}

Tolerances parse_tolerances(const std::vector<std::string>& specs) {
  Tolerances tol;
  for (const std::string& s : specs) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) fail("InvalidInput", "--tol expects name=value, got '" + s + "'");
    const std::string name = s.substr(0, eq);
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(s.substr(eq + 1), &used);
      if (used != s.size() - eq - 1) throw std::invalid_argument(s);
    } catch (const std::exception&) {
      fail("InvalidInput", "--tol value for '" + name + "' is not a number");
    }
    if (!(value > 0) || !std::isfinite(value)) fail("InvalidInput", "--tol " + name + " must be positive");
    try {
      tol.set(name, value);
    } catch (const std::exception& e) {
      fail("InvalidInput", e.what());
    }
  }
  return tol;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("InvalidInput", "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail("InvalidInput", "'" + path + "' is not valid JSON: " + e.what());
  }
}

Representation load_rep(const std::string& path, const Tolerances& tol) {
  const json j = read_json(path);
  try {
    return representation_from_json(j, tol);
  } catch (const ConstructionError& e) {
    fail("ConstructionError", e.what());
  } catch (const Error& e) {
    fail("InvalidInput", e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) fail("InvalidInput", "cannot write '" + path + "'");
  out << text;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct BuildArgs {
  std::string kind = "sym-power";
  int N = 4;
  int genus = 2;
  double t = 0.1;
  std::string out;
};

Representation build(const BuildArgs& a, const Tolerances& tol) {
  if (a.genus != 2) fail("InvalidInput", "only genus 2 is supported");
  RepKind kind;
  try {
    kind = parse_rep_kind(a.kind);
  } catch (const Error& e) {
    fail("InvalidInput", e.what());
  }
  try {
    const Representation rho0 = fuchsian_genus2(tol);
    switch (kind) {
      case RepKind::fuchsian_base:
        if (a.N != 2) fail("InvalidInput", "the Fuchsian representation has N = 2");
        return rho0;
      case RepKind::sym_power:
        if (a.N < 2) fail("InvalidInput", "--N must be at least 2");
        return sym_power_lift(rho0, a.N, tol);
      case RepKind::direct_sum:
        if (a.N < 4) fail("InvalidInput", "direct sums need --N >= 4");
        return direct_sum(a.N == 4 ? rho0 : sym_power_lift(rho0, a.N - 2, tol), rho0, tol);
      case RepKind::bent:
        if (a.N < 2) fail("InvalidInput", "--N must be at least 2");
        return bend(sym_power_lift(rho0, a.N, tol), first_handle_commutator(rho0.presentation),
                    a.t, tol);
    }
  } catch (const ConstructionError& e) {
    fail("ConstructionError", e.what());
  } catch (const Error& e) {
    fail("InvalidInput", e.what());
  }
  fail("InvalidInput", "unknown kind");
}

int cmd_build(const BuildArgs& a, const Tolerances& tol) {
  const Representation rep = build(a, tol);
  write_text(a.out, to_json(rep).dump(2) + "\n");
  std::ostream& log = (a.out.empty() || a.out == "-") ? std::cerr : std::cout;
  log << "kind " << to_string(rep.kind) << "  dim " << rep.dim << "\n"
      << "relator residual    " << rep.relator_residual << "\n"
      << "symplectic residual " << rep.symplectic_residual << "\n"
      << "det residual        " << rep.det_residual << "\n";
  return exit_ok;
}

struct CheckArgs {
  std::string rep;
  RunConfig config;
  std::string checks;
  std::string out;
};

int cmd_check(CheckArgs a, const Tolerances& tol) {
  const Representation rep = load_rep(a.rep, tol);
  a.config.tol = tol;
  std::stringstream ss(a.checks);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) a.config.checks.push_back(item);
  }
  Report report;
  try {
    a.config.validate();
    report = run_diagnostics(rep, a.config);
  } catch (const Error& e) {
    fail("InvalidInput", e.what());
  }
  write_text(a.out, report.json.dump(2) + "\n");
  std::ostream& log = (a.out.empty() || a.out == "-") ? std::cerr : std::cout;
  for (const CheckResult& r : report.checks) {
    const char* status = r.skipped ? "skip" : (r.pass ? "pass" : "FAIL");
    log << status << "  " << r.name;
    if (!r.skipped) log << "  margin " << r.margin << (r.sense == Margin::Sense::above ? " > " : " < ") << r.tolerance;
    log << "\n";
  }
  for (const GapProfile& p : report.gap_profiles) {
    if (!p.pass) log << "failing gap profile k=" << p.k << " (slope " << p.fitted_slope << ")\n";
  }
  return report.pass ? exit_ok : exit_check_failed;
}

struct CurveArgs {
  std::string rep;
  double theta_x = 0.0;
  double theta_z = std::numbers::pi;
  int samples = 200;
  int cone_samples = 64;
  std::string out;
};

int cmd_curve(const CurveArgs& a, const Tolerances& tol) {
  const Representation rep = load_rep(a.rep, tol);
  if (rep.dim != 4 || !rep.symplectic) fail("InvalidInput", "curve needs an Sp(4, R) representation");
  if (rep.kind != RepKind::sym_power) fail("InvalidInput", "curve needs closed-form boundary flags (sym-power)");
  if (a.samples < 2) fail("InvalidInput", "--samples must be at least 2");
  const double arc = canonical_angle(a.theta_z - a.theta_x);
  if (!(arc > tol.theta_sep)) fail("InvalidInput", "theta_x and theta_z must differ");
  const FlagSource source = veronese_source(4, tol);
  const FlagSample x = source(a.theta_x);
  const FlagSample z = source(a.theta_z);
  std::string csv = "block,theta_y,q11,q22,q12,min_eigenvalue\n";
  try {
    for (int j = 0; j < a.samples; ++j) {
      const double theta_y = canonical_angle(a.theta_x + arc * j / a.samples);
      Eigen::Vector3d c = Eigen::Vector3d::Zero();
      double min_eig = 0.0;
      if (j > 0) {
        const SymForm q = boundary_chart_q(x, source(theta_y), z, tol);
        c = form_coordinates(q.matrix());
        min_eig = q.eigenvalues()(0);
      }
      csv += "curve," + fmt17(theta_y) + "," + fmt17(c(0)) + "," + fmt17(c(1)) + "," +
             fmt17(c(2)) + "," + fmt17(min_eig) + "\n";
    }
  } catch (const Error& e) {
    fail("NumericalError", e.what());
  }
  for (int j = 0; j < a.cone_samples; ++j) {
    const double phi = std::numbers::pi * j / a.cone_samples;
    Mat v(2, 1);
    v << std::cos(phi), std::sin(phi);
    const Eigen::Vector3d c = form_coordinates(v * v.transpose());
    csv += "cone," + fmt17(phi) + "," + fmt17(c(0)) + "," + fmt17(c(1)) + "," + fmt17(c(2)) + ",0\n";
  }
  write_text(a.out, csv);
  return exit_ok;
}

int cmd_report_diff(const std::string& left, const std::string& right) {
  const json a = strip_volatile(read_json(left));
  const json b = strip_volatile(read_json(right));
  if (a == b) {
    std::cout << "identical (ignoring generated_at)\n";
    return exit_ok;
  }
  std::cout << json::diff(a, b).dump(2) << "\n";
  return exit_check_failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical diagnostics for Anosov and maximal surface-group representations"};
  app.require_subcommand(1);
  std::vector<std::string> tol_specs;
  app.add_option("--tol", tol_specs, "Tolerance override name=value (repeatable); names: " +
                                         [] {
                                           std::string s;
                                           for (const auto& n : Tolerances::names()) s += (s.empty() ? "" : ", ") + n;
                                           return s;
                                         }())
      ->take_all();
  app.set_version_flag("--version", "anosovlab 1.0");
  app.footer("Exit codes: 0 all checks pass, 1 a check failed, 2 input or validation error.\n"
             "ANOSOVLAB_THREADS caps the worker count.");

  BuildArgs build_args;
  auto* build_cmd = app.add_subcommand("build", "Construct a representation and write its JSON");
  build_cmd->add_option("--kind", build_args.kind, "fuchsian | sym-power | direct-sum | bent")
      ->capture_default_str();
  build_cmd->add_option("--N", build_args.N,
                        "Dimension (sym-power, bent: lift degree; direct-sum: total, "
                        "sym-power(N-2) + fuchsian, N=4 gives rho0 + rho0)")
      ->capture_default_str();
  build_cmd->add_option("--genus", build_args.genus, "Surface genus (2 only)")->capture_default_str();
  build_cmd->add_option("--t", build_args.t, "Bending parameter")->capture_default_str();
  build_cmd->add_option("--out", build_args.out, "Output file (default stdout)");

  CheckArgs check_args;
  auto* check_cmd = app.add_subcommand("check", "Run the diagnostic suite and write a JSON report");
  check_cmd->add_option("rep", check_args.rep, "Representation JSON")->required();
  check_cmd->add_option("--radius", check_args.config.radius, "Gap-profile ball radius (1..10)")
      ->capture_default_str();
  check_cmd->add_option("--triples", check_args.config.triples, "Sampled positive triples")
      ->capture_default_str();
  check_cmd->add_option("--samples", check_args.config.samples, "Boundary samples")
      ->capture_default_str();
  check_cmd->add_option("--seed", check_args.config.seed, "Random seed")->capture_default_str();
  std::string groups;
  for (const auto& g : check_groups()) groups += (groups.empty() ? "" : ",") + g;
  check_cmd->add_option("--checks", check_args.checks, "Comma-separated subset of: " + groups);
  check_cmd->add_flag("--points", check_args.config.with_points, "Keep every gap-profile point");
  check_cmd->add_option("--out", check_args.out, "Report file (default stdout)");

  CurveArgs curve_args;
  auto* curve_cmd = app.add_subcommand(
      "curve",
      "Export q_{x,z}^y in the chart of Lagrangians transverse to z^2 as CSV.\n"
      "Columns: block,theta_y,q11,q22,q12,min_eigenvalue.  Rows with block=curve\n"
      "sample theta_y on the positive arc from theta_x toward theta_z; q11, q22, q12\n"
      "are the coordinates of q in the basis E11, E22, (E12+E21)/sqrt(2) of\n"
      "symmetric forms on x^2.  Rows with block=cone sample the unit rank-one forms\n"
      "v v^T, v = (cos a, sin a), of the cone boundary; theta_y holds a and\n"
      "min_eigenvalue is 0.  Values carry 17 significant digits.");
  curve_cmd->add_option("rep", curve_args.rep, "Representation JSON (sym-power, N = 4)")->required();
  curve_cmd->add_option("--theta-x", curve_args.theta_x, "Angle of x")->capture_default_str();
  curve_cmd->add_option("--theta-z", curve_args.theta_z, "Angle of z")->capture_default_str();
  curve_cmd->add_option("--samples", curve_args.samples, "Curve rows")->capture_default_str();
  curve_cmd->add_option("--cone-samples", curve_args.cone_samples, "Cone-boundary rows")
      ->capture_default_str();
  curve_cmd->add_option("--out", curve_args.out, "CSV file (default stdout)");

  std::string diff_left, diff_right;
  auto* diff_cmd = app.add_subcommand("report-diff", "Compare two reports ignoring generated_at");
  diff_cmd->add_option("left", diff_left, "First report")->required();
  diff_cmd->add_option("right", diff_right, "Second report")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error({"UsageError", e.what()});
  }

  try {
    const Tolerances tol = parse_tolerances(tol_specs);
    set_default_tolerances(tol);
    if (*build_cmd) return cmd_build(build_args, tol);
    if (*check_cmd) return cmd_check(check_args, tol);
    if (*curve_cmd) return cmd_curve(curve_args, tol);
    if (*diff_cmd) return cmd_report_diff(diff_left, diff_right);
  } catch (const Failure& f) {
    return report_error(f);
  } catch (const std::exception& e) {
    return report_error({"InternalError", e.what()});
  }
  return exit_input;
}
