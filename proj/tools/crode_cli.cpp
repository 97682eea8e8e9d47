// crode: command-line front end.
// Exit codes: 0 success / affirmative verdict, 1 negative verdict, 2 usage or input error.

#include "crode/crode.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

using namespace crode;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

SystemFile load_system(const std::string& path, bool inexact) {
  json j;
  try {
    j = json::parse(read_input(path));
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("invalid JSON: ") + e.what());
  }
  return system_from_json(j, inexact);
}

// "0,1;2,3" or "0,1 2,3"
Pairing parse_pairing(std::string text) {
  std::replace(text.begin(), text.end(), ';', ' ');
  Pairing out;
  std::stringstream groups(text);
  std::string group;
  while (groups >> group) {
    const auto comma = group.find(',');
    if (comma == std::string::npos) throw UsageError("pairing entries look like 'x,y' separated by ';' or spaces");
    try {
      out.emplace_back(std::stoul(group.substr(0, comma)), std::stoul(group.substr(comma + 1)));
    } catch (const std::logic_error&) {
      throw UsageError("bad pairing entry '" + group + "'");
    }
  }
  return out;
}

std::vector<unsigned> parse_exponents(const std::string& text) {
  std::vector<unsigned> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      const long v = std::stol(item);
      if (v < 0) throw UsageError("exponents must be nonnegative");
      out.push_back(static_cast<unsigned>(v));
    } catch (const std::logic_error&) {
      throw UsageError("bad exponent '" + item + "'");
    }
  }
  return out;
}

std::string describe_violation(const CRViolation& v) {
  return v.relation + ": " + to_string(v.left) + " vs " + to_string(v.right) + " (residual " + to_string(v.residual) + ")";
}

json report_json(const CRReport& r) {
  json j;
  j["satisfied"] = r.satisfied;
  j["exact"] = r.exact;
  j["degree"] = r.degree;
  j["violations"] = json::array();
  for (const auto& v : r.violations)
    j["violations"].push_back({{"relation", v.relation},
                               {"left", to_string(v.left)},
                               {"right", to_string(v.right)},
                               {"residual", to_string(v.residual)}});
  return j;
}

json parameters_json(const CRParameters& p) {
  json j;
  j["a_0^0"] = to_string(p.a00);
  j["A_0^0"] = to_string(p.A00);
  for (unsigned r = 1; r <= p.degree(); ++r) {
    j["a_" + std::to_string(r) + "^0"] = to_string(p.by_degree[r - 1].first);
    j["a_" + std::to_string(r) + "^1"] = to_string(p.by_degree[r - 1].second);
  }
  return j;
}

IntegratorOptions integrator_options(double rtol, double atol, double blowup, double min_step) {
  IntegratorOptions o;
  o.rel_tol = rtol;
  o.abs_tol = atol;
  o.blowup_magnitude = blowup;
  o.min_step_ratio = min_step;
  return o;
}

struct IntegratorFlags {
  double rtol = 1e-12;
  double atol = 1e-14;
  double blowup = 1e8;
  double min_step = 1e-14;

  void add(CLI::App* cmd) {
    cmd->add_option("--rtol", rtol, "integrator relative tolerance")->capture_default_str();
    cmd->add_option("--atol", atol, "integrator absolute tolerance")->capture_default_str();
    cmd->add_option("--blowup-magnitude", blowup, "state magnitude that signals blow-up")->capture_default_str();
    cmd->add_option("--min-step-ratio", min_step, "step underflow threshold relative to |t_end|")->capture_default_str();
  }
  IntegratorOptions options() const { return integrator_options(rtol, atol, blowup, min_step); }
};

ComplexScalarODE complexify_file(const SystemFile& f) {
  if (f.system.nvars() != 2) throw UsageError("this command needs a two-variable system");
  if (!f.initial) throw UsageError("system file has no \"initial\" values");
  const CRReport cr = check_cr_2var(f.system);
  if (!cr.satisfied) throw PreconditionError("system does not satisfy the Cauchy-Riemann conditions");
  return complexify_2var(f.system, cr, (*f.initial)[0], (*f.initial)[1]);
}

json complex_ode_json(const ComplexScalarODE& ode) {
  json j;
  j["coefficients"] = json::array();
  for (const auto& c : ode.poly.coefficients()) j["coefficients"].push_back({{"re", to_string(c.re)}, {"im", to_string(c.im)}});
  j["z0"] = {{"re", to_string(ode.z0.re)}, {"im", to_string(ode.z0.im)}};
  return j;
}

// default horizon: 1, or 80% of the forward validity when that is shorter
double auto_horizon(const Solution& sol) {
  const double hi = forward_horizon(sol);
  return std::isfinite(hi) ? std::min(1.0, 0.8 * hi) : 1.0;
}

// ---- subcommands ----

struct CheckCrArgs {
  std::string input;
  std::string format = "text";
  std::string pairing;
  bool inexact = false;
  double tau = 1e-9;
};

int run_check_cr(const CheckCrArgs& a) {
  const SystemFile f = load_system(a.input, a.inexact);
  const auto& sys = f.system;
  const bool approximate = a.inexact && f.inexact;
  CRReport report;
  std::optional<Pairing> pairing = f.pairing;
  if (!a.pairing.empty()) pairing = parse_pairing(a.pairing);

  json out;
  if (sys.nvars() == 2 && !pairing) {
    report = approximate ? check_cr_2var(sys, a.tau) : check_cr_2var(sys);
    out = report_json(report);
    if (report.satisfied) {
      out["free_parameters"] = parameters_json(report.free_parameters);
      if (!approximate) out["recursion_route_agrees"] = check_cr_2var_by_recursion(sys);
    }
    if (sys.degree() <= 2) {
      const CPReport cp = check_calogero_payandeh(sys);
      out["calogero_payandeh"] = {{"satisfied", cp.satisfied}};
    }
  } else {
    if (!pairing) throw UsageError("a " + std::to_string(sys.nvars()) + "-variable system needs --pairing");
    report = check_cr_multivar(sys, *pairing);
    out = report_json(report);
  }

  if (a.format == "json") {
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << (report.satisfied ? "Cauchy-Riemann: satisfied" : "Cauchy-Riemann: violated") << '\n';
    std::cout << "degree: " << report.degree << (report.exact ? "" : " (tolerance check)") << '\n';
    if (out.contains("free_parameters"))
      for (const auto& [k, v] : out["free_parameters"].items()) std::cout << "  " << k << " = " << v.get<std::string>() << '\n';
    for (const auto& v : report.violations) std::cout << "  violation " << describe_violation(v) << '\n';
    if (out.contains("calogero_payandeh"))
      std::cout << "Calogero-Payandeh conditions: "
                << (out["calogero_payandeh"]["satisfied"].get<bool>() ? "satisfied" : "violated") << '\n';
  }
  return report.satisfied ? kOk : kNegative;
}

struct SolveArgs {
  std::string input;
  std::size_t samples = 11;
  double horizon = 0.0;  // 0 = automatic
  std::string out;
  std::string csv;
};

int run_solve(const SolveArgs& a) {
  const SystemFile f = load_system(a.input, false);
  const ComplexScalarODE ode = complexify_file(f);
  ImplicitOptions iopts;
  if (a.horizon > 0) iopts.t_max = a.horizon;
  const Solution sol = solve(ode, iopts);
  const double horizon = a.horizon > 0 ? a.horizon : auto_horizon(sol);

  json j;
  j["complex_ode"] = complex_ode_json(ode);
  j["solution"] = solution_to_json(sol);
  std::vector<double> times = uniform_samples(horizon, std::max<std::size_t>(a.samples, 2));
  std::vector<std::vector<double>> rows;
  j["samples"] = json::array();
  for (double t : times) {
    Complex z;
    try {
      z = eval_solution(sol, t);
    } catch (const ValidityError&) {
      break;
    }
    rows.push_back({z.real(), z.imag()});
    j["samples"].push_back({{"t", t}, {f.system.names[0], z.real()}, {f.system.names[1], z.imag()}});
  }
  times.resize(rows.size());
  write_output(a.out, j.dump(2) + "\n");
  if (!a.csv.empty()) {
    std::ostringstream csv;
    write_csv(csv, f.system.names, times, rows);
    write_output(a.csv, csv.str());
  }
  return kOk;
}

struct RealizeArgs {
  std::string input;
  std::string dot;
};

int run_realize(const RealizeArgs& a) {
  const SystemFile f = load_system(a.input, false);
  const KineticityReport k = check_kinetic(f.system);
  if (!k.kinetic) {
    std::cout << "not kinetic; negative cross-effects:\n";
    for (const auto& o : k.offenders)
      std::cout << "  equation " << f.system.names[o.equation] << ": " << to_string(o.coefficient) << " * "
                << detail::monomial_name(o.exponents, f.system.names) << '\n';
    return kNegative;
  }
  const ReactionNetwork net = canonic_realization(f.system, k);
  const auto stats = network_statistics(net);
  std::cout << "# canonic realization: " << stats.species << " species, " << stats.complexes << " complexes, "
            << stats.reactions << " reactions\n"
            << format_reactions(net);
  if (!a.dot.empty()) write_output(a.dot, emit_fhj_dot(net));
  return kOk;
}

struct DeriveArgs {
  std::string input;
  std::string out;
};

int run_derive(const DeriveArgs& a) {
  const ReactionNetwork net = parse_reactions(read_input(a.input));
  write_output(a.out, system_to_json(induced_ode(net)).dump(2) + "\n");
  return kOk;
}

struct VerifyArgs {
  std::string input;
  std::string solution;
  double horizon = 0.0;
  double tol = 1e-6;
  std::size_t samples = 200;
  IntegratorFlags integ;
};

int run_verify(const VerifyArgs& a) {
  const SystemFile f = load_system(a.input, false);
  if (f.system.nvars() != 2) throw UsageError("verify needs a two-variable system");
  if (!f.initial) throw UsageError("system file has no \"initial\" values");
  ImplicitOptions iopts;
  if (a.horizon > 0) iopts.t_max = a.horizon;
  std::optional<Solution> loaded;
  if (!a.solution.empty()) {
    const json j = json::parse(read_input(a.solution));
    loaded.emplace(explicit_solution_from_json(j.contains("solution") ? j["solution"] : j));
  }
  const Solution sol = loaded ? *loaded : solve(complexify_file(f), iopts);
  const double horizon = a.horizon > 0 ? a.horizon : auto_horizon(sol);
  const std::vector<double> init{to_double((*f.initial)[0]), to_double((*f.initial)[1])};
  const auto r = verify_solution(sol, f.system, init, horizon, a.tol, a.samples, a.integ.options());
  std::cout << "horizon: " << format_double(r.horizon) << '\n'
            << "samples: " << r.deviations.size() << '\n'
            << "integrator: " << status_name(r.integrator_status) << '\n'
            << "max deviation: " << format_double(r.max_deviation) << '\n'
            << "tolerance: " << format_double(r.tolerance) << '\n'
            << (r.passed ? "PASS" : "FAIL") << '\n';
  return r.passed ? kOk : kNegative;
}

struct PerturbArgs {
  std::string input;
  std::vector<std::string> eps{"1", "0.5", "0.25", "0.125", "0"};
  std::string monomial;
  std::size_t equation = 0;
  std::string coeff = "1";
  double horizon = 1.0;
  std::size_t samples = 200;
  std::string out_dir = ".";
  IntegratorFlags integ;
};

int run_perturb(const PerturbArgs& a) {
  const SystemFile f = load_system(a.input, false);
  if (!f.initial) throw UsageError("system file has no \"initial\" values");
  if (a.monomial.empty()) throw UsageError("--monomial is required");
  Perturbation p{parse_exponents(a.monomial), a.equation, parse_rational(a.coeff)};
  std::vector<Rational> eps;
  for (const auto& e : a.eps) eps.push_back(parse_rational(e));
  const auto curves = perturbation_experiment(f.system, *f.initial, p, eps, a.horizon, a.samples, a.integ.options());
  std::filesystem::create_directories(a.out_dir);
  for (std::size_t k = 0; k < curves.size(); ++k) {
    const auto& c = curves[k];
    const auto path = std::filesystem::path(a.out_dir) / ("diff_eps_" + std::to_string(k) + ".csv");
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write '" + path.string() + "'");
    write_difference_csv(out, c, f.system.names);
    std::cout << "eps=" << to_string(c.eps) << " sup=" << format_double(c.sup_norm) << " status=" << status_name(c.status);
    if (c.status == TrajectoryStatus::BlowUp) std::cout << " t*=" << format_double(c.blowup_time);
    std::cout << " file=" << path.string() << '\n';
  }
  return kOk;
}

struct ReduceArgs {
  std::string input;
  std::string pairing;
  double horizon = 0.5;
  IntegratorFlags integ;
};

int run_reduce(const ReduceArgs& a) {
  const SystemFile f = load_system(a.input, false);
  Pairing pairing = f.pairing.value_or(Pairing{});
  if (!a.pairing.empty()) pairing = parse_pairing(a.pairing);
  if (f.system.nvars() != 4 || pairing.size() != 2) throw UsageError("reduce needs a 4-variable system with a pairing");
  const CRReport cr = check_cr_multivar(f.system, pairing);
  if (!cr.satisfied) {
    std::cout << "Cauchy-Riemann: violated\n";
    for (const auto& v : cr.violations) std::cout << "  violation " << describe_violation(v) << '\n';
    return kNegative;
  }
  const std::vector<Rational> init = f.initial.value_or(std::vector<Rational>(4, Rational(0)));
  const ComplexODESystem ode = complexify_multivar(f.system, cr, pairing, init);
  const HomogeneousPair pair = homogeneous_pair_from(ode);
  std::optional<FirstIntegral> phi;
  try {
    phi.emplace(reduce_homogeneous(pair));
  } catch (const UnsupportedDegeneracy& e) {
    std::cout << "unsupported: " << e.what() << '\n';
    return kNegative;
  }
  auto c = [](Complex z) { return format_double(z.real()) + (z.imag() < 0 ? " - " : " + ") + format_double(std::fabs(z.imag())) + "i"; };
  std::cout << "z1' = (" << c(pair.a) << ") z1^2 + (" << c(pair.b) << ") z1 z2 + (" << c(pair.c) << ") z2^2\n"
            << "z2' = (" << c(pair.A) << ") z1^2 + (" << c(pair.B) << ") z1 z2 + (" << c(pair.C) << ") z2^2\n";
  if (phi->kind() == FirstIntegral::Kind::Ratio) {
    std::cout << "first integral: z2/z1 is constant\n";
  } else {
    std::cout << "first integral: Phi = Q(U) + sum_j gamma_j log(U - u_j) - log z1,  U = z2/z1\n";
    for (std::size_t j = 0; j < phi->roots().size(); ++j)
      std::cout << "  u_" << j + 1 << " = " << c(phi->roots()[j]) << ",  gamma_" << j + 1 << " = " << c(phi->weights()[j]) << '\n';
    for (std::size_t k = 1; k < phi->polynomial_part().size(); ++k)
      std::cout << "  Q: U^" << k << " coefficient " << c(phi->polynomial_part()[k]) << '\n';
  }
  if (f.initial) {
    const Trajectory traj = integrate(ode, a.horizon, a.integ.options());
    const auto& s0 = traj.states.front();
    FirstIntegralTracker track(*phi, {s0[0], s0[1]}, {s0[2], s0[3]});
    double drift = 0.0;
    for (const auto& s : traj.states) drift = std::max(drift, std::abs(track({s[0], s[1]}, {s[2], s[3]})));
    std::cout << "drift along integrated trajectory on [0, " << format_double(traj.final_time()) << "]: " << format_double(drift)
              << " (" << status_name(traj.status) << ")\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cauchy-Riemann polynomial ODE toolkit"};
  app.require_subcommand(1);

  CheckCrArgs cr;
  auto* c_cr = app.add_subcommand("check-cr", "decide the Cauchy-Riemann structure of a system");
  c_cr->add_option("input", cr.input, "system file ('-' for stdin)")->required();
  c_cr->add_option("--format", cr.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  c_cr->add_option("--pairing", cr.pairing, "complex pairing for 2n variables, e.g. '0,1;2,3'");
  c_cr->add_flag("--inexact", cr.inexact, "accept float coefficients and use a tolerance check");
  c_cr->add_option("--tau", cr.tau, "relative tolerance for --inexact")->capture_default_str();

  SolveArgs sv;
  auto* c_solve = app.add_subcommand("solve", "closed-form solution of a Cauchy-Riemann system");
  c_solve->add_option("input", sv.input, "system file with initial values")->required();
  c_solve->add_option("--t-samples", sv.samples, "number of sample times")->capture_default_str();
  c_solve->add_option("--horizon", sv.horizon, "sample interval [0, horizon] (default: automatic)");
  c_solve->add_option("--out", sv.out, "solution JSON file (default stdout)");
  c_solve->add_option("--csv", sv.csv, "sampled x, y as CSV");

  RealizeArgs rz;
  auto* c_real = app.add_subcommand("realize", "canonic reaction network of a kinetic system");
  c_real->add_option("input", rz.input, "system file")->required();
  c_real->add_option("--dot", rz.dot, "write the FHJ graph in DOT format");

  DeriveArgs dv;
  auto* c_der = app.add_subcommand("derive", "mass-action system induced by a reaction network");
  c_der->add_option("input", dv.input, "reaction file")->required();
  c_der->add_option("--out", dv.out, "system file (default stdout)");

  VerifyArgs vf;
  auto* c_ver = app.add_subcommand("verify", "compare the symbolic solution with numeric integration");
  c_ver->add_option("input", vf.input, "system file with initial values")->required();
  c_ver->add_option("--solution", vf.solution, "explicit solution JSON from 'solve --out'");
  c_ver->add_option("--horizon", vf.horizon, "verification interval [0, horizon] (default: automatic)");
  c_ver->add_option("--tol", vf.tol, "maximum allowed deviation")->capture_default_str();
  c_ver->add_option("--samples", vf.samples, "number of sample times")->capture_default_str();
  vf.integ.add(c_ver);

  PerturbArgs pt;
  auto* c_pert = app.add_subcommand("perturb", "perturbation study against the unperturbed closed form");
  c_pert->add_option("input", pt.input, "Cauchy-Riemann system file with initial values")->required();
  c_pert->add_option("--eps", pt.eps, "perturbation sizes")->delimiter(',')->capture_default_str();
  c_pert->add_option("--monomial", pt.monomial, "exponents of the perturbing monomial, e.g. '2,0'");
  c_pert->add_option("--equation", pt.equation, "index of the perturbed equation")->capture_default_str();
  c_pert->add_option("--coeff", pt.coeff, "coefficient multiplying eps")->capture_default_str();
  c_pert->add_option("--horizon", pt.horizon, "time horizon")->capture_default_str();
  c_pert->add_option("--samples", pt.samples, "number of sample times")->capture_default_str();
  c_pert->add_option("--out-dir", pt.out_dir, "directory for the CSV files")->capture_default_str();
  pt.integ.add(c_pert);

  ReduceArgs rd;
  auto* c_red = app.add_subcommand("reduce", "first integral of a homogeneous quadratic pair");
  c_red->add_option("input", rd.input, "4-variable Cauchy-Riemann system file")->required();
  c_red->add_option("--pairing", rd.pairing, "complex pairing, e.g. '0,1;2,3'");
  c_red->add_option("--horizon", rd.horizon, "drift check horizon when initial values are given")->capture_default_str();
  rd.integ.add(c_red);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (c_cr->parsed()) return run_check_cr(cr);
    if (c_solve->parsed()) return run_solve(sv);
    if (c_real->parsed()) return run_realize(rz);
    if (c_der->parsed()) return run_derive(dv);
    if (c_ver->parsed()) return run_verify(vf);
    if (c_pert->parsed()) return run_perturb(pt);
    if (c_red->parsed()) return run_reduce(rd);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
