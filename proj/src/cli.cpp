// Copyright 2026 The kwlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kwlab/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "kwlab/checks.hpp"
#include "kwlab/diagnostics.hpp"
#include "kwlab/errors.hpp"
#include "kwlab/relax.hpp"
#include "kwlab/residuals.hpp"
#include "kwlab/simd/kernels.hpp"
#include "kwlab/solutions.hpp"

#ifndef KWLAB_VERSION
#define KWLAB_VERSION "dev"
#endif

namespace kwlab::cli {

namespace {

struct RunConfig {
  std::string solution = "ps-lift";
  double r_min = 0.5;
  double r_max = 50.0;
  int samples = 100;
  int angular_level = 24;
  int radial_level = 64;
  int annulus_level = 4;
  int threads = 0;
  std::string output;
  bool deterministic = false;
  std::uint64_t seed = kStandardSeed;
};

struct ResidualArgs {
  std::string equation = "eq11";
  double tau = 0.5;
  std::size_t points = 100;
  double radius = 5.0;
  double tol = 1e-8;
};

struct CheckArgs {
  int pohozaev_level = 12;
  double bound_constant = 10.0;
  double tol = 1e-8;
};

struct SearchArgs {
  double epsilon = 0.01;
  double rho = 0.0;  // 0: use r_max
  double report_constant = 10.0;
  std::string profile_in;
};

struct RelaxArgs {
  int nodes = 16;
  double side = 3.0;
  double perturb = 0.1;
  double tol = 1e-6;
  int max_iters = 20000;
  std::string checkpoint;
  int checkpoint_every = 0;
  std::string resume;
  std::string trace;
};

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw std::runtime_error("cannot open output file " + path);
      os_ = file_.get();
    }
  }
  std::ostream& operator*() { return *os_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_;
};

std::string header(const std::string& command, const RunConfig& c, const std::string& extra) {
  std::ostringstream h;
  h << "# kwlab " << KWLAB_VERSION << " command=" << command << " seed=" << c.seed
    << " solution=" << c.solution << " r_min=" << num(c.r_min) << " r_max=" << num(c.r_max)
    << " samples=" << c.samples << " angular_level=" << c.angular_level
    << " radial_level=" << c.radial_level << " annulus_level=" << c.annulus_level
    << " deterministic=" << (c.deterministic ? 1 : 0) << " isa=" << simd::isa_name(simd::active_isa());
  if (!extra.empty()) h << " " << extra;
  h << "\n";
  return h.str();
}

void validate(const RunConfig& c) {
  if (!(c.r_min > 0.0 && c.r_min < c.r_max)) throw std::invalid_argument("need 0 < r-min < r-max");
  if (c.samples < 2) throw std::invalid_argument("samples must be at least 2");
  if (c.angular_level < 4 || c.radial_level < 4) throw std::invalid_argument("quadrature levels must be >= 4");
  if (c.annulus_level < 1) throw std::invalid_argument("annulus level must be >= 1");
}

ProfileOptions profile_options(const RunConfig& c) {
  ProfileOptions o;
  o.angular_level = c.angular_level;
  o.radial_level = c.radial_level;
  o.annulus_level = c.annulus_level;
  o.threads = c.threads;
  return o;
}

// ---------------------------------------------------------------- commands

int cmd_list(std::ostream& out) {
  for (const auto& l : registry_labels()) out << l << "\t" << registry_description(l) << "\n";
  return kExitOk;
}

int cmd_profile(const RunConfig& c, std::ostream& out) {
  validate(c);
  const SolutionPair p = make_solution(c.solution);
  const RadialProfile prof = build_profile(p, c.r_min, c.r_max, c.samples, profile_options(c));
  Output o(c.output, out);
  *o << header("profile", c, "");
  write_profile_csv(*o, prof);
  return kExitOk;
}

Equation parse_equation(const std::string& s) {
  if (s == "eq11") return Equation::eq11;
  if (s == "kw") return Equation::kw;
  if (s == "vw") return Equation::vw;
  if (s == "kw-half") return Equation::kw_half;
  if (s == "monopole") return Equation::monopole;
  throw std::invalid_argument("unknown equation '" + s + "' (eq11, kw, vw, kw-half, monopole, claims)");
}

void write_report(std::ostream& os, const ResidualReport& rep) {
  for (const auto& row : rep.rows) {
    for (int k = 0; k < 4; ++k) os << num(row.x[k]) << ",";
    os << rep.equation << "," << row.component << "," << num(row.norm) << "\n";
  }
  os << "# summary eq=" << rep.equation << " points=" << rep.norms.size() << " max=" << num(rep.max)
     << " rms=" << num(rep.rms) << "\n";
}

int cmd_residual(const RunConfig& c, const ResidualArgs& r, std::ostream& out) {
  if (r.points == 0) throw std::invalid_argument("points must be positive");
  if (!(r.radius > 0.0)) throw std::invalid_argument("radius must be positive");
  std::vector<ResidualReport> reps;
  if (r.equation == "monopole") {
    reps.push_back(monopole_report(ps_monopole(), standard_points(3, r.points, r.radius, c.seed)));
  } else {
    const SolutionPair p = make_solution(c.solution);
    const auto pts = standard_points(p.A.dim(), r.points, r.radius, c.seed);
    if (r.equation == "claims") {
      reps = verify_claims(p, pts);
    } else {
      const Equation eq = parse_equation(r.equation);
      if (eq == Equation::kw && !(r.tau >= 0.0 && r.tau <= 1.0)) throw std::invalid_argument("tau must lie in [0, 1]");
      reps.push_back(residual_report(p, eq, pts, r.tau));
    }
  }
  Output o(c.output, out);
  *o << header("residual", c, "equation=" + r.equation + " tau=" + num(r.tau) + " points=" +
                                  std::to_string(r.points) + " radius=" + num(r.radius));
  *o << "x1,x2,x3,x4,eq,component,norm\n";
  double worst = 0.0;
  for (const auto& rep : reps) {
    write_report(*o, rep);
    worst = std::max(worst, rep.max);
  }
  return worst <= r.tol ? kExitOk : kExitCheckFailed;
}

int cmd_identity(const RunConfig& c, const CheckArgs& a, std::ostream& out) {
  validate(c);
  const SolutionPair p = make_solution(c.solution);
  CheckOptions opt;
  opt.r_min = c.r_min;
  opt.r_max = c.r_max;
  opt.samples = c.samples;
  opt.profile = profile_options(c);
  opt.claim_tol = a.tol;
  opt.bound_constant = a.bound_constant;
  opt.pohozaev_level = a.pohozaev_level;
  opt.seed = c.seed;
  const auto results = identity_suite(p, opt);
  Output o(c.output, out);
  *o << header("identity-check", c, "bound_constant=" + num(a.bound_constant) +
                                        " pohozaev_level=" + std::to_string(a.pohozaev_level));
  std::size_t failed = 0, width = 0;
  for (const auto& r : results) width = std::max(width, r.name.size());
  for (const auto& r : results) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%-10.3e %-10.3e", r.value, r.threshold);
    *o << (r.passed ? "PASS  " : "FAIL  ") << r.name << std::string(width + 2 - r.name.size(), ' ')
       << buf << "  " << r.detail << "\n";
    if (!r.passed) ++failed;
  }
  *o << "# " << results.size() - failed << "/" << results.size() << " checks passed\n";
  return failed == 0 ? kExitOk : kExitCheckFailed;
}

const char* vcheck_name(VCheck v) {
  switch (v) {
    case VCheck::passed: return "pass";
    case VCheck::failed: return "fail";
    case VCheck::degenerate: return "degenerate";
  }
  return "?";
}

// kappa at r by log-linear interpolation in the profile; nan outside it.
double kappa_at(const RadialProfile& prof, double r) {
  const auto& R = prof.rows;
  if (R.empty() || r < R.front().r || r > R.back().r) return std::nan("");
  for (std::size_t i = 0; i + 1 < R.size(); ++i)
    if (r <= R[i + 1].r) {
      const double t = std::log(r / R[i].r) / std::log(R[i + 1].r / R[i].r);
      return std::exp((1 - t) * std::log(R[i].kappa) + t * std::log(R[i + 1].kappa));
    }
  return R.back().kappa;
}

void write_search(std::ostream& os, const FlatRadiusReport& rep, const SearchParams& sp) {
  os << "epsilon=" << num(sp.epsilon) << " rho=" << num(sp.rho)
     << " report_constant=" << num(sp.report_constant) << "\n";
  os << "window=[" << num(rep.window_lo) << "," << num(rep.window_hi) << "] nominal_lo="
     << num(rep.nominal_window_lo) << " samples=" << rep.window_samples << "\n";
  os << "outside_small_eps_regime=" << (rep.outside_small_eps_regime ? "yes" : "no") << "\n";
  if (!rep.found) {
    os << "flat_radius=not-found threshold_N=" << num(rep.threshold_N) << "\n";
    return;
  }
  os << "flat_radius=" << num(rep.radius) << " threshold_N=" << num(rep.threshold_N) << "\n";
  os << "sub_window=[" << num(rep.sub_lo) << "," << num(rep.radius) << "] samples=" << rep.sub_samples << "\n";
  os << "check_a=" << (rep.check_a ? "pass" : "fail") << " max_N=" << num(rep.max_N)
     << " bound=" << num(rep.threshold_a) << "\n";
  os << "check_b=" << (rep.check_b ? "pass" : "fail") << " min_kappa_ratio=" << num(rep.min_kappa_ratio)
     << " bound=" << num(rep.threshold_b) << "\n";
  os << "check_c=" << vcheck_name(rep.check_c) << " max_N_v=" << num(rep.max_N_v)
     << " min_kappa_v_ratio=" << num(rep.min_kappa_v_ratio) << "\n";
  if (!rep.note.empty()) os << "note=" << rep.note << "\n";
}

int cmd_search(const RunConfig& c0, const SearchArgs& a, bool solution_given, std::ostream& out) {
  RunConfig c = c0;
  if (a.rho > 0.0) c.r_max = a.rho;
  RadialProfile prof;
  std::optional<SolutionPair> p;
  if (!a.profile_in.empty()) {
    std::ifstream is(a.profile_in, std::ios::binary);
    if (!is) throw std::runtime_error("cannot read profile " + a.profile_in);
    prof = read_profile_csv(is);
    if (prof.rows.size() < 2) throw std::invalid_argument("profile has fewer than 2 rows");
    if (a.rho <= 0.0) c.r_max = prof.rows.back().r;
    if (solution_given) p = make_solution(c.solution);
  } else {
    validate(c);
    p = make_solution(c.solution);
    prof = build_profile(*p, c.r_min, c.r_max, c.samples, profile_options(c));
  }
  SearchParams sp;
  sp.epsilon = a.epsilon;
  sp.rho = c.r_max;
  sp.report_constant = a.report_constant;

  FlatRadiusReport rep;
  try {
    rep = find_flat_radius(prof, sp);
  } catch (const FlatRadiusNotFound& e) {
    rep = e.report;
  }

  double wedge = std::nan("");
  if (p) {
    for (const Point& x : standard_points(p->A.dim(), 100, 5.0, c.seed))
      wedge = std::isnan(wedge) ? wedge_square(p->a(x)) : std::max(wedge, wedge_square(p->a(x)));
  }
  double k1 = kappa_at(prof, 1.0);
  if (std::isnan(k1) && p) k1 = kappa(p->a, 1.0, sphere_quadrature(p->A.dim(), c.angular_level));
  const double kr = kappa_at(prof, sp.rho);
  const double growth = std::log(kr / k1) / std::log(sp.rho);
  const double local = prof.rows.back().N;

  Output o(c.output, out);
  *o << header("search", c, "epsilon=" + num(a.epsilon) + (a.profile_in.empty() ? "" : " profile=" + a.profile_in));
  write_search(*o, rep, sp);
  const bool commuting = !std::isnan(wedge) && wedge < 1e-16;
  *o << "wedge_max=" << (std::isnan(wedge) ? std::string("unknown") : num(wedge))
     << " commuting=" << (std::isnan(wedge) ? "unknown" : commuting ? "yes" : "no") << "\n";
  *o << "kappa_ratio=" << num(kr / k1) << " growth_exponent=" << num(growth)
     << " frequency_at_rho=" << num(local) << "\n";
  std::string branch;
  if (!rep.found)
    branch = "growth (no flat radius: N > sqrt(eps) across the window)";
  else if (commuting)
    branch = "commuting (flat radius found and a^a = 0)";
  else if (std::isnan(wedge))
    branch = "flat (commutators not evaluated for a loaded profile)";
  else
    branch = "flat with non-commuting components";
  *o << "branch=" << branch << "\n";
  return rep.succeeded() ? kExitOk : kExitCheckFailed;
}

void write_trace(const std::string& path, const std::string& head, const std::vector<FlowStep>& trace) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write trace " + path);
  os << head << "iteration,energy,max_gradient,step,halvings\n";
  for (const auto& s : trace)
    os << s.iteration << "," << num(s.energy) << "," << num(s.max_gradient) << "," << num(s.step) << ","
       << s.halvings << "\n";
}

int cmd_relax(const RunConfig& c, const RelaxArgs& a, std::ostream& out) {
  if (!(a.perturb >= 0.0)) throw std::invalid_argument("perturb must be non-negative");
  if (a.checkpoint_every < 0) throw std::invalid_argument("checkpoint-every must be non-negative");
  const SolutionPair p = make_solution(c.solution);
  const LatticeGeometry g = LatticeGeometry::centered_box(p.A.dim(), a.nodes, a.side);
  LatticeState s(g, p.a, p.A);
  const std::vector<double> exact = s.values();
  if (!a.resume.empty())
    load_checkpoint(a.resume, s);
  else
    add_smooth_perturbation(s, a.perturb);
  const double start_rms = interior_rms_difference(s, exact);

  const std::string head =
      header("relax", c, "nodes=" + std::to_string(a.nodes) + " side=" + num(a.side) + " perturb=" +
                             num(a.perturb) + " tol=" + num(a.tol) +
                             (a.resume.empty() ? "" : " resume=" + a.resume));
  FlowObserver obs;
  if (!a.checkpoint.empty() && a.checkpoint_every > 0)
    obs = [&](const FlowStep& st, const LatticeState& cur) {
      if (st.iteration % a.checkpoint_every == 0) save_checkpoint(a.checkpoint, cur);
    };
  FlowResult res;
  try {
    res = flow(s, a.tol, a.max_iters, obs);
  } catch (const NonConvergenceError& e) {
    if (!a.checkpoint.empty()) save_checkpoint(a.checkpoint, s);
    if (!a.trace.empty()) write_trace(a.trace, head, e.trace);
    throw;
  }
  if (!a.checkpoint.empty()) save_checkpoint(a.checkpoint, s);
  if (!a.trace.empty()) write_trace(a.trace, head, res.trace);
  bool monotone = true;
  for (std::size_t i = 1; i < res.trace.size(); ++i)
    if (res.trace[i].energy > res.trace[i - 1].energy) monotone = false;

  Output o(c.output, out);
  *o << head;
  *o << "converged=" << (res.converged ? 1 : 0) << " iterations=" << res.iterations << "\n";
  *o << "energy_start=" << num(res.trace.front().energy) << " energy_final=" << num(res.trace.back().energy)
     << " energy_monotone=" << (monotone ? 1 : 0) << "\n";
  *o << "max_gradient=" << num(res.trace.back().max_gradient) << "\n";
  *o << "rms_to_seed_start=" << num(start_rms) << " rms_to_seed_final=" << num(interior_rms_difference(s, exact))
     << "\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"kwlab: exact solutions, radial diagnostics and relaxation for SU(2) pairs"};
  app.set_version_flag("--version", KWLAB_VERSION);
  app.set_config("--config", "", "TOML/INI file with option values (flags take precedence)");
  app.require_subcommand(1, 1);

  RunConfig cfg;
  app.add_option("--solution", cfg.solution, "Registry label (see list-solutions)");
  app.add_option("--r-min,--r_min", cfg.r_min, "Smallest profile radius");
  app.add_option("--r-max,--r_max", cfg.r_max, "Largest profile radius");
  app.add_option("--samples", cfg.samples, "Profile radii (geometric grid)");
  app.add_option("--angular-level,--angular_level", cfg.angular_level, "Sphere quadrature level");
  app.add_option("--radial-level,--radial_level", cfg.radial_level, "Gauss-Legendre nodes on the innermost ball");
  app.add_option("--annulus-level,--annulus_level", cfg.annulus_level, "Gauss-Legendre nodes per annulus");
  app.add_option("--threads", cfg.threads, "Worker threads (0 = hardware)");
  app.add_option("-o,--output", cfg.output, "Output path (default stdout)");
  app.add_flag("--deterministic", cfg.deterministic, "Scalar kernels and one thread, for byte-identical output");
  app.add_option("--seed", cfg.seed, "Seed for sample points");

  auto* list = app.add_subcommand("list-solutions", "List registry solutions");
  auto* profile = app.add_subcommand("profile", "Write the radial diagnostics CSV");
  auto* residual = app.add_subcommand("residual", "Write a pointwise residual report");
  ResidualArgs ra;
  residual->add_option("--equation", ra.equation, "eq11, kw, vw, kw-half, monopole or claims");
  residual->add_option("--tau", ra.tau, "Parameter for --equation kw");
  residual->add_option("--points", ra.points, "Number of seeded points");
  residual->add_option("--radius", ra.radius, "Radius of the sampling ball");
  residual->add_option("--tol", ra.tol, "Exit 2 when the max residual exceeds this");
  auto* identity = app.add_subcommand("identity-check", "Run the identity and monotonicity suites");
  CheckArgs ca;
  identity->add_option("--pohozaev-level", ca.pohozaev_level, "Angular level (compared with twice it)");
  identity->add_option("--bound-constant", ca.bound_constant, "Report constant in the bounds");
  identity->add_option("--tol", ca.tol, "Tolerance for claimed residuals");
  auto* search = app.add_subcommand("search", "Flat-radius search and branch report");
  SearchArgs sa;
  search->add_option("--epsilon", sa.epsilon, "Search parameter in (0, 1)");
  search->add_option("--rho", sa.rho, "Outer radius (default r-max)");
  search->add_option("--report-constant", sa.report_constant, "C in the kappa check");
  search->add_option("--profile-in", sa.profile_in, "Use a profile CSV instead of building one");
  auto* relax = app.add_subcommand("relax", "Relax a perturbed solution on a lattice");
  RelaxArgs xa;
  relax->add_option("--nodes", xa.nodes, "Nodes per axis");
  relax->add_option("--side", xa.side, "Side length of the centred box");
  relax->add_option("--perturb", xa.perturb, "Relative size of the interior perturbation");
  relax->add_option("--tol", xa.tol, "Stop when the max node gradient is below this");
  relax->add_option("--max-iters", xa.max_iters, "Iteration cap");
  relax->add_option("--checkpoint", xa.checkpoint, "Checkpoint path (written at the end)");
  relax->add_option("--checkpoint-every", xa.checkpoint_every, "Also checkpoint every k iterations");
  relax->add_option("--resume", xa.resume, "Start from a checkpoint instead of perturbing");
  relax->add_option("--trace", xa.trace, "Energy trace CSV path");
  for (auto* sub : {list, profile, residual, identity, search, relax}) sub->fallthrough();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();  // program name
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const simd::Isa saved = simd::active_isa();
  if (cfg.deterministic) {
    simd::set_active_isa(simd::Isa::scalar);
    cfg.threads = 1;
  }
  int code = kExitOk;
  try {
    if (*list) code = cmd_list(out);
    else if (*profile) code = cmd_profile(cfg, out);
    else if (*residual) code = cmd_residual(cfg, ra, out);
    else if (*identity) code = cmd_identity(cfg, ca, out);
    else if (*search) code = cmd_search(cfg, sa, app.count("--solution") > 0, out);
    else if (*relax) code = cmd_relax(cfg, xa, out);
  } catch (const NumericalError& e) {
    err << "kwlab: numerical failure: " << e.what() << "\n";
    code = kExitNumerical;
  } catch (const ConventionError& e) {
    err << "kwlab: convention check failed: " << e.what() << "\n";
    code = kExitNumerical;
  } catch (const std::exception& e) {
    err << "kwlab: " << e.what() << "\n";
    code = kExitUsage;
  }
  simd::set_active_isa(saved);
  if (code == kExitCheckFailed) err << "kwlab: a check exceeded its tolerance\n";
  return code;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace kwlab::cli
