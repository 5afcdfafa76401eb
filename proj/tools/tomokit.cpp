// tomokit command-line front end.
//
// Exit codes: 0 all selected checks pass, 1 at least one fails, 2 usage or
// data error. Numbers go to JSON/CSV files; stdout gets one line per check.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tomokit/catalog.hpp"
#include "tomokit/conservation.hpp"
#include "tomokit/evolution.hpp"
#include "tomokit/grid_io.hpp"
#include "tomokit/report.hpp"
#include "tomokit/transforms.hpp"
#include "tomokit/validation.hpp"

namespace fs = std::filesystem;
using namespace tomokit;
using Dir = CheckReport::Direction;

namespace {

constexpr const char* kVersion = "0.1.0";

struct GridOptions {
  double x_max = 7.0;
  std::size_t n_x = 281;
  std::size_t n_theta = 64;
  double q_max = 7.0;
  double p_max = 7.0;
  std::size_t n_q = 256;
  std::size_t n_p = 256;

  void attach(CLI::App* app) {
    app->add_option("--x-max", x_max, "X half-width of tomogram grids")->check(CLI::PositiveNumber);
    app->add_option("--nx", n_x, "X samples (odd)");
    app->add_option("--ntheta", n_theta, "phase samples on [0, pi)");
    app->add_option("--q-max", q_max, "q half-width of phase grids")->check(CLI::PositiveNumber);
    app->add_option("--p-max", p_max, "p half-width of phase grids")->check(CLI::PositiveNumber);
    app->add_option("--nq", n_q, "q samples");
    app->add_option("--np", n_p, "p samples");
  }

  GridSpec spec() const {
    GridSpec g;
    g.x_min = -x_max;
    g.x_max = x_max;
    g.n_x = n_x;
    g.n_theta = n_theta;
    g.q_min = -q_max;
    g.q_max = q_max;
    g.p_min = -p_max;
    g.p_max = p_max;
    g.n_q = n_q;
    g.n_p = n_p;
    g.validate_tomogram();
    g.validate_phase();
    return g;
  }
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// file-name friendly form of a state label
std::string slug(const std::string& label) {
  std::string s = label;
  if (s.starts_with("grid:")) s = "grid-" + fs::path(s.substr(5)).stem().string();
  for (char& c : s) {
    if (c == ':' || c == ',' || c == '/' || c == '\\' || c == ' ') c = '_';
  }
  return s;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void print_check(const CheckReport& r) {
  std::cout << (r.pass ? "PASS " : "FAIL ") << r.check << "  metric=" << fmt(r.metric)
            << (r.direction == Dir::at_most ? " (<= " : " (>= ") << fmt(r.threshold) << ")\n";
}

std::vector<double> to_doubles(const std::vector<int>& v) { return {v.begin(), v.end()}; }

// ---------------------------------------------------------------- conservation

struct ConservationOptions {
  int m_max = 4;
  double harmonic_tol = 1e-6;
  double class_tol = 1e-6;
  int n_max = 24;
  double flux_c3 = 0.0;
  double flux_tol = 1e-6;
  double symplectic_tol = 1e-8;
  bool projection = true;
};

struct ConservationRun {
  std::vector<CheckReport> reports;
  std::vector<MomentProfile> profiles;
  std::vector<double> flux;
};

ConservationRun conservation_checks(const State& st, const OpticalTomogramGrid& w,
                                    const ConservationOptions& o) {
  ConservationRun run;
  const std::string gid = w.spec().id();
  for (int m = 1; m <= o.m_max; ++m) {
    MomentProfile g = moment_profile(w, m);
    const HarmonicFit fit = harmonic_residual(g);
    const OdeResidual ode = ode_residual(g);
    std::vector<int> ks;
    std::vector<double> cs, ss;
    int big_k = -1;
    double big = 0.0;
    for (const Harmonic& h : fit.forbidden) {
      ks.push_back(h.k);
      cs.push_back(h.cos_coef);
      ss.push_back(h.sin_coef);
      const double mag = std::hypot(h.cos_coef, h.sin_coef);
      if (mag > big) {
        big = mag;
        big_k = h.k;
      }
    }
    std::vector<int> ak;
    std::vector<double> ac, as;
    for (const Harmonic& h : fit.allowed) {
      ak.push_back(h.k);
      ac.push_back(h.cos_coef);
      as.push_back(h.sin_coef);
    }
    CheckReport r = CheckReport::make("conservation", "conservation.harmonics.m" + std::to_string(m),
                                      fit.residual, o.harmonic_tol, Dir::at_most);
    r.grid = gid;
    r.add("definition", std::string("L2 norm of forbidden harmonics of g_m(theta) = int X^m w dX"))
        .add("order", std::int64_t{m})
        .add("largest_forbidden_k", std::int64_t{big_k})
        .add("largest_forbidden_coefficient", big)
        .add("forbidden_k", to_doubles(ks))
        .add("forbidden_cos", cs)
        .add("forbidden_sin", ss)
        .add("allowed_k", to_doubles(ak))
        .add("allowed_cos", ac)
        .add("allowed_sin", as)
        .add("ode_residual_l2", ode.l2)
        .add("ode_noisy", ode.noisy)
        .add("tail_bound", g.tail_bound)
        .add("truncation_warning", g.truncation_warning);
    run.reports.push_back(std::move(r));
    run.profiles.push_back(std::move(g));
  }

  if (o.projection) {
    const ClassProjection p = hermite_class_projection(w, o.n_max);
    CheckReport r = CheckReport::make("conservation", "conservation.hermite_class", p.residual,
                                      o.class_tol, Dir::at_most);
    r.grid = gid;
    std::vector<double> diag;
    for (int n = 0; n <= p.rho.n_max(); ++n) diag.push_back(p.rho(n, n).real());
    r.add("definition", std::string("relative L2 distance to the Hermite-class sum"))
        .add("n_max", std::int64_t{o.n_max})
        .add("trace", p.rho.trace())
        .add("rho_diagonal", diag)
        .add("condition", p.condition)
        .add("ill_conditioned", p.ill_conditioned);
    run.reports.push_back(std::move(r));
  }

  if (o.flux_c3 != 0.0) {
    run.flux = normalization_flux_cubic(w, o.flux_c3);
    const FluxSummary s = summarize_flux(run.flux, w.spec());
    CheckReport r = CheckReport::make("conservation", "conservation.flux_cubic", s.max_abs, o.flux_tol,
                                      Dir::at_most);
    r.grid = gid;
    r.add("definition", std::string("max over theta of |c3 * 3 sin^3 theta (g_1'' + g_1)|"))
        .add("coupling", o.flux_c3)
        .add("integral", s.integral)
        .add("l1", s.l1);
    if (w.n_theta() % 4 == 0) r.add("flux_at_quarter_pi", run.flux[w.n_theta() / 4]);
    run.reports.push_back(std::move(r));
  }

  if (st.native() == Representation::symplectic) {
    for (int m = 1; m <= std::min(o.m_max, 4); ++m) {
      const double res = symplectic_moment_residual(st.symplectic(), m, symplectic_panel(), w.spec());
      CheckReport r = CheckReport::make("conservation", "conservation.symplectic.m" + std::to_string(m),
                                        res, o.symplectic_tol, Dir::at_most);
      r.grid = gid;
      r.add("definition",
            std::string("relative misfit of int X^m M dX against degree-m homogeneous polynomials"));
      run.reports.push_back(std::move(r));
    }
  }
  return run;
}

Details run_header(const std::string& command, const State& st, const GridSpec& g) {
  Details h;
  h.emplace_back("tool", std::string("tomokit ") + kVersion);
  h.emplace_back("command", command);
  h.emplace_back("state", st.label());
  h.emplace_back("genuine", st.genuine());
  if (!st.diagnosis().empty()) h.emplace_back("diagnosis", st.diagnosis());
  h.emplace_back("grid", g.id());
  return h;
}

int exit_for(const std::vector<CheckReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.pass; }) ? 0
                                                                                                  : 1;
}

// --------------------------------------------------------------------- catalog

int cmd_catalog(const std::string& json_out) {
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const CatalogEntry& e : catalog_entries()) {
    std::string kind = e.genuine ? "genuine" : "counterexample (fails " + e.diagnosis + ")";
    std::cout << e.syntax << "  [" << kind << "]  " << e.description << "\n";
    nlohmann::ordered_json j;
    j["syntax"] = e.syntax;
    j["description"] = e.description;
    j["genuine"] = e.genuine;
    j["diagnosis"] = e.diagnosis;
    j["has_wigner"] = e.has_wigner;
    list.push_back(std::move(j));
  }
  std::cout << "grid:<manifest.json>  [external]  optical or wigner grid file\n";
  if (!json_out.empty()) write_text(json_out, list.dump(2) + "\n");
  return 0;
}

// ------------------------------------------------------------------- transform

struct TransformArgs {
  std::string state;
  std::string op;
  std::string output;
  double mu_max = 6.0;
  std::size_t n_mu = 61;
  GridOptions grid;
};

int cmd_transform(const TransformArgs& a) {
  const State st = State::resolve(StateSpec::parse(a.state));
  const GridSpec g = a.grid.spec();
  const std::string base = slug(st.label()) + "-" + a.op;
  if (a.op == "radon") {
    if (!st.has_wigner()) throw Error(st.label() + " has no phase-space representation to project");
    const OpticalTomogramGrid w = radon_optical(st.wigner_grid(g), g);
    const fs::path out = a.output.empty() ? fs::path(base + ".json") : fs::path(a.output);
    write_grid(w, out);
    double defect = 0.0;
    for (std::size_t j = 0; j < w.n_theta(); ++j) defect = std::max(defect, std::abs(w.row_mass(j) - 1.0));
    std::cout << "radon " << st.label() << ": max |int w dX - 1| = " << fmt(defect) << ", wrote "
              << out.string() << "\n";
  } else if (a.op == "iradon") {
    const Reconstruction rec = inverse_radon_optical(st.optical_grid(g), g);
    const fs::path out = a.output.empty() ? fs::path(base + ".json") : fs::path(a.output);
    write_grid(rec.grid, out);
    std::cout << "iradon " << st.label() << ": mass = " << fmt(rec.grid.mass())
              << (rec.boundary_warning ? ", boundary warning (filter ringing)" : "") << ", wrote "
              << out.string() << "\n";
  } else if (a.op == "char") {
    CharacteristicGrid layout;
    layout.mu_min = layout.nu_min = -a.mu_max;
    layout.mu_max = layout.nu_max = a.mu_max;
    layout.n_mu = layout.n_nu = a.n_mu;
    const CharacteristicGrid phi = sample_characteristic(st.symplectic(), layout);
    std::vector<std::vector<double>> rows;
    rows.reserve(phi.values.size());
    for (std::size_t i = 0; i < phi.n_mu; ++i) {
      for (std::size_t j = 0; j < phi.n_nu; ++j) {
        const auto v = phi.values[i * phi.n_nu + j];
        rows.push_back({phi.mu(i), phi.nu(j), v.real(), v.imag()});
      }
    }
    const fs::path out = a.output.empty() ? fs::path(base + ".csv") : fs::path(a.output);
    write_csv(out, {"mu", "nu", "re", "im"}, rows);
    std::cout << "char " << st.label() << ": " << rows.size() << " samples, wrote " << out.string() << "\n";
  } else {
    throw CLI::ValidationError("--op", "expected radon, iradon or char");
  }
  return 0;
}

// -------------------------------------------------------------------- validate

const std::vector<std::string> kAllChecks = {"structural", "hirschman", "klm",         "bochner",
                                             "overlap",    "fixedpoint", "conservation"};

struct ValidateArgs {
  std::string state;
  std::string checks = "all";
  std::string against = "fock0,fock1,fock2";
  std::uint64_t seed = 42;
  std::string output;
  GridOptions grid;
  StructuralOptions structural;
  double hirschman_tol = 1e-3;
  PositivityOptions positivity;
  double overlap_tol = 1e-3;
  double fixedpoint_tol = 5e-3;
  ConservationOptions conservation;
};

std::set<std::string> parse_checks(const std::string& text) {
  std::set<std::string> out;
  for (const std::string& c : split_list(text)) {
    if (c == "all") {
      out.insert(kAllChecks.begin(), kAllChecks.end());
    } else if (std::find(kAllChecks.begin(), kAllChecks.end(), c) != kAllChecks.end()) {
      out.insert(c);
    } else {
      throw CLI::ValidationError("--checks", "unknown check '" + c + "'");
    }
  }
  if (out.empty()) throw CLI::ValidationError("--checks", "no checks selected");
  return out;
}

// Overall verdict. structural, fixedpoint and conservation are required; the
// remaining checks form a quantum branch (klm, overlap, hirschman) and a
// classical branch (bochner), and one selected branch passing is enough.
bool validate_verdict(const std::vector<CheckReport>& reports) {
  const std::set<std::string> quantum = {"klm", "overlap", "hirschman"};
  bool required = true, q_any = false, q_ok = true, c_any = false, c_ok = true;
  for (const CheckReport& r : reports) {
    if (quantum.contains(r.group)) {
      q_any = true;
      q_ok = q_ok && r.pass;
    } else if (r.group == "bochner") {
      c_any = true;
      c_ok = c_ok && r.pass;
    } else {
      required = required && r.pass;
    }
  }
  const bool branch = (!q_any && !c_any) || (q_any && q_ok) || (c_any && c_ok);
  return required && branch;
}

int cmd_validate(ValidateArgs a) {
  const State st = State::resolve(StateSpec::parse(a.state));
  const GridSpec g = a.grid.spec();
  const std::set<std::string> checks = parse_checks(a.checks);
  const OpticalTomogramGrid w = st.optical_grid(g);
  std::vector<CheckReport> reports;
  auto push = [&](CheckReport r) {
    if (r.grid.empty()) r.grid = g.id();
    print_check(r);
    reports.push_back(std::move(r));
  };

  if (checks.contains("structural")) {
    a.structural.grid = g;
    a.structural.seed = a.seed;
    const Kind kind = st.native() == Representation::symplectic ? Kind::symplectic : Kind::optical;
    for (CheckReport& r : check_structural(st.symplectic(), kind, a.structural)) push(std::move(r));
  }
  if (checks.contains("hirschman")) push(check_hirschman(w, a.hirschman_tol));
  for (const auto& [name, mode] : {std::pair{"klm", PositivityMode::quantum},
                                   std::pair{"bochner", PositivityMode::classical}}) {
    if (!checks.contains(name)) continue;
    a.positivity.seed = a.seed;
    push(check_positivity(st.symplectic(), mode, a.positivity));
  }
  if (checks.contains("overlap")) {
    const Reconstruction rec = inverse_radon_optical(w, g);
    for (const std::string& ref : split_list(a.against)) {
      const State psi_state = State::resolve(StateSpec::parse(ref));
      const std::optional<FockMatrix> psi = psi_state.fock(psi_state.spec().name == "fock" ? 0 : 24);
      if (!psi) throw Error("--against " + ref + " has no Fock-basis matrix");
      const double v = pure_state_overlap(rec.grid, *psi);
      CheckReport r = CheckReport::make("overlap", "overlap." + psi_state.label(), v, -a.overlap_tol,
                                        Dir::at_least);
      r.add("definition", std::string("2 pi int W W_psi dq dp = Tr(rho rho_psi)"))
          .add("against", psi_state.label())
          .add("reconstruction_boundary_warning", rec.boundary_warning);
      push(std::move(r));
    }
  }
  if (checks.contains("fixedpoint")) {
    push(check_radon_fixed_point(st.symplectic(), FixedPointOptions{g, a.fixedpoint_tol}));
  }
  if (checks.contains("conservation")) {
    for (CheckReport& r : conservation_checks(st, w, a.conservation).reports) push(std::move(r));
  }

  const bool verdict = validate_verdict(reports);
  bool diagnosis_failed = false;
  for (const CheckReport& r : reports) {
    if (r.group == st.diagnosis() && !r.pass) diagnosis_failed = true;
  }
  Details h = run_header("validate", st, g);
  h.emplace_back("seed", static_cast<std::int64_t>(a.seed));
  h.emplace_back("checks", std::string([&] {
                   std::string s;
                   for (const std::string& c : kAllChecks) {
                     if (checks.contains(c)) s += (s.empty() ? "" : ",") + c;
                   }
                   return s;
                 }()));
  h.emplace_back("positivity_note",
                 std::string("klm and bochner sample point sets: a pass means no violation was found, not a proof"));
  h.emplace_back("verdict", verdict);
  if (!st.diagnosis().empty()) h.emplace_back("diagnosis_check_failed", diagnosis_failed);

  const fs::path out = a.output.empty() ? fs::path(slug(st.label()) + "-validate.json") : fs::path(a.output);
  write_text(out, reports_to_json(h, reports));
  std::cout << "verdict " << (verdict ? "PASS" : "FAIL");
  if (!st.diagnosis().empty()) {
    std::cout << " (expected failing check: " << st.diagnosis() << ", "
              << (diagnosis_failed ? "failed" : "did not fail") << ")";
  }
  std::cout << ", report " << out.string() << "\n";
  return verdict ? 0 : 1;
}

// -------------------------------------------------------------------- conserve

struct ConserveArgs {
  std::string state;
  std::string output;
  std::string csv;
  GridOptions grid;
  ConservationOptions conservation;
};

int cmd_conserve(const ConserveArgs& a) {
  const State st = State::resolve(StateSpec::parse(a.state));
  const GridSpec g = a.grid.spec();
  const OpticalTomogramGrid w = st.optical_grid(g);
  const ConservationRun run = conservation_checks(st, w, a.conservation);
  for (const CheckReport& r : run.reports) print_check(r);

  std::vector<std::string> header = {"theta"};
  for (const MomentProfile& p : run.profiles) header.push_back("g" + std::to_string(p.order));
  if (!run.flux.empty()) header.push_back("flux");
  std::vector<std::vector<double>> rows;
  for (std::size_t j = 0; j < g.n_theta; ++j) {
    std::vector<double> row = {g.theta(j)};
    for (const MomentProfile& p : run.profiles) row.push_back(p.values[j]);
    if (!run.flux.empty()) row.push_back(run.flux[j]);
    rows.push_back(std::move(row));
  }
  const std::string base = slug(st.label()) + "-conserve";
  const fs::path csv = a.csv.empty() ? fs::path(base + ".csv") : fs::path(a.csv);
  write_csv(csv, header, rows);

  Details h = run_header("conserve", st, g);
  h.emplace_back("m_max", std::int64_t{a.conservation.m_max});
  h.emplace_back("flux_c3", a.conservation.flux_c3);
  h.emplace_back("profiles_csv", csv.filename().string());
  const fs::path out = a.output.empty() ? fs::path(base + ".json") : fs::path(a.output);
  write_text(out, reports_to_json(h, run.reports));
  const int code = exit_for(run.reports);
  std::cout << "verdict " << (code == 0 ? "PASS" : "FAIL") << ", report " << out.string() << "\n";
  return code;
}

// ---------------------------------------------------------------------- evolve

struct EvolveArgs {
  std::string state;
  std::string potential;
  double t = 1.0;
  std::string method = "drift";
  double dt = 0.0;
  int n_max = 24;
  double mass_tol = 1e-6;
  double flux_tol = 1e-6;
  double membership_tol = 1e-6;
  std::size_t checkpoints = 20;
  std::string output;
  std::string csv;
  std::string grid_out;
  GridOptions grid;
};

std::vector<std::vector<double>> trace_rows(const EvolutionTrace& tr) {
  std::vector<std::vector<double>> rows;
  for (std::size_t k = 0; k < tr.t.size(); ++k) {
    const auto& o = tr.observables[k];
    rows.push_back({tr.t[k], tr.mass[k], o[0], o[1], o[2], o[3]});
  }
  return rows;
}

int cmd_evolve(const EvolveArgs& a) {
  const State st = State::resolve(StateSpec::parse(a.state));
  const GridSpec g = a.grid.spec();
  const PolynomialPotential v = PolynomialPotential::parse(a.potential);
  if (!(a.t >= 0.0) || !std::isfinite(a.t)) throw CLI::ValidationError("--t", "must be a finite time >= 0");
  const std::string base = slug(st.label()) + "-evolve-" + a.method;
  const fs::path csv = a.csv.empty() ? fs::path(base + ".csv") : fs::path(a.csv);
  const fs::path grid_out = a.grid_out.empty() ? fs::path(base + "-grid.json") : fs::path(a.grid_out);
  const std::vector<std::string> trace_header = {"t", "mass", "q", "p", "q2", "p2"};

  Details h = run_header("evolve", st, g);
  h.emplace_back("method", a.method);
  h.emplace_back("potential", v.str());
  h.emplace_back("t_end", a.t);
  std::vector<CheckReport> reports;

  if (a.method == "drift") {
    DriftOptions opt;
    opt.grid = g;
    opt.n_max = a.n_max;
    opt.membership_tol = a.membership_tol;
    opt.checkpoints = a.checkpoints;
    const DriftReport d = drift_experiment(st, v, a.t, opt);
    h.emplace_back("member", d.member);
    h.emplace_back("route", d.route);
    h.emplace_back("projection_residual", d.projection_residual);
    h.emplace_back("note", d.note);
    if (d.member) {
      CheckReport r = CheckReport::make("evolution", "evolution.mass", d.max_mass_change, a.mass_tol,
                                        Dir::at_most);
      r.add("definition", std::string("max over checkpoints and theta of |int w dX - mass(0)|"))
          .add("leakage_warning", d.leakage_warning);
      reports.push_back(std::move(r));
      std::vector<std::vector<double>> rows;
      for (std::size_t k = 0; k < d.t.size(); ++k) rows.push_back({d.t[k], d.mass_min[k], d.mass_max[k]});
      write_csv(csv, {"t", "mass_min", "mass_max"}, rows);
    }
    if (d.flux) {
      CheckReport r = CheckReport::make("conservation", "conservation.flux_cubic", d.flux_summary.max_abs,
                                        a.flux_tol, Dir::at_most);
      r.add("definition", std::string("max over theta of |c3 * 3 sin^3 theta (g_1'' + g_1)|"))
          .add("coupling", d.c3)
          .add("integral", d.flux_summary.integral)
          .add("l1", d.flux_summary.l1);
      if (d.flux_at_quarter_pi) r.add("flux_at_quarter_pi", *d.flux_at_quarter_pi);
      reports.push_back(std::move(r));
      if (!d.member) {
        std::vector<std::vector<double>> rows;
        for (std::size_t j = 0; j < g.n_theta; ++j) rows.push_back({g.theta(j), (*d.flux)[j]});
        write_csv(csv, {"theta", "flux"}, rows);
      }
    }
    if (!d.member && !d.flux) std::cout << "n/a  " << d.note << "\n";
  } else if (a.method == "fock") {
    const std::optional<FockMatrix> rho = st.fock(a.n_max);
    if (!rho) throw Error(st.label() + " has no Fock-basis matrix; use --method drift");
    const FockEvolution fe = evolve_fock(*rho, v, a.t, a.dt, a.checkpoints);
    double trace_dev = 0.0, energy_dev = 0.0;
    for (double m : fe.trace.mass) trace_dev = std::max(trace_dev, std::abs(m - fe.trace.mass.front()));
    for (double e : fe.energy) energy_dev = std::max(energy_dev, std::abs(e - fe.energy.front()));
    reports.push_back(CheckReport::make("evolution", "evolution.trace", trace_dev, 1e-10, Dir::at_most)
                          .add("dt", fe.dt)
                          .add("steps", static_cast<std::int64_t>(fe.steps))
                          .add("leakage", fe.leakage)
                          .add("leakage_warning", fe.leakage_warning));
    reports.push_back(CheckReport::make("evolution", "evolution.energy", energy_dev, 1e-8, Dir::at_most));
    auto rows = trace_rows(fe.trace);
    for (std::size_t k = 0; k < rows.size(); ++k) rows[k].push_back(fe.energy[k]);
    auto header = trace_header;
    header.push_back("energy");
    write_csv(csv, header, rows);
  } else if (a.method == "liouville" || a.method == "moyal") {
    const WignerGrid w0 = st.wigner_grid(g);
    const PhaseEvolution pe =
        a.method == "moyal" ? evolve_moyal(w0, v, a.t, a.dt) : evolve_liouville(w0, v, a.t, a.dt);
    double drift = 0.0;
    for (double m : pe.trace.mass) drift = std::max(drift, std::abs(m - pe.trace.mass.front()));
    reports.push_back(CheckReport::make("evolution", "evolution.mass", drift, a.mass_tol, Dir::at_most)
                          .add("definition", std::string("max over steps of |mass(t) - mass(0)|"))
                          .add("dt", pe.dt)
                          .add("steps", static_cast<std::int64_t>(pe.steps))
                          .add("outflow", pe.outflow)
                          .add("outflow_warning", pe.outflow_warning));
    write_csv(csv, trace_header, trace_rows(pe.trace));
    write_grid(pe.grid, grid_out);
  } else if (a.method == "harmonic") {
    const OpticalTomogramGrid w0 = st.optical_grid(g);
    const OpticalTomogramGrid w1 = evolve_harmonic_tomogram(w0, a.t);
    double drift = 0.0;
    for (std::size_t j = 0; j < g.n_theta; ++j) drift = std::max(drift, std::abs(w1.row_mass(j) - w0.row_mass(j)));
    reports.push_back(CheckReport::make("evolution", "evolution.mass", drift, a.mass_tol, Dir::at_most)
                          .add("definition", std::string("max over theta of |int w(t) dX - int w(0) dX|")));
    write_grid(w1, grid_out);
  } else {
    throw CLI::ValidationError("--method", "expected drift, fock, liouville, moyal or harmonic");
  }

  for (CheckReport& r : reports) {
    r.grid = g.id();
    print_check(r);
  }
  const fs::path out = a.output.empty() ? fs::path(base + ".json") : fs::path(a.output);
  write_text(out, reports_to_json(h, reports));
  const int code = exit_for(reports);
  std::cout << "verdict " << (code == 0 ? "PASS" : "FAIL") << ", report " << out.string() << "\n";
  return code;
}

// ---------------------------------------------------------------------- report

int cmd_report(const std::vector<std::string>& files, const std::string& output) {
  std::vector<fs::path> paths(files.begin(), files.end());
  const std::string merged = merge_report_files(paths);
  const fs::path out = output.empty() ? fs::path("merged-report.json") : fs::path(output);
  write_text(out, merged);
  const auto j = nlohmann::json::parse(merged);
  for (const auto& c : j["checks"]) {
    const bool pass = c.value("pass", false);
    std::cout << (pass ? "PASS " : "FAIL ") << c.value("check", std::string("?")) << "\n";
  }
  const bool verdict = j.value("verdict", false);
  std::cout << "verdict " << (verdict ? "PASS" : "FAIL") << ", report " << out.string() << "\n";
  return verdict ? 0 : 1;
}

void attach_conservation(CLI::App* app, ConservationOptions& c) {
  app->add_option("--mmax", c.m_max, "highest moment order")->check(CLI::Range(1, 12));
  app->add_option("--flux-c3", c.flux_c3, "cubic coupling for the normalization flux (0 = skip)");
  app->add_option("--harmonic-tol", c.harmonic_tol, "forbidden-harmonic tolerance")->check(CLI::PositiveNumber);
  app->add_option("--class-tol", c.class_tol, "Hermite-class residual tolerance")->check(CLI::PositiveNumber);
  app->add_option("--flux-tol", c.flux_tol, "max |flux| tolerance")->check(CLI::PositiveNumber);
  app->add_option("--symplectic-tol", c.symplectic_tol, "symplectic moment tolerance")
      ->check(CLI::PositiveNumber);
  app->add_option("--nmax", c.n_max, "Fock cutoff for the class projection")->check(CLI::Range(0, 60));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tomokit: tomogram validation and normalization-conservation checks"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string catalog_json;
  auto* catalog = app.add_subcommand("catalog", "list catalog states");
  catalog->add_option("--json", catalog_json, "also write the listing as JSON");

  TransformArgs ta;
  auto* transform = app.add_subcommand("transform", "radon, inverse radon or characteristic function");
  transform->add_option("--state", ta.state, "state spec")->required();
  transform->add_option("--op", ta.op, "radon | iradon | char")
      ->required()
      ->check(CLI::IsMember({"radon", "iradon", "char"}));
  transform->add_option("--output", ta.output, "output manifest (grid) or CSV (char)");
  transform->add_option("--mu-max", ta.mu_max, "char: half-width of the (mu, nu) grid")->check(CLI::PositiveNumber);
  transform->add_option("--n-mu", ta.n_mu, "char: samples per axis");
  ta.grid.attach(transform);

  ValidateArgs va;
  auto* validate = app.add_subcommand("validate", "tomogram-hood checks");
  validate->add_option("--state", va.state, "state spec")->required();
  validate->add_option("--checks", va.checks,
                       "comma list of structural,hirschman,klm,bochner,overlap,fixedpoint,conservation or all");
  validate->add_option("--against", va.against, "comma list of states for the overlap check");
  validate->add_option("--seed", va.seed, "first positivity / sampling seed");
  validate->add_option("--output", va.output, "report path");
  validate->add_option("--norm-tol", va.structural.normalization_tol)->check(CLI::PositiveNumber);
  validate->add_option("--negativity-tol", va.structural.negativity_tol)->check(CLI::PositiveNumber);
  validate->add_option("--parity-tol", va.structural.parity_tol)->check(CLI::PositiveNumber);
  validate->add_option("--homogeneity-tol", va.structural.homogeneity_tol)->check(CLI::PositiveNumber);
  validate->add_option("--hirschman-tol", va.hirschman_tol)->check(CLI::PositiveNumber);
  validate->add_option("--positivity-tol", va.positivity.tol)->check(CLI::PositiveNumber);
  validate->add_option("--n-sets", va.positivity.n_sets, "positivity point sets")->check(CLI::Range(1, 100000));
  validate->add_option("--set-size", va.positivity.set_size, "points per set")->check(CLI::Range(1, 64));
  validate->add_option("--radius", va.positivity.radius, "point disk radius")->check(CLI::PositiveNumber);
  validate->add_option("--overlap-tol", va.overlap_tol)->check(CLI::PositiveNumber);
  validate->add_option("--fixedpoint-tol", va.fixedpoint_tol)->check(CLI::PositiveNumber);
  attach_conservation(validate, va.conservation);
  va.grid.attach(validate);

  ConserveArgs ca;
  auto* conserve = app.add_subcommand("conserve", "moment harmonics, class projection and cubic flux");
  conserve->add_option("--state", ca.state, "state spec")->required();
  conserve->add_option("--output", ca.output, "report path");
  conserve->add_option("--csv", ca.csv, "moment profile CSV path");
  attach_conservation(conserve, ca.conservation);
  ca.grid.attach(conserve);

  EvolveArgs ea;
  auto* evolve = app.add_subcommand("evolve", "evolution experiments");
  evolve->add_option("--state", ea.state, "state spec")->required();
  evolve->add_option("--potential", ea.potential, "e.g. \"c2=0.5,c3=0.1\", harmonic, free");
  evolve->add_option("--t", ea.t, "final time");
  evolve->add_option("--method", ea.method, "drift | fock | liouville | moyal | harmonic")
      ->check(CLI::IsMember({"drift", "fock", "liouville", "moyal", "harmonic"}));
  evolve->add_option("--dt", ea.dt, "time step (0 = automatic)");
  evolve->add_option("--nmax", ea.n_max, "Fock cutoff")->check(CLI::Range(0, 60));
  evolve->add_option("--mass-tol", ea.mass_tol)->check(CLI::PositiveNumber);
  evolve->add_option("--flux-tol", ea.flux_tol)->check(CLI::PositiveNumber);
  evolve->add_option("--membership-tol", ea.membership_tol)->check(CLI::PositiveNumber);
  evolve->add_option("--checkpoints", ea.checkpoints)->check(CLI::Range(1, 100000));
  evolve->add_option("--output", ea.output, "report path");
  evolve->add_option("--csv", ea.csv, "trace CSV path");
  evolve->add_option("--grid-out", ea.grid_out, "final grid manifest path");
  ea.grid.attach(evolve);

  std::vector<std::string> merge_files;
  std::string merge_out;
  auto* report = app.add_subcommand("report", "merge JSON reports");
  report->add_option("--merge", merge_files, "report files")->required()->expected(1, -1);
  report->add_option("--output", merge_out, "merged report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*catalog) return cmd_catalog(catalog_json);
    if (*transform) return cmd_transform(ta);
    if (*validate) return cmd_validate(va);
    if (*conserve) return cmd_conserve(ca);
    if (*evolve) return cmd_evolve(ea);
    if (*report) return cmd_report(merge_files, merge_out);
  } catch (const CLI::Error& e) {
    std::cerr << "tomokit: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "tomokit: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
