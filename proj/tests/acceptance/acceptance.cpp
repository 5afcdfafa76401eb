// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "json.hpp"
#include "tomokit/catalog.hpp"
#include "tomokit/conservation.hpp"
#include "tomokit/evolution.hpp"
#include "tomokit/transforms.hpp"
#include "tomokit/validation.hpp"

using namespace tomokit;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Outcome {
  bool pass = true;
  std::string summary;

  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!summary.empty()) summary += "; ";
    summary += what + (ok ? "" : " [X]");
  }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double detail(const CheckReport& r, const std::string& key) {
  for (const auto& [k, v] : r.details) {
    if (k != key) continue;
    if (const auto* d = std::get_if<double>(&v)) return *d;
    if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
  }
  return std::nan("");
}

const CheckReport& find(const std::vector<CheckReport>& rs, const std::string& name) {
  for (const CheckReport& r : rs)
    if (r.check == name) return r;
  throw Error("missing report " + name);
}

State resolve(const std::string& name) { return State::resolve(StateSpec::parse(name)); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double relative_l2(std::span<const double> a, std::span<const double> ref) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - ref[i]) * (a[i] - ref[i]);
    den += ref[i] * ref[i];
  }
  return std::sqrt(num / den);
}

double max_drift(const EvolutionTrace& tr) {
  double d = 0.0;
  for (double m : tr.mass) d = std::max(d, std::abs(m - tr.mass.front()));
  return d;
}

FockMatrix random_hermitian(std::mt19937_64& rng, int n_max) {
  std::normal_distribution<double> g;
  const int d = n_max + 1;
  Eigen::MatrixXcd a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = {g(rng), g(rng)};
  Eigen::MatrixXcd h = 0.5 * (a + a.adjoint());
  for (int i = 0; i < d; ++i) h(i, i) += 2.0 * d;
  h /= h.trace().real();
  return FockMatrix(h);
}

Outcome ac1() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const GridSpec g = default_grid();
  const OverlapResult r = pure_state_overlap(resolve("w1").optical_grid(g), FockMatrix::diagonal({1.0}), g);
  const double t = seconds_since(t0);
  o.require(std::abs(r.value + 0.125) <= 2e-3, "overlap(w1, |0><0|) = " + num(r.value));
  o.require(t < 5.0, "runtime " + num(t) + " s");
  return o;
}

Outcome ac2() {
  Outcome o;
  const ClassProjection p = hermite_class_projection(resolve("w1").optical_grid(default_grid()), 24);
  const double expect[] = {-0.125, 0.625, 0.5};
  double worst = 0.0;
  for (int n = 0; n <= p.rho.n_max(); ++n)
    for (int m = 0; m <= p.rho.n_max(); ++m) {
      const double target = (n == m && n <= 2) ? expect[n] : 0.0;
      worst = std::max(worst, std::abs(p.rho(n, m) - target));
    }
  o.require(worst <= 1e-3, "max |rho - diag(-1/8, 5/8, 1/2)| = " + num(worst));
  o.require(p.residual < 1e-6, "residual " + num(p.residual));
  o.require(std::abs(p.rho.trace() - 1.0) <= 1e-6, "trace " + num(p.rho.trace()));
  return o;
}

Outcome ac3() {
  Outcome o;
  const GridSpec g = default_grid();
  const CheckReport ground = check_hirschman(resolve("ground").optical_grid(g));
  o.require(std::abs(ground.metric) <= 1e-3, "ground S+S-ln(pi e) = " + num(ground.metric));
  double lowest = 1e300;
  std::string lowest_name;
  for (const char* name : {"ground", "fock0", "fock1", "fock2", "fock3", "fock4", "fock5", "coherent",
                           "coherent:-1.5,0.7", "squeezed", "squeezed:0.8"}) {
    const CheckReport r = check_hirschman(resolve(name).optical_grid(g));
    if (!(r.metric >= lowest)) {
      lowest = r.metric;
      lowest_name = name;
    }
  }
  o.require(lowest >= -1e-3, "genuine minimum " + num(lowest) + " (" + lowest_name + ")");
  const CheckReport c = check_hirschman(resolve("example-cos3").optical_grid(g));
  o.require(c.pass, "example-cos3 " + num(c.metric));
  return o;
}

Outcome ac4() {
  Outcome o;
  const GridSpec g = default_grid();
  const OpticalTomogramGrid w = resolve("example-cos3").optical_grid(g);
  const MomentProfile g1 = moment_profile(w, 1);
  double c3 = std::nan("");
  for (const Harmonic& h : harmonic_residual(g1).forbidden)
    if (h.k == 3) c3 = h.cos_coef;
  o.require(std::abs(c3 - 0.25) <= 1e-3, "cos 3theta coefficient " + num(c3));
  const std::vector<double> flux = normalization_flux_cubic(w, 1.0);
  const double f = flux[g.n_theta / 4];
  o.require(std::abs(f - 1.5) <= 0.01, "flux(pi/4) " + num(f));
  const double l2 = ode_residual(g1).l2;
  o.require(std::abs(l2 - 2.5066) <= 0.01, "ODE residual L2 " + num(l2));
  return o;
}

Outcome ac5() {
  Outcome o;
  const SymplecticView f1 = resolve("f1").symplectic();
  PositivityOptions po;
  po.n_sets = 100;
  po.set_size = 6;
  const CheckReport klm = check_positivity(f1, PositivityMode::quantum, po);
  o.require(klm.pass && detail(klm, "min_eigenvalue") >= -1e-8,
            "KLM min eigenvalue " + num(detail(klm, "min_eigenvalue")) + " over 100 sets of 6");
  const CheckReport fp = check_radon_fixed_point(f1);
  const double gap = detail(fp, "gap_at_X0_mu2_nu0");
  o.require(!fp.pass, "fixed point fails (" + num(fp.metric) + ")");
  // the detail is signed, M - M_reprojected
  o.require(std::abs(std::abs(gap) - 0.0156) <= 1e-3, "|gap| at (0, 2, 0) " + num(std::abs(gap)));
  return o;
}

Outcome ac6() {
  Outcome o;
  const SymplecticView m1 = resolve("M1").symplectic();
  StructuralOptions so;
  so.homogeneity_tol = 1e-12;
  const CheckReport h = find(check_structural(m1, Kind::symplectic, so), "structural.homogeneity");
  o.require(h.metric < 1e-12, "homogeneity defect " + num(h.metric));
  const double r1 = symplectic_moment_residual(m1, 1), r2 = symplectic_moment_residual(m1, 2);
  o.require(r1 < 1e-8 && r2 < 1e-8, "moment residuals " + num(r1) + ", " + num(r2));
  const CheckReport klm = check_positivity(m1, PositivityMode::quantum);
  o.require(!klm.pass && !klm.seeds.empty(),
            "KLM fails, seed " + std::to_string(klm.seeds.empty() ? 0 : klm.seeds.front()) + " eigenvalue " +
                num(detail(klm, "min_eigenvalue")));
  return o;
}

Outcome ac7() {
  Outcome o;
  const GridSpec g = default_grid();
  double worst = 0.0;
  for (int n = 0; n <= 3; ++n) {
    const OpticalTomogramGrid w = resolve("fock" + std::to_string(n)).optical_grid(g);
    const OpticalTomogramGrid back = radon_optical(inverse_radon_optical(w, g).grid, g);
    worst = std::max(worst, relative_l2(back.values(), w.values()));
  }
  o.require(worst < 1e-2, "Fock n<=3 round trip L2 " + num(worst));
  GridSpec odd = g;
  odd.n_q = odd.n_p = 257;
  const Reconstruction r = inverse_radon_optical(resolve("w1").optical_grid(odd), odd);
  const double w00 = r.grid(128, 128);
  o.require(std::abs(w00 + 1.0 / (4 * kPi)) <= 1e-3, "W1(0,0) " + num(w00));
  return o;
}

Outcome ac8() {
  Outcome o;
  GridSpec g = default_grid();
  g.q_min = -6.0;
  g.q_max = 6.0;
  g.p_min = -11.0;
  g.p_max = 11.0;
  g.n_q = g.n_p = 256;
  const WignerGrid w0 = resolve("ground").wigner_grid(g);
  const PolynomialPotential quartic = PolynomialPotential::parse("c4=0.25");
  auto t0 = std::chrono::steady_clock::now();
  const PhaseEvolution l = evolve_liouville(w0, quartic, 1.0);
  const double tl = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  const PhaseEvolution m = evolve_moyal(w0, quartic, 1.0);
  const double tm = seconds_since(t0);
  o.require(max_drift(l.trace) < 1e-6 && tl < 60.0,
            "Liouville drift " + num(max_drift(l.trace)) + " in " + num(tl) + " s");
  o.require(max_drift(m.trace) < 1e-6 && tm < 60.0,
            "Moyal drift " + num(max_drift(m.trace)) + " in " + num(tm) + " s");

  const PolynomialPotential quad = PolynomialPotential::parse("c1=0.2,c2=0.5");
  const WignerGrid w1 = resolve("W1-quartic").wigner_grid(g);
  const double dt = moyal_dt_limit(g, quad) / 2;
  const PhaseEvolution a = evolve_liouville(w1, quad, dt, dt);
  const PhaseEvolution b = evolve_moyal(w1, quad, dt, dt);
  double diff = 0.0;
  for (std::size_t i = 0; i < a.grid.values().size(); ++i)
    diff = std::max(diff, std::abs(a.grid.values()[i] - b.grid.values()[i]));
  o.require(diff < 1e-12, "quadratic per-step difference " + num(diff));
  return o;
}

Outcome ac9() {
  Outcome o;
  const GridSpec g = default_grid();
  std::mt19937_64 rng(2024);
  const QuadratureOperators big = quadrature_operators(6);
  const QuadratureOperators ops = quadrature_operators(4);
  const Eigen::MatrixXcd q2 = (big.q * big.q).topLeftCorner(5, 5);
  const Eigen::MatrixXcd p2 = (big.p * big.p).topLeftCorner(5, 5);
  const Eigen::MatrixXcd qp = (big.q * big.p + big.p * big.q).topLeftCorner(5, 5);
  double e1 = 0.0, e2 = 0.0;
  for (int k = 0; k < 20; ++k) {
    const FockMatrix rho = random_hermitian(rng, 4);
    const OpticalTomogramGrid w = class_tomogram(rho, g);
    const MomentProfile g1 = moment_profile(w, 1), g2 = moment_profile(w, 2);
    const double eq = expectation(rho, ops.q).real(), ep = expectation(rho, ops.p).real();
    const double eq2 = expectation(rho, q2).real(), ep2 = expectation(rho, p2).real();
    const double eqp = expectation(rho, qp).real();
    for (std::size_t j = 0; j < g.n_theta; ++j) {
      const double c = std::cos(g.theta(j)), s = std::sin(g.theta(j));
      e1 = std::max(e1, std::abs(g1.values[j] - (eq * c + ep * s)));
      e2 = std::max(e2, std::abs(g2.values[j] - (eq2 * c * c + ep2 * s * s + eqp * s * c)));
    }
  }
  o.require(e1 <= 1e-6, "g1 max error " + num(e1));
  o.require(e2 <= 1e-6, "g2 max error " + num(e2));
  return o;
}

int run_cli(const fs::path& dir, const std::string& args) {
  const std::string cmd = "cd '" + dir.string() + "' && '" TOMOKIT_CLI "' " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome ac10() {
  Outcome o;
  const fs::path dir = fs::temp_directory_path() / "tomokit-acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::vector<std::string> genuine, counter;
  for (const CatalogEntry& e : catalog_entries()) {
    if (!e.genuine) {
      counter.push_back(e.syntax);
    } else if (e.syntax == "fockN") {
      for (int n = 0; n <= 5; ++n) genuine.push_back("fock" + std::to_string(n));
    } else {
      genuine.push_back(e.syntax.substr(0, e.syntax.find('[')));
    }
  }
  std::string bad;
  for (const std::string& s : genuine) {
    if (run_cli(dir, "validate --state " + s + " --checks all --seed 42 --output " + s + ".json") != 0) bad += " " + s;
  }
  o.require(bad.empty(), std::to_string(genuine.size()) + " genuine states exit 0" + (bad.empty() ? "" : ":" + bad));
  bad.clear();
  for (const std::string& s : counter) {
    const int code = run_cli(dir, "validate --state " + s + " --checks all --seed 42 --output " + s + ".json");
    bool named = false;
    try {
      const auto j = nlohmann::json::parse(slurp(dir / (s + ".json")));
      named = j.at("diagnosis_check_failed").get<bool>();
    } catch (const std::exception&) {
    }
    if (code != 1 || !named) bad += " " + s;
  }
  o.require(bad.empty(), std::to_string(counter.size()) + " counterexamples exit 1 with the diagnosed check failing" +
                             (bad.empty() ? "" : ":" + bad));
  bool same = true;
  for (const std::string& s : {std::string("ground"), std::string("w1")}) {
    run_cli(dir, "validate --state " + s + " --checks all --seed 42 --output again.json");
    same = same && slurp(dir / (s + ".json")) == slurp(dir / "again.json");
  }
  o.require(same, "reports byte-identical on rerun");
  fs::remove_all(dir);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4},  {"AC5", ac5},
      {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9}, {"AC10", ac10},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.summary = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failed;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.summary.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
