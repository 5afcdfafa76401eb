#include "tomokit/evolution.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "tomokit/grid_io.hpp"
#include "tomokit/hermite.hpp"
#include "tomokit/parallel.hpp"

namespace tomokit {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

PolynomialPotential PolynomialPotential::parse(std::string_view text) {
  PolynomialPotential v;
  text = trim(text);
  if (text.empty() || text == "free") return v;
  if (text == "harmonic") {
    v.c[1] = 0.5;
    return v;
  }
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view item = trim(text.substr(0, comma));
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw Error("malformed potential term '" + std::string(item) + "' (expected ck=value)");
    }
    const std::string_view key = trim(item.substr(0, eq));
    const std::string_view val = trim(item.substr(eq + 1));
    if (key.size() != 2 || key[0] != 'c' || key[1] < '1' || key[1] > '9') {
      throw Error("unknown potential coefficient '" + std::string(key) + "' (use c1..c4)");
    }
    const int k = key[1] - '0';
    if (k > 4) throw Error("potential degree is limited to 4");
    double x = 0.0;
    const auto res = std::from_chars(val.data(), val.data() + val.size(), x);
    if (res.ec != std::errc() || res.ptr != val.data() + val.size() || !std::isfinite(x)) {
      throw Error("malformed potential coefficient '" + std::string(val) + "'");
    }
    v.c[static_cast<std::size_t>(k - 1)] = x;
  }
  return v;
}

std::string PolynomialPotential::str() const {
  std::string out;
  for (int k = 1; k <= 4; ++k) {
    if (coefficient(k) == 0.0) continue;
    if (!out.empty()) out += ",";
    out += "c" + std::to_string(k) + "=" + format_double(coefficient(k));
  }
  return out.empty() ? "free" : out;
}

double PolynomialPotential::value(double q) const {
  return q * (c[0] + q * (c[1] + q * (c[2] + q * c[3])));
}
double PolynomialPotential::d1(double q) const {
  return c[0] + q * (2.0 * c[1] + q * (3.0 * c[2] + q * 4.0 * c[3]));
}
double PolynomialPotential::d2(double q) const { return 2.0 * c[1] + q * (6.0 * c[2] + q * 12.0 * c[3]); }
double PolynomialPotential::d3(double q) const { return 6.0 * c[2] + 24.0 * c[3] * q; }

int PolynomialPotential::degree() const {
  for (int k = 4; k >= 1; --k) {
    if (coefficient(k) != 0.0) return k;
  }
  return 0;
}

OpticalTomogramGrid evolve_harmonic_tomogram(const OpticalTomogramGrid& w0, double t) {
  const ParityCircleInterpolator interp(w0);
  const GridSpec& s = w0.spec();
  std::vector<double> values(s.n_x * s.n_theta);
  parallel_for(s.n_theta, [&](std::size_t j) {
    const std::vector<double> row = interp.row(s.theta(j) + t);
    std::copy(row.begin(), row.end(), values.begin() + static_cast<std::ptrdiff_t>(j * s.n_x));
  });
  return {s, std::move(values)};
}

namespace {

double max_abs_p(const GridSpec& s) { return std::max(std::abs(s.p_min), std::abs(s.p_max)); }

template <class F>
double max_over_q(const GridSpec& s, F f) {
  double m = 0.0;
  for (std::size_t i = 0; i < s.n_q; ++i) m = std::max(m, std::abs(f(s.q(i))));
  return m;
}

}  // namespace

double liouville_dt_limit(const GridSpec& spec, const PolynomialPotential& v) {
  spec.validate_phase();
  const double inf = std::numeric_limits<double>::infinity();
  const double pmax = max_abs_p(spec);
  const double fmax = max_over_q(spec, [&](double q) { return v.d1(q); });
  const double a = pmax > 0.0 ? spec.dq() / pmax : inf;
  const double b = fmax > 0.0 ? spec.dp() / fmax : inf;
  return 0.4 * std::min(a, b);
}

double moyal_dt_limit(const GridSpec& spec, const PolynomialPotential& v) {
  const double base = liouville_dt_limit(spec, v);
  const double pmax = max_abs_p(spec);
  const double fmax = max_over_q(spec, [&](double q) { return v.d1(q); });
  const double tmax = max_over_q(spec, [&](double q) { return v.d3(q); });
  // symbol maxima of the first- and third-derivative stencils: 1.3722/h, 4.6/h^3
  const double dp = spec.dp();
  const double rate = 1.3722 * (pmax / spec.dq() + fmax / dp) + 4.6 * tmax / (24.0 * dp * dp * dp);
  return rate > 0.0 ? std::min(base, 2.5 / rate) : base;
}

namespace {

constexpr std::size_t kHalo = 3;

template <bool Moyal>
PhaseEvolution evolve_phase(const WignerGrid& w0, const PolynomialPotential& v, double t_end,
                            double dt) {
  const GridSpec& s = w0.spec();
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw Error("t_end must be finite and >= 0");
  const double limit = Moyal ? moyal_dt_limit(s, v) : liouville_dt_limit(s, v);
  std::size_t steps = 0;
  if (t_end > 0.0) {
    if (dt <= 0.0) {
      steps = static_cast<std::size_t>(std::ceil(t_end / limit));
    } else {
      if (dt > limit * (1.0 + 1e-12)) {
        throw Error("time step " + format_double(dt) + " violates the stability limit " +
                    format_double(limit));
      }
      steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
    }
    steps = std::max<std::size_t>(steps, 1);
  }
  const double h = steps > 0 ? t_end / static_cast<double>(steps) : 0.0;

  const std::size_t nq = s.n_q, np = s.n_p;
  const std::size_t stride = np + 2 * kHalo;
  const std::size_t total = (nq + 2 * kHalo) * stride;
  const std::size_t origin = kHalo * stride + kHalo;

  std::vector<double> y(total, 0.0), tmp(total, 0.0), k(total, 0.0), acc(total, 0.0);
  for (std::size_t i = 0; i < nq; ++i) {
    for (std::size_t j = 0; j < np; ++j) y[origin + i * stride + j] = w0(i, j);
  }

  std::vector<double> pv(np), force(nq), third(nq);
  for (std::size_t j = 0; j < np; ++j) pv[j] = s.p(j);
  for (std::size_t i = 0; i < nq; ++i) {
    force[i] = v.d1(s.q(i));
    third[i] = -v.d3(s.q(i)) / 24.0;
  }
  const double a1q = 8.0 / (12.0 * s.dq()), a2q = 1.0 / (12.0 * s.dq());
  const double a1p = 8.0 / (12.0 * s.dp()), a2p = 1.0 / (12.0 * s.dp());
  const double c3p = 1.0 / (8.0 * s.dp() * s.dp() * s.dp());
  const auto sq = static_cast<std::ptrdiff_t>(stride);

  auto rhs = [&](const double* src, double* dst) {
    parallel_for(nq, [&](std::size_t i) {
      const double* __restrict r = src + origin + i * stride;
      double* __restrict o = dst + origin + i * stride;
      const double* __restrict pr = pv.data();
      const double f = force[i];
      const double b = third[i];
      for (std::size_t j = 0; j < np; ++j) {
        const auto jj = static_cast<std::ptrdiff_t>(j);
        const double dq = a1q * (r[jj + sq] - r[jj - sq]) - a2q * (r[jj + 2 * sq] - r[jj - 2 * sq]);
        const double d1 = r[jj + 1] - r[jj - 1];
        const double d2 = r[jj + 2] - r[jj - 2];
        double val = -pr[j] * dq + f * (a1p * d1 - a2p * d2);
        if constexpr (Moyal) {
          const double d3 = r[jj + 3] - r[jj - 3];
          val += b * c3p * (-d3 + 8.0 * d2 - 13.0 * d1);
        }
        o[j] = val;
      }
    });
  };

  const double cell = s.dq() * s.dp();
  auto record = [&](double t, PhaseEvolution& out) {
    double m = 0.0, mq = 0.0, mp = 0.0, mq2 = 0.0, mp2 = 0.0, band = 0.0;
    for (std::size_t i = 0; i < nq; ++i) {
      const double wq = (i == 0 || i + 1 == nq) ? 0.5 : 1.0;
      const double q = s.q(i);
      const double* __restrict r = y.data() + origin + i * stride;
      const double* __restrict pr = pv.data();
      double rm = 0.0, rp = 0.0, rp2 = 0.0;
      for (std::size_t j = 0; j < np; ++j) {
        rm += r[j];
        rp += r[j] * pr[j];
        rp2 += r[j] * pr[j] * pr[j];
      }
      // trapezoid end weights in p
      const double ends = 0.5 * (r[0] + r[np - 1]);
      rm -= ends;
      rp -= 0.5 * (r[0] * pr[0] + r[np - 1] * pr[np - 1]);
      rp2 -= 0.5 * (r[0] * pr[0] * pr[0] + r[np - 1] * pr[np - 1] * pr[np - 1]);
      m += wq * rm;
      mq += wq * rm * q;
      mq2 += wq * rm * q * q;
      mp += wq * rp;
      mp2 += wq * rp2;
      if (i < kHalo || i + kHalo >= nq) {
        for (std::size_t j = 0; j < np; ++j) band += std::abs(r[j]);
      } else {
        for (std::size_t j = 0; j < kHalo; ++j) band += std::abs(r[j]) + std::abs(r[np - 1 - j]);
      }
    }
    out.trace.t.push_back(t);
    out.trace.mass.push_back(m * cell);
    out.trace.observables.push_back({mq * cell, mp * cell, mq2 * cell, mp2 * cell});
    const double ref = std::max(std::abs(out.trace.mass.front()), 1e-300);
    out.outflow = std::max(out.outflow, band * cell / ref);
  };

  PhaseEvolution out{w0, {}, h, steps, 0.0, false};
  out.trace.t.reserve(steps + 1);
  out.trace.mass.reserve(steps + 1);
  out.trace.observables.reserve(steps + 1);
  record(0.0, out);
  for (std::size_t n = 0; n < steps; ++n) {
    double* __restrict py = y.data();
    double* __restrict pt = tmp.data();
    double* __restrict pk = k.data();
    double* __restrict pa = acc.data();
    rhs(py, pk);
    for (std::size_t x = 0; x < total; ++x) {
      pa[x] = py[x] + (h / 6.0) * pk[x];
      pt[x] = py[x] + 0.5 * h * pk[x];
    }
    rhs(pt, pk);
    for (std::size_t x = 0; x < total; ++x) {
      pa[x] += (h / 3.0) * pk[x];
      pt[x] = py[x] + 0.5 * h * pk[x];
    }
    rhs(pt, pk);
    for (std::size_t x = 0; x < total; ++x) {
      pa[x] += (h / 3.0) * pk[x];
      pt[x] = py[x] + h * pk[x];
    }
    rhs(pt, pk);
    for (std::size_t x = 0; x < total; ++x) py[x] = pa[x] + (h / 6.0) * pk[x];
    record(static_cast<double>(n + 1) * h, out);
    if (!std::isfinite(out.trace.mass.back())) throw Error("phase-space integration diverged");
  }
  out.outflow_warning = out.outflow > 1e-6;

  std::vector<double> values(nq * np);
  for (std::size_t i = 0; i < nq; ++i) {
    for (std::size_t j = 0; j < np; ++j) values[i * np + j] = y[origin + i * stride + j];
  }
  out.grid = WignerGrid(s, std::move(values));
  return out;
}

}  // namespace

PhaseEvolution evolve_liouville(const WignerGrid& w0, const PolynomialPotential& v, double t_end,
                                double dt) {
  return evolve_phase<false>(w0, v, t_end, dt);
}

PhaseEvolution evolve_moyal(const WignerGrid& w0, const PolynomialPotential& v, double t_end,
                            double dt) {
  return evolve_phase<true>(w0, v, t_end, dt);
}

namespace {

constexpr int kFockPad = 6;

struct PaddedOperators {
  Eigen::MatrixXcd q, p;
};

PaddedOperators padded_quadratures(int n_max) {
  const QuadratureOperators ops = quadrature_operators(n_max + kFockPad);
  return {ops.q, ops.p};
}

Eigen::MatrixXcd truncate(const Eigen::MatrixXcd& m, int n_max) {
  return m.topLeftCorner(n_max + 1, n_max + 1);
}

}  // namespace

Eigen::MatrixXcd hamiltonian_matrix(const PolynomialPotential& v, int n_max) {
  if (n_max < 0) throw Error("n_max must be >= 0");
  const PaddedOperators ops = padded_quadratures(n_max);
  const Eigen::MatrixXcd q2 = ops.q * ops.q;
  Eigen::MatrixXcd h = 0.5 * ops.p * ops.p;
  h += v.coefficient(1) * ops.q + v.coefficient(2) * q2 + v.coefficient(3) * (q2 * ops.q) +
       v.coefficient(4) * (q2 * q2);
  const Eigen::MatrixXcd t = truncate(h, n_max);
  return 0.5 * (t + t.adjoint());
}

FockEvolution evolve_fock(const FockMatrix& rho0, const PolynomialPotential& v, double t_end,
                          double dt, std::size_t checkpoints) {
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw Error("t_end must be finite and >= 0");
  if (checkpoints == 0) throw Error("need at least one checkpoint");
  const int n_max = rho0.n_max();
  const Eigen::MatrixXcd h = hamiltonian_matrix(v, n_max);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  const double spread = std::max(es.eigenvalues().maxCoeff() - es.eigenvalues().minCoeff(), 1e-12);
  if (dt <= 0.0) {
    dt = std::min(1e-3, 1.0 / spread);
  } else if (dt * spread > 2.5) {
    throw Error("time step " + format_double(dt) + " is unstable for this Hamiltonian (limit " +
                format_double(2.5 / spread) + ")");
  }
  const std::size_t per = t_end > 0.0
                              ? std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(
                                                             t_end / static_cast<double>(checkpoints) / dt - 1e-9)))
                              : 0;
  const double step = per > 0 ? t_end / static_cast<double>(per * checkpoints) : 0.0;

  const PaddedOperators ops = padded_quadratures(n_max);
  const Eigen::MatrixXcd q = truncate(ops.q, n_max);
  const Eigen::MatrixXcd p = truncate(ops.p, n_max);
  const Eigen::MatrixXcd q2 = truncate(ops.q * ops.q, n_max);
  const Eigen::MatrixXcd p2 = truncate(ops.p * ops.p, n_max);

  Eigen::MatrixXcd rho = rho0.matrix();
  FockEvolution out{rho0, {}, {}, {}, step, per * checkpoints, 0.0, false};
  const cd minus_i(0.0, -1.0);
  auto f = [&](const Eigen::MatrixXcd& r) -> Eigen::MatrixXcd { return minus_i * (h * r - r * h); };

  auto record = [&](double t) {
    out.trace.t.push_back(t);
    out.trace.mass.push_back(rho.trace().real());
    out.trace.observables.push_back({(rho * q).trace().real(), (rho * p).trace().real(),
                                     (rho * q2).trace().real(), (rho * p2).trace().real()});
    out.energy.push_back((rho * h).trace().real());
    const int top = std::max(0, n_max - 1);
    double leak = 0.0;
    for (int a = 0; a <= n_max; ++a) {
      for (int b = top; b <= n_max; ++b) leak = std::max({leak, std::abs(rho(a, b)), std::abs(rho(b, a))});
    }
    out.leakage = std::max(out.leakage, leak);
    out.snapshots.emplace_back(rho, 1e-8);
  };

  record(0.0);
  for (std::size_t c = 0; c < checkpoints && per > 0; ++c) {
    for (std::size_t n = 0; n < per; ++n) {
      const Eigen::MatrixXcd k1 = f(rho);
      const Eigen::MatrixXcd k2 = f(rho + 0.5 * step * k1);
      const Eigen::MatrixXcd k3 = f(rho + 0.5 * step * k2);
      const Eigen::MatrixXcd k4 = f(rho + step * k3);
      rho += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    record(static_cast<double>((c + 1) * per) * step);
  }
  out.leakage_warning = out.leakage > 1e-8;
  out.rho = FockMatrix(rho, 1e-8);
  return out;
}

DriftReport drift_experiment(const State& state, const PolynomialPotential& v, double t_end,
                             const DriftOptions& opt) {
  const GridSpec& g = opt.grid;
  const OpticalTomogramGrid w = state.optical_grid(g);
  DriftReport rep;
  rep.c3 = v.coefficient(3);

  const ClassProjection proj = hermite_class_projection(w, opt.n_max);
  rep.projection_residual = proj.residual;
  std::optional<FockMatrix> rho = state.fock(opt.n_max);
  if (rho) {
    rep.member = true;
    rep.route = "fock-representation";
  } else if (proj.residual < opt.membership_tol) {
    rep.member = true;
    rep.route = "class-projection";
    rho = proj.rho;
  } else {
    rep.route = "none";
  }

  if (rep.member) {
    const FockEvolution fe = evolve_fock(*rho, v, t_end, 0.0, opt.checkpoints);
    rep.leakage_warning = fe.leakage_warning;
    // int w dX on the grid = sum rho_nm e^{i theta (m-n)} G_nm, G the grid Gram matrix
    const int n = fe.rho.n_max();
    Eigen::MatrixXd psi(static_cast<Eigen::Index>(g.n_x), n + 1);
    for (std::size_t i = 0; i < g.n_x; ++i) {
      const std::vector<double> hv = hermite_functions(n, g.x(i));
      const double wx = (i == 0 || i + 1 == g.n_x) ? 0.5 * g.dx() : g.dx();
      for (int k = 0; k <= n; ++k) psi(static_cast<Eigen::Index>(i), k) = std::sqrt(wx) * hv[static_cast<std::size_t>(k)];
    }
    const Eigen::MatrixXd gram = psi.transpose() * psi;
    for (std::size_t c = 0; c < fe.snapshots.size(); ++c) {
      const Eigen::MatrixXcd weighted = fe.snapshots[c].matrix().cwiseProduct(gram.cast<cd>());
      double lo = std::numeric_limits<double>::infinity(), hi = -lo;
      for (std::size_t j = 0; j < g.n_theta; ++j) {
        Eigen::VectorXcd e(n + 1);
        for (int k = 0; k <= n; ++k) e(k) = std::polar(1.0, k * g.theta(j));
        const double mass = e.dot(weighted * e).real();
        lo = std::min(lo, mass);
        hi = std::max(hi, mass);
      }
      rep.t.push_back(fe.trace.t[c]);
      rep.mass_min.push_back(lo);
      rep.mass_max.push_back(hi);
    }
    const double m0 = 0.5 * (rep.mass_min.front() + rep.mass_max.front());
    for (std::size_t c = 0; c < rep.t.size(); ++c) {
      rep.max_mass_change =
          std::max({rep.max_mass_change, std::abs(rep.mass_min[c] - m0), std::abs(rep.mass_max[c] - m0)});
    }
  }

  if (rep.c3 != 0.0) {
    rep.flux = normalization_flux_cubic(w, rep.c3);
    rep.flux_summary = summarize_flux(*rep.flux, g);
    if (g.n_theta % 4 == 0) rep.flux_at_quarter_pi = (*rep.flux)[g.n_theta / 4];
  }

  if (rep.member) {
    rep.note = "class member: normalization follows the Fock-basis evolution";
  } else if (rep.c3 == 0.0) {
    rep.note = "no implemented flux functional applies (c3 = 0); conservation is not claimed";
  } else {
    rep.note = "not a class member: instantaneous cubic flux reported, no time integration attempted";
  }
  return rep;
}

}  // namespace tomokit
