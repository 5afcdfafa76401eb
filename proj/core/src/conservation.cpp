#include "tomokit/conservation.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Dense>

#include "interpolation.hpp"
#include "tomokit/hermite.hpp"
#include "tomokit/parallel.hpp"

namespace tomokit {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// Real Fourier coefficients a_k, b_k (k = 0..N) of a profile on the
// parity-extended circle of 2N samples.
struct Spectrum {
  std::vector<double> a;
  std::vector<double> b;
};

Spectrum circle_spectrum(const std::vector<double>& g, int order) {
  const std::size_t n = g.size();
  const std::size_t n2 = 2 * n;
  const double sign = (order % 2 == 0) ? 1.0 : -1.0;
  std::vector<double> circle(n2);
  for (std::size_t j = 0; j < n; ++j) {
    circle[j] = g[j];
    circle[j + n] = sign * g[j];
  }
  Spectrum s{std::vector<double>(n + 1, 0.0), std::vector<double>(n + 1, 0.0)};
  for (std::size_t k = 0; k <= n; ++k) {
    double re = 0.0, im = 0.0;
    for (std::size_t l = 0; l < n2; ++l) {
      const double ang = 2.0 * kPi * static_cast<double>((k * l) % n2) / static_cast<double>(n2);
      re += circle[l] * std::cos(ang);
      im -= circle[l] * std::sin(ang);
    }
    re /= static_cast<double>(n2);
    im /= static_cast<double>(n2);
    if (k == 0 || k == n) {
      s.a[k] = re;
    } else {
      s.a[k] = 2.0 * re;
      s.b[k] = -2.0 * im;
    }
  }
  return s;
}

bool allowed(int k, int m) { return k <= m && (k - m) % 2 == 0; }

}  // namespace

MomentProfile moment_profile(const OpticalTomogramGrid& w, int m) {
  if (m < 0) throw Error("moment order must be >= 0");
  const GridSpec& s = w.spec();
  MomentProfile g;
  g.order = m;
  g.spec = s;
  g.values.resize(s.n_theta);
  std::vector<double> xm(s.n_x);
  for (std::size_t i = 0; i < s.n_x; ++i) xm[i] = std::pow(s.x(i), m);
  std::vector<double> f(s.n_x);
  double edge = 0.0;
  for (std::size_t j = 0; j < s.n_theta; ++j) {
    for (std::size_t i = 0; i < s.n_x; ++i) f[i] = xm[i] * w(j, i);
    g.values[j] = trapezoid(f, s.dx());
    edge = std::max({edge, std::abs(w(j, 0)), std::abs(w(j, s.n_x - 1))});
  }
  g.tail_bound = edge * std::pow(s.x_max, m);
  g.truncation_warning = g.tail_bound > 1e-6;
  return g;
}

HarmonicFit harmonic_residual(const MomentProfile& g) {
  if (g.values.size() < 2) throw Error("harmonic analysis needs at least two phases");
  const Spectrum s = circle_spectrum(g.values, g.order);
  HarmonicFit fit;
  fit.order = g.order;
  double sq = 0.0;
  for (std::size_t k = 0; k < s.a.size(); ++k) {
    const int kk = static_cast<int>(k);
    // odd-even mismatched harmonics vanish on the extended circle
    if ((kk - g.order) % 2 != 0) continue;
    const Harmonic h{kk, s.a[k], s.b[k]};
    if (allowed(kk, g.order)) {
      fit.allowed.push_back(h);
    } else {
      fit.forbidden.push_back(h);
      sq += h.cos_coef * h.cos_coef + h.sin_coef * h.sin_coef;
    }
  }
  fit.residual = std::sqrt(sq);
  return fit;
}

OdeResidual ode_residual(const MomentProfile& g) {
  if (g.order < 0) throw Error("moment order must be >= 0");
  const Spectrum s = circle_spectrum(g.values, g.order);
  const std::size_t n = g.values.size();
  const int m = g.order;
  OdeResidual out;
  out.values.assign(n, 0.0);

  double high = 0.0, total = 0.0;
  for (std::size_t k = 0; k < s.a.size(); ++k) {
    const double e = s.a[k] * s.a[k] + s.b[k] * s.b[k];
    total += e;
    if (2 * k > n) high += e;
  }
  out.noisy = total > 0.0 && high > 0.1 * total;

  for (std::size_t k = 0; k < s.a.size(); ++k) {
    const double j = static_cast<double>(k);
    double factor = 1.0;
    double ca = s.a[k], cb = s.b[k];  // coefficients of cos, sin after the operator
    if (m % 2 == 1) {
      for (int q = 0; q <= (m - 1) / 2; ++q) factor *= (2.0 * q + 1.0) * (2.0 * q + 1.0) - j * j;
      ca *= factor;
      cb *= factor;
    } else {
      for (int q = 1; q <= m / 2; ++q) factor *= (2.0 * q) * (2.0 * q) - j * j;
      // d/dtheta: a cos + b sin -> j b cos - j a sin
      const double na = j * cb * factor;
      const double nb = -j * ca * factor;
      ca = na;
      cb = nb;
    }
    if (ca == 0.0 && cb == 0.0) continue;
    for (std::size_t l = 0; l < n; ++l) {
      const double th = g.spec.theta(l);
      out.values[l] += ca * std::cos(j * th) + cb * std::sin(j * th);
    }
  }
  double sq = 0.0;
  for (double v : out.values) sq += v * v;
  out.l2 = std::sqrt(sq * g.spec.dtheta());
  return out;
}

std::vector<double> normalization_flux_cubic(const OpticalTomogramGrid& w, double coupling) {
  const OdeResidual r = ode_residual(moment_profile(w, 1));
  std::vector<double> flux(r.values.size());
  for (std::size_t j = 0; j < flux.size(); ++j) {
    const double s = std::sin(w.spec().theta(j));
    flux[j] = coupling * 3.0 * s * s * s * r.values[j];
  }
  return flux;
}

FluxSummary summarize_flux(const std::vector<double>& flux, const GridSpec& spec) {
  FluxSummary out;
  for (double f : flux) {
    out.integral += f;
    out.l1 += std::abs(f);
    out.max_abs = std::max(out.max_abs, std::abs(f));
  }
  out.integral *= spec.dtheta();
  out.l1 *= spec.dtheta();
  return out;
}

std::vector<std::array<double, 2>> symplectic_panel() {
  std::vector<std::array<double, 2>> panel;
  for (double r : {0.5, 1.0, 1.5, 2.0, 2.5}) {
    for (int a = 0; a < 12; ++a) {
      const double ang = 2.0 * kPi * a / 12.0;
      panel.push_back({r * std::cos(ang), r * std::sin(ang)});
    }
  }
  return panel;
}

double symplectic_moment_residual(const SymplecticView& view, int m,
                                  const std::vector<std::array<double, 2>>& panel,
                                  const GridSpec& grid) {
  if (m < 0) throw Error("moment order must be >= 0");
  grid.validate_tomogram();
  const auto rows = static_cast<Eigen::Index>(panel.size());
  Eigen::MatrixXd a(rows, m + 1);
  Eigen::VectorXd b(rows);
  std::vector<double> f(grid.n_x);
  for (Eigen::Index p = 0; p < rows; ++p) {
    const double mu = panel[static_cast<std::size_t>(p)][0];
    const double nu = panel[static_cast<std::size_t>(p)][1];
    const double scale = view.x_scale(mu, nu);
    for (std::size_t i = 0; i < grid.n_x; ++i) {
      const double x = scale * grid.x(i);
      f[i] = std::pow(x, m) * view(x, mu, nu);
    }
    b(p) = trapezoid(f, scale * grid.dx());
    for (int k = 0; k <= m; ++k) a(p, k) = std::pow(mu, k) * std::pow(nu, m - k);
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  if (qr.rank() < m + 1) throw Error("moment panel cannot determine a degree-" + std::to_string(m) + " polynomial");
  const Eigen::VectorXd misfit = a * qr.solve(b) - b;
  const double norm = b.norm();
  return norm > 1e-12 ? misfit.norm() / norm : misfit.norm();
}

OpticalTomogramGrid class_tomogram(const FockMatrix& rho, const GridSpec& spec) {
  spec.validate_tomogram();
  const int n_max = rho.n_max();
  std::vector<double> values(spec.n_x * spec.n_theta);
  std::vector<Eigen::VectorXcd> phases(spec.n_theta, Eigen::VectorXcd(n_max + 1));
  for (std::size_t j = 0; j < spec.n_theta; ++j) {
    for (int m = 0; m <= n_max; ++m) phases[j](m) = std::polar(1.0, m * spec.theta(j));
  }
  parallel_for(spec.n_x, [&](std::size_t i) {
    const std::vector<double> psi = hermite_functions(n_max, spec.x(i));
    Eigen::VectorXcd a(n_max + 1);
    for (std::size_t j = 0; j < spec.n_theta; ++j) {
      for (int m = 0; m <= n_max; ++m) a(m) = phases[j](m) * psi[static_cast<std::size_t>(m)];
      values[j * spec.n_x + i] = a.dot(rho.matrix() * a).real();
    }
  });
  return {spec, std::move(values)};
}

ClassProjection hermite_class_projection(const OpticalTomogramGrid& w, int n_max) {
  const GridSpec& s = w.spec();
  const std::size_t nx = s.n_x;
  const std::size_t nt = s.n_theta;
  if (n_max < 0) throw Error("n_max must be >= 0");
  if (static_cast<std::size_t>(n_max) >= nt) {
    throw Error("n_max must stay below n_theta to resolve every harmonic");
  }
  const std::size_t n2 = 2 * nt;
  // theta DFT on the parity circle: coefficient of e^{ik theta} at each X node
  const auto kk = static_cast<std::size_t>(n_max);
  std::vector<cd> plus((kk + 1) * nx), minus((kk + 1) * nx);
  parallel_for(nx, [&](std::size_t i) {
    for (std::size_t k = 0; k <= kk; ++k) {
      cd cp(0.0, 0.0), cm(0.0, 0.0);
      for (std::size_t l = 0; l < n2; ++l) {
        const double v = l < nt ? w(l, i) : w(l - nt, nx - 1 - i);
        const double ang = 2.0 * kPi * static_cast<double>((k * l) % n2) / static_cast<double>(n2);
        cp += v * std::polar(1.0, -ang);
        cm += v * std::polar(1.0, ang);
      }
      plus[k * nx + i] = cp / static_cast<double>(n2);
      minus[k * nx + i] = cm / static_cast<double>(n2);
    }
  });

  Eigen::MatrixXd psi(static_cast<Eigen::Index>(nx), n_max + 1);
  for (std::size_t i = 0; i < nx; ++i) {
    const std::vector<double> h = hermite_functions(n_max, s.x(i));
    for (int n = 0; n <= n_max; ++n) psi(static_cast<Eigen::Index>(i), n) = h[static_cast<std::size_t>(n)];
  }

  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n_max + 1, n_max + 1);
  double condition = 0.0;
  for (int k = 0; k <= n_max; ++k) {
    const int cols = n_max - k + 1;
    Eigen::MatrixXd a(static_cast<Eigen::Index>(nx), cols);
    for (int n = 0; n < cols; ++n) a.col(n) = psi.col(n).cwiseProduct(psi.col(n + k));
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    condition = std::max(condition, sv(0) / std::max(sv(sv.size() - 1), 1e-300));
    auto solve = [&](const std::vector<cd>& src) {
      Eigen::VectorXd re(static_cast<Eigen::Index>(nx)), im(static_cast<Eigen::Index>(nx));
      for (std::size_t i = 0; i < nx; ++i) {
        re(static_cast<Eigen::Index>(i)) = src[static_cast<std::size_t>(k) * nx + i].real();
        im(static_cast<Eigen::Index>(i)) = src[static_cast<std::size_t>(k) * nx + i].imag();
      }
      const Eigen::VectorXd xr = svd.solve(re);
      const Eigen::VectorXd xi = svd.solve(im);
      Eigen::VectorXcd x(cols);
      for (int n = 0; n < cols; ++n) x(n) = cd(xr(n), xi(n));
      return x;
    };
    const Eigen::VectorXcd up = solve(plus);     // rho_{n, n+k}
    const Eigen::VectorXcd down = solve(minus);  // rho_{n+k, n}
    for (int n = 0; n < cols; ++n) {
      const cd v = 0.5 * (up(n) + std::conj(down(n)));
      rho(n, n + k) = v;
      rho(n + k, n) = std::conj(v);
    }
  }
  for (int n = 0; n <= n_max; ++n) rho(n, n) = rho(n, n).real();

  FockMatrix fm(std::move(rho));
  const OpticalTomogramGrid rec = class_tomogram(fm, s);
  double diff = 0.0, norm = 0.0;
  for (std::size_t k = 0; k < nx * nt; ++k) {
    const double d = w.values()[k] - rec.values()[k];
    diff += d * d;
    norm += w.values()[k] * w.values()[k];
  }
  ClassProjection out{std::move(fm), norm > 0.0 ? std::sqrt(diff / norm) : std::sqrt(diff), condition,
                      condition > 1e10};
  return out;
}

FockMatrix classical_rho_extraction(const WignerGrid& w, int n_max) {
  if (n_max < 0) throw Error("n_max must be >= 0");
  const GridSpec& s = w.spec();
  const std::size_t nq = s.n_q;
  const std::size_t np = s.n_p;
  const std::size_t nh = 2 * nq - 1;

  // W at the midpoints (q_i + q_i')/2, i.e. half-integer row indices
  std::vector<double> half(nh * np);
  parallel_for(nh, [&](std::size_t k) {
    for (std::size_t j = 0; j < np; ++j) {
      half[k * np + j] = (k % 2 == 0)
                             ? w(k / 2, j)
                             : detail::interpolate2d(w.values(), nq, np, 0.5 * static_cast<double>(k),
                                                     static_cast<double>(j));
    }
  });

  std::vector<double> pw(np);
  for (std::size_t j = 0; j < np; ++j) pw[j] = (j == 0 || j + 1 == np) ? 0.5 * s.dp() : s.dp();

  // phases e^{i p_j d dq} for d = -(nq-1) .. nq-1
  std::vector<cd> ph((2 * nq - 1) * np);
  for (std::size_t d = 0; d < 2 * nq - 1; ++d) {
    const double dist = (static_cast<double>(d) - static_cast<double>(nq - 1)) * s.dq();
    for (std::size_t j = 0; j < np; ++j) ph[d * np + j] = std::polar(pw[j], s.p(j) * dist);
  }

  Eigen::MatrixXcd r(static_cast<Eigen::Index>(nq), static_cast<Eigen::Index>(nq));
  parallel_for(nq, [&](std::size_t i) {
    for (std::size_t ip = 0; ip < nq; ++ip) {
      const double* h = half.data() + (i + ip) * np;
      const cd* e = ph.data() + (i + nq - 1 - ip) * np;
      cd acc(0.0, 0.0);
      for (std::size_t j = 0; j < np; ++j) acc += h[j] * e[j];
      r(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(ip)) = acc;
    }
  });

  Eigen::MatrixXd psi(static_cast<Eigen::Index>(nq), n_max + 1);
  for (std::size_t i = 0; i < nq; ++i) {
    const std::vector<double> h = hermite_functions(n_max, s.q(i));
    const double wq = (i == 0 || i + 1 == nq) ? 0.5 * s.dq() : s.dq();
    for (int n = 0; n <= n_max; ++n) psi(static_cast<Eigen::Index>(i), n) = wq * h[static_cast<std::size_t>(n)];
  }
  const Eigen::MatrixXcd rho = psi.transpose().cast<cd>() * r * psi.cast<cd>();
  return FockMatrix(rho, 1e-12);
}

}  // namespace tomokit
