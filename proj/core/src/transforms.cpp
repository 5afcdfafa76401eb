#include "tomokit/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "interpolation.hpp"
#include "tomokit/parallel.hpp"

namespace tomokit {

namespace {

constexpr double kPi = std::numbers::pi;

double phase_extent(const GridSpec& s) {
  return std::max({std::abs(s.q_min), std::abs(s.q_max), std::abs(s.p_min), std::abs(s.p_max)});
}

// Line integral with s = k dx, k = -half..half.
double line_integral(const WignerGrid& w, double x, double c, double s, double dx, long half) {
  const GridSpec& g = w.spec();
  const double inv_dq = 1.0 / g.dq();
  const double inv_dp = 1.0 / g.dp();
  double acc = 0.0;
  for (long k = -half; k <= half; ++k) {
    const double t = static_cast<double>(k) * dx;
    const double q = x * c - t * s;
    const double p = x * s + t * c;
    acc += detail::interpolate2d(w.values(), g.n_q, g.n_p, (q - g.q_min) * inv_dq, (p - g.p_min) * inv_dp);
  }
  return acc * dx;
}

long half_count(const WignerGrid& w, double dx) {
  return static_cast<long>(std::ceil(phase_extent(w.spec()) * std::numbers::sqrt2 / dx));
}

}  // namespace

OpticalTomogramGrid radon_optical(const WignerGrid& w, const GridSpec& out) {
  out.validate_tomogram();
  const double reach = phase_extent(w.spec()) * std::numbers::sqrt2;
  if (out.x_max > reach * (1.0 + 1e-12)) {
    throw Error("requested X range exceeds the diagonal extent of the phase grid");
  }
  const double dx = out.dx();
  const long half = half_count(w, dx);
  std::vector<double> values(out.n_x * out.n_theta);
  parallel_for(out.n_theta, [&](std::size_t j) {
    const double th = out.theta(j);
    const double c = std::cos(th), s = std::sin(th);
    for (std::size_t i = 0; i < out.n_x; ++i) {
      values[j * out.n_x + i] = line_integral(w, out.x(i), c, s, dx, half);
    }
  });
  return {out, std::move(values)};
}

double radon_line(const WignerGrid& w, double x, double theta, double dx) {
  if (!(dx > 0.0)) throw Error("line step must be positive");
  return line_integral(w, x, std::cos(theta), std::sin(theta), dx, half_count(w, dx));
}

SymplecticView optical_to_symplectic(std::shared_ptr<const OpticalTomogramGrid> w) {
  return SymplecticView::from_optical(grid_optical_fn(std::move(w)), "grid");
}

OpticalTomogramGrid symplectic_to_optical(const SymplecticView& m, const GridSpec& out) {
  return OpticalTomogramGrid::sample(out, [&m](double x, double th) { return m.optical(x, th); });
}

Reconstruction inverse_radon_optical(const OpticalTomogramGrid& w, const GridSpec& out) {
  out.validate_phase();
  const GridSpec& in = w.spec();
  const std::size_t nx = in.n_x;
  const std::size_t nt = in.n_theta;
  const double dx = in.dx();

  double boundary = 0.0;
  for (std::size_t j = 0; j < nt; ++j) {
    boundary = std::max({boundary, std::abs(w(j, 0)), std::abs(w(j, nx - 1))});
  }

  // filtered rows on an X lattice extended to cover every |q cos + p sin|
  const double reach = std::hypot(std::max(std::abs(out.q_min), std::abs(out.q_max)),
                                  std::max(std::abs(out.p_min), std::abs(out.p_max)));
  const long pad = std::max(0L, static_cast<long>(std::ceil((reach - in.x_max) / dx))) + 4;
  const long n_ext = static_cast<long>(nx) + 2 * pad;
  const double ext_min = in.x_min - static_cast<double>(pad) * dx;

  // sampled band-limited ramp kernel
  std::vector<double> kernel(static_cast<std::size_t>(n_ext + static_cast<long>(nx)), 0.0);
  kernel[0] = 1.0 / (4.0 * dx * dx);
  for (std::size_t k = 1; k < kernel.size(); k += 2) {
    const double kk = static_cast<double>(k);
    kernel[k] = -1.0 / (kPi * kPi * kk * kk * dx * dx);
  }

  std::vector<double> filtered(nt * static_cast<std::size_t>(n_ext));
  parallel_for(nt, [&](std::size_t j) {
    const std::span<const double> row = w.row(j);
    double* dst = filtered.data() + j * static_cast<std::size_t>(n_ext);
    for (long e = 0; e < n_ext; ++e) {
      const long centre = e - pad;  // index on the input lattice
      double acc = 0.0;
      for (std::size_t i = 0; i < nx; ++i) {
        const long d = std::abs(centre - static_cast<long>(i));
        acc += kernel[static_cast<std::size_t>(d)] * row[i];
      }
      dst[e] = acc * dx;
    }
  });

  std::vector<double> cs(nt), sn(nt);
  for (std::size_t j = 0; j < nt; ++j) {
    cs[j] = std::cos(in.theta(j));
    sn[j] = std::sin(in.theta(j));
  }
  const double dtheta = kPi / static_cast<double>(nt);
  std::vector<double> values(out.n_q * out.n_p);
  parallel_for(out.n_q, [&](std::size_t iq) {
    const double q = out.q(iq);
    for (std::size_t ip = 0; ip < out.n_p; ++ip) {
      const double p = out.p(ip);
      double acc = 0.0;
      for (std::size_t j = 0; j < nt; ++j) {
        const double x = q * cs[j] + p * sn[j];
        acc += detail::interpolate1d({filtered.data() + j * static_cast<std::size_t>(n_ext),
                                      static_cast<std::size_t>(n_ext)},
                                     (x - ext_min) / dx);
      }
      values[iq * out.n_p + ip] = acc * dtheta;
    }
  });
  return {WignerGrid(out, std::move(values)), boundary, boundary > 1e-10};
}

std::complex<double> characteristic_value(const SymplecticView& m, double mu, double nu,
                                          const CharacteristicQuadrature& quad) {
  if (mu == 0.0 && nu == 0.0) return {1.0, 0.0};
  if (quad.n < 3 || !(quad.half_width > 0.0)) throw Error("characteristic quadrature is degenerate");
  const double scale = m.x_scale(mu, nu);
  const double h = 2.0 * quad.half_width / static_cast<double>(quad.n - 1);
  std::complex<double> acc(0.0, 0.0);
  for (std::size_t k = 0; k < quad.n; ++k) {
    const double y = -quad.half_width + static_cast<double>(k) * h;
    const double x = scale * y;
    const double weight = (k == 0 || k + 1 == quad.n) ? 0.5 : 1.0;
    const double v = m(x, mu, nu);
    if (!std::isfinite(v)) throw Error("characteristic quadrature diverged");
    acc += weight * v * std::polar(1.0, x);
  }
  return acc * (h * scale);
}

CharacteristicSamples characteristic_function(const SymplecticView& m,
                                              std::span<const std::pair<double, double>> points,
                                              const CharacteristicQuadrature& quad) {
  CharacteristicSamples out(points.size());
  parallel_for(points.size(), [&](std::size_t k) {
    const auto [mu, nu] = points[k];
    out[k].mu = mu;
    out[k].nu = nu;
    out[k].limit = mu == 0.0 && nu == 0.0;
    out[k].value = characteristic_value(m, mu, nu, quad);
  });
  return out;
}

CharacteristicGrid sample_characteristic(const SymplecticView& m, CharacteristicGrid layout,
                                         const CharacteristicQuadrature& quad) {
  if (layout.n_mu < 2 || layout.n_nu < 2) throw Error("characteristic grid needs 2+ samples per axis");
  layout.values.assign(layout.n_mu * layout.n_nu, {});
  parallel_for(layout.n_mu, [&](std::size_t a) {
    for (std::size_t b = 0; b < layout.n_nu; ++b) {
      layout.values[a * layout.n_nu + b] = characteristic_value(m, layout.mu(a), layout.nu(b), quad);
    }
  });
  return layout;
}

FourierReconstruction wigner_from_characteristic(const CharacteristicGrid& phi, const GridSpec& out) {
  out.validate_phase();
  const auto na = static_cast<Eigen::Index>(phi.n_mu);
  const auto nb = static_cast<Eigen::Index>(phi.n_nu);
  if (phi.values.size() != phi.n_mu * phi.n_nu || na < 2 || nb < 2) {
    throw Error("characteristic grid payload does not match its layout");
  }
  double boundary = 0.0;
  Eigen::MatrixXcd f(na, nb);
  for (Eigen::Index a = 0; a < na; ++a) {
    for (Eigen::Index b = 0; b < nb; ++b) {
      const std::complex<double> v = phi.values[static_cast<std::size_t>(a * nb + b)];
      if (a == 0 || b == 0 || a == na - 1 || b == nb - 1) boundary = std::max(boundary, std::abs(v));
      const double wa = (a == 0 || a == na - 1) ? 0.5 : 1.0;
      const double wb = (b == 0 || b == nb - 1) ? 0.5 : 1.0;
      f(a, b) = v * wa * wb;
    }
  }
  Eigen::MatrixXcd eq(static_cast<Eigen::Index>(out.n_q), na);
  for (Eigen::Index i = 0; i < eq.rows(); ++i) {
    for (Eigen::Index a = 0; a < na; ++a) {
      eq(i, a) = std::polar(1.0, -phi.mu(static_cast<std::size_t>(a)) * out.q(static_cast<std::size_t>(i)));
    }
  }
  Eigen::MatrixXcd ep(nb, static_cast<Eigen::Index>(out.n_p));
  for (Eigen::Index b = 0; b < nb; ++b) {
    for (Eigen::Index j = 0; j < ep.cols(); ++j) {
      ep(b, j) = std::polar(1.0, -phi.nu(static_cast<std::size_t>(b)) * out.p(static_cast<std::size_t>(j)));
    }
  }
  const Eigen::MatrixXcd w = eq * f * ep * (phi.dmu() * phi.dnu() / (4.0 * kPi * kPi));
  const double imag = w.imag().cwiseAbs().maxCoeff();
  if (imag > 1e-8) {
    throw Error("inverse Fourier transform has an imaginary residual of " + std::to_string(imag));
  }
  std::vector<double> values(out.n_q * out.n_p);
  for (std::size_t i = 0; i < out.n_q; ++i) {
    for (std::size_t j = 0; j < out.n_p; ++j) {
      values[i * out.n_p + j] = w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)).real();
    }
  }
  return {WignerGrid(out, std::move(values)), boundary, boundary > 1e-8};
}

}  // namespace tomokit
