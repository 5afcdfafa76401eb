#include "tomokit/grid.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "tomokit/parallel.hpp"

namespace tomokit {

void GridSpec::validate_tomogram() const {
  if (n_x < 3 || n_x % 2 == 0) throw Error("tomogram grid needs an odd n_x >= 3");
  if (!(x_max > 0.0) || !std::isfinite(x_max)) throw Error("tomogram grid needs finite x_max > 0");
  if (x_min != -x_max) throw Error("tomogram grid must be symmetric: x_min == -x_max");
  if (n_theta < 2) throw Error("tomogram grid needs n_theta >= 2");
}

void GridSpec::validate_phase() const {
  if (n_q < 3 || n_p < 3) throw Error("phase grid needs at least 3 samples per axis");
  if (!(q_max > q_min) || !(p_max > p_min) || !std::isfinite(q_max - q_min) ||
      !std::isfinite(p_max - p_min)) {
    throw Error("phase grid bounds are degenerate");
  }
}

double GridSpec::dtheta() const { return std::numbers::pi / static_cast<double>(n_theta); }

std::string GridSpec::id() const {
  std::ostringstream os;
  os << "X[" << x_min << "," << x_max << "]x" << n_x << ";theta" << n_theta << ";qp[" << q_min
     << "," << q_max << "]x[" << p_min << "," << p_max << "]:" << n_q << "x" << n_p;
  return os.str();
}

GridSpec default_grid() { return GridSpec{}; }

double trapezoid(std::span<const double> f, double h) {
  if (f.empty()) return 0.0;
  double s = 0.5 * (f.front() + f.back());
  for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
  return s * h;
}

OpticalTomogramGrid::OpticalTomogramGrid(GridSpec spec, std::vector<double> values)
    : spec_(spec), values_(std::move(values)) {
  spec_.validate_tomogram();
  if (values_.size() != spec_.n_x * spec_.n_theta) {
    throw Error("optical grid payload has " + std::to_string(values_.size()) +
                " values, expected " + std::to_string(spec_.n_x * spec_.n_theta));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw Error("optical grid contains non-finite values");
  }
}

OpticalTomogramGrid OpticalTomogramGrid::sample(const GridSpec& spec,
                                                const std::function<double(double, double)>& w) {
  spec.validate_tomogram();
  std::vector<double> values(spec.n_x * spec.n_theta);
  parallel_for(spec.n_theta, [&](std::size_t j) {
    const double th = spec.theta(j);
    for (std::size_t i = 0; i < spec.n_x; ++i) values[j * spec.n_x + i] = w(spec.x(i), th);
  });
  return {spec, std::move(values)};
}

double OpticalTomogramGrid::row_mass(std::size_t j) const { return trapezoid(row(j), spec_.dx()); }

WignerGrid::WignerGrid(GridSpec spec, std::vector<double> values)
    : spec_(spec), values_(std::move(values)) {
  spec_.validate_phase();
  if (values_.size() != spec_.n_q * spec_.n_p) {
    throw Error("phase grid payload has " + std::to_string(values_.size()) +
                " values, expected " + std::to_string(spec_.n_q * spec_.n_p));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw Error("phase grid contains non-finite values");
  }
}

WignerGrid WignerGrid::sample(const GridSpec& spec, const std::function<double(double, double)>& w) {
  spec.validate_phase();
  std::vector<double> values(spec.n_q * spec.n_p);
  parallel_for(spec.n_q, [&](std::size_t i) {
    const double q = spec.q(i);
    for (std::size_t j = 0; j < spec.n_p; ++j) values[i * spec.n_p + j] = w(q, spec.p(j));
  });
  return {spec, std::move(values)};
}

double WignerGrid::mass() const {
  std::vector<double> rows(spec_.n_q);
  for (std::size_t i = 0; i < spec_.n_q; ++i) {
    rows[i] = trapezoid({values_.data() + i * spec_.n_p, spec_.n_p}, spec_.dp());
  }
  return trapezoid(rows, spec_.dq());
}

ParityCircleInterpolator::ParityCircleInterpolator(const OpticalTomogramGrid& w)
    : spec_(w.spec()), harmonics_(w.n_theta()) {
  const std::size_t nx = spec_.n_x;
  const std::size_t nt = spec_.n_theta;
  const std::size_t n2 = 2 * nt;
  std::vector<double> cos_table(n2), sin_table(n2);
  for (std::size_t k = 0; k < n2; ++k) {
    const double a = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n2);
    cos_table[k] = std::cos(a);
    sin_table[k] = std::sin(a);
  }
  re_.assign(nx * (nt + 1), 0.0);
  im_.assign(nx * (nt + 1), 0.0);
  parallel_for(nx, [&](std::size_t i) {
    std::vector<double> circle(n2);
    for (std::size_t j = 0; j < nt; ++j) {
      circle[j] = w(j, i);
      circle[j + nt] = w(j, nx - 1 - i);
    }
    for (std::size_t m = 0; m <= nt; ++m) {
      double re = 0.0, im = 0.0;
      for (std::size_t k = 0; k < n2; ++k) {
        const std::size_t idx = (m * k) % n2;
        re += circle[k] * cos_table[idx];
        im -= circle[k] * sin_table[idx];
      }
      re_[i * (nt + 1) + m] = re / static_cast<double>(n2);
      im_[i * (nt + 1) + m] = im / static_cast<double>(n2);
    }
  });
}

ParityCircleInterpolator::Basis ParityCircleInterpolator::basis(double theta) const {
  const std::size_t nt = harmonics_;
  Basis b{std::vector<double>(nt + 1), std::vector<double>(nt + 1)};
  const double c1 = std::cos(theta);
  const double s1 = std::sin(theta);
  b.c[0] = 1.0;
  b.s[0] = 0.0;
  for (std::size_t m = 1; m <= nt; ++m) {
    // re-anchor every 16 steps to keep the rotation recurrence accurate
    if (m % 16 == 0) {
      b.c[m] = std::cos(static_cast<double>(m) * theta);
      b.s[m] = std::sin(static_cast<double>(m) * theta);
    } else {
      b.c[m] = b.c[m - 1] * c1 - b.s[m - 1] * s1;
      b.s[m] = b.s[m - 1] * c1 + b.c[m - 1] * s1;
    }
  }
  return b;
}

double ParityCircleInterpolator::at(std::size_t i, const Basis& b) const {
  const std::size_t nt = harmonics_;
  const double* re = re_.data() + i * (nt + 1);
  const double* im = im_.data() + i * (nt + 1);
  double v = re[0];
  for (std::size_t m = 1; m < nt; ++m) v += 2.0 * (re[m] * b.c[m] - im[m] * b.s[m]);
  return v + re[nt] * b.c[nt];
}

std::vector<double> ParityCircleInterpolator::row(double theta) const {
  const Basis b = basis(theta);
  std::vector<double> out(spec_.n_x);
  for (std::size_t i = 0; i < spec_.n_x; ++i) out[i] = at(i, b);
  return out;
}

}  // namespace tomokit
