#include "tomokit/sources.hpp"

#include <cmath>
#include <numbers>

#include "interpolation.hpp"

namespace tomokit {

PolarAngle polar_angle(double mu, double nu) {
  const double r = std::hypot(mu, nu);
  if (r == 0.0) throw Error("(mu, nu) = (0, 0) has no direction");
  double theta = std::atan2(nu, mu);  // (-pi, pi]
  double sign = 1.0;
  if (theta < 0.0) {
    theta += std::numbers::pi;
    sign = -1.0;
  } else if (theta >= std::numbers::pi) {
    theta -= std::numbers::pi;
    sign = -1.0;
  }
  return {r, theta, sign};
}

OpticalFn grid_optical_fn(std::shared_ptr<const OpticalTomogramGrid> grid) {
  auto interp = std::make_shared<const ParityCircleInterpolator>(*grid);
  return [grid, interp](double x, double theta) {
    const GridSpec& s = grid->spec();
    const double u = (x - s.x_min) / s.dx();
    if (!(u > -3.0) || !(u < static_cast<double>(s.n_x) + 2.0)) return 0.0;
    const detail::Stencil6 st = detail::lagrange6(u);
    const ParityCircleInterpolator::Basis basis = interp->basis(theta);
    double acc = 0.0;
    for (std::ptrdiff_t k = 0; k < 6; ++k) {
      const std::ptrdiff_t idx = st.first + k;
      const double weight = st.weights[static_cast<std::size_t>(k)];
      if (weight == 0.0 || idx < 0 || idx >= static_cast<std::ptrdiff_t>(s.n_x)) continue;
      acc += weight * interp->at(static_cast<std::size_t>(idx), basis);
    }
    return acc;
  };
}

SymplecticView SymplecticView::from_optical(OpticalFn optical, std::string label) {
  SymplecticView v;
  v.optical_ = std::move(optical);
  v.scaling_ = Scaling::homogeneous;
  v.label_ = std::move(label);
  return v;
}

SymplecticView SymplecticView::analytic(SymplecticFn fn, Scaling scaling, std::string label) {
  SymplecticView v;
  v.direct_ = std::move(fn);
  v.scaling_ = scaling;
  v.label_ = std::move(label);
  return v;
}

double SymplecticView::operator()(double x, double mu, double nu) const {
  if (optical_) {
    const PolarAngle a = polar_angle(mu, nu);
    return optical_(x * a.sign / a.radius, a.theta) / a.radius;
  }
  return direct_(x, mu, nu);
}

double SymplecticView::optical(double x, double theta) const {
  if (optical_) return optical_(x, theta);
  return direct_(x, std::cos(theta), std::sin(theta));
}

double SymplecticView::x_scale(double mu, double nu) const {
  return scaling_ == Scaling::homogeneous ? std::hypot(mu, nu) : 1.0;
}

}  // namespace tomokit
