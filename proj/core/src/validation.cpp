#include "tomokit/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "tomokit/linalg.hpp"
#include "tomokit/parallel.hpp"

namespace tomokit {

namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

using Dir = CheckReport::Direction;

}  // namespace

Xorshift64Star::Xorshift64Star(std::uint64_t seed) : state_(splitmix64(seed)) {
  if (state_ == 0) state_ = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t Xorshift64Star::next() {
  state_ ^= state_ >> 12;
  state_ ^= state_ << 25;
  state_ ^= state_ >> 27;
  return state_ * 0x2545F4914F6CDD1DULL;
}

double Xorshift64Star::next_double() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

PointSet PointSet::generate(std::uint64_t seed, std::size_t size, double radius) {
  if (!(radius > 0.0)) throw Error("point set radius must be positive");
  PointSet set;
  set.seed = seed;
  Xorshift64Star rng(seed);
  while (set.points.size() < size) {
    const double r = radius * std::sqrt(rng.next_double());
    const double a = 2.0 * kPi * rng.next_double();
    const double mu = r * std::cos(a);
    const double nu = r * std::sin(a);
    const bool clash = std::any_of(set.points.begin(), set.points.end(), [&](const auto& p) {
      return std::hypot(p.first - mu, p.second - nu) < 1e-9;
    });
    if (!clash) set.points.emplace_back(mu, nu);
  }
  return set;
}

std::vector<CheckReport> check_structural(const SymplecticView& source, Kind kind,
                                          const StructuralOptions& opt) {
  const GridSpec& g = opt.grid;
  g.validate_tomogram();
  std::vector<CheckReport> out;
  const std::string gid = g.id();

  if (kind == Kind::optical) {
    const OpticalTomogramGrid w =
        OpticalTomogramGrid::sample(g, [&](double x, double th) { return source.optical(x, th); });
    double norm = 0.0, lowest = std::numeric_limits<double>::infinity(), parity = 0.0;
    for (std::size_t j = 0; j < g.n_theta; ++j) {
      norm = std::max(norm, std::abs(w.row_mass(j) - 1.0));
      for (std::size_t i = 0; i < g.n_x; ++i) {
        lowest = std::min(lowest, w(j, i));
        const double flipped = source.optical(-g.x(i), g.theta(j) + kPi);
        parity = std::max(parity, std::abs(flipped - w(j, i)));
      }
    }
    out.push_back(CheckReport::make("structural", "structural.normalization", norm,
                                    opt.normalization_tol, Dir::at_most)
                      .add("definition", std::string("max over theta of |int w dX - 1|")));
    out.push_back(CheckReport::make("structural", "structural.nonnegativity", lowest,
                                    -opt.negativity_tol, Dir::at_least)
                      .add("definition", std::string("min sampled w")));
    out.push_back(CheckReport::make("structural", "structural.parity", parity, opt.parity_tol,
                                    Dir::at_most)
                      .add("definition", std::string("max |w(-X, theta + pi) - w(X, theta)|")));
  } else {
    // (mu, nu) panel: radii x directions
    std::vector<std::pair<double, double>> panel;
    for (double r : {0.5, 1.0, 2.0, 3.0}) {
      for (int a = 0; a < 12; ++a) {
        const double ang = 2.0 * kPi * a / 12.0;
        panel.emplace_back(r * std::cos(ang), r * std::sin(ang));
      }
    }
    double norm = 0.0, lowest = std::numeric_limits<double>::infinity(), parity = 0.0;
    for (const auto& [mu, nu] : panel) {
      const double scale = source.x_scale(mu, nu);
      std::vector<double> row(g.n_x);
      for (std::size_t i = 0; i < g.n_x; ++i) {
        const double x = scale * g.x(i);
        row[i] = source(x, mu, nu);
        lowest = std::min(lowest, row[i]);
        parity = std::max(parity, std::abs(source(-x, -mu, -nu) - row[i]));
      }
      norm = std::max(norm, std::abs(trapezoid(row, scale * g.dx()) - 1.0));
    }
    Xorshift64Star rng(opt.seed);
    double homog = 0.0;
    for (int k = 0; k < 100; ++k) {
      const double x = -3.0 + 6.0 * rng.next_double();
      const double r = 0.2 + 2.8 * std::sqrt(rng.next_double());
      const double a = 2.0 * kPi * rng.next_double();
      const double mu = r * std::cos(a), nu = r * std::sin(a);
      const double base = source(x, mu, nu);
      for (double l : {-2.0, -0.5, 0.5, 3.0}) {
        homog = std::max(homog, std::abs(std::abs(l) * source(l * x, l * mu, l * nu) - base));
      }
    }
    out.push_back(CheckReport::make("structural", "structural.normalization", norm,
                                    opt.normalization_tol, Dir::at_most)
                      .add("definition", std::string("max over a (mu, nu) panel of |int M dX - 1|")));
    out.push_back(CheckReport::make("structural", "structural.nonnegativity", lowest,
                                    -opt.negativity_tol, Dir::at_least)
                      .add("definition", std::string("min sampled M")));
    out.push_back(CheckReport::make("structural", "structural.parity", parity, opt.parity_tol,
                                    Dir::at_most)
                      .add("definition", std::string("max |M(-X, -mu, -nu) - M(X, mu, nu)|")));
    CheckReport h = CheckReport::make("structural", "structural.homogeneity", homog,
                                      opt.homogeneity_tol, Dir::at_most);
    h.seeds = {opt.seed};
    h.add("definition", std::string("max ||l| M(lX, l mu, l nu) - M(X, mu, nu)|"))
        .add("lambdas", std::vector<double>{-2.0, -0.5, 0.5, 3.0})
        .add("samples", std::int64_t{100});
    out.push_back(std::move(h));
  }
  for (auto& r : out) r.grid = gid;
  return out;
}

namespace {

double entropy_of(std::span<const double> row, double dx) {
  std::vector<double> f(row.size());
  for (std::size_t i = 0; i < row.size(); ++i) {
    const double v = row[i];
    if (v < -1e-12) throw Error("entropy needs a nonnegative row (found " + std::to_string(v) + ")");
    f[i] = v > 0.0 ? -v * std::log(v) : 0.0;
  }
  return trapezoid(f, dx);
}

}  // namespace

double shannon_entropy(const OpticalTomogramGrid& w, std::size_t j) {
  if (j >= w.n_theta()) throw Error("row index out of range");
  return entropy_of(w.row(j), w.spec().dx());
}

double shannon_entropy(const OpticalTomogramGrid& w, double theta) {
  const double u = theta / w.spec().dtheta();
  const double nearest = std::round(u);
  if (std::abs(u - nearest) < 1e-9 && nearest >= 0.0 && nearest < static_cast<double>(w.n_theta())) {
    return shannon_entropy(w, static_cast<std::size_t>(nearest));
  }
  return entropy_of(ParityCircleInterpolator(w).row(theta), w.spec().dx());
}

CheckReport check_hirschman(const OpticalTomogramGrid& w, double tol) {
  const std::size_t nt = w.n_theta();
  if (nt % 2 != 0) throw Error("Hirschman check needs an even n_theta (conjugate pairs)");
  const double bound = std::log(kPi * std::numbers::e);
  std::vector<double> s(nt);
  try {
    for (std::size_t j = 0; j < nt; ++j) s[j] = shannon_entropy(w, j);
  } catch (const Error& e) {
    CheckReport r = CheckReport::make("hirschman", "hirschman", std::nan(""), -tol, Dir::at_least);
    r.grid = w.spec().id();
    r.add("error", std::string(e.what()));
    return r;
  }
  double metric = std::numeric_limits<double>::infinity();
  std::size_t worst = 0;
  for (std::size_t j = 0; j < nt; ++j) {
    // the row at theta + pi/2 wraps to the X-flipped row, with equal entropy
    const double sum = s[j] + s[(j + nt / 2) % nt];
    if (sum - bound < metric) {
      metric = sum - bound;
      worst = j;
    }
  }
  CheckReport r = CheckReport::make("hirschman", "hirschman", metric, -tol, Dir::at_least);
  r.grid = w.spec().id();
  r.add("bound_ln_pi_e", bound)
      .add("worst_theta", w.spec().theta(worst))
      .add("entropy_sum_at_worst", s[worst] + s[(worst + nt / 2) % nt]);
  return r;
}

std::vector<std::pair<double, double>> pairwise_differences(const PointSet& set) {
  std::vector<std::pair<double, double>> d;
  const auto& p = set.points;
  for (std::size_t j = 0; j < p.size(); ++j) {
    for (std::size_t k = j + 1; k < p.size(); ++k) {
      d.emplace_back(p[j].first - p[k].first, p[j].second - p[k].second);
    }
  }
  return d;
}

Eigen::MatrixXcd build_positivity_matrix(const PointSet& set,
                                         std::span<const std::complex<double>> phi,
                                         PositivityMode mode) {
  const auto n = static_cast<Eigen::Index>(set.points.size());
  const std::size_t m = set.points.size();
  if (phi.size() != m * (m > 0 ? m - 1 : 0) / 2) {
    throw Error("positivity matrix needs one phi value per point pair");
  }
  Eigen::MatrixXcd z(n, n);
  std::size_t k = 0;
  for (Eigen::Index a = 0; a < n; ++a) {
    z(a, a) = 1.0;
    for (Eigen::Index b = a + 1; b < n; ++b, ++k) {
      const auto [mu_a, nu_a] = set.points[static_cast<std::size_t>(a)];
      const auto [mu_b, nu_b] = set.points[static_cast<std::size_t>(b)];
      std::complex<double> v = phi[k];
      if (mode == PositivityMode::quantum) v *= std::polar(1.0, 0.5 * (mu_a * nu_b - mu_b * nu_a));
      z(a, b) = v;
      z(b, a) = std::conj(v);
    }
  }
  return z;
}

CheckReport check_positivity(const SymplecticView& source, PositivityMode mode,
                             const PositivityOptions& opt) {
  if (opt.n_sets == 0 || opt.set_size == 0) throw Error("positivity check needs sets of size >= 1");
  struct SetResult {
    double scaled = 0.0;
    double raw = 0.0;
  };
  std::vector<SetResult> results(opt.n_sets);
  parallel_for(opt.n_sets, [&](std::size_t s) {
    const PointSet set = PointSet::generate(opt.seed + s, opt.set_size, opt.radius);
    const auto diffs = pairwise_differences(set);
    std::vector<std::complex<double>> phi(diffs.size());
    for (std::size_t k = 0; k < diffs.size(); ++k) {
      phi[k] = characteristic_value(source, diffs[k].first, diffs[k].second, opt.quadrature);
    }
    const std::vector<double> ev =
        hermitian_eigenvalues(build_positivity_matrix(set, phi, mode));
    const double norm = std::max(std::abs(ev.front()), std::abs(ev.back()));
    results[s] = {ev.front() / std::max(1.0, norm), ev.front()};
  });

  std::size_t worst = 0;
  std::vector<std::uint64_t> failing;
  for (std::size_t s = 0; s < results.size(); ++s) {
    if (results[s].scaled < results[worst].scaled) worst = s;
    if (!(results[s].scaled >= -opt.tol)) failing.push_back(opt.seed + s);
  }
  const bool quantum = mode == PositivityMode::quantum;
  CheckReport r = CheckReport::make(quantum ? "klm" : "bochner", quantum ? "klm" : "bochner",
                                    results[worst].scaled, -opt.tol, Dir::at_least);
  r.seeds = {opt.seed + worst};
  r.add("definition", std::string(quantum ? "min eigenvalue of Z with the symplectic phase, / max(1, ||Z||)"
                                          : "min eigenvalue of Z without phase, / max(1, ||Z||)"))
      .add("min_eigenvalue", results[worst].raw)
      .add("worst_seed", static_cast<std::int64_t>(opt.seed + worst))
      .add("first_seed", static_cast<std::int64_t>(opt.seed))
      .add("n_sets", static_cast<std::int64_t>(opt.n_sets))
      .add("set_size", static_cast<std::int64_t>(opt.set_size))
      .add("radius", opt.radius)
      .add("violating_sets", static_cast<std::int64_t>(failing.size()))
      .add("note", std::string("sampled necessary condition: a pass means no violation was found"));
  return r;
}

double pure_state_overlap(const WignerGrid& w, const FockMatrix& psi) {
  const WignerGrid wpsi = wigner_grid_from_fock(psi, w.spec());
  const GridSpec& s = w.spec();
  std::vector<double> rows(s.n_q);
  std::vector<double> prod(s.n_p);
  for (std::size_t i = 0; i < s.n_q; ++i) {
    for (std::size_t j = 0; j < s.n_p; ++j) prod[j] = w(i, j) * wpsi(i, j);
    rows[i] = trapezoid(prod, s.dp());
  }
  return 2.0 * kPi * trapezoid(rows, s.dq());
}

OverlapResult pure_state_overlap(const OpticalTomogramGrid& candidate, const FockMatrix& psi,
                                 const GridSpec& phase) {
  const Reconstruction rec = inverse_radon_optical(candidate, phase);
  return {pure_state_overlap(rec.grid, psi), rec.boundary_warning};
}

std::vector<std::array<double, 3>> fixed_point_panel() {
  std::vector<std::array<double, 3>> panel;
  for (double x : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
    for (double r : {0.5, 1.0, 2.0}) {
      for (int a = 0; a < 8; ++a) {
        const double ang = 2.0 * kPi * a / 8.0;
        panel.push_back({x, r * std::cos(ang), r * std::sin(ang)});
      }
    }
  }
  return panel;
}

CheckReport check_radon_fixed_point(const SymplecticView& candidate, const FixedPointOptions& opt) {
  const GridSpec& g = opt.grid;
  const OpticalTomogramGrid restricted = symplectic_to_optical(candidate, g);
  const Reconstruction rec = inverse_radon_optical(restricted, g);

  auto reproject = [&](double x, double mu, double nu) {
    const PolarAngle a = polar_angle(mu, nu);
    return radon_line(rec.grid, x * a.sign / a.radius, a.theta, g.dx()) / a.radius;
  };

  const auto panel = fixed_point_panel();
  std::vector<double> gaps(panel.size()), values(panel.size());
  parallel_for(panel.size(), [&](std::size_t k) {
    const auto [x, mu, nu] = panel[k];
    values[k] = candidate(x, mu, nu);
    gaps[k] = std::abs(values[k] - reproject(x, mu, nu));
  });
  double scale = 0.0, worst = 0.0, circle = 0.0;
  for (std::size_t k = 0; k < panel.size(); ++k) {
    scale = std::max(scale, std::abs(values[k]));
    worst = std::max(worst, gaps[k]);
    if (std::abs(std::hypot(panel[k][1], panel[k][2]) - 1.0) < 1e-12) circle = std::max(circle, gaps[k]);
  }
  const double probe = candidate(0.0, 2.0, 0.0) - reproject(0.0, 2.0, 0.0);
  CheckReport r = CheckReport::make("fixedpoint", "fixedpoint",
                                    scale > 0.0 ? worst / scale : worst, opt.tol, Dir::at_most);
  r.grid = g.id();
  r.add("definition", std::string("max |M - radon(inverse_radon(M))| / max |M| over the panel"))
      .add("max_abs_gap", worst)
      .add("unit_circle_max_gap", circle)
      .add("gap_at_X0_mu2_nu0", probe)
      .add("panel_points", static_cast<std::int64_t>(panel.size()))
      .add("reconstruction_boundary_warning", rec.boundary_warning);
  return r;
}

}  // namespace tomokit
