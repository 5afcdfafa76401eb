#include "tomokit/catalog.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "interpolation.hpp"
#include "tomokit/grid_io.hpp"
#include "tomokit/hermite.hpp"
#include "tomokit/transforms.hpp"

namespace tomokit {

namespace {

constexpr double kPi = std::numbers::pi;
const double kInvSqrtPi = 1.0 / std::sqrt(kPi);
constexpr int kMaxFock = 20;

double parse_number(std::string_view text, std::string_view context) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw Error("malformed number '" + std::string(text) + "' in state '" + std::string(context) + "'");
  }
  return v;
}

std::vector<double> parse_list(std::string_view text, std::string_view context) {
  std::vector<double> out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(parse_number(text.substr(0, comma), context));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

int fock_index(const StateSpec& s) {
  return static_cast<int>(s.params.at(0));
}

// w1(X) = pi^{-1/2} (X^4 + X^2/4 + 1/8) e^{-X^2}
double w1_optical(double x) {
  const double x2 = x * x;
  return kInvSqrtPi * (x2 * x2 + 0.25 * x2 + 0.125) * std::exp(-x2);
}

// W1(q, p) = pi^{-1} (r^4 - 3 r^2 / 4 - 1/4) e^{-r^2}
double w1_wigner(double q, double p) {
  const double r2 = q * q + p * p;
  return (r2 * r2 - 0.75 * r2 - 0.25) * std::exp(-r2) / kPi;
}

FockMatrix w1_fock(int n_max) {
  std::vector<double> pop(static_cast<std::size_t>(std::max(n_max, 2) + 1), 0.0);
  pop[0] = -0.125;
  pop[1] = 0.625;
  pop[2] = 0.5;
  return FockMatrix::diagonal(pop);
}

}  // namespace

std::string_view to_string(Representation r) {
  switch (r) {
    case Representation::wigner: return "wigner";
    case Representation::optical: return "optical";
    case Representation::symplectic: return "symplectic";
  }
  return "?";
}

Representation parse_representation(std::string_view text) {
  if (text == "wigner") return Representation::wigner;
  if (text == "optical") return Representation::optical;
  if (text == "symplectic") return Representation::symplectic;
  throw Error("unknown representation '" + std::string(text) + "'");
}

StateSpec StateSpec::parse(std::string_view text) {
  StateSpec s;
  if (text.starts_with("grid:")) {
    s.name = "grid";
    s.path = std::string(text.substr(5));
    if (s.path.empty()) throw Error("grid state needs a manifest path");
    return s;
  }
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view tail = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  const bool has_tail = colon != std::string_view::npos;

  if (head.starts_with("fock")) {
    const std::string_view digits = head.size() > 4 ? head.substr(4) : tail;
    if (digits.empty() || (head.size() > 4 && has_tail)) {
      throw Error("Fock state needs one index: fockN or fock:N");
    }
    int n = -1;
    const auto res = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (res.ec != std::errc() || res.ptr != digits.data() + digits.size() || n < 0 || n > kMaxFock) {
      throw Error("Fock index must be an integer in [0, " + std::to_string(kMaxFock) + "]");
    }
    s.name = "fock";
    s.params = {static_cast<double>(n)};
    return s;
  }
  if (head == "coherent") {
    s.name = "coherent";
    s.params = has_tail ? parse_list(tail, text) : std::vector<double>{1.0, 0.0};
    if (s.params.size() != 2) throw Error("coherent state takes q0,p0");
    return s;
  }
  if (head == "squeezed") {
    s.name = "squeezed";
    s.params = has_tail ? parse_list(tail, text) : std::vector<double>{0.5 * std::log(2.0)};
    if (s.params.size() != 1) throw Error("squeezed state takes one parameter r");
    return s;
  }
  if (has_tail) throw Error("state '" + std::string(head) + "' takes no parameters");
  if (head == "W1") {
    s.name = "W1-quartic";
    return s;
  }
  for (const char* name : {"ground", "example-cos3", "f1", "w1", "W1-quartic", "M1"}) {
    if (head == name) {
      s.name = name;
      return s;
    }
  }
  throw Error("unknown state '" + std::string(text) + "' (see `tomokit catalog`)");
}

std::string StateSpec::str() const {
  if (name == "grid") return "grid:" + path.string();
  if (name == "fock") return "fock" + std::to_string(fock_index(*this));
  if (name == "coherent") return "coherent:" + format_double(params[0]) + "," + format_double(params[1]);
  if (name == "squeezed") return "squeezed:" + format_double(params[0]);
  return name;
}

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = {
      {"ground", "harmonic-oscillator ground state, w = pi^-1/2 e^{-X^2}", true, "", true},
      {"fockN", "Fock state |N>, N = 0..5 listed, up to 20 accepted", true, "", true},
      {"coherent[:q0,p0]", "coherent state centred at (q0, p0), default (1, 0)", true, "", true},
      {"squeezed[:r]", "squeezed vacuum, variances e^{-2r}/2 and e^{2r}/2, default r = ln sqrt 2", true,
       "", true},
      {"example-cos3", "pi^-1/2 exp(-(X - cos^3 theta)^2): positive, normalized, not conserved", false,
       "conservation", false},
      {"f1", "e^{1/4}/sqrt(pi) e^{-X^2 - mu^2/4 - nu^2/4}: KLM positive, not a Radon fixed point", false,
       "fixedpoint", true},
      {"w1", "pi^-1/2 (X^4 + X^2/4 + 1/8) e^{-X^2}: Hermite class with rho_00 = -1/8", false, "overlap",
       true},
      {"W1-quartic", "pi^-1 (r^4 - 3r^2/4 - 1/4) e^{-r^2}: phase-space preimage of w1, negative", false,
       "bochner", true},
      {"M1", "symplectic image of w1: homogeneous and conserved, not positive", false, "klm", false},
  };
  return entries;
}

const PhaseFn& State::wigner() const {
  if (!wigner_) throw Error("state '" + label() + "' has no phase-space representation");
  return wigner_;
}

double State::eval(Representation r, std::span<const double> point) const {
  const std::size_t want = r == Representation::symplectic ? 3 : 2;
  if (point.size() != want) {
    throw Error(std::string(to_string(r)) + " evaluation takes " + std::to_string(want) +
                " coordinates, got " + std::to_string(point.size()));
  }
  switch (r) {
    case Representation::wigner: return wigner()(point[0], point[1]);
    case Representation::optical: return optical_(point[0], point[1]);
    case Representation::symplectic: return symplectic_(point[0], point[1], point[2]);
  }
  return 0.0;
}

OpticalTomogramGrid State::optical_grid(const GridSpec& spec) const {
  if (optical_store_) {
    const GridSpec& s = optical_store_->spec();
    if (s.x_min == spec.x_min && s.x_max == spec.x_max && s.n_x == spec.n_x &&
        s.n_theta == spec.n_theta) {
      return *optical_store_;
    }
  }
  return OpticalTomogramGrid::sample(spec, optical_);
}

WignerGrid State::wigner_grid(const GridSpec& spec) const {
  if (wigner_store_) {
    const GridSpec& s = wigner_store_->spec();
    if (s.q_min == spec.q_min && s.q_max == spec.q_max && s.n_q == spec.n_q &&
        s.p_min == spec.p_min && s.p_max == spec.p_max && s.n_p == spec.n_p) {
      return *wigner_store_;
    }
  }
  return WignerGrid::sample(spec, wigner());
}

std::optional<FockMatrix> State::fock(int n_max) const {
  if (!fock_) return std::nullopt;
  return fock_(n_max);
}

State State::resolve(const StateSpec& spec) {
  State st;
  st.spec_ = spec;
  const std::string& name = spec.name;
  for (const CatalogEntry& e : catalog_entries()) {
    const std::string key = e.syntax.substr(0, e.syntax.find_first_of("[N"));
    if (key == name || (name == "fock" && e.syntax == "fockN")) {
      st.genuine_ = e.genuine;
      st.diagnosis_ = e.diagnosis;
    }
  }

  if (name == "ground") {
    st.optical_ = [](double x, double) { return kInvSqrtPi * std::exp(-x * x); };
    st.wigner_ = [](double q, double p) { return std::exp(-q * q - p * p) / kPi; };
    st.fock_ = [](int n_max) {
      std::vector<double> d(static_cast<std::size_t>(std::max(n_max, 0) + 1), 0.0);
      d[0] = 1.0;
      return FockMatrix::diagonal(d);
    };
  } else if (name == "fock") {
    const int n = fock_index(spec);
    st.optical_ = [n](double x, double) {
      const double v = hermite_functions(n, x)[static_cast<std::size_t>(n)];
      return v * v;
    };
    st.wigner_ = [n](double q, double p) { return fock_state_wigner(n, q, p); };
    st.fock_ = [n](int n_max) {
      std::vector<double> d(static_cast<std::size_t>(std::max(n_max, n) + 1), 0.0);
      d[static_cast<std::size_t>(n)] = 1.0;
      return FockMatrix::diagonal(d);
    };
  } else if (name == "coherent") {
    const double q0 = spec.params[0];
    const double p0 = spec.params[1];
    st.optical_ = [q0, p0](double x, double th) {
      const double d = x - q0 * std::cos(th) - p0 * std::sin(th);
      return kInvSqrtPi * std::exp(-d * d);
    };
    st.wigner_ = [q0, p0](double q, double p) {
      return std::exp(-(q - q0) * (q - q0) - (p - p0) * (p - p0)) / kPi;
    };
    st.fock_ = [q0, p0](int n_max) { return FockMatrix::coherent(q0, p0, n_max); };
  } else if (name == "squeezed") {
    const double r = spec.params[0];
    const double vq = 0.5 * std::exp(-2.0 * r);
    const double vp = 0.5 * std::exp(2.0 * r);
    st.optical_ = [vq, vp](double x, double th) {
      const double c = std::cos(th), s = std::sin(th);
      const double v = vq * c * c + vp * s * s;
      return std::exp(-x * x / (2.0 * v)) / std::sqrt(2.0 * kPi * v);
    };
    st.wigner_ = [vq, vp](double q, double p) {
      return std::exp(-q * q / (2.0 * vq) - p * p / (2.0 * vp)) / (2.0 * kPi * std::sqrt(vq * vp));
    };
    st.fock_ = [r](int n_max) { return FockMatrix::squeezed_vacuum(r, n_max); };
  } else if (name == "example-cos3") {
    st.optical_ = [](double x, double th) {
      const double c = std::cos(th);
      const double d = x - c * c * c;
      return kInvSqrtPi * std::exp(-d * d);
    };
  } else if (name == "f1") {
    st.native_ = Representation::symplectic;
    const double pref = std::exp(0.25) * kInvSqrtPi;
    st.symplectic_ = SymplecticView::analytic(
        [pref](double x, double mu, double nu) {
          return pref * std::exp(-x * x - 0.25 * (mu * mu + nu * nu));
        },
        SymplecticView::Scaling::fixed, "f1");
    // normalized form of the phase-space preimage
    st.wigner_ = [](double q, double p) { return std::exp(-q * q - p * p) / kPi; };
  } else if (name == "w1") {
    st.optical_ = [](double x, double) { return w1_optical(x); };
    st.wigner_ = w1_wigner;
    st.fock_ = w1_fock;
  } else if (name == "W1-quartic") {
    st.native_ = Representation::wigner;
    st.optical_ = [](double x, double) { return w1_optical(x); };
    st.wigner_ = w1_wigner;
    st.fock_ = w1_fock;
  } else if (name == "M1") {
    st.native_ = Representation::symplectic;
    st.symplectic_ = SymplecticView::analytic(
        [](double x, double mu, double nu) {
          const double r2 = mu * mu + nu * nu;
          if (r2 == 0.0) throw Error("M1 is singular at (mu, nu) = (0, 0)");
          const double y2 = x * x / r2;
          return (y2 * y2 + 0.25 * y2 + 0.125) * std::exp(-y2) / std::sqrt(kPi * r2);
        },
        SymplecticView::Scaling::homogeneous, "M1");
    st.fock_ = w1_fock;
  } else if (name == "grid") {
    if (read_grid_kind(spec.path) == GridKind::optical) {
      auto grid = std::make_shared<const OpticalTomogramGrid>(read_optical_grid(spec.path));
      st.optical_store_ = grid;
      st.optical_ = grid_optical_fn(grid);
    } else {
      st.native_ = Representation::wigner;
      auto grid = std::make_shared<const WignerGrid>(read_wigner_grid(spec.path));
      st.wigner_store_ = grid;
      GridSpec out = default_grid();
      const double extent = std::max({std::abs(grid->spec().q_min), std::abs(grid->spec().q_max),
                                      std::abs(grid->spec().p_min), std::abs(grid->spec().p_max)});
      out.x_max = std::min(out.x_max, extent);
      out.x_min = -out.x_max;
      auto tomogram = std::make_shared<const OpticalTomogramGrid>(radon_optical(*grid, out));
      st.optical_store_ = tomogram;
      st.optical_ = grid_optical_fn(tomogram);
      st.wigner_ = [grid](double q, double p) {
        const GridSpec& s = grid->spec();
        const double u = (q - s.q_min) / s.dq();
        const double v = (p - s.p_min) / s.dp();
        return detail::interpolate2d(grid->values(), s.n_q, s.n_p, u, v);
      };
    }
  } else {
    throw Error("unknown state '" + name + "'");
  }

  if (st.native_ == Representation::symplectic) {
    const SymplecticView view = st.symplectic_;
    st.optical_ = [view](double x, double th) { return view.optical(x, th); };
  } else {
    st.symplectic_ = SymplecticView::from_optical(st.optical_, st.label());
  }
  return st;
}

double catalog_eval(const StateSpec& spec, Representation r, std::span<const double> point) {
  if (spec.name == "grid") throw Error("catalog_eval takes catalog names, not grid files");
  return State::resolve(spec).eval(r, point);
}

}  // namespace tomokit
