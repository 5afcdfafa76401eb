#pragma once

// Named states with closed forms, including the standard counterexamples,
// plus external grid files. A StateSpec is resolved once into a State that
// offers every representation it has.

#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tomokit/fock.hpp"
#include "tomokit/grid.hpp"
#include "tomokit/sources.hpp"

namespace tomokit {

enum class Representation { wigner, optical, symplectic };

std::string_view to_string(Representation r);
/// Accepts "wigner", "optical", "symplectic".
Representation parse_representation(std::string_view text);

/// Textual state reference.
///
/// Syntax: ground | fockN | fock:N | coherent[:q0,p0] | squeezed[:r] |
/// example-cos3 | f1 | w1 | W1-quartic | M1 | grid:<manifest.json>
struct StateSpec {
  std::string name;
  std::vector<double> params;
  std::filesystem::path path;  // grid manifests only

  static StateSpec parse(std::string_view text);
  /// Canonical text form; parse(str()) reproduces the spec.
  std::string str() const;
};

struct CatalogEntry {
  std::string syntax;
  std::string description;
  bool genuine = true;
  /// Check expected to fail for a counterexample; empty for genuine states.
  std::string diagnosis;
  bool has_wigner = true;
};

/// Every catalog name in listing order (external grids excluded).
const std::vector<CatalogEntry>& catalog_entries();

/// A resolved state.
class State {
 public:
  static State resolve(const StateSpec& spec);

  const StateSpec& spec() const { return spec_; }
  std::string label() const { return spec_.str(); }
  /// Catalog genuineness; external grids are unknown and report false.
  bool genuine() const { return genuine_; }
  const std::string& diagnosis() const { return diagnosis_; }
  /// Representation the state is natively given in.
  Representation native() const { return native_; }

  /// Point is (q, p), (X, theta) or (X, mu, nu).
  double eval(Representation r, std::span<const double> point) const;

  const OpticalFn& optical() const { return optical_; }
  const SymplecticView& symplectic() const { return symplectic_; }
  bool has_wigner() const { return static_cast<bool>(wigner_); }
  /// Throws Error when the state has no phase-space representation.
  const PhaseFn& wigner() const;

  /// Optical samples on `spec`; returns the stored grid when it matches.
  OpticalTomogramGrid optical_grid(const GridSpec& spec) const;
  /// Phase-space samples on `spec`; stored grids are used as-is when they match.
  WignerGrid wigner_grid(const GridSpec& spec) const;

  /// Known Fock-basis coefficients, padded to n_max when smaller.
  std::optional<FockMatrix> fock(int n_max) const;

 private:
  StateSpec spec_;
  bool genuine_ = false;
  std::string diagnosis_;
  Representation native_ = Representation::optical;
  OpticalFn optical_;
  SymplecticView symplectic_;
  PhaseFn wigner_;
  std::shared_ptr<const OpticalTomogramGrid> optical_store_;
  std::shared_ptr<const WignerGrid> wigner_store_;
  std::function<FockMatrix(int)> fock_;
};

/// Closed-form evaluation of a named state (no interpolation for catalog
/// entries). Throws Error for unknown names or unavailable representations.
double catalog_eval(const StateSpec& spec, Representation r, std::span<const double> point);

}  // namespace tomokit
