// Copyright 2026 The nphoton Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Hamiltonians of the three driven-dissipative models (Jaynes-Cummings,
// single Kerr resonator, two coupled Kerr resonators) and their analytic
// excitation-manifold spectra.
//
// Builders work in the frame rotating at omega_p/n, so every bare cavity
// frequency appears as the detuning delta. The analytic-spectrum helpers
// take the lab-frame cavity frequency omega_a instead. All frequencies are
// in units of the cavity decay rate kappa.

#ifndef NPHOTON_MODELS_HPP_
#define NPHOTON_MODELS_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "nphoton/errors.hpp"
#include "nphoton/hilbert.hpp"

namespace nphoton {

struct DriveSpec {
  enum class Kind { parametric, coherent };

  Kind kind = Kind::parametric;
  int order = 2;           // photons created per drive event; 1 for coherent
  double amplitude = 0.0;  // lambda for parametric, F for coherent

  static DriveSpec parametric(int n, double lambda) {
    DriveSpec d{Kind::parametric, n, lambda};
    d.validate();
    return d;
  }
  static DriveSpec coherent(double f) {
    DriveSpec d{Kind::coherent, 1, f};
    d.validate();
    return d;
  }

  bool is_parametric() const { return kind == Kind::parametric; }

  void validate() const {
    if (!std::isfinite(amplitude) || amplitude < 0.0) {
      throw InvalidParameter("drive amplitude must be finite and >= 0, got " +
                             std::to_string(amplitude));
    }
    if (kind == Kind::parametric && order < 2) {
      // an order-1 parametric drive is the coherent drive; ask for that instead
      throw InvalidParameter("parametric drive order must be >= 2, got " +
                             std::to_string(order));
    }
    if (kind == Kind::coherent && order != 1) {
      throw InvalidParameter("coherent drive has order 1");
    }
  }

  // lambda (a^dag^n + a^n) or F (a^dag + a) for the given embedded mode.
  Operator term(const Operator& a) const {
    const Operator an = power(a, order);
    return scale(amplitude, an + dagger(an));
  }

  friend bool operator==(const DriveSpec&, const DriveSpec&) = default;
};

namespace detail {

inline void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw InvalidParameter(std::string(name) + " must be finite");
  }
}

inline void require_kappa(double kappa) {
  if (!std::isfinite(kappa) || kappa <= 0.0) {
    throw InvalidParameter("kappa must be > 0, got " + std::to_string(kappa));
  }
}

// The truncation has to resolve g^(n+1), i.e. hold at least n+3 levels.
inline void require_cavity_dim(int dim, const DriveSpec& drive, const char* name) {
  const int needed = drive.order + 3;
  if (dim < needed) {
    throw InvalidParameter(std::string(name) + " must be >= " +
                           std::to_string(needed) + " for drive order " +
                           std::to_string(drive.order) + ", got " +
                           std::to_string(dim));
  }
}

}  // namespace detail

struct JCParams {
  double delta = 0.0;  // common cavity/atom detuning
  double g = 0.0;
  double gamma = 0.0;  // atomic spontaneous emission
  double kappa = 1.0;
  DriveSpec drive;
  int cavity_dim = 12;

  void validate() const {
    detail::require_finite(delta, "delta");
    detail::require_finite(g, "g");
    detail::require_kappa(kappa);
    if (!std::isfinite(gamma) || gamma < 0.0) {
      throw InvalidParameter("gamma must be >= 0, got " + std::to_string(gamma));
    }
    drive.validate();
    detail::require_cavity_dim(cavity_dim, drive, "cavity_dim");
  }
};

struct KerrParams {
  double delta = 0.0;
  double U = 0.0;
  double kappa = 1.0;
  DriveSpec drive;
  int cavity_dim = 15;

  void validate() const {
    detail::require_finite(delta, "delta");
    detail::require_finite(U, "U");
    detail::require_kappa(kappa);
    drive.validate();
    detail::require_cavity_dim(cavity_dim, drive, "cavity_dim");
  }
};

// Both cavities share delta, U and kappa; the drive acts on cavity a only.
struct CoupledKerrParams {
  double delta = 0.0;
  double U = 0.0;
  double J = 0.0;
  double kappa = 1.0;
  DriveSpec drive;
  int dim_a = 8;
  int dim_b = 8;

  void validate() const {
    detail::require_finite(delta, "delta");
    detail::require_finite(U, "U");
    detail::require_finite(J, "J");
    detail::require_kappa(kappa);
    drive.validate();
    detail::require_cavity_dim(dim_a, drive, "dim_a");
    detail::require_cavity_dim(dim_b, drive, "dim_b");
  }
};

struct AnalyticLevel {
  int excitation = 0;
  int branch = 1;  // 1-based, ascending in frequency
  double frequency = 0.0;
};

// ---------------------------------------------------------------------------
// Hamiltonian builders

inline Operator build_jc_hamiltonian(const JCParams& p) {
  p.validate();
  const CompositeSpace space{ModeSpace::boson(p.cavity_dim), ModeSpace::qubit()};
  const Operator a = embed(annihilation(p.cavity_dim), space, 0);
  const Operator sm = embed(sigma_minus(), space, 1);
  const Operator ad = dagger(a);
  const Operator sp = dagger(sm);
  const Operator n = embed(number(p.cavity_dim), space, 0);
  Operator h = scale(p.delta, n) + scale(p.delta, sp * sm) +
               scale(p.g, ad * sm + sp * a) + p.drive.term(a);
  return h;
}

inline Operator build_kerr_hamiltonian(const KerrParams& p) {
  p.validate();
  const Operator a = annihilation(p.cavity_dim);
  const Operator n = number(p.cavity_dim);
  // a^dag a^dag a a = N (N - 1), built from the integer diagonal
  return scale(p.delta, n) + scale(p.U, n * (n - identity(n.space()))) + p.drive.term(a);
}

inline Operator build_coupled_kerr_hamiltonian(const CoupledKerrParams& p) {
  p.validate();
  const CompositeSpace space{ModeSpace::boson(p.dim_a), ModeSpace::boson(p.dim_b)};
  const Operator a = embed(annihilation(p.dim_a), space, 0);
  const Operator b = embed(annihilation(p.dim_b), space, 1);
  const Operator ad = dagger(a);
  const Operator bd = dagger(b);
  const Operator na = embed(number(p.dim_a), space, 0);
  const Operator nb = embed(number(p.dim_b), space, 1);
  const Operator id = identity(space);
  return scale(p.delta, na + nb) + scale(p.J, ad * b + bd * a) +
         scale(p.U, na * (na - id) + nb * (nb - id)) + p.drive.term(a);
}

// ---------------------------------------------------------------------------
// Analytic spectra. Every model's n-excitation levels have the form
// n*omega_a + shift, so a pump at omega_p = omega_n^j is resonant in the
// rotating frame when n*delta + shift = 0.

// Rotating-frame detuning at which a pump of order n hits a level whose
// frequency at omega_a = 0 is `shift`.
inline double resonant_detuning(const AnalyticLevel& level_at_zero) {
  if (level_at_zero.excitation < 1) {
    throw DomainError("resonance needs excitation number >= 1");
  }
  return -level_at_zero.frequency / level_at_zero.excitation;
}

inline std::vector<double> resonant_detunings(std::span<const AnalyticLevel> levels) {
  std::vector<double> out;
  out.reserve(levels.size());
  for (const auto& l : levels) out.push_back(resonant_detuning(l));
  std::sort(out.begin(), out.end());
  return out;
}

// Dressed JC doublet n*omega_a -/+ sqrt(n) g.
inline std::pair<double, double> jc_eigenfrequencies(int n, double omega_a, double g) {
  if (n < 1) throw DomainError("jc_eigenfrequencies needs n >= 1");
  const double split = std::sqrt(static_cast<double>(n)) * g;
  return {n * omega_a - split, n * omega_a + split};
}

inline std::vector<AnalyticLevel> jc_levels(int n, double omega_a, double g) {
  const auto [lo, hi] = jc_eigenfrequencies(n, omega_a, g);
  return {{n, 1, lo}, {n, 2, hi}};
}

// Detunings where the pump is resonant with either dressed n-photon state.
inline std::pair<double, double> jc_blockade_detunings(int n, double g) {
  if (n < 2) throw DomainError("jc_blockade_detunings needs n >= 2");
  const auto levels = jc_levels(n, 0.0, g);
  return {resonant_detuning(levels[0]), resonant_detuning(levels[1])};
}

inline double kerr_eigenfrequency(int n, double omega_a, double U) {
  if (n < 0) throw DomainError("kerr_eigenfrequency needs n >= 0");
  return omega_a * n + U * (static_cast<double>(n) * n - n);
}

inline double kerr_blockade_detuning(int n, double U) {
  if (n < 2) throw DomainError("kerr_blockade_detuning needs n >= 2");
  return resonant_detuning({n, 1, kerr_eigenfrequency(n, 0.0, U)});
}

// Undriven coupled-Kerr Hamiltonian on span{|20>, |11>, |02>}.
inline Eigen::Matrix3d coupled_two_photon_block(double omega_a, double U, double J) {
  const double c = std::sqrt(2.0) * J;
  Eigen::Matrix3d m;
  m << 2 * omega_a + 2 * U, c, 0.0,
       c, 2 * omega_a, c,
       0.0, c, 2 * omega_a + 2 * U;
  return m;
}

struct TwoPhotonEigensystem {
  std::array<AnalyticLevel, 3> levels;
  // Unnormalized, in the {|20>, |11>, |02>} basis; vectors[j] pairs with
  // levels[j].
  std::array<Eigen::Vector3d, 3> vectors;
};

inline TwoPhotonEigensystem coupled_two_photon_eigensystem(double omega_a, double U,
                                                           double J) {
  const double root = std::sqrt(4 * J * J + U * U);
  TwoPhotonEigensystem es;
  es.levels[0] = {2, 1, 2 * omega_a + U - root};
  es.levels[1] = {2, 2, 2 * (U + omega_a)};
  es.levels[2] = {2, 3, 2 * omega_a + U + root};
  es.vectors[1] = Eigen::Vector3d(-1.0, 0.0, 1.0);
  if (J != 0.0) {
    const double denom = std::sqrt(2.0) * J;
    es.vectors[0] = Eigen::Vector3d(1.0, -(U + root) / denom, 1.0);
    es.vectors[2] = Eigen::Vector3d(1.0, -(U - root) / denom, 1.0);
  } else {
    // Decoupled cavities: |11> sits at 2 omega_a, |20>+|02> at 2 omega_a + 2U.
    const Eigen::Vector3d pair(1.0, 0.0, 1.0);
    const Eigen::Vector3d mixed(0.0, 1.0, 0.0);
    es.vectors[0] = U > 0.0 ? mixed : pair;
    es.vectors[2] = U > 0.0 ? pair : mixed;
  }
  return es;
}

struct CoupledBlockade {
  std::array<double, 3> detunings;  // ascending
  // Spacing of the left and right neighbouring resonances measured in pump
  // frequency omega_p = 2(omega_a - delta), i.e. twice the detuning spacing.
  double left_gap = 0.0;
  double right_gap = 0.0;
};

inline CoupledBlockade coupled_blockade_detunings(double U, double J) {
  const auto es = coupled_two_photon_eigensystem(0.0, U, J);
  const auto d = resonant_detunings(es.levels);
  const double root = std::sqrt(4 * J * J + U * U);
  return {{d[0], d[1], d[2]}, root - U, root + U};
}

// ---------------------------------------------------------------------------
// Model-agnostic view used by the solver pipeline and the CLI.

using ModelSpec = std::variant<JCParams, KerrParams, CoupledKerrParams>;

struct CavityMode {
  std::string label;
  std::size_t slot;
};

inline const DriveSpec& drive_of(const ModelSpec& m) {
  return std::visit([](const auto& p) -> const DriveSpec& { return p.drive; }, m);
}

inline DriveSpec& drive_of(ModelSpec& m) {
  return std::visit([](auto& p) -> DriveSpec& { return p.drive; }, m);
}

inline double kappa_of(const ModelSpec& m) {
  return std::visit([](const auto& p) { return p.kappa; }, m);
}

inline const char* model_name(const ModelSpec& m) {
  switch (m.index()) {
    case 0: return "jc";
    case 1: return "kerr";
    default: return "coupled_kerr";
  }
}

inline void validate(const ModelSpec& m) {
  std::visit([](const auto& p) { p.validate(); }, m);
}

inline CompositeSpace space_of(const ModelSpec& m) {
  if (const auto* jc = std::get_if<JCParams>(&m)) {
    return {ModeSpace::boson(jc->cavity_dim), ModeSpace::qubit()};
  }
  if (const auto* k = std::get_if<KerrParams>(&m)) {
    return {ModeSpace::boson(k->cavity_dim)};
  }
  const auto& c = std::get<CoupledKerrParams>(m);
  return {ModeSpace::boson(c.dim_a), ModeSpace::boson(c.dim_b)};
}

inline std::vector<CavityMode> cavity_modes(const ModelSpec& m) {
  if (std::holds_alternative<CoupledKerrParams>(m)) return {{"a", 0}, {"b", 1}};
  return {{"a", 0}};
}

inline Operator hamiltonian(const ModelSpec& m) {
  return std::visit(
      [](const auto& p) -> Operator {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, JCParams>) return build_jc_hamiltonian(p);
        else if constexpr (std::is_same_v<T, KerrParams>) return build_kerr_hamiltonian(p);
        else return build_coupled_kerr_hamiltonian(p);
      },
      m);
}

inline ModelSpec undriven(ModelSpec m) {
  drive_of(m).amplitude = 0.0;
  return m;
}

// Smallest cavity truncation in the model.
inline int cavity_dim_of(const ModelSpec& m) {
  if (const auto* jc = std::get_if<JCParams>(&m)) return jc->cavity_dim;
  if (const auto* k = std::get_if<KerrParams>(&m)) return k->cavity_dim;
  const auto& c = std::get<CoupledKerrParams>(m);
  return std::min(c.dim_a, c.dim_b);
}

// Sets every cavity truncation to `dim`.
inline ModelSpec with_cavity_dim(ModelSpec m, int dim) {
  if (auto* jc = std::get_if<JCParams>(&m)) {
    jc->cavity_dim = dim;
  } else if (auto* k = std::get_if<KerrParams>(&m)) {
    k->cavity_dim = dim;
  } else {
    auto& c = std::get<CoupledKerrParams>(m);
    c.dim_a = dim;
    c.dim_b = dim;
  }
  return m;
}

// Excitation number operator that the undriven Hamiltonian conserves.
inline Operator excitation_number(const ModelSpec& m) {
  const CompositeSpace space = space_of(m);
  if (std::holds_alternative<JCParams>(m)) {
    const Operator a = embed(annihilation(space.mode(0).dim()), space, 0);
    const Operator sm = embed(sigma_minus(), space, 1);
    return dagger(a) * a + dagger(sm) * sm;
  }
  Operator total = scale(0.0, identity(space));
  for (std::size_t s = 0; s < space.size(); ++s) {
    const Operator a = embed(annihilation(space.mode(s).dim()), space, s);
    total = total + dagger(a) * a;
  }
  return total;
}

// Analytic levels of the undriven model, at the rotating-frame cavity
// frequency delta, up to `max_excitation` quanta (coupled model: the
// two-excitation manifold only).
inline std::vector<AnalyticLevel> analytic_levels(const ModelSpec& m,
                                                  int max_excitation) {
  std::vector<AnalyticLevel> out;
  if (const auto* jc = std::get_if<JCParams>(&m)) {
    out.push_back({0, 1, 0.0});
    for (int n = 1; n <= max_excitation; ++n) {
      for (const auto& l : jc_levels(n, jc->delta, jc->g)) out.push_back(l);
    }
  } else if (const auto* k = std::get_if<KerrParams>(&m)) {
    for (int n = 0; n <= max_excitation; ++n) {
      out.push_back({n, 1, kerr_eigenfrequency(n, k->delta, k->U)});
    }
  } else {
    const auto& c = std::get<CoupledKerrParams>(m);
    for (const auto& l : coupled_two_photon_eigensystem(c.delta, c.U, c.J).levels) {
      out.push_back(l);
    }
  }
  return out;
}

// Rotating-frame detunings at which the order-n pump is resonant with an
// n-excitation level of the model.
inline std::vector<double> predicted_blockade_detunings(const ModelSpec& m) {
  const DriveSpec& drive = drive_of(m);
  if (!drive.is_parametric()) {
    throw NotImplemented("blockade conditions are defined for parametric drives");
  }
  const int n = drive.order;
  if (const auto* jc = std::get_if<JCParams>(&m)) {
    const auto [lo, hi] = jc_blockade_detunings(n, jc->g);
    std::vector<double> v{lo, hi};
    std::sort(v.begin(), v.end());
    return v;
  }
  if (const auto* k = std::get_if<KerrParams>(&m)) {
    return {kerr_blockade_detuning(n, k->U)};
  }
  if (n != 2) {
    throw NotImplemented(
        "coupled-Kerr blockade conditions are only available for n = 2: the "
        "n-excitation manifold has n+1 levels with no closed form in general");
  }
  const auto& c = std::get<CoupledKerrParams>(m);
  const auto b = coupled_blockade_detunings(c.U, c.J);
  return {b.detunings.begin(), b.detunings.end()};
}

}  // namespace nphoton

#endif  // NPHOTON_MODELS_HPP_
