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

// Expectation values, Fock statistics and equal-time correlation functions
// g^(n)(0) = <a^dag^n a^n> / <a^dag a>^n of a chosen cavity mode.

#ifndef NPHOTON_OBSERVABLES_HPP_
#define NPHOTON_OBSERVABLES_HPP_

#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nphoton/errors.hpp"
#include "nphoton/hilbert.hpp"
#include "nphoton/liouvillian.hpp"

namespace nphoton {

// Below this <a^dag a> the correlation ratio is reported as undefined.
inline constexpr double kMeanPhotonGuard = 1e-12;

inline cplx expectation(const DensityMatrix& rho, const Operator& o) {
  if (!(rho.space() == o.space())) {
    throw SpaceMismatch("expectation: operator on " + o.space().describe() +
                        ", state on " + rho.space().describe());
  }
  // tr(O rho) without forming the product
  return (o.matrix().transpose().cwiseProduct(rho.matrix())).sum();
}

namespace detail {
inline Operator mode_annihilation(const CompositeSpace& space, std::size_t slot) {
  const ModeSpace& m = space.mode(slot);
  if (!m.is_boson()) {
    throw SpaceMismatch("slot " + std::to_string(slot) + " is not a bosonic mode");
  }
  return embed(annihilation(m.dim()), space, slot);
}
}  // namespace detail

// <a^dag^n a^n> on the truncated space.
inline double factorial_moment(const DensityMatrix& rho, std::size_t slot, int n) {
  const Operator an = power(detail::mode_annihilation(rho.space(), slot), n);
  return expectation(rho, dagger(an) * an).real();
}

inline double mean_photon_number(const DensityMatrix& rho, std::size_t slot) {
  return factorial_moment(rho, slot, 1);
}

// nullopt when <a^dag a> <= kMeanPhotonGuard.
inline std::optional<double> try_g_n(const DensityMatrix& rho, std::size_t slot, int n) {
  if (n < 2) throw DomainError("g_n needs n >= 2");
  const double mean = mean_photon_number(rho, slot);
  if (!(mean > kMeanPhotonGuard)) return std::nullopt;
  const double moment = factorial_moment(rho, slot, n);
  return std::max(moment, 0.0) / std::pow(mean, n);
}

inline double g_n(const DensityMatrix& rho, std::size_t slot, int n) {
  const auto g = try_g_n(rho, slot, n);
  if (!g) {
    throw VanishingMeanPhoton("<a^dag a> below " + std::to_string(kMeanPhotonGuard) +
                              " on slot " + std::to_string(slot) + ": g^(" +
                              std::to_string(n) + ") undefined");
  }
  return *g;
}

// Diagonal of the reduced state of one mode.
inline std::vector<double> fock_populations(const DensityMatrix& rho, std::size_t slot) {
  const CompositeSpace& space = rho.space();
  const int dim = space.mode(slot).dim();
  std::vector<double> p(dim, 0.0);
  for (Index i = 0; i < rho.dim(); ++i) {
    p[space.level(i, slot)] += rho.matrix()(i, i).real();
  }
  return p;
}

// Population of the two highest retained Fock levels.
inline double fock_tail(std::span<const double> populations) {
  const std::size_t n = populations.size();
  double tail = 0.0;
  for (std::size_t k = n >= 2 ? n - 2 : 0; k < n; ++k) tail += populations[k];
  return tail;
}

inline bool truncation_ok(const DensityMatrix& rho, std::size_t slot, double tol) {
  if (!(tol > 0.0)) throw DomainError("truncation tolerance must be > 0");
  return fock_tail(fock_populations(rho, slot)) <= tol;
}

// n-photon blockade: bunched at order n and antibunched at order n+1.
inline bool classify_blockade(double g_n_value, double g_n_plus_1_value) {
  if (!(g_n_value >= 0.0) || !(g_n_plus_1_value >= 0.0)) {
    throw DomainError("correlation values must be non-negative");
  }
  return g_n_value >= 1.0 && g_n_plus_1_value < 1.0;
}

struct CorrelationReport {
  std::string mode;
  std::map<int, std::optional<double>> g;
  double mean_n = 0.0;
  double fock_tail = 0.0;
  std::vector<double> populations;
};

inline CorrelationReport correlation_report(const DensityMatrix& rho, std::size_t slot,
                                            std::string label,
                                            std::span<const int> orders) {
  CorrelationReport r;
  r.mode = std::move(label);
  r.mean_n = mean_photon_number(rho, slot);
  r.populations = fock_populations(rho, slot);
  r.fock_tail = fock_tail(r.populations);
  for (int n : orders) r.g[n] = try_g_n(rho, slot, n);
  return r;
}

// Truncated coherent state on a single boson mode, renormalized.
inline DensityMatrix coherent_state(int dim, cplx alpha) {
  const CompositeSpace space{ModeSpace::boson(dim)};
  Vector ket(dim);
  cplx amp = std::exp(-0.5 * std::norm(alpha));
  for (int k = 0; k < dim; ++k) {
    ket(k) = amp;
    amp *= alpha / std::sqrt(static_cast<double>(k + 1));
  }
  return DensityMatrix::from_ket(space, ket);
}

// Truncated thermal state with Bose-Einstein mean occupation nbar.
inline DensityMatrix thermal_state(int dim, double nbar) {
  if (!(nbar >= 0.0)) throw DomainError("thermal occupation must be >= 0");
  const CompositeSpace space{ModeSpace::boson(dim)};
  Matrix m = Matrix::Zero(dim, dim);
  const double ratio = nbar / (1.0 + nbar);
  double p = 1.0 / (1.0 + nbar);
  double total = 0.0;
  for (int k = 0; k < dim; ++k) {
    m(k, k) = p;
    total += p;
    p *= ratio;
  }
  m /= total;
  return DensityMatrix(space, std::move(m));
}

}  // namespace nphoton

#endif  // NPHOTON_OBSERVABLES_HPP_
