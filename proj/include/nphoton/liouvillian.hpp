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

// Lindblad generator in column-stacked (vec) form, a direct steady-state
// solver, and an adaptive Dormand-Prince integrator used to cross-check it.
//
// With vec(rho)[i + j*D] = rho(i, j) we have vec(A rho B) = (B^T (x) A) vec(rho),
// so the Hamiltonian part of the generator is -i(1 (x) H - H^T (x) 1).

#ifndef NPHOTON_LIOUVILLIAN_HPP_
#define NPHOTON_LIOUVILLIAN_HPP_

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "nphoton/errors.hpp"
#include "nphoton/hilbert.hpp"
#include "nphoton/models.hpp"

namespace nphoton {

using SparseMatrix = Eigen::SparseMatrix<cplx>;
using Index = Eigen::Index;

struct CollapseChannel {
  Operator op;
  double rate = 0.0;
};

inline Vector vec(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

inline Matrix unvec(const Vector& v, Index d) {
  return Eigen::Map<const Matrix>(v.data(), d, d);
}

class DensityMatrix {
 public:
  DensityMatrix(CompositeSpace space, Matrix matrix)
      : space_(std::move(space)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != space_.dim() || matrix_.cols() != space_.dim()) {
      throw InvalidDimension("density matrix size does not match " +
                             space_.describe());
    }
  }

  static DensityMatrix from_ket(const CompositeSpace& space, const Vector& ket) {
    const double norm = ket.norm();
    if (norm == 0.0) throw DomainError("zero ket has no density matrix");
    const Vector k = ket / norm;
    return DensityMatrix(space, k * k.adjoint());
  }

  static DensityMatrix basis(const CompositeSpace& space, const std::vector<int>& levels) {
    return from_ket(space, basis_ket(space, levels));
  }

  const CompositeSpace& space() const { return space_; }
  const Matrix& matrix() const { return matrix_; }
  Index dim() const { return matrix_.rows(); }

  double trace_error() const { return std::abs(matrix_.trace() - cplx(1.0)); }
  double hermiticity_error() const { return nphoton::hermiticity_error(matrix_); }
  double purity() const { return (matrix_ * matrix_).trace().real(); }

  // Smallest eigenvalue of the Hermitian part.
  double min_eigenvalue() const {
    const Matrix h = 0.5 * (matrix_ + matrix_.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
  }

  bool is_physical(double tol = 1e-10, double positivity_floor = -1e-8) const {
    return hermiticity_error() <= tol && trace_error() <= tol &&
           min_eigenvalue() >= positivity_floor;
  }

 private:
  CompositeSpace space_;
  Matrix matrix_;
};

// (1/2) sum |eig(a - b)|
inline double trace_distance(const Matrix& a, const Matrix& b) {
  const Matrix d = a - b;
  const Matrix h = 0.5 * (d + d.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

inline double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (!(a.space() == b.space())) throw SpaceMismatch("trace_distance: spaces differ");
  return trace_distance(a.matrix(), b.matrix());
}

// o rho o^dag - 1/2 o^dag o rho - 1/2 rho o^dag o
inline Matrix dissipator_apply(const Operator& o, const DensityMatrix& rho) {
  if (!(o.space() == rho.space())) {
    throw SpaceMismatch("dissipator: operator on " + o.space().describe() +
                        ", state on " + rho.space().describe());
  }
  const Matrix& c = o.matrix();
  const Matrix cdc = c.adjoint() * c;
  const Matrix& r = rho.matrix();
  return c * r * c.adjoint() - 0.5 * (cdc * r + r * cdc);
}

class Liouvillian {
 public:
  Liouvillian(Operator hamiltonian, std::vector<CollapseChannel> channels,
              SparseMatrix generator)
      : hamiltonian_(std::move(hamiltonian)),
        channels_(std::move(channels)),
        generator_(std::move(generator)) {}

  const CompositeSpace& space() const { return hamiltonian_.space(); }
  Index hilbert_dim() const { return hamiltonian_.dim(); }
  const SparseMatrix& generator() const { return generator_; }
  const Operator& hamiltonian() const { return hamiltonian_; }
  const std::vector<CollapseChannel>& channels() const { return channels_; }

  Matrix apply(const Matrix& rho) const {
    return unvec(generator_ * vec(rho), hilbert_dim());
  }
  Matrix dense() const { return Matrix(generator_); }

 private:
  Operator hamiltonian_;
  std::vector<CollapseChannel> channels_;
  SparseMatrix generator_;
};

namespace detail {

struct Entry {
  Index row;
  Index col;
  cplx value;
};

inline std::vector<Entry> nonzeros(const Matrix& m) {
  std::vector<Entry> out;
  for (Index c = 0; c < m.cols(); ++c) {
    for (Index r = 0; r < m.rows(); ++r) {
      if (m(r, c) != cplx(0.0)) out.push_back({r, c, m(r, c)});
    }
  }
  return out;
}

inline std::vector<Entry> identity_entries(Index d) {
  std::vector<Entry> out;
  out.reserve(d);
  for (Index i = 0; i < d; ++i) out.push_back({i, i, 1.0});
  return out;
}

// Appends coeff * vec(A rho B) = coeff * (B^T (x) A) vec(rho).
inline void add_sandwich(std::vector<Eigen::Triplet<cplx>>& out,
                         const std::vector<Entry>& a, const std::vector<Entry>& b,
                         cplx coeff, Index d) {
  for (const auto& eb : b) {
    // B(l, j): column block j, row block l
    for (const auto& ea : a) {
      out.emplace_back(ea.row + eb.col * d, ea.col + eb.row * d,
                       coeff * ea.value * eb.value);
    }
  }
}

// Union-find over the sparsity graph of a square matrix.
class Components {
 public:
  explicit Components(const SparseMatrix& m) : parent_(m.rows()) {
    std::iota(parent_.begin(), parent_.end(), Index{0});
    for (Index k = 0; k < m.outerSize(); ++k) {
      for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
        if (it.value() != cplx(0.0)) unite(it.row(), it.col());
      }
    }
  }

  Index find(Index x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // Sorted indices of every component touching one of `seeds`.
  std::vector<Index> closure(std::span<const Index> seeds) {
    std::vector<char> wanted(parent_.size(), 0);
    for (Index s : seeds) wanted[find(s)] = 1;
    std::vector<Index> out;
    for (Index i = 0; i < static_cast<Index>(parent_.size()); ++i) {
      if (wanted[find(i)]) out.push_back(i);
    }
    return out;
  }

 private:
  void unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

  std::vector<Index> parent_;
};

inline SparseMatrix restrict_to(const SparseMatrix& m, const std::vector<Index>& keep) {
  std::vector<Index> local(m.rows(), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) local[keep[i]] = static_cast<Index>(i);
  std::vector<Eigen::Triplet<cplx>> t;
  t.reserve(m.nonZeros());
  for (Index k = 0; k < m.outerSize(); ++k) {
    if (local[k] < 0) continue;
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
      if (local[it.row()] >= 0) t.emplace_back(local[it.row()], local[k], it.value());
    }
  }
  const auto n = static_cast<Index>(keep.size());
  SparseMatrix r(n, n);
  r.setFromTriplets(t.begin(), t.end());
  return r;
}

inline double frobenius_norm(const SparseMatrix& m) {
  double s = 0.0;
  for (Index k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) s += std::norm(it.value());
  }
  return std::sqrt(s);
}

// Largest eigenvalue of the Hermitian positive operator `apply` via Lanczos
// with full reorthogonalization. The Ritz value is a lower bound.
template <typename Apply>
double lanczos_largest(Index n, int steps, Apply&& apply) {
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> normal;
  Vector q(n);
  for (Index i = 0; i < n; ++i) q(i) = cplx(normal(rng), normal(rng));
  q.normalize();

  std::vector<Vector> basis;
  std::vector<double> alpha, beta;
  steps = static_cast<int>(std::min<Index>(steps, n));
  for (int k = 0; k < steps; ++k) {
    basis.push_back(q);
    Vector w = apply(q);
    const double a = w.dot(q).real();
    alpha.push_back(a);
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) w -= b.dot(w) * b;
    }
    const double bnorm = w.norm();
    if (!std::isfinite(bnorm)) {
      throw SolverFailure("non-finite vector in Lanczos iteration");
    }
    if (bnorm <= 1e-13 * std::max(std::abs(a), 1e-300)) break;
    beta.push_back(bnorm);
    q = w / bnorm;
  }
  const auto m = static_cast<Index>(alpha.size());
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
  for (Index i = 0; i < m; ++i) {
    t(i, i) = alpha[i];
    if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[i];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

}  // namespace detail

inline Liouvillian build_liouvillian(const Operator& h,
                                     std::vector<CollapseChannel> channels) {
  const Index d = h.dim();
  for (const auto& ch : channels) {
    if (!(ch.op.space() == h.space())) {
      throw SpaceMismatch("collapse operator on " + ch.op.space().describe() +
                          " but Hamiltonian on " + h.space().describe());
    }
    if (!std::isfinite(ch.rate) || ch.rate < 0.0) {
      throw InvalidParameter("collapse rate must be >= 0, got " +
                             std::to_string(ch.rate));
    }
  }
  const auto id = detail::identity_entries(d);
  const auto hz = detail::nonzeros(h.matrix());
  std::vector<Eigen::Triplet<cplx>> t;
  const cplx i(0.0, 1.0);
  detail::add_sandwich(t, hz, id, -i, d);
  detail::add_sandwich(t, id, hz, i, d);
  for (const auto& ch : channels) {
    if (ch.rate == 0.0) continue;
    const Matrix& c = ch.op.matrix();
    const auto cz = detail::nonzeros(c);
    const auto cdz = detail::nonzeros(c.adjoint());
    const auto cdcz = detail::nonzeros(c.adjoint() * c);
    detail::add_sandwich(t, cz, cdz, ch.rate, d);
    detail::add_sandwich(t, cdcz, id, -0.5 * ch.rate, d);
    detail::add_sandwich(t, id, cdcz, -0.5 * ch.rate, d);
  }
  SparseMatrix g(d * d, d * d);
  g.setFromTriplets(t.begin(), t.end());
  g.prune([](Index, Index, const cplx& v) { return v != cplx(0.0); });
  g.makeCompressed();
  return Liouvillian(h, std::move(channels), std::move(g));
}

// Cavity decay on every mode at kappa, plus atomic decay for the JC model.
inline std::vector<CollapseChannel> collapse_channels(const ModelSpec& m) {
  const CompositeSpace space = space_of(m);
  const double kappa = kappa_of(m);
  std::vector<CollapseChannel> out;
  for (const auto& mode : cavity_modes(m)) {
    out.push_back({embed(annihilation(space.mode(mode.slot).dim()), space, mode.slot),
                   kappa});
  }
  if (const auto* jc = std::get_if<JCParams>(&m)) {
    out.push_back({embed(sigma_minus(), space, 1), jc->gamma});
  }
  return out;
}

inline Liouvillian build_liouvillian(const ModelSpec& m) {
  return build_liouvillian(hamiltonian(m), collapse_channels(m));
}

struct SteadyStateOptions {
  double residual_tol = 1e-9;
  double gap_floor = 1e-10;      // second-smallest singular value
  double gap_ratio_min = 1e6;    // sigma_2 / sigma_1
  int lanczos_steps = 30;
};

struct SteadyStateSolution {
  DensityMatrix rho;
  double residual = 0.0;         // ||L vec(rho)||_2
  double smallest_singular = 0.0;
  double gap = 0.0;              // second-smallest singular value
  double gap_ratio = 0.0;
  Index sector_size = 0;         // unknowns in the solved block
};

// Solves L vec(rho) = 0 with one equation replaced by tr(rho) = 1.
//
// The generator is block diagonal over the connected components of its
// sparsity graph (drive-order symmetry splits it into several); only the
// components carrying the diagonal of rho are solved. Uniqueness is probed
// on that block through the bordered matrix [[L, s l], [s r^dag, 0]] built
// from the unit left (trace) and right (rho) null vectors. Its singular
// values are those of L with the zero replaced by s, so for s >= ||L||_F its
// smallest one is the second-smallest singular value of L.
inline SteadyStateSolution solve_steady_state(const Liouvillian& lv,
                                              const SteadyStateOptions& opt = {}) {
  const Index d = lv.hilbert_dim();
  const SparseMatrix& gen = lv.generator();

  std::vector<Index> diag(d);
  for (Index i = 0; i < d; ++i) diag[i] = i + i * d;
  detail::Components comps(gen);
  const std::vector<Index> sector = comps.closure(diag);
  const auto n = static_cast<Index>(sector.size());
  const SparseMatrix block = detail::restrict_to(gen, sector);

  std::vector<char> is_diag(n, 0);
  Index anchor = -1;
  for (Index k = 0; k < n; ++k) {
    if (sector[k] % (d + 1) == 0) {
      is_diag[k] = 1;
      if (anchor < 0) anchor = k;
    }
  }

  std::vector<Eigen::Triplet<cplx>> t;
  t.reserve(block.nonZeros() + d);
  for (Index k = 0; k < block.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(block, k); it; ++it) {
      if (it.row() != anchor) t.emplace_back(it.row(), it.col(), it.value());
    }
  }
  for (Index k = 0; k < n; ++k) {
    if (is_diag[k]) t.emplace_back(anchor, k, 1.0);
  }
  SparseMatrix a(n, n);
  a.setFromTriplets(t.begin(), t.end());
  a.makeCompressed();

  Eigen::SparseLU<SparseMatrix> lu;
  lu.compute(a);
  if (lu.info() != Eigen::Success) {
    throw DegenerateSteadyState("trace-constrained generator is singular (" +
                                lu.lastErrorMessage() +
                                "): the steady state is not unique");
  }
  Vector rhs = Vector::Zero(n);
  rhs(anchor) = 1.0;
  const Vector x = lu.solve(rhs);
  if (!x.allFinite()) throw SolverFailure("steady-state solve produced non-finite values");

  Vector full = Vector::Zero(d * d);
  for (Index k = 0; k < n; ++k) full(sector[k]) = x(k);
  Matrix rho = unvec(full, d);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  const cplx tr = rho.trace();
  if (std::abs(tr) == 0.0) throw SolverFailure("steady state has zero trace");
  rho /= tr.real();

  const Vector v = vec(rho);
  SteadyStateSolution sol{DensityMatrix(lv.space(), rho), (gen * v).norm()};
  sol.sector_size = n;

  // Uniqueness probe on the solved block.
  Vector right(n);
  for (Index k = 0; k < n; ++k) right(k) = v(sector[k]);
  right.normalize();
  const double left_scale = 1.0 / std::sqrt(static_cast<double>(d));
  const double lnorm = detail::frobenius_norm(block);
  const double s = std::max(1.0, lnorm);
  sol.smallest_singular = (block * right).norm();

  std::vector<Eigen::Triplet<cplx>> bt;
  bt.reserve(block.nonZeros() + n + d);
  for (Index k = 0; k < block.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(block, k); it; ++it) {
      bt.emplace_back(it.row(), it.col(), it.value());
    }
  }
  for (Index k = 0; k < n; ++k) {
    if (is_diag[k]) bt.emplace_back(k, n, s * left_scale);
    if (right(k) != cplx(0.0)) bt.emplace_back(n, k, s * std::conj(right(k)));
  }
  SparseMatrix bordered(n + 1, n + 1);
  bordered.setFromTriplets(bt.begin(), bt.end());
  bordered.makeCompressed();
  Eigen::SparseLU<SparseMatrix> blu;
  blu.compute(bordered);
  if (blu.info() != Eigen::Success) {
    throw DegenerateSteadyState("bordered generator is singular: steady state not unique");
  }
  const double mu = detail::lanczos_largest(n + 1, opt.lanczos_steps, [&](const Vector& q) {
    const Vector z = blu.adjoint().solve(q);
    return Vector(blu.solve(z));
  });
  sol.gap = mu > 0.0 ? 1.0 / std::sqrt(mu) : 0.0;
  const double floor = std::numeric_limits<double>::epsilon() * std::max(lnorm, 1.0);
  sol.gap_ratio = sol.gap / std::max(sol.smallest_singular, floor);

  if (!(sol.gap >= opt.gap_floor) || !(sol.gap_ratio >= opt.gap_ratio_min)) {
    throw DegenerateSteadyState(
        "second-smallest singular value " + std::to_string(sol.gap) +
        " (ratio " + std::to_string(sol.gap_ratio) + ") indicates a non-unique steady state");
  }
  return sol;
}

// Steady state, with the residual check enforced.
inline DensityMatrix steady_state(const Liouvillian& lv, const SteadyStateOptions& opt = {}) {
  SteadyStateSolution sol = solve_steady_state(lv, opt);
  if (!(sol.residual <= opt.residual_tol)) {
    throw SolverFailure("steady-state residual " + std::to_string(sol.residual) +
                        " exceeds " + std::to_string(opt.residual_tol));
  }
  return std::move(sol.rho);
}

struct EvolveStats {
  std::int64_t accepted = 0;
  std::int64_t rejected = 0;
};

// Integrates d vec(rho)/dt = L vec(rho) to t_final with the Dormand-Prince
// 5(4) pair, keeping the max-norm local error below `tol`. Only the
// generator components reachable from the support of rho0 are integrated;
// the rest stay exactly zero.
inline DensityMatrix evolve(const DensityMatrix& rho0, const Liouvillian& lv,
                            double t_final, double tol = 1e-10,
                            EvolveStats* stats = nullptr) {
  if (!(t_final > 0.0)) throw DomainError("evolve needs t_final > 0");
  if (!(tol > 0.0)) throw DomainError("evolve needs tol > 0");
  if (!(rho0.space() == lv.space())) throw SpaceMismatch("evolve: state and generator spaces differ");

  const Index d = lv.hilbert_dim();
  const Vector y0 = vec(rho0.matrix());
  std::vector<Index> support;
  for (Index k = 0; k < y0.size(); ++k) {
    if (y0(k) != cplx(0.0)) support.push_back(k);
  }
  detail::Components comps(lv.generator());
  const std::vector<Index> keep = comps.closure(support);
  const auto n = static_cast<Index>(keep.size());
  if (n == 0) throw DomainError("evolve: zero initial state");
  const Eigen::SparseMatrix<cplx, Eigen::RowMajor> gen =
      detail::restrict_to(lv.generator(), keep);
  Vector y(n);
  for (Index k = 0; k < n; ++k) y(k) = y0(keep[k]);

  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                   b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  double norm_inf = 0.0;
  for (Index k = 0; k < gen.outerSize(); ++k) {
    double row = 0.0;
    for (decltype(gen)::InnerIterator it(gen, k); it; ++it) row += std::abs(it.value());
    norm_inf = std::max(norm_inf, row);
  }
  double h = std::min(t_final, 0.01 / std::max(norm_inf, 1.0));
  const double h_min = 1e-13 * t_final;

  Vector k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), stage(n), y_new(n);
  k1.noalias() = gen * y;
  double t = 0.0;
  EvolveStats local;
  while (t < t_final) {
    if (t + h > t_final) h = t_final - t;
    stage = y + (h * a21) * k1;
    k2.noalias() = gen * stage;
    stage = y + h * (a31 * k1 + a32 * k2);
    k3.noalias() = gen * stage;
    stage = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
    k4.noalias() = gen * stage;
    stage = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    k5.noalias() = gen * stage;
    stage = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    k6.noalias() = gen * stage;
    y_new = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    k7.noalias() = gen * y_new;
    const double e =
        (h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7)).cwiseAbs().maxCoeff() /
        tol;
    if (!std::isfinite(e)) throw StiffnessError("non-finite error estimate in evolve");
    if (e <= 1.0) {
      t += h;
      y.swap(y_new);
      k1.swap(k7);
      ++local.accepted;
    } else {
      ++local.rejected;
    }
    const double factor = e == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(e, -0.2), 0.2, 5.0);
    h *= factor;
    if (t < t_final && h < h_min) {
      throw StiffnessError("step size underflow at t = " + std::to_string(t));
    }
  }
  if (stats) *stats = local;

  Vector full = Vector::Zero(d * d);
  for (Index k = 0; k < n; ++k) full(keep[k]) = y(k);
  Matrix rho = unvec(full, d);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();
  return DensityMatrix(lv.space(), std::move(rho));
}

}  // namespace nphoton

#endif  // NPHOTON_LIOUVILLIAN_HPP_
