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

// Truncated composite Hilbert spaces and the dense operator algebra the
// models are built from.
//
// Conventions:
//   * qubit basis is {|g>, |e>}, Fock basis is ascending |0>..|dim-1>;
//   * the composite index is row-major over the ordered mode list, so the
//     first mode is the most significant digit and embed() realizes
//     1 (x) ... (x) op (x) ... (x) 1 with op at the requested slot.

#ifndef NPHOTON_HILBERT_HPP_
#define NPHOTON_HILBERT_HPP_

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "nphoton/errors.hpp"

namespace nphoton {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

class ModeSpace {
 public:
  enum class Kind { boson, qubit };

  static ModeSpace boson(int dim) {
    if (dim < 2) {
      throw InvalidDimension("boson mode needs dim >= 2, got " +
                             std::to_string(dim));
    }
    return ModeSpace(Kind::boson, dim);
  }
  static ModeSpace qubit() { return ModeSpace(Kind::qubit, 2); }

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  bool is_boson() const { return kind_ == Kind::boson; }

  friend bool operator==(const ModeSpace&, const ModeSpace&) = default;

  std::string describe() const {
    return is_boson() ? "boson(" + std::to_string(dim_) + ")" : "qubit";
  }

 private:
  ModeSpace(Kind kind, int dim) : kind_(kind), dim_(dim) {}

  Kind kind_;
  int dim_;
};

class CompositeSpace {
 public:
  CompositeSpace() = default;
  CompositeSpace(std::initializer_list<ModeSpace> modes) : modes_(modes) {}
  explicit CompositeSpace(std::vector<ModeSpace> modes)
      : modes_(std::move(modes)) {}

  std::size_t size() const { return modes_.size(); }
  const ModeSpace& mode(std::size_t slot) const {
    if (slot >= modes_.size()) {
      throw EmbeddingError("slot " + std::to_string(slot) +
                           " out of range for " + describe());
    }
    return modes_[slot];
  }
  const std::vector<ModeSpace>& modes() const { return modes_; }

  Eigen::Index dim() const {
    Eigen::Index total = 1;
    for (const auto& m : modes_) total *= m.dim();
    return total;
  }

  // Product of the dimensions of all modes after `slot`.
  Eigen::Index stride(std::size_t slot) const {
    Eigen::Index s = 1;
    for (std::size_t k = slot + 1; k < modes_.size(); ++k) s *= modes_[k].dim();
    return s;
  }

  // Level of mode `slot` in composite basis state `index`.
  int level(Eigen::Index index, std::size_t slot) const {
    return static_cast<int>((index / stride(slot)) % mode(slot).dim());
  }

  // Composite index of a product basis state.
  Eigen::Index index_of(const std::vector<int>& levels) const {
    if (levels.size() != modes_.size()) {
      throw EmbeddingError("expected " + std::to_string(modes_.size()) +
                           " levels for " + describe());
    }
    Eigen::Index idx = 0;
    for (std::size_t k = 0; k < modes_.size(); ++k) {
      if (levels[k] < 0 || levels[k] >= modes_[k].dim()) {
        throw EmbeddingError("level out of range on slot " + std::to_string(k));
      }
      idx = idx * modes_[k].dim() + levels[k];
    }
    return idx;
  }

  friend bool operator==(const CompositeSpace&, const CompositeSpace&) = default;

  std::string describe() const {
    std::string s = "[";
    for (std::size_t k = 0; k < modes_.size(); ++k) {
      if (k) s += ", ";
      s += modes_[k].describe();
    }
    return s + "]";
  }

 private:
  std::vector<ModeSpace> modes_;
};

// Dense square operator tagged with the space it acts on. Immutable once
// built; algebra returns new values.
class Operator {
 public:
  Operator(CompositeSpace space, Matrix matrix)
      : space_(std::move(space)), matrix_(std::move(matrix)) {
    const auto d = space_.dim();
    if (matrix_.rows() != d || matrix_.cols() != d) {
      throw InvalidDimension("operator matrix is " +
                             std::to_string(matrix_.rows()) + "x" +
                             std::to_string(matrix_.cols()) + " but space " +
                             space_.describe() + " has dimension " +
                             std::to_string(d));
    }
  }

  const CompositeSpace& space() const { return space_; }
  const Matrix& matrix() const { return matrix_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  cplx operator()(Eigen::Index r, Eigen::Index c) const { return matrix_(r, c); }

 private:
  CompositeSpace space_;
  Matrix matrix_;
};

inline Operator identity(const CompositeSpace& space) {
  const auto d = space.dim();
  return Operator(space, Matrix::Identity(d, d));
}

inline Operator annihilation(int dim) {
  auto space = CompositeSpace{ModeSpace::boson(dim)};
  Matrix m = Matrix::Zero(dim, dim);
  for (int k = 1; k < dim; ++k) m(k - 1, k) = std::sqrt(static_cast<double>(k));
  return Operator(std::move(space), std::move(m));
}

inline Operator creation(int dim) {
  Operator a = annihilation(dim);
  return Operator(a.space(), a.matrix().adjoint());
}

inline Operator number(int dim) {
  auto space = CompositeSpace{ModeSpace::boson(dim)};
  Matrix m = Matrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) m(k, k) = static_cast<double>(k);
  return Operator(std::move(space), std::move(m));
}

// |g><e| in the {|g>, |e>} basis.
inline Operator sigma_minus() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return Operator(CompositeSpace{ModeSpace::qubit()}, std::move(m));
}

inline Operator sigma_plus() {
  Matrix m = Matrix::Zero(2, 2);
  m(1, 0) = 1.0;
  return Operator(CompositeSpace{ModeSpace::qubit()}, std::move(m));
}

// Places a single-mode operator on `slot` of `space`, identity elsewhere.
inline Operator embed(const Operator& op, const CompositeSpace& space,
                      std::size_t slot) {
  if (op.space().size() != 1) {
    throw EmbeddingError("embed expects a single-mode operator, got " +
                         op.space().describe());
  }
  const ModeSpace& target = space.mode(slot);
  if (!(op.space().mode(0) == target)) {
    throw EmbeddingError("operator on " + op.space().mode(0).describe() +
                         " cannot be embedded on slot " + std::to_string(slot) +
                         " holding " + target.describe());
  }
  const Eigen::Index inner = space.stride(slot);
  const Eigen::Index d = target.dim();
  const Eigen::Index outer = space.dim() / (inner * d);
  const Eigen::Index total = space.dim();
  Matrix m = Matrix::Zero(total, total);
  for (Eigen::Index o = 0; o < outer; ++o) {
    for (Eigen::Index r = 0; r < d; ++r) {
      for (Eigen::Index c = 0; c < d; ++c) {
        const cplx v = op.matrix()(r, c);
        if (v == cplx(0.0)) continue;
        for (Eigen::Index i = 0; i < inner; ++i) {
          m((o * d + r) * inner + i, (o * d + c) * inner + i) = v;
        }
      }
    }
  }
  return Operator(space, std::move(m));
}

namespace detail {
inline void require_same_space(const Operator& a, const Operator& b,
                               const char* what) {
  if (!(a.space() == b.space())) {
    throw AlgebraError(std::string(what) + ": operands live on " +
                       a.space().describe() + " and " + b.space().describe());
  }
}
}  // namespace detail

inline Operator add(const Operator& a, const Operator& b) {
  detail::require_same_space(a, b, "add");
  return Operator(a.space(), a.matrix() + b.matrix());
}

inline Operator subtract(const Operator& a, const Operator& b) {
  detail::require_same_space(a, b, "subtract");
  return Operator(a.space(), a.matrix() - b.matrix());
}

inline Operator scale(cplx c, const Operator& a) {
  return Operator(a.space(), c * a.matrix());
}

inline Operator matmul(const Operator& a, const Operator& b) {
  detail::require_same_space(a, b, "matmul");
  return Operator(a.space(), a.matrix() * b.matrix());
}

inline Operator dagger(const Operator& a) {
  return Operator(a.space(), a.matrix().adjoint());
}

inline Operator commutator(const Operator& a, const Operator& b) {
  detail::require_same_space(a, b, "commutator");
  return Operator(a.space(), a.matrix() * b.matrix() - b.matrix() * a.matrix());
}

// a^k, with a^0 the identity.
inline Operator power(const Operator& a, int k) {
  if (k < 0) throw DomainError("negative operator power");
  Matrix result = Matrix::Identity(a.dim(), a.dim());
  for (int i = 0; i < k; ++i) result = result * a.matrix();
  return Operator(a.space(), std::move(result));
}

inline Operator operator+(const Operator& a, const Operator& b) { return add(a, b); }
inline Operator operator-(const Operator& a, const Operator& b) {
  return subtract(a, b);
}
inline Operator operator*(const Operator& a, const Operator& b) {
  return matmul(a, b);
}
inline Operator operator*(cplx c, const Operator& a) { return scale(c, a); }
inline Operator operator*(double c, const Operator& a) { return scale(c, a); }

// Largest elementwise deviation from Hermiticity.
inline double hermiticity_error(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

// Product basis ket |levels>.
inline Vector basis_ket(const CompositeSpace& space, const std::vector<int>& levels) {
  Vector v = Vector::Zero(space.dim());
  v(space.index_of(levels)) = 1.0;
  return v;
}

}  // namespace nphoton

#endif  // NPHOTON_HILBERT_HPP_
