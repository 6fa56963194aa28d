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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "nphoton/hilbert.hpp"
#include "test_util.hpp"

namespace nphoton {
namespace {

TEST(Annihilation, TwoLevel) {
  const Operator a = annihilation(2);
  Matrix expected(2, 2);
  expected << 0, 1, 0, 0;
  EXPECT_EQ(a.matrix(), expected);
}

TEST(Annihilation, SqrtEntries) {
  const Operator a = annihilation(3);
  EXPECT_DOUBLE_EQ(a(0, 1).real(), 1.0);
  EXPECT_NEAR(a(1, 2).real(), 1.41421356, 1e-8);
  EXPECT_EQ((a.matrix().array() != cplx(0.0)).count(), 2);
}

TEST(Annihilation, NumberOperator) {
  const Operator a = annihilation(5);
  const Operator n = dagger(a) * a;
  Eigen::VectorXcd diag(5);
  diag << 0, 1, 2, 3, 4;
  EXPECT_TRUE(n.matrix().isApprox(Matrix(diag.asDiagonal())));
}

TEST(Annihilation, RejectsSmallDimension) {
  EXPECT_THROW(annihilation(1), InvalidDimension);
  EXPECT_THROW(annihilation(0), InvalidDimension);
  EXPECT_THROW(ModeSpace::boson(1), InvalidDimension);
}

TEST(SigmaMinus, LowersExcitedState) {
  const Operator sm = sigma_minus();
  const CompositeSpace q{ModeSpace::qubit()};
  EXPECT_EQ(sm.matrix() * basis_ket(q, {1}), basis_ket(q, {0}));
  EXPECT_TRUE((sm.matrix() * basis_ket(q, {0})).isZero());
  Matrix proj = Matrix::Zero(2, 2);
  proj(1, 1) = 1.0;
  EXPECT_EQ((dagger(sm) * sm).matrix(), proj);
  EXPECT_EQ(sigma_plus().matrix(), dagger(sm).matrix());
}

TEST(Embed, DisjointSlotsCommute) {
  const CompositeSpace space{ModeSpace::boson(3), ModeSpace::qubit()};
  const Operator a = embed(annihilation(3), space, 0);
  const Operator sm = embed(sigma_minus(), space, 1);
  EXPECT_EQ(a.dim(), 6);
  EXPECT_LE(commutator(a, sm).matrix().cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE(commutator(a, dagger(sm)).matrix().cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Embed, IdentityStaysIdentity) {
  const CompositeSpace space{ModeSpace::boson(3), ModeSpace::qubit(), ModeSpace::boson(2)};
  for (std::size_t slot = 0; slot < space.size(); ++slot) {
    const Operator id = identity(CompositeSpace{space.mode(slot)});
    EXPECT_EQ(embed(id, space, slot).matrix(), Matrix::Identity(12, 12));
  }
}

TEST(Embed, LowersSecondSlot) {
  const CompositeSpace space{ModeSpace::boson(4), ModeSpace::boson(4)};
  const Operator b = embed(annihilation(4), space, 1);
  EXPECT_EQ(b.matrix() * basis_ket(space, {0, 1}), basis_ket(space, {0, 0}));
  // and leaves slot 0 untouched
  EXPECT_EQ(b.matrix() * basis_ket(space, {2, 3}),
            std::sqrt(3.0) * basis_ket(space, {2, 2}));
}

TEST(Embed, RejectsMismatchedMode) {
  const CompositeSpace space{ModeSpace::boson(3), ModeSpace::qubit()};
  EXPECT_THROW(embed(annihilation(4), space, 0), EmbeddingError);
  EXPECT_THROW(embed(annihilation(2), space, 1), EmbeddingError);
  EXPECT_THROW(embed(sigma_minus(), space, 2), EmbeddingError);
}

TEST(Algebra, SpaceMismatchThrows) {
  const Operator a = annihilation(3);
  const Operator b = annihilation(4);
  EXPECT_THROW(add(a, b), AlgebraError);
  EXPECT_THROW(matmul(a, b), AlgebraError);
  EXPECT_THROW(commutator(a, b), AlgebraError);
  EXPECT_THROW(Operator(CompositeSpace{ModeSpace::boson(3)}, Matrix::Zero(2, 2)),
               InvalidDimension);
}

TEST(Algebra, DaggerOfScaled) {
  std::mt19937_64 rng(1);
  const CompositeSpace s{ModeSpace::boson(4)};
  const Operator a(s, testing::random_matrix(rng, 4));
  const cplx c(0.3, -1.7);
  EXPECT_LE((dagger(scale(c, a)).matrix() - std::conj(c) * dagger(a).matrix())
                .cwiseAbs()
                .maxCoeff(),
            1e-12);
  EXPECT_EQ(matmul(a, identity(s)).matrix(), a.matrix());
}

// [a, a^dag] = 1 except the last diagonal entry, 1 - d.
TEST(AlgebraProperty, TruncatedCanonicalCommutator) {
  for (int d = 2; d <= 30; ++d) {
    const Operator a = annihilation(d);
    Matrix expected = Matrix::Identity(d, d);
    expected(d - 1, d - 1) = 1.0 - d;
    EXPECT_LE((commutator(a, dagger(a)).matrix() - expected).cwiseAbs().maxCoeff(), 1e-12)
        << "d=" << d;
  }
}

TEST(AlgebraProperty, DaggerInvolutionAndAntiHomomorphism) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> dims(2, 9);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = dims(rng);
    const CompositeSpace s{ModeSpace::boson(d)};
    const Operator a(s, testing::random_matrix(rng, d));
    const Operator b(s, testing::random_matrix(rng, d));
    EXPECT_EQ(dagger(dagger(a)).matrix(), a.matrix());
    EXPECT_LE((dagger(a * b).matrix() - (dagger(b) * dagger(a)).matrix()).cwiseAbs().maxCoeff(),
              1e-12);
  }
}

TEST(AlgebraProperty, EmbeddingPreservesSpectrum) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dims(2, 4);
  for (int trial = 0; trial < 20; ++trial) {
    const CompositeSpace space{ModeSpace::boson(dims(rng)), ModeSpace::qubit(),
                               ModeSpace::boson(dims(rng))};
    const std::size_t slot = trial % 3;
    const int d = space.mode(slot).dim();
    const Operator op(CompositeSpace{space.mode(slot)}, testing::random_hermitian(rng, d));
    Eigen::SelfAdjointEigenSolver<Matrix> small(op.matrix());
    Eigen::SelfAdjointEigenSolver<Matrix> big(embed(op, space, slot).matrix());
    const Index rep = space.dim() / d;
    Eigen::VectorXd expected(space.dim());
    for (Index k = 0; k < d; ++k) expected.segment(k * rep, rep).setConstant(small.eigenvalues()(k));
    EXPECT_LE((big.eigenvalues() - expected).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(AlgebraProperty, DifferentSlotsCommute) {
  std::mt19937_64 rng(13);
  const CompositeSpace space{ModeSpace::boson(3), ModeSpace::qubit(), ModeSpace::boson(4)};
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t s1 = trial % 3;
    const std::size_t s2 = (s1 + 1 + trial % 2) % 3;
    const auto rnd = [&](std::size_t slot) {
      const int d = space.mode(slot).dim();
      return embed(Operator(CompositeSpace{space.mode(slot)}, testing::random_matrix(rng, d)),
                   space, slot);
    };
    EXPECT_LE(commutator(rnd(s1), rnd(s2)).matrix().cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(CompositeSpace, RowMajorLayout) {
  const CompositeSpace space{ModeSpace::boson(3), ModeSpace::qubit()};
  EXPECT_EQ(space.dim(), 6);
  EXPECT_EQ(space.index_of({2, 1}), 5);
  EXPECT_EQ(space.index_of({1, 0}), 2);
  EXPECT_EQ(space.level(5, 0), 2);
  EXPECT_EQ(space.level(5, 1), 1);
}

}  // namespace
}  // namespace nphoton
