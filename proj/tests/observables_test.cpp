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
#include <vector>

#include <gtest/gtest.h>

#include "nphoton/observables.hpp"
#include "test_util.hpp"

namespace nphoton {
namespace {

DensityMatrix fock(int dim, int m) {
  return DensityMatrix::basis(CompositeSpace{ModeSpace::boson(dim)}, {m});
}

TEST(Expectation, MatchesTraceOfProduct) {
  std::mt19937_64 rng(1);
  const CompositeSpace s{ModeSpace::boson(3), ModeSpace::qubit()};
  const DensityMatrix rho = testing::random_density(rng, s);
  const Operator o(s, testing::random_matrix(rng, s.dim()));
  EXPECT_LE(std::abs(expectation(rho, o) - (o.matrix() * rho.matrix()).trace()), 1e-12);
  EXPECT_THROW(expectation(rho, number(6)), SpaceMismatch);
}

// g2 of |m> is (m - 1)/m; g_n of |m> is m!/((m-n)! m^n).
TEST(Correlation, FockStates) {
  for (int m = 1; m <= 6; ++m) {
    const DensityMatrix rho = fock(10, m);
    EXPECT_NEAR(mean_photon_number(rho, 0), m, 1e-12);
    EXPECT_NEAR(g_n(rho, 0, 2), (m - 1.0) / m, 1e-12);
    for (int n = 2; n <= 5; ++n) {
      double falling = 1.0;
      for (int k = 0; k < n; ++k) falling *= std::max(m - k, 0);
      EXPECT_NEAR(g_n(rho, 0, n), falling / std::pow(m, n), 1e-12);
    }
  }
}

TEST(Correlation, CoherentStateIsPoissonian) {
  const DensityMatrix rho = coherent_state(40, cplx(1.2, -0.5));
  EXPECT_NEAR(mean_photon_number(rho, 0), 1.69, 1e-10);
  for (int n = 2; n <= 6; ++n) EXPECT_NEAR(g_n(rho, 0, n), 1.0, 1e-9);
}

// Thermal light: g_n = n! at any occupation (series oracle).
TEST(Correlation, ThermalState) {
  const DensityMatrix rho = thermal_state(120, 0.5);
  EXPECT_NEAR(mean_photon_number(rho, 0), 0.5, 1e-12);
  EXPECT_NEAR(g_n(rho, 0, 2), 2.0, 1e-10);
  EXPECT_NEAR(g_n(rho, 0, 3), 6.0, 1e-10);
  EXPECT_NEAR(g_n(rho, 0, 4), 24.0, 1e-9);
  EXPECT_THROW(thermal_state(5, -1.0), DomainError);
}

TEST(Correlation, VacuumIsUndefined) {
  const DensityMatrix vac = fock(5, 0);
  EXPECT_FALSE(try_g_n(vac, 0, 2).has_value());
  EXPECT_THROW(g_n(vac, 0, 2), VanishingMeanPhoton);
  EXPECT_THROW(g_n(fock(5, 2), 0, 1), DomainError);
}

TEST(Correlation, QubitSlotRejected) {
  const CompositeSpace s{ModeSpace::boson(3), ModeSpace::qubit()};
  EXPECT_THROW(mean_photon_number(DensityMatrix::basis(s, {1, 0}), 1), SpaceMismatch);
}

TEST(CorrelationProperty, PhaseInvariant) {
  std::mt19937_64 rng(8);
  const CompositeSpace s{ModeSpace::boson(6)};
  for (int trial = 0; trial < 20; ++trial) {
    const DensityMatrix rho = testing::random_density(rng, s);
    const double phi = std::uniform_real_distribution<double>(0, 6.283)(rng);
    Matrix u = Matrix::Zero(6, 6);
    for (int k = 0; k < 6; ++k) u(k, k) = std::polar(1.0, phi * k);
    const DensityMatrix rotated(s, u * rho.matrix() * u.adjoint());
    for (int n = 2; n <= 4; ++n) {
      EXPECT_NEAR(g_n(rho, 0, n), g_n(rotated, 0, n), 1e-10 * g_n(rho, 0, n));
    }
  }
}

TEST(CorrelationProperty, ProductStateReducesToSubsystem) {
  std::mt19937_64 rng(4);
  const CompositeSpace sa{ModeSpace::boson(5)};
  const CompositeSpace sb{ModeSpace::boson(4)};
  const DensityMatrix ra = testing::random_density(rng, sa);
  const DensityMatrix rb = testing::random_density(rng, sb);
  Matrix prod(20, 20);
  for (Index i = 0; i < 5; ++i) {
    for (Index j = 0; j < 5; ++j) prod.block(4 * i, 4 * j, 4, 4) = ra.matrix()(i, j) * rb.matrix();
  }
  const DensityMatrix r(CompositeSpace{ModeSpace::boson(5), ModeSpace::boson(4)}, prod);
  for (int n = 2; n <= 3; ++n) {
    EXPECT_NEAR(g_n(r, 0, n), g_n(ra, 0, n), 1e-10);
    EXPECT_NEAR(g_n(r, 1, n), g_n(rb, 0, n), 1e-10);
  }
  const auto pa = fock_populations(r, 0);
  for (int k = 0; k < 5; ++k) EXPECT_NEAR(pa[k], ra.matrix()(k, k).real(), 1e-12);
}

TEST(Truncation, FockTail) {
  const std::vector<double> p = {0.5, 0.3, 0.15, 0.05};
  EXPECT_DOUBLE_EQ(fock_tail(p), 0.2);
  EXPECT_TRUE(truncation_ok(fock(6, 3), 0, 1e-8));
  EXPECT_FALSE(truncation_ok(fock(6, 4), 0, 1e-8));
  EXPECT_THROW(truncation_ok(fock(6, 1), 0, 0.0), DomainError);
}

// Poisson weights e^{-|a|^2}|a|^{2k}/k! of the top two retained levels.
TEST(Truncation, CoherentTailMatchesPoisson) {
  const double n = 0.8;
  const int dim = 12;
  const DensityMatrix rho = coherent_state(dim, std::sqrt(n));
  double total = 0.0, top = 0.0, w = std::exp(-n);
  for (int k = 0; k < dim; ++k) {
    total += w;
    if (k >= dim - 2) top += w;
    w *= n / (k + 1);
  }
  EXPECT_NEAR(fock_tail(fock_populations(rho, 0)), top / total, 1e-20);
  EXPECT_EQ(truncation_ok(rho, 0, 1e-8), top / total <= 1e-8);
}

TEST(Blockade, Classification) {
  EXPECT_TRUE(classify_blockade(1.0, 0.99));
  EXPECT_TRUE(classify_blockade(15.96, 0.339));
  EXPECT_FALSE(classify_blockade(0.99, 0.5));
  EXPECT_FALSE(classify_blockade(2.0, 1.0));
  EXPECT_FALSE(classify_blockade(4.24, 14.07));
  EXPECT_THROW(classify_blockade(-0.1, 0.5), DomainError);
  EXPECT_THROW(classify_blockade(1.0, std::nan("")), DomainError);
}

TEST(Report, CollectsOrders) {
  const std::vector<int> orders = {2, 3};
  const auto r = correlation_report(fock(6, 2), 0, "a", orders);
  EXPECT_EQ(r.mode, "a");
  EXPECT_NEAR(r.mean_n, 2.0, 1e-12);
  ASSERT_EQ(r.g.size(), 2u);
  EXPECT_NEAR(*r.g.at(2), 0.5, 1e-12);
  EXPECT_NEAR(*r.g.at(3), 0.0, 1e-12);
  EXPECT_EQ(r.fock_tail, 0.0);
  const auto v = correlation_report(fock(6, 0), 0, "a", orders);
  EXPECT_FALSE(v.g.at(2).has_value());
}

}  // namespace
}  // namespace nphoton
