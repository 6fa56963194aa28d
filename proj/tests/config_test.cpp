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
#include <string>

#include <gtest/gtest.h>

#include "nphoton/config.hpp"

namespace nphoton {
namespace {

const std::string kKerr = R"(
# comment line
model.kind      = kerr
model.U         = 10
drive.kind      = parametric
drive.order     = 3
drive.amplitude = 0.1   # trailing comment
sweep.parameter = model.delta
sweep.start     = -40
sweep.stop      = 0
sweep.count     = 5
)";

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

std::string replace(std::string text, const std::string& from, const std::string& to) {
  text.replace(text.find(from), from.size(), to);
  return text;
}

TEST(SweepAxisTest, LinearGrid) {
  SweepAxis a{"model.delta", -1.0, 1.0, 5};
  const auto g = a.grid();
  ASSERT_EQ(g.size(), 5u);
  EXPECT_EQ(g.front(), -1.0);
  EXPECT_EQ(g.back(), 1.0);
  EXPECT_DOUBLE_EQ(g[2], 0.0);
  EXPECT_DOUBLE_EQ(a.step(), 0.5);
}

TEST(SweepAxisTest, LogGrid) {
  SweepAxis a{"drive.amplitude", 0.01, 1.0, 3, SweepAxis::Spacing::log};
  const auto g = a.grid();
  EXPECT_EQ(g.front(), 0.01);
  EXPECT_NEAR(g[1], 0.1, 1e-15);
  EXPECT_EQ(g.back(), 1.0);
}

TEST(SweepAxisProperty, GridIsMonotoneWithExactEndpoints) {
  for (int count = 2; count <= 400; count += 37) {
    SweepAxis a{"model.delta", -40.0, 7.3, count};
    const auto g = a.grid();
    EXPECT_EQ(g.front(), -40.0);
    EXPECT_EQ(g.back(), 7.3);
    for (int i = 1; i < count; ++i) EXPECT_LT(g[i - 1], g[i]);
  }
}

TEST(ParseConfig, KerrSweep) {
  const SweepSpec s = parse_config(kKerr);
  const auto& k = std::get<KerrParams>(s.model);
  EXPECT_EQ(k.U, 10.0);
  EXPECT_EQ(k.drive.order, 3);
  EXPECT_EQ(k.drive.amplitude, 0.1);
  EXPECT_EQ(k.kappa, 1.0);
  EXPECT_EQ(k.cavity_dim, default_cavity_dim(s.model));
  ASSERT_TRUE(s.sweep.has_value());
  EXPECT_EQ(s.sweep->parameter, "model.delta");
  EXPECT_EQ(s.sweep->count, 5);
  EXPECT_EQ(s.orders, (std::vector<int>{3, 4}));
  EXPECT_EQ(s.truncation.max_dim, k.cavity_dim + 8);
  EXPECT_EQ(s.truncation.tail_tol, 1e-8);
}

TEST(ParseConfig, BundledConfigsLoad) {
  for (const char* name : {"fig1b", "fig1c", "fig2bc", "fig2c_n4", "fig2de_parametric",
                           "fig2de_coherent", "fig3", "fig4", "fig4_coherent"}) {
    EXPECT_NO_THROW(load_config(std::string(NPHOTON_CONFIG_DIR) + "/" + name + ".cfg")) << name;
  }
}

TEST(ParseConfig, CoherentDrive) {
  const std::string text = R"(
model.kind = kerr
model.U = 10
model.delta = -1
drive.kind = coherent
drive.amplitude = 0.5
)";
  const SweepSpec s = parse_config(text);
  EXPECT_EQ(drive_of(s.model).kind, DriveSpec::Kind::coherent);
  EXPECT_FALSE(s.sweep.has_value());
  EXPECT_EQ(s.orders, (std::vector<int>{2, 3}));
  EXPECT_NE(error_of(text + "drive.order = 2\n").find("drive.order"), std::string::npos);
}

TEST(ParseConfig, ErrorsNameTheKey) {
  EXPECT_NE(error_of(replace(kKerr, "sweep.count     = 5", "sweep.count = 1")).find("sweep.count"),
            std::string::npos);
  EXPECT_NE(error_of(replace(kKerr, "drive.amplitude = 0.1", "drive.amplitude = -0.1"))
                .find("amplitude"),
            std::string::npos);
  EXPECT_NE(error_of(kKerr + "model.Uu = 3\n").find("model.Uu"), std::string::npos);
  EXPECT_NE(error_of(replace(kKerr, "model.U         = 10", "")).find("model.U"),
            std::string::npos);
  EXPECT_NE(error_of(kKerr + "model.U = 3\n").find("model.U"), std::string::npos);
  EXPECT_NE(error_of(replace(kKerr, "model.U         = 10", "model.U = ten")).find("model.U"),
            std::string::npos);
  EXPECT_NE(error_of(replace(kKerr, "model.kind      = kerr", "model.kind = jcm")).find("model.kind"),
            std::string::npos);
  EXPECT_NE(error_of(replace(kKerr, "sweep.start     = -40", "sweep.start = 1")).find("sweep.start"),
            std::string::npos);
  EXPECT_NE(error_of(replace(kKerr, "model.delta", "model.g")).find("sweep.parameter"),
            std::string::npos);
  EXPECT_NE(error_of(kKerr + "output.orders = 1,2\n").find("output.orders"), std::string::npos);
  EXPECT_NE(error_of(kKerr + "output.orders = 3,7\n").find("output.orders"), std::string::npos);
  EXPECT_NE(error_of(kKerr + "truncation.dim = 5\n").find("model"), std::string::npos);
  EXPECT_NE(error_of(kKerr + "no equals sign\n"), "");
}

TEST(ParseConfig, SweptValueRangeIsValidated) {
  const std::string text = R"(
model.kind = kerr
model.U = 10
model.delta = 0
drive.kind = parametric
drive.order = 2
drive.amplitude = 0.1
sweep.parameter = model.kappa
sweep.start = -1
sweep.stop = 1
sweep.count = 3
)";
  EXPECT_NE(error_of(text).find("kappa"), std::string::npos);
}

TEST(ParseConfig, MissingFile) {
  EXPECT_THROW(load_config("/nonexistent/x.cfg"), ConfigError);
}

TEST(Parameters, SetAndGet) {
  ModelSpec m = CoupledKerrParams{};
  set_parameter(m, "model.J", 2.5);
  EXPECT_EQ(get_parameter(m, "model.J"), 2.5);
  set_parameter(m, "drive.amplitude", 0.7);
  EXPECT_EQ(drive_of(m).amplitude, 0.7);
  EXPECT_THROW(set_parameter(m, "model.g", 1.0), ConfigError);
  ModelSpec j = JCParams{};
  EXPECT_TRUE(is_sweepable(j, "model.gamma"));
  EXPECT_FALSE(is_sweepable(j, "model.U"));
}

TEST(Parameters, DefaultDims) {
  EXPECT_EQ(default_cavity_dim(JCParams{0, 1, 0, 1, DriveSpec::parametric(3, 0.1), 12}), 12);
  EXPECT_EQ(default_cavity_dim(JCParams{0, 1, 0, 1, DriveSpec::parametric(4, 0.1), 12}), 16);
  EXPECT_EQ(default_cavity_dim(KerrParams{0, 1, 1, DriveSpec::parametric(3, 0.1), 12}), 15);
  EXPECT_EQ(default_cavity_dim(KerrParams{0, 1, 1, DriveSpec::parametric(4, 0.1), 12}), 20);
  EXPECT_EQ(default_cavity_dim(KerrParams{0, 1, 1, DriveSpec::coherent(0.1), 12}), 15);
  EXPECT_EQ(default_cavity_dim(CoupledKerrParams{}), 8);
}

}  // namespace
}  // namespace nphoton
