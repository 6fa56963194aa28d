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

// nphoton: steady-state photon statistics of parametrically driven
// nonlinear cavities.
//
//   nphoton sweep <config> [--out path] [--workers N] [--dim D] [--orders 2,3]
//   nphoton point <config> [--at value] [--dim D] [--orders 2,3]
//   nphoton conditions <config>
//   nphoton spectrum <config> [--levels K]
//
// Exit codes: 0 success, 1 configuration error, 2 numerical failure (more
// than 10% of sweep rows invalid, or a failed single point).

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "nphoton/config.hpp"
#include "nphoton/sweep.hpp"

namespace {

constexpr int kConfigError = 1;
constexpr int kNumericalError = 2;

void apply_overrides(nphoton::SweepSpec& spec, int dim, const std::string& orders) {
  if (dim > 0) {
    spec.model = nphoton::with_cavity_dim(spec.model, dim);
    spec.truncation.max_dim = std::max(spec.truncation.max_dim, dim);
    try {
      nphoton::validate(spec.model);
    } catch (const nphoton::InvalidParameter& e) {
      throw nphoton::ConfigError(std::string("--dim: ") + e.what());
    }
  }
  if (!orders.empty()) spec.orders = nphoton::parse_orders("--orders", orders);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steady-state n-photon blockade simulations"};
  app.require_subcommand(1);

  std::string config;
  std::string out;
  std::string orders;
  int workers = 1;
  int dim = 0;
  double at = 0.0;
  int levels = 4;

  auto* sweep = app.add_subcommand("sweep", "run a parameter sweep and write CSV");
  sweep->add_option("config", config, "configuration file")->required();
  sweep->add_option("--out", out, "CSV path (default: output.path, else stdout)");
  sweep->add_option("--workers", workers, "parallel workers")->check(CLI::PositiveNumber);
  sweep->add_option("--dim", dim, "cavity truncation override");
  sweep->add_option("--orders", orders, "correlation orders, e.g. 2,3,4,5");

  auto* point = app.add_subcommand("point", "solve one parameter point");
  point->add_option("config", config, "configuration file")->required();
  auto* at_opt = point->add_option("--at", at, "value of the swept parameter");
  point->add_option("--dim", dim, "cavity truncation override");
  point->add_option("--orders", orders, "correlation orders");

  auto* cond = app.add_subcommand("conditions", "print analytic blockade detunings");
  cond->add_option("config", config, "configuration file")->required();

  auto* spec_cmd = app.add_subcommand("spectrum", "numerical vs analytic undriven spectrum");
  spec_cmd->add_option("config", config, "configuration file")->required();
  spec_cmd->add_option("--levels", levels, "highest excitation number")->check(CLI::PositiveNumber);
  spec_cmd->add_option("--dim", dim, "cavity truncation override");

  CLI11_PARSE(app, argc, argv);

  nphoton::SweepSpec spec;
  try {
    spec = nphoton::load_config(config);
    apply_overrides(spec, dim, orders);
  } catch (const nphoton::Error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    if (*sweep) {
      if (!spec.sweep) {
        std::cerr << "config error: sweep.parameter: missing required key\n";
        return kConfigError;
      }
      const auto result = nphoton::run_sweep(spec, workers);
      const std::string path = out.empty() ? spec.output_path : out;
      if (path.empty()) {
        nphoton::write_csv(result, std::cout);
      } else {
        nphoton::emit_csv(result, path);
        std::cerr << "wrote " << result.rows.size() << " rows to " << path << '\n';
      }
      const auto bad = result.invalid_count();
      if (bad > 0) std::cerr << bad << " of " << result.rows.size() << " rows invalid\n";
      if (10 * bad > result.rows.size()) return kNumericalError;
      return 0;
    }
    if (*point) {
      nphoton::ModelSpec m = spec.model;
      if (*at_opt) {
        if (!spec.sweep) {
          std::cerr << "config error: --at needs sweep.parameter in the config\n";
          return kConfigError;
        }
        nphoton::set_parameter(m, spec.sweep->parameter, at);
      }
      try {
        nphoton::validate(m);
      } catch (const nphoton::InvalidParameter& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
      }
      const auto p = nphoton::solve_point(m, spec.orders, spec.truncation);
      std::cout << nphoton::format_report(p);
      return p.truncation_converged ? 0 : kNumericalError;
    }
    if (*cond) {
      std::cout << nphoton::conditions_table(spec.model);
      return 0;
    }
    std::cout << nphoton::spectrum_table(spec.model, levels);
    return 0;
  } catch (const nphoton::NotImplemented& e) {
    std::cerr << "not implemented: " << e.what() << '\n';
    return kConfigError;
  } catch (const nphoton::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const nphoton::Error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumericalError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumericalError;
  }
}
