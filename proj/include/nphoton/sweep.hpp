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

// Parameter sweeps over the steady state, blockade-window extraction and the
// CSV / table outputs of the command-line tool.

#ifndef NPHOTON_SWEEP_HPP_
#define NPHOTON_SWEEP_HPP_

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "nphoton/config.hpp"
#include "nphoton/errors.hpp"
#include "nphoton/liouvillian.hpp"
#include "nphoton/models.hpp"
#include "nphoton/observables.hpp"

namespace nphoton {

struct ModeRow {
  std::string mode;
  double mean_n = std::numeric_limits<double>::quiet_NaN();
  std::map<int, std::optional<double>> g;
  double fock_tail = std::numeric_limits<double>::quiet_NaN();
};

struct SweepRow {
  double value = 0.0;
  std::vector<ModeRow> modes;
  double residual = std::numeric_limits<double>::quiet_NaN();
  double gap_ratio = std::numeric_limits<double>::quiet_NaN();
  int dim = 0;
  bool valid = false;
  std::string error;  // empty unless the point failed

  const ModeRow* mode(const std::string& label) const {
    for (const auto& m : modes) {
      if (m.mode == label) return &m;
    }
    return nullptr;
  }
};

struct SweepResult {
  std::string parameter;
  std::vector<int> orders;
  std::vector<SweepRow> rows;  // ascending in value

  std::size_t invalid_count() const {
    return static_cast<std::size_t>(
        std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return !r.valid; }));
  }
};

struct PointResult {
  SteadyStateSolution solution;
  std::vector<CorrelationReport> reports;
  int dim = 0;
  bool truncation_converged = false;
};

// Steady state and correlation reports of one model, growing the cavity
// truncation by `policy.step` while the Fock tail of any mode exceeds the
// tolerance.
inline PointResult solve_point(const ModelSpec& model, std::span<const int> orders,
                               const TruncationPolicy& policy,
                               const SteadyStateOptions& opt = {}) {
  ModelSpec m = model;
  while (true) {
    PointResult r{solve_steady_state(build_liouvillian(m), opt)};
    r.dim = cavity_dim_of(m);
    r.truncation_converged = true;
    for (const auto& mode : cavity_modes(m)) {
      r.reports.push_back(correlation_report(r.solution.rho, mode.slot, mode.label, orders));
      if (!(r.reports.back().fock_tail <= policy.tail_tol)) r.truncation_converged = false;
    }
    if (r.truncation_converged || r.dim + policy.step > policy.max_dim) return r;
    m = with_cavity_dim(m, r.dim + policy.step);
  }
}

inline SweepRow sweep_row(const SweepSpec& spec, double value,
                          const SteadyStateOptions& opt = {}) {
  SweepRow row;
  row.value = value;
  ModelSpec m = spec.model;
  set_parameter(m, spec.sweep->parameter, value);
  row.dim = cavity_dim_of(m);
  try {
    const PointResult p = solve_point(m, spec.orders, spec.truncation, opt);
    row.residual = p.solution.residual;
    row.gap_ratio = p.solution.gap_ratio;
    row.dim = p.dim;
    for (const auto& rep : p.reports) {
      row.modes.push_back({rep.mode, rep.mean_n, rep.g, rep.fock_tail});
    }
    row.valid = p.truncation_converged && row.residual <= opt.residual_tol;
    if (!p.truncation_converged) row.error = "Fock tail above tolerance at max dim";
    else if (!row.valid) row.error = "residual above tolerance";
  } catch (const Error& e) {
    row.valid = false;
    row.error = e.what();
    for (const auto& mode : cavity_modes(m)) {
      ModeRow mr;
      mr.mode = mode.label;
      for (int n : spec.orders) mr.g[n] = std::nullopt;
      row.modes.push_back(std::move(mr));
    }
  }
  return row;
}

// Grid points are statically partitioned across workers and written back by
// index, so the result does not depend on the worker count.
inline SweepResult run_sweep(const SweepSpec& spec, int workers = 1,
                             const SteadyStateOptions& opt = {}) {
  if (!spec.sweep) throw ConfigError("sweep.parameter: a sweep needs a sweep section");
  const std::vector<double> grid = spec.sweep->grid();
  SweepResult result;
  result.parameter = spec.sweep->parameter;
  result.orders = spec.orders;
  result.rows.resize(grid.size());

  const int n_workers =
      std::clamp(workers, 1, static_cast<int>(std::max<std::size_t>(grid.size(), 1)));
  const auto work = [&](int w) {
    for (std::size_t i = w; i < grid.size(); i += n_workers) {
      result.rows[i] = sweep_row(spec, grid[i], opt);
    }
  };
  if (n_workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(work, w);
  }
  return result;
}

struct BlockadeWindow {
  std::string mode;
  int order = 0;
  double start = 0.0;  // first grid value inside the window
  double stop = 0.0;   // last grid value inside the window
  std::size_t first = 0;
  std::size_t last = 0;
  double peak = 0.0;   // grid value of the largest g^(n) inside the window
  double peak_g = 0.0;

  bool contains(double x, double slack = 0.0) const {
    return x >= start - slack && x <= stop + slack;
  }
  double center() const { return 0.5 * (start + stop); }
};

// Maximal runs of consecutive grid points where classify_blockade holds for
// (g^(n), g^(n+1)), per mode. Invalid rows and undefined correlations break
// a run.
inline std::vector<BlockadeWindow> find_blockade_windows(const SweepResult& result, int n) {
  const auto has = [&](int k) {
    return std::find(result.orders.begin(), result.orders.end(), k) != result.orders.end();
  };
  if (!has(n) || !has(n + 1)) {
    throw ContractError("blockade windows of order " + std::to_string(n) + " need g" +
                        std::to_string(n) + " and g" + std::to_string(n + 1) +
                        " in the sweep result");
  }
  std::vector<std::string> labels;
  for (const auto& row : result.rows) {
    for (const auto& m : row.modes) {
      if (std::find(labels.begin(), labels.end(), m.mode) == labels.end()) {
        labels.push_back(m.mode);
      }
    }
  }

  std::vector<BlockadeWindow> out;
  for (const auto& label : labels) {
    std::optional<BlockadeWindow> open;
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
      const SweepRow& row = result.rows[i];
      const ModeRow* m = row.mode(label);
      bool hit = false;
      double gn = 0.0;
      if (row.valid && m) {
        const auto a = m->g.find(n);
        const auto b = m->g.find(n + 1);
        if (a != m->g.end() && b != m->g.end() && a->second && b->second) {
          gn = *a->second;
          hit = classify_blockade(gn, *b->second);
        }
      }
      if (hit) {
        if (!open) {
          open = BlockadeWindow{label, n, row.value, row.value, i, i, row.value, gn};
        } else {
          open->stop = row.value;
          open->last = i;
          if (gn > open->peak_g) {
            open->peak_g = gn;
            open->peak = row.value;
          }
        }
      } else if (open) {
        out.push_back(*open);
        open.reset();
      }
    }
    if (open) out.push_back(*open);
  }
  return out;
}

// ---------------------------------------------------------------------------
// CSV

inline constexpr const char* kCsvHeader =
    "sweep_value,mode,mean_n,g2,g3,g4,g5,fock_tail,residual,gap_ratio,dim,valid";

inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline void write_csv(const SweepResult& result, std::ostream& out) {
  out << kCsvHeader << '\n';
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& row : result.rows) {
    for (const auto& m : row.modes) {
      out << format_number(row.value) << ',' << m.mode << ',' << format_number(m.mean_n);
      for (int k = 2; k <= 5; ++k) {
        const auto it = m.g.find(k);
        const double g = (it != m.g.end() && it->second) ? *it->second : nan;
        out << ',' << format_number(g);
      }
      out << ',' << format_number(m.fock_tail) << ',' << format_number(row.residual) << ','
          << format_number(row.gap_ratio) << ',' << row.dim << ',' << (row.valid ? 1 : 0)
          << '\n';
    }
  }
}

inline void emit_csv(const SweepResult& result, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(path + ": cannot open for writing");
  write_csv(result, out);
  out.flush();
  if (!out) throw Error(path + ": write failed");
}

// Reads a file written by emit_csv. Undefined correlations come back as
// nullopt; orders are those with at least one column present (g2..g5).
inline SweepResult read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(path + ": cannot open for reading");
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw Error(path + ": unexpected CSV header");
  }
  SweepResult result;
  result.orders = {2, 3, 4, 5};
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 12) throw Error(path + ":" + std::to_string(lineno) + ": expected 12 fields");
    const auto num = [](const std::string& s) { return std::strtod(s.c_str(), nullptr); };
    const double value = num(f[0]);
    if (result.rows.empty() || result.rows.back().value != value) {
      SweepRow row;
      row.value = value;
      row.residual = num(f[8]);
      row.gap_ratio = num(f[9]);
      row.dim = std::atoi(f[10].c_str());
      row.valid = f[11] == "1";
      result.rows.push_back(std::move(row));
    }
    ModeRow m;
    m.mode = f[1];
    m.mean_n = num(f[2]);
    for (int k = 2; k <= 5; ++k) {
      const double g = num(f[k + 1]);
      m.g[k] = std::isnan(g) ? std::nullopt : std::optional<double>(g);
    }
    m.fock_tail = num(f[7]);
    result.rows.back().modes.push_back(std::move(m));
  }
  return result;
}

// ---------------------------------------------------------------------------
// Analytic tables

inline std::string conditions_table(const ModelSpec& m) {
  const DriveSpec& d = drive_of(m);
  std::ostringstream out;
  out << "model " << model_name(m) << ", drive order " << d.order << '\n';
  const auto detunings = predicted_blockade_detunings(m);
  out << "predicted blockade detunings (delta/kappa):\n";
  for (double x : detunings) out << "  " << format_number(x) << '\n';
  if (const auto* c = std::get_if<CoupledKerrParams>(&m)) {
    const auto b = coupled_blockade_detunings(c->U, c->J);
    out << "pump-frequency spacing, left pair:  " << format_number(b.left_gap) << '\n';
    out << "pump-frequency spacing, right pair: " << format_number(b.right_gap) << '\n';
  }
  return out.str();
}

struct SpectrumLine {
  AnalyticLevel level;
  double numerical = 0.0;  // nearest eigenvalue of the undriven Hamiltonian
};

// Matches the analytic levels of the undriven model against its numerical
// spectrum. For the coupled model only the two-excitation manifold has a
// closed form.
inline std::vector<SpectrumLine> compare_spectrum(const ModelSpec& model, int max_excitation) {
  const ModelSpec m = undriven(model);
  const Operator h = hamiltonian(m);
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix(), Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = es.eigenvalues();
  std::vector<SpectrumLine> out;
  for (const auto& level : analytic_levels(m, max_excitation)) {
    Eigen::Index best = 0;
    (ev.array() - level.frequency).abs().minCoeff(&best);
    out.push_back({level, ev(best)});
  }
  return out;
}

inline std::string spectrum_table(const ModelSpec& model, int max_excitation) {
  std::ostringstream out;
  out << "excitation,branch,analytic,numerical,difference\n";
  for (const auto& l : compare_spectrum(model, max_excitation)) {
    out << l.level.excitation << ',' << l.level.branch << ',' << format_number(l.level.frequency)
        << ',' << format_number(l.numerical) << ','
        << format_number(l.numerical - l.level.frequency) << '\n';
  }
  return out.str();
}

inline std::string format_report(const PointResult& p) {
  std::ostringstream out;
  out << "dim " << p.dim << (p.truncation_converged ? "" : " (Fock tail above tolerance)")
      << ", residual " << format_number(p.solution.residual) << ", gap ratio "
      << format_number(p.solution.gap_ratio) << '\n';
  for (const auto& r : p.reports) {
    out << "mode " << r.mode << ": mean_n " << format_number(r.mean_n) << ", fock_tail "
        << format_number(r.fock_tail) << '\n';
    for (const auto& [k, g] : r.g) {
      out << "  g" << k << " = " << (g ? format_number(*g) : std::string("undefined"));
      if (g && *g > 0.0) out << "  (ln " << format_number(std::log(*g)) << ")";
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace nphoton

#endif  // NPHOTON_SWEEP_HPP_
