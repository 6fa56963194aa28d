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

// Run configuration: a flat `key = value` document with dotted keys and `#`
// comments, e.g.
//
//   model.kind      = jc
//   model.g         = 17.320508075688775
//   model.gamma     = 0.1
//   drive.kind      = parametric
//   drive.order     = 3
//   drive.amplitude = 0.3
//   sweep.parameter = model.delta
//   sweep.start     = -15
//   sweep.stop      = 15
//   sweep.count     = 301
//   output.orders   = 3,4
//
// All physical values are in units of the cavity decay rate kappa.

#ifndef NPHOTON_CONFIG_HPP_
#define NPHOTON_CONFIG_HPP_

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "nphoton/errors.hpp"
#include "nphoton/models.hpp"

namespace nphoton {

struct SweepAxis {
  enum class Spacing { linear, log };

  std::string parameter;  // config key of the swept value, e.g. "model.delta"
  double start = 0.0;
  double stop = 1.0;
  int count = 2;
  Spacing spacing = Spacing::linear;

  // Inclusive grid; endpoints are exact.
  std::vector<double> grid() const {
    std::vector<double> g(count);
    for (int i = 0; i < count; ++i) {
      const double f = static_cast<double>(i) / (count - 1);
      if (spacing == Spacing::linear) {
        g[i] = start + (stop - start) * f;
      } else {
        g[i] = std::exp(std::log(start) + (std::log(stop) - std::log(start)) * f);
      }
    }
    g.front() = start;
    g.back() = stop;
    return g;
  }

  double step() const {
    return spacing == Spacing::linear ? (stop - start) / (count - 1)
                                      : std::log(stop / start) / (count - 1);
  }
};

struct TruncationPolicy {
  int max_dim = 0;
  double tail_tol = 1e-8;
  int step = 2;
};

struct SweepSpec {
  ModelSpec model;
  std::optional<SweepAxis> sweep;
  std::vector<int> orders;
  TruncationPolicy truncation;
  std::string output_path;
};

// Parameters a sweep may scan, by config key.
inline bool is_sweepable(const ModelSpec& m, std::string_view key) {
  if (key == "model.delta" || key == "model.kappa" || key == "drive.amplitude") return true;
  if (std::holds_alternative<JCParams>(m)) return key == "model.g" || key == "model.gamma";
  if (std::holds_alternative<KerrParams>(m)) return key == "model.U";
  return key == "model.U" || key == "model.J";
}

inline void set_parameter(ModelSpec& m, std::string_view key, double value) {
  if (!is_sweepable(m, key)) {
    throw ConfigError(std::string(key) + ": not a parameter of model " + model_name(m));
  }
  if (key == "drive.amplitude") {
    drive_of(m).amplitude = value;
    return;
  }
  std::visit(
      [&](auto& p) {
        using T = std::decay_t<decltype(p)>;
        if (key == "model.delta") p.delta = value;
        else if (key == "model.kappa") p.kappa = value;
        if constexpr (std::is_same_v<T, JCParams>) {
          if (key == "model.g") p.g = value;
          else if (key == "model.gamma") p.gamma = value;
        } else if constexpr (std::is_same_v<T, KerrParams>) {
          if (key == "model.U") p.U = value;
        } else {
          if (key == "model.U") p.U = value;
          else if (key == "model.J") p.J = value;
        }
      },
      m);
}

inline double get_parameter(const ModelSpec& m, std::string_view key) {
  if (!is_sweepable(m, key)) {
    throw ConfigError(std::string(key) + ": not a parameter of model " + model_name(m));
  }
  if (key == "drive.amplitude") return drive_of(m).amplitude;
  return std::visit(
      [&](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if (key == "model.delta") return p.delta;
        if (key == "model.kappa") return p.kappa;
        if constexpr (std::is_same_v<T, JCParams>) {
          return key == "model.g" ? p.g : p.gamma;
        } else if constexpr (std::is_same_v<T, KerrParams>) {
          return p.U;
        } else {
          return key == "model.U" ? p.U : p.J;
        }
      },
      m);
}

// Default truncations, before tail-driven escalation.
inline int default_cavity_dim(const ModelSpec& m) {
  const DriveSpec& d = drive_of(m);
  if (std::holds_alternative<JCParams>(m)) return d.order <= 3 ? 12 : 16;
  if (std::holds_alternative<KerrParams>(m)) {
    return d.is_parametric() ? std::max(d.order + 3, 5 * d.order) : 15;
  }
  return 8;
}

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

class KeyValues {
 public:
  explicit KeyValues(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      const std::string t = trim(line);
      if (t.empty()) continue;
      const auto eq = t.find('=');
      if (eq == std::string::npos) {
        throw ConfigError("line " + std::to_string(lineno) + ": expected `key = value`");
      }
      const std::string key = trim(std::string_view(t).substr(0, eq));
      const std::string value = trim(std::string_view(t).substr(eq + 1));
      if (key.empty() || value.empty()) {
        throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
      }
      if (!values_.emplace(key, value).second) {
        throw ConfigError(key + ": duplicate key");
      }
    }
  }

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  std::optional<std::string> get(const std::string& key) {
    const auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    used_.insert(key);
    return it->second;
  }

  std::string require(const std::string& key) {
    auto v = get(key);
    if (!v) throw ConfigError(key + ": missing required key");
    return *v;
  }

  void reject_unknown() const {
    for (const auto& [k, v] : values_) {
      if (!used_.count(k)) throw ConfigError(k + ": unknown key");
    }
  }

 private:
  std::map<std::string, std::string> values_;
  std::set<std::string> used_;
};

inline double parse_double(const std::string& key, const std::string& text) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0' || errno == ERANGE || !std::isfinite(v)) {
    throw ConfigError(key + ": expected a number, got `" + text + "`");
  }
  return v;
}

inline int parse_int(const std::string& key, const std::string& text) {
  errno = 0;
  char* end = nullptr;
  const long v = std::strtol(text.c_str(), &end, 10);
  if (end == text.c_str() || *end != '\0' || errno == ERANGE || v < -1000000 ||
      v > 1000000) {
    throw ConfigError(key + ": expected an integer, got `" + text + "`");
  }
  return static_cast<int>(v);
}

}  // namespace detail

// Comma-separated correlation orders, each in 2..6.
inline std::vector<int> parse_orders(const std::string& key, const std::string& text) {
  std::vector<int> orders;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const int n = detail::parse_int(key, detail::trim(item));
    if (n < 2 || n > 6) throw ConfigError(key + ": orders must lie in 2..6, got " + std::to_string(n));
    orders.push_back(n);
  }
  if (orders.empty()) throw ConfigError(key + ": no orders given");
  std::sort(orders.begin(), orders.end());
  orders.erase(std::unique(orders.begin(), orders.end()), orders.end());
  return orders;
}

inline SweepSpec parse_config(std::string_view text) {
  detail::KeyValues kv(text);
  const auto number = [&](const std::string& key) {
    return detail::parse_double(key, kv.require(key));
  };

  // Keys of the swept parameter may be omitted from the model section.
  std::optional<std::string> swept;
  if (kv.has("sweep.parameter")) swept = kv.get("sweep.parameter");
  const auto physical = [&](const std::string& key, double fallback_if_swept) {
    if (swept && *swept == key && !kv.has(key)) return fallback_if_swept;
    return number(key);
  };
  const auto optional_number = [&](const std::string& key, double fallback) {
    auto v = kv.get(key);
    return v ? detail::parse_double(key, *v) : fallback;
  };

  DriveSpec drive;
  const std::string drive_kind = kv.require("drive.kind");
  if (drive_kind == "parametric") {
    drive.kind = DriveSpec::Kind::parametric;
    drive.order = detail::parse_int("drive.order", kv.require("drive.order"));
  } else if (drive_kind == "coherent") {
    drive.kind = DriveSpec::Kind::coherent;
    drive.order = 1;
    if (auto o = kv.get("drive.order"); o && detail::parse_int("drive.order", *o) != 1) {
      throw ConfigError("drive.order: coherent drive has order 1");
    }
  } else {
    throw ConfigError("drive.kind: expected parametric or coherent, got `" + drive_kind + "`");
  }
  drive.amplitude = physical("drive.amplitude", 0.0);

  SweepSpec spec;
  const std::string kind = kv.require("model.kind");
  if (swept && (kind == "jc" || kind == "kerr" || kind == "coupled_kerr")) {
    const ModelSpec probe = kind == "jc"     ? ModelSpec{JCParams{}}
                            : kind == "kerr" ? ModelSpec{KerrParams{}}
                                             : ModelSpec{CoupledKerrParams{}};
    if (!is_sweepable(probe, *swept)) {
      throw ConfigError("sweep.parameter: `" + *swept + "` is not a parameter of model " + kind);
    }
  }
  const double kappa = optional_number("model.kappa", 1.0);
  if (kind == "jc") {
    JCParams p;
    p.delta = physical("model.delta", 0.0);
    p.g = physical("model.g", 0.0);
    p.gamma = physical("model.gamma", 0.0);
    p.kappa = kappa;
    p.drive = drive;
    spec.model = p;
  } else if (kind == "kerr") {
    KerrParams p;
    p.delta = physical("model.delta", 0.0);
    p.U = physical("model.U", 0.0);
    p.kappa = kappa;
    p.drive = drive;
    spec.model = p;
  } else if (kind == "coupled_kerr") {
    CoupledKerrParams p;
    p.delta = physical("model.delta", 0.0);
    p.U = physical("model.U", 0.0);
    p.J = physical("model.J", 0.0);
    p.kappa = kappa;
    p.drive = drive;
    spec.model = p;
  } else {
    throw ConfigError("model.kind: expected jc, kerr or coupled_kerr, got `" + kind + "`");
  }

  int dim = default_cavity_dim(spec.model);
  if (auto v = kv.get("truncation.dim")) dim = detail::parse_int("truncation.dim", *v);
  spec.model = with_cavity_dim(spec.model, dim);
  const int default_max = dim + (std::holds_alternative<CoupledKerrParams>(spec.model) ? 4 : 8);
  spec.truncation.max_dim = default_max;
  if (auto v = kv.get("truncation.max_dim")) {
    spec.truncation.max_dim = detail::parse_int("truncation.max_dim", *v);
  }
  spec.truncation.tail_tol = optional_number("truncation.tail_tol", 1e-8);
  if (spec.truncation.max_dim < dim) {
    throw ConfigError("truncation.max_dim: must be >= truncation.dim");
  }
  if (!(spec.truncation.tail_tol > 0.0)) {
    throw ConfigError("truncation.tail_tol: must be > 0");
  }

  if (swept) {
    SweepAxis axis;
    axis.parameter = *swept;
    axis.start = number("sweep.start");
    axis.stop = number("sweep.stop");
    axis.count = detail::parse_int("sweep.count", kv.require("sweep.count"));
    if (auto s = kv.get("sweep.spacing")) {
      if (*s == "linear") axis.spacing = SweepAxis::Spacing::linear;
      else if (*s == "log") axis.spacing = SweepAxis::Spacing::log;
      else throw ConfigError("sweep.spacing: expected linear or log, got `" + *s + "`");
    }
    if (axis.count < 2) throw ConfigError("sweep.count: must be >= 2");
    if (!(axis.start < axis.stop)) throw ConfigError("sweep.start: must be < sweep.stop");
    if (axis.spacing == SweepAxis::Spacing::log && !(axis.start > 0.0)) {
      throw ConfigError("sweep.start: log spacing needs a positive start");
    }
    spec.sweep = axis;
  } else {
    for (const char* k : {"sweep.start", "sweep.stop", "sweep.count", "sweep.spacing"}) {
      if (kv.has(k)) throw ConfigError(std::string(k) + ": sweep.parameter is missing");
    }
  }

  if (auto v = kv.get("output.orders")) {
    spec.orders = parse_orders("output.orders", *v);
  } else {
    const int n = std::max(drive.order, 2);
    spec.orders = {n, n + 1};
  }
  if (auto v = kv.get("output.path")) spec.output_path = *v;
  kv.reject_unknown();

  // Check the model invariants at every point the run can visit.
  const auto check = [&](double value) {
    ModelSpec m = spec.model;
    if (spec.sweep) set_parameter(m, spec.sweep->parameter, value);
    try {
      validate(m);
    } catch (const InvalidParameter& e) {
      throw ConfigError(std::string("model: ") + e.what());
    }
  };
  if (spec.sweep) {
    check(spec.sweep->start);
    check(spec.sweep->stop);
  } else {
    check(0.0);
  }
  const int top = *std::max_element(spec.orders.begin(), spec.orders.end());
  if (top > dim - 1) {
    throw ConfigError("output.orders: order " + std::to_string(top) +
                      " needs truncation.dim > " + std::to_string(top));
  }
  return spec;
}

inline SweepSpec load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace nphoton

#endif  // NPHOTON_CONFIG_HPP_
