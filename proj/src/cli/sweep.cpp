#include "parqq/cli/sweep.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "params.hpp"
#include "parqq/errors.hpp"
#include "parqq/linalg.hpp"

namespace parqq::cli {

using nlohmann::json;

namespace {

json parse_scalar(const std::string& text) {
  if (text.empty()) return text;
  try {
    std::size_t used = 0;
    const long long i = std::stoll(text, &used);
    if (used == text.size()) return i;
    const double d = std::stod(text, &used);
    if (used == text.size()) return d;
  } catch (const std::exception&) {
  }
  return text;
}

double to_double(const json& v, const std::string& what) {
  if (v.is_number()) return v.get<double>();
  throw ParameterError(what + " must be numeric");
}

std::optional<double> lookup_metric(const json& value, const std::string& path) {
  const json* node = &value;
  std::size_t start = 0;
  while (start <= path.size()) {
    const auto stop = std::min(path.find('.', start), path.size());
    const auto key = path.substr(start, stop - start);
    if (!node->is_object() || !node->contains(key)) return std::nullopt;
    node = &(*node)[key];
    start = stop + 1;
  }
  if (!node->is_number()) return std::nullopt;
  return node->get<double>();
}

double axis_value(const json& params, const std::string& axis) {
  const auto slash = axis.find('/');
  if (slash == std::string::npos) {
    if (!params.contains(axis)) throw ParameterError("fit axis '" + axis + "' is not a sweep parameter");
    return to_double(params[axis], "fit axis '" + axis + "'");
  }
  const double num = axis_value(params, axis.substr(0, slash));
  const double den = axis_value(params, axis.substr(slash + 1));
  return num / den;
}

std::pair<std::string, std::string> split_assignment(const std::string& text, char sep, const std::string& what) {
  const auto pos = text.find(sep);
  if (pos == std::string::npos || pos == 0) throw ParameterError(what + " must look like name" + sep + "value, got '" + text + "'");
  return {text.substr(0, pos), text.substr(pos + 1)};
}

std::vector<std::string> as_strings(const json& v) {
  std::vector<std::string> out;
  if (v.is_array()) {
    for (const auto& item : v) out.push_back(item.get<std::string>());
  } else {
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace

SweepAxis parse_axis(const std::string& text) {
  const auto [name, spec] = split_assignment(text, '=', "sweep axis");
  SweepAxis axis;
  axis.name = name;
  const auto c1 = spec.find(':');
  if (c1 == std::string::npos) {
    std::size_t start = 0;
    while (start <= spec.size()) {
      const auto stop = std::min(spec.find(',', start), spec.size());
      axis.values.push_back(parse_scalar(spec.substr(start, stop - start)));
      start = stop + 1;
    }
    return axis;
  }
  const auto c2 = spec.find(':', c1 + 1);
  if (c2 == std::string::npos || c2 + 2 > spec.size()) throw ParameterError("sweep range must be lo:hi:xF or lo:hi:+S");
  const double lo = std::stod(spec.substr(0, c1));
  const double hi = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
  const char kind = spec[c2 + 1];
  const double step = std::stod(spec.substr(c2 + 2));
  const bool integral = lo == std::floor(lo) && step == std::floor(step);
  auto push = [&](double v) {
    if (integral) {
      axis.values.emplace_back(static_cast<long long>(std::llround(v)));
    } else {
      axis.values.emplace_back(v);
    }
  };
  if (kind == 'x') {
    if (!(step > 1.0) || !(lo > 0.0)) throw ParameterError("geometric sweep needs lo > 0 and factor > 1");
    for (double v = lo; v <= hi * (1 + 1e-12); v *= step) push(v);
  } else if (kind == '+') {
    if (!(step > 0.0)) throw ParameterError("arithmetic sweep needs a positive step");
    for (double v = lo; v <= hi + 1e-9 * std::abs(step); v += step) push(v);
  } else {
    throw ParameterError("sweep range must be lo:hi:xF or lo:hi:+S");
  }
  if (axis.values.size() > kMaxSweepCells) throw ParameterError("sweep axis exceeds 1e5 values");
  return axis;
}

json SweepResult::to_json() const {
  json rows = json::array();
  for (const auto& c : cells) {
    json row = c.params;
    if (c.value) row["value"] = *c.value;
    if (!c.error.empty()) row["error"] = c.error;
    row["exit_code"] = c.exit_code;
    rows.push_back(std::move(row));
  }
  json out = {{"rows", rows}, {"cells", cells.size()}, {"exit_code", exit_code}};
  if (fit_spec) {
    out["fit"] = fit;
    out["fit"]["metric"] = fit_spec->metric;
    out["fit"]["axis"] = fit_spec->axis;
  }
  return out;
}

SweepResult sweep(const std::string& base, const json& fixed, const std::vector<SweepAxis>& axes,
                  std::optional<SweepFit> fit, std::uint64_t seed, int jobs) {
  if (base == "sweep") throw ParameterError("sweeps cannot nest");
  if (std::find(command_names().begin(), command_names().end(), base) == command_names().end()) {
    throw ParameterError("unknown sweep base command '" + base + "'");
  }
  std::size_t total = 1;
  for (const auto& a : axes) {
    if (a.values.empty()) throw ParameterError("sweep axis '" + a.name + "' is empty");
    total *= a.values.size();
    if (total > kMaxSweepCells) throw ParameterError("sweep grid exceeds 1e5 cells");
  }

  SweepResult result;
  result.fit_spec = fit;
  result.cells.resize(total);
  for (std::size_t i = 0; i < total; ++i) {
    json params = fixed.is_object() ? fixed : json::object();
    std::size_t rest = i;
    for (auto a = axes.rbegin(); a != axes.rend(); ++a) {
      params[a->name] = a->values[rest % a->values.size()];
      rest /= a->values.size();
    }
    result.cells[i].params = std::move(params);
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      auto& cell = result.cells[i];
      JobSpec spec;
      spec.command = base;
      spec.params = cell.params;
      spec.seed = seed;
      const auto r = run(spec);
      cell.exit_code = r.exit_code;
      cell.error = r.error;
      if (!r.value.is_null() && fit) {
        cell.value = lookup_metric(r.value, fit->metric);
        if (!cell.value && cell.exit_code == kSuccess) {
          cell.exit_code = kValidationError;
          cell.error = "metric '" + fit->metric + "' missing from result";
        }
      }
    }
  };
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(total)));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (const auto& c : result.cells) result.exit_code = std::max(result.exit_code, c.exit_code);

  if (fit) {
    std::vector<double> xs, ys;
    for (const auto& c : result.cells) {
      if (c.value && c.exit_code == kSuccess) {
        xs.push_back(axis_value(c.params, fit->axis));
        ys.push_back(*c.value);
      }
    }
    if (xs.size() >= 2) {
      const auto f = log_log_fit(xs, ys);
      result.fit = {{"slope", f.slope},
                    {"intercept", f.intercept},
                    {"slope_stderr", f.slope_stderr},
                    {"ci95_low", f.slope - 1.96 * f.slope_stderr},
                    {"ci95_high", f.slope + 1.96 * f.slope_stderr},
                    {"points", f.points}};
    } else {
      result.fit = {{"points", xs.size()}};
    }
  }
  return result;
}

Outcome sweep_command(const json& params, std::uint64_t seed, int jobs) {
  const Params p(params);
  p.only({"base", "set", "axis", "axes", "fit"});
  const auto base = p.get_string("base");

  json fixed = json::object();
  if (p.has("set")) {
    const auto& set = p.raw("set");
    if (set.is_object()) {
      fixed = set;
    } else {
      for (const auto& item : as_strings(set)) {
        const auto [key, value] = split_assignment(item, '=', "sweep --set");
        fixed[key] = parse_scalar(value);
      }
    }
  }

  std::vector<SweepAxis> axes;
  if (p.has("axes")) {
    for (const auto& [name, values] : p.raw("axes").items()) {
      SweepAxis a;
      a.name = name;
      if (values.is_array()) {
        for (const auto& v : values) a.values.push_back(v);
      } else {
        a = parse_axis(name + "=" + values.get<std::string>());
      }
      axes.push_back(std::move(a));
    }
  }
  if (p.has("axis")) {
    for (const auto& item : as_strings(p.raw("axis"))) axes.push_back(parse_axis(item));
  }

  std::optional<SweepFit> fit;
  if (p.has("fit")) {
    const auto& f = p.raw("fit");
    if (f.is_object()) {
      fit = SweepFit{f.at("metric").get<std::string>(), f.at("axis").get<std::string>()};
    } else {
      const auto [metric, axis] = split_assignment(f.get<std::string>(), ':', "sweep --fit");
      fit = SweepFit{metric, axis};
    }
  }

  const auto result = sweep(base, fixed, axes, fit, seed, jobs);
  Outcome out;
  out.value = result.to_json();
  out.value["base"] = base;
  return out;
}

}  // namespace parqq::cli
