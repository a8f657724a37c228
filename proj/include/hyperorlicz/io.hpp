#pragma once

// JSON schemas and output helpers. Needs nlohmann/json on the include path.

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "hyperorlicz/error.hpp"
#include "hyperorlicz/hypergroup.hpp"
#include "hyperorlicz/measure.hpp"
#include "hyperorlicz/orlicz.hpp"
#include "hyperorlicz/sequence_condition.hpp"
#include "hyperorlicz/young.hpp"

namespace hyperorlicz::io {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0";

inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline void write(std::ostringstream& os, const json& j, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(indent * depth), ' ');
  switch (j.type()) {
    case json::value_t::number_float: {
      const double v = j.get<double>();
      // JSON has no inf/nan
      if (std::isfinite(v)) {
        os << format_double(v);
      } else {
        os << json(format_double(v)).dump();
      }
      return;
    }
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) os << ",\n";
        first = false;
        os << pad << json(k).dump() << ": ";
        write(os, v, indent, depth + 1);
      }
      os << "\n" << close << "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      // scalar arrays on one line
      bool flat = true;
      for (const auto& v : j) flat = flat && !v.is_structured();
      if (flat) {
        os << "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) os << ", ";
          write(os, j[i], indent, depth + 1);
        }
        os << "]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << pad;
        write(os, j[i], indent, depth + 1);
      }
      os << "\n" << close << "]";
      return;
    }
    default:
      os << j.dump();
  }
}

}  // namespace detail

/// Deterministic dump with every double at 17 significant digits.
inline std::string dump(const json& j, int indent = 2) {
  std::ostringstream os;
  detail::write(os, j, indent, 0);
  os << "\n";
  return os.str();
}

inline json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse_error, e.what());
  }
}

inline json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::invalid_argument, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

inline json envelope(const std::string& kind) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = kind;
  return j;
}

inline json error_json(const Error& e) {
  json j = envelope("error");
  j["error"] = {{"code", to_string(e.code())}, {"message", e.message()}};
  return j;
}

namespace detail {

[[noreturn]] inline void schema(const std::string& msg) {
  throw Error(ErrorCode::schema_violation, msg);
}

inline const json& member(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) schema(where + ": missing '" + key + "'");
  return j.at(key);
}

inline double number(const json& j, const std::string& where) {
  if (!j.is_number()) schema(where + ": expected a number");
  return j.get<double>();
}

inline Point integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) schema(where + ": expected an integer");
  return j.get<Point>();
}

inline std::vector<Point> integers(const json& j, const std::string& where) {
  if (!j.is_array()) schema(where + ": expected an array of integers");
  std::vector<Point> out;
  for (const auto& v : j) out.push_back(integer(v, where));
  return out;
}

inline std::vector<double> numbers(const json& j, const std::string& where) {
  if (!j.is_array()) schema(where + ": expected an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(number(v, where));
  return out;
}

}  // namespace detail

// ---- Young functions: {family, params} or {custom: "expr"}

inline YoungFunction young_from_json(const json& j) {
  if (!j.is_object()) detail::schema("young: expected an object");
  if (j.contains("custom")) {
    if (!j["custom"].is_string()) detail::schema("young.custom: expected a string");
    return YoungFunction::custom(j["custom"].get<std::string>());
  }
  const auto& fam = detail::member(j, "family", "young");
  if (!fam.is_string()) detail::schema("young.family: expected a string");
  const std::string f = fam.get<std::string>();
  const json params = j.value("params", json::object());
  const double p = detail::number(detail::member(params, "p", "young.params"),
                                  "young.params.p");
  if (f == "power") return YoungFunction::power(p);
  if (f == "power_log") {
    const double g = params.contains("gamma")
                         ? detail::number(params["gamma"], "young.params.gamma")
                         : 0.0;
    return YoungFunction::power_log(p, g);
  }
  detail::schema("young.family: unknown family '" + f + "'");
}

inline json young_to_json(const YoungFunction& phi) {
  json j;
  if (const auto* f = std::get_if<PowerFamily>(&phi.family())) {
    j["family"] = "power";
    j["params"] = {{"p", f->p}};
  } else if (const auto* g = std::get_if<PowerLogFamily>(&phi.family())) {
    j["family"] = "power_log";
    j["params"] = {{"p", g->p}, {"gamma", g->gamma}};
  } else {
    j["custom"] = std::get<CustomFamily>(phi.family()).expression;
  }
  return j;
}

// ---- Sequence witnesses: "invsqrt" or {alpha: {c, s}, beta: {c, s}}

inline SequenceWitness witness_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "invsqrt") return SequenceWitness::inverse_sqrt();
    detail::schema("witness: unknown name '" + j.get<std::string>() + "'");
  }
  auto rule = [](const json& r, const std::string& where) {
    return TermRule::power_law(detail::number(detail::member(r, "c", where), where + ".c"),
                               detail::number(detail::member(r, "s", where), where + ".s"));
  };
  SequenceWitness w{rule(detail::member(j, "alpha", "witness"), "witness.alpha"),
                    rule(detail::member(j, "beta", "witness"), "witness.beta"),
                    TailMethod::integral_test};
  if (j.contains("method")) {
    const std::string m = j["method"].get<std::string>();
    if (m == "partial_sum_only") {
      w.method = TailMethod::partial_sum_only;
    } else if (m != "integral_test") {
      detail::schema("witness.method: unknown '" + m + "'");
    }
  }
  return w;
}

inline json witness_to_json(const SequenceWitness& w) {
  auto rule = [](const TermRule& r) {
    json j;
    if (const auto& pl = r.power_law_form()) {
      j = {{"c", pl->c}, {"s", pl->s}};
    } else {
      j = {{"label", r.label()}};
    }
    return j;
  };
  return {{"alpha", rule(w.alpha)},
          {"beta", rule(w.beta)},
          {"method", w.method == TailMethod::integral_test ? "integral_test"
                                                           : "partial_sum_only"}};
}

// ---- Hypergroups

/// "integers", "cyclic:m", "chebyshev"
inline DiscreteHypergroup hypergroup_from_name(const std::string& name) {
  if (name == "integers") return DiscreteHypergroup::integers();
  if (name == "chebyshev") return DiscreteHypergroup::chebyshev();
  if (name.rfind("cyclic:", 0) == 0) {
    const std::string m = name.substr(7);
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(m, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != m.size() || m.empty()) {
      detail::schema("carrier: bad cyclic order '" + m + "'");
    }
    return DiscreteHypergroup::cyclic(v);
  }
  detail::schema("carrier: unknown '" + name + "'");
}

/// {carrier, points, table: [{x, y, support, weights}], involution, identity, haar}
inline DiscreteHypergroup hypergroup_from_json(const json& j) {
  if (j.is_string()) return hypergroup_from_name(j.get<std::string>());
  const auto& c = detail::member(j, "carrier", "hypergroup");
  if (!c.is_string()) detail::schema("hypergroup.carrier: expected a string");
  const std::string carrier = c.get<std::string>();
  if (carrier != "table") return hypergroup_from_name(carrier);

  TableSpec spec;
  spec.points = detail::integers(detail::member(j, "points", "hypergroup"),
                                 "hypergroup.points");
  spec.involution = detail::integers(detail::member(j, "involution", "hypergroup"),
                                     "hypergroup.involution");
  spec.haar = detail::numbers(detail::member(j, "haar", "hypergroup"), "hypergroup.haar");
  spec.identity = detail::integer(detail::member(j, "identity", "hypergroup"),
                                  "hypergroup.identity");
  if (j.contains("tolerance")) {
    spec.tolerance = detail::number(j["tolerance"], "hypergroup.tolerance");
  }
  const auto& rows = detail::member(j, "table", "hypergroup");
  if (!rows.is_array()) detail::schema("hypergroup.table: expected an array");
  for (const auto& r : rows) {
    TableEntry e;
    e.x = detail::integer(detail::member(r, "x", "table row"), "table row.x");
    e.y = detail::integer(detail::member(r, "y", "table row"), "table row.y");
    e.support = detail::integers(detail::member(r, "support", "table row"),
                                 "table row.support");
    e.weights = detail::numbers(detail::member(r, "weights", "table row"),
                                "table row.weights");
    spec.table.push_back(std::move(e));
  }
  return DiscreteHypergroup::from_table(spec);
}

// ---- Finitely supported functions: {support, values: [[re, im], ...]}
// Plain numbers are accepted as real values.

inline OrliczFunction<std::complex<double>> complex_function_from_json(const json& j) {
  const auto support = detail::integers(detail::member(j, "support", "function"),
                                        "function.support");
  const auto& vals = detail::member(j, "values", "function");
  if (!vals.is_array() || vals.size() != support.size()) {
    detail::schema("function.values: must align with support");
  }
  std::vector<OrliczFunction<std::complex<double>>::Entry> e;
  for (std::size_t i = 0; i < support.size(); ++i) {
    const auto& v = vals[i];
    if (v.is_number()) {
      e.emplace_back(support[i], std::complex<double>(v.get<double>(), 0.0));
    } else if (v.is_array() && v.size() == 2) {
      e.emplace_back(support[i],
                     std::complex<double>(detail::number(v[0], "function.values"),
                                          detail::number(v[1], "function.values")));
    } else {
      detail::schema("function.values: expected a number or [re, im]");
    }
  }
  return OrliczFunction<std::complex<double>>(std::move(e));
}

/// Real-valued function; nonzero imaginary parts are a schema violation.
inline OrliczFunction<double> function_from_json(const json& j) {
  const auto c = complex_function_from_json(j);
  std::vector<OrliczFunction<double>::Entry> e;
  for (const auto& [x, v] : c.entries()) {
    if (v.imag() != 0.0) detail::schema("function: complex value where real expected");
    e.emplace_back(x, v.real());
  }
  return OrliczFunction<double>(std::move(e));
}

template <class T>
json function_to_json(const OrliczFunction<T>& f) {
  json support = json::array();
  json values = json::array();
  for (const auto& [x, v] : f.entries()) {
    support.push_back(x);
    if constexpr (is_complex<T>::value) {
      values.push_back(json::array({v.real(), v.imag()}));
    } else {
      values.push_back(json::array({static_cast<double>(v), 0.0}));
    }
  }
  return {{"support", support}, {"values", values}};
}

// ---- Weights: {kind: "unit"} or {kind: "exponential", rate}

inline Weight weight_from_json(const json& j) {
  if (j.is_null()) return Weight::unit();
  const auto& k = detail::member(j, "kind", "weight");
  const std::string kind = k.is_string() ? k.get<std::string>() : "";
  if (kind == "unit") return Weight::unit();
  if (kind == "exponential") {
    return Weight::exponential(
        detail::number(detail::member(j, "rate", "weight"), "weight.rate"));
  }
  detail::schema("weight.kind: unknown '" + kind + "'");
}

inline std::string window_text(Window w) {
  return "[" + std::to_string(w.lo) + "," + std::to_string(w.hi) + "]";
}

}  // namespace hyperorlicz::io
