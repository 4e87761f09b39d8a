#pragma once

#include <cctype>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ssr/core.hpp"
#include "ssr/reduction.hpp"

namespace ssr {

struct ParsedInstance {
  std::vector<double> items;
  std::optional<double> epsilon;  // only the JSON format can carry one
};

/// Text format: decimal values separated by whitespace (one per line in the
/// files we emit, but any whitespace is accepted).
inline ParsedInstance parse_instance_text(const std::string& content) {
  ParsedInstance out;
  std::istringstream in(content);
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw ParseError("not a number: '" + tok + "'");
    }
    if (used != tok.size()) throw ParseError("trailing characters in '" + tok + "'");
    out.items.push_back(v);
  }
  if (out.items.empty()) throw ParseError("no items found in instance text");
  return out;
}

/// JSON format: {"items": [...], "epsilon": optional number}. Unknown fields
/// (e.g. generator metadata) are ignored.
inline ParsedInstance parse_instance_json(const std::string& content) {
  nlohmann::json j = nlohmann::json::parse(content, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw ParseError("invalid JSON instance");
  if (!j.is_object() || !j.contains("items") || !j["items"].is_array()) {
    throw ParseError("JSON instance requires an object with an 'items' array");
  }
  ParsedInstance out;
  for (const auto& v : j["items"]) {
    if (!v.is_number()) throw ParseError("'items' entries must be numbers");
    out.items.push_back(v.get<double>());
  }
  if (j.contains("epsilon")) {
    if (!j["epsilon"].is_number()) throw ParseError("'epsilon' must be a number");
    out.epsilon = j["epsilon"].get<double>();
  }
  return out;
}

/// Sniff the format from the first non-whitespace character.
inline ParsedInstance parse_instance_auto(const std::string& content) {
  for (char c : content) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' ? parse_instance_json(content) : parse_instance_text(content);
  }
  throw ParseError("empty instance input");
}

inline std::string format_item(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string instance_to_text(const std::vector<double>& items) {
  std::string out;
  for (double v : items) {
    out += format_item(v);
    out += '\n';
  }
  return out;
}

inline const char* path_name(SsrlPath p) {
  switch (p) {
    case SsrlPath::kDuplicate: return "duplicate";
    case SsrlPath::kSqrt2Exact: return "sqrt2_exact";
    case SsrlPath::kGeometricA: return "geometric_a";
    case SsrlPath::kPigeonhole: return "pigeonhole";
    case SsrlPath::kGeometricBFallback: return "geometric_b";
  }
  return "unknown";
}

inline nlohmann::json solution_core_json(const Instance& inst, const Solution& sol) {
  nlohmann::json j;
  j["x_indices"] = sol.x_indices;
  j["y_indices"] = sol.y_indices;
  std::vector<double> xi, yi;
  for (int i : sol.x_indices) xi.push_back(inst.items[static_cast<std::size_t>(i)]);
  for (int i : sol.y_indices) yi.push_back(inst.items[static_cast<std::size_t>(i)]);
  j["x_items"] = xi;
  j["y_items"] = yi;
  j["sum_x"] = sol.sum_x;
  j["sum_y"] = sol.sum_y;
  j["ratio"] = sol.ratio.value();
  return j;
}

inline nlohmann::json solve_result_json(const Instance& inst, const Solution& sol,
                                        const SolveTrace& trace) {
  nlohmann::json j = solution_core_json(inst, sol);
  j["epsilon"] = inst.epsilon;
  j["guarantee"] = "(1+eps)*OPT";
  nlohmann::json wins = nlohmann::json::array();
  for (const WindowTraceEntry& w : trace.windows) {
    wins.push_back({{"window_lo", w.lo},
                    {"window_hi", w.hi},
                    {"branch", path_name(w.path)},
                    {"winner", w.path == SsrlPath::kDuplicate ? "fast_path"
                               : w.sqrt2_won                  ? "sqrt2"
                                                              : "bounded"},
                    {"ratio", w.ratio}});
  }
  j["algorithm_trace"] = std::move(wins);
  return j;
}

inline nlohmann::json exact_result_json(const Instance& inst, const Solution& sol,
                                        const std::string& variant) {
  nlohmann::json j = solution_core_json(inst, sol);
  j["variant"] = variant;
  return j;
}

}  // namespace ssr
