#pragma once

#include <string>

#include "zxcss/diagram.hpp"

namespace zxcss::io {

// Stable JSON form:
// {
//   "nodes":   [{"id": 0, "kind": "Z", "phase": 1}, ...],
//   "edges":   [[0, 1], ...],
//   "inputs":  [...], "outputs": [...],
//   "scalar":  {"zero": false, "sign": 1, "half_power": 0}
// }
// phase counts multiples of pi. On read, "phase" defaults to 0 and "scalar"
// to one; unknown keys are rejected.
std::string diagram_to_json(const Diagram& d, int indent = 2);
Diagram diagram_from_json(const std::string& text);

// Graphviz rendering; kept deterministic so output can be diffed.
std::string diagram_to_dot(const Diagram& d);

}  // namespace zxcss::io
