#include "zxcss/io.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace zxcss::io {

namespace {

using ordered_json = nlohmann::ordered_json;

void reject_unknown_keys(const nlohmann::json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (allowed.count(it.key()) == 0) {
            throw std::invalid_argument("diagram json: unknown key '" + it.key() +
                                        "' in " + where);
        }
    }
}

Kind kind_from_string(const std::string& s) {
    if (s == "Z") return Kind::Z;
    if (s == "X") return Kind::X;
    if (s == "B") return Kind::B;
    throw std::invalid_argument("diagram json: bad kind '" + s + "'");
}

}  // namespace

std::string diagram_to_json(const Diagram& d, int indent) {
    ordered_json j;
    j["nodes"] = ordered_json::array();
    for (const auto& [id, nd] : d.nodes) {
        ordered_json n;
        n["id"] = id;
        n["kind"] = kind_name(nd.kind);
        n["phase"] = nd.phase;
        j["nodes"].push_back(n);
    }
    j["edges"] = ordered_json::array();
    for (const auto& [a, b] : d.edges) {
        j["edges"].push_back(ordered_json::array({a, b}));
    }
    j["inputs"] = d.inputs;
    j["outputs"] = d.outputs;
    ordered_json s;
    s["zero"] = d.scalar.zero;
    s["sign"] = d.scalar.sign;
    s["half_power"] = d.scalar.half_power;
    j["scalar"] = s;
    return j.dump(indent);
}

Diagram diagram_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("diagram json: parse error: ") + e.what());
    }
    if (!j.is_object()) {
        throw std::invalid_argument("diagram json: top level must be an object");
    }
    reject_unknown_keys(j, {"nodes", "edges", "inputs", "outputs", "scalar"}, "top level");

    Diagram d;
    if (!j.contains("nodes") || !j["nodes"].is_array()) {
        throw std::invalid_argument("diagram json: missing 'nodes' array");
    }
    for (const auto& n : j["nodes"]) {
        if (!n.is_object()) {
            throw std::invalid_argument("diagram json: node entries must be objects");
        }
        reject_unknown_keys(n, {"id", "kind", "phase"}, "node");
        if (!n.contains("id") || !n["id"].is_number_integer()) {
            throw std::invalid_argument("diagram json: node needs integer 'id'");
        }
        if (!n.contains("kind") || !n["kind"].is_string()) {
            throw std::invalid_argument("diagram json: node needs string 'kind'");
        }
        int id = n["id"].get<int>();
        if (id < 0) {
            throw std::invalid_argument("diagram json: node ids must be nonnegative");
        }
        if (d.nodes.count(id)) {
            throw std::invalid_argument("diagram json: duplicate node id " +
                                        std::to_string(id));
        }
        int phase = 0;
        if (n.contains("phase")) {
            if (!n["phase"].is_number_integer()) {
                throw std::invalid_argument("diagram json: 'phase' must be an integer");
            }
            phase = Diagram::norm_phase(n["phase"].get<int>());
        }
        d.nodes[id] = Node{kind_from_string(n["kind"].get<std::string>()), phase};
        if (id >= d.next_id) d.next_id = id + 1;
    }
    if (j.contains("edges")) {
        if (!j["edges"].is_array()) {
            throw std::invalid_argument("diagram json: 'edges' must be an array");
        }
        for (const auto& e : j["edges"]) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
                !e[1].is_number_integer()) {
                throw std::invalid_argument(
                    "diagram json: each edge must be a pair of node ids");
            }
            d.add_edge(e[0].get<int>(), e[1].get<int>());
        }
    }
    for (const char* key : {"inputs", "outputs"}) {
        if (!j.contains(key)) continue;
        if (!j[key].is_array()) {
            throw std::invalid_argument(std::string("diagram json: '") + key +
                                        "' must be an array");
        }
        for (const auto& v : j[key]) {
            if (!v.is_number_integer()) {
                throw std::invalid_argument(std::string("diagram json: '") + key +
                                            "' entries must be node ids");
            }
            (std::string(key) == "inputs" ? d.inputs : d.outputs)
                .push_back(v.get<int>());
        }
    }
    if (j.contains("scalar")) {
        const auto& s = j["scalar"];
        if (!s.is_object()) {
            throw std::invalid_argument("diagram json: 'scalar' must be an object");
        }
        reject_unknown_keys(s, {"zero", "sign", "half_power"}, "scalar");
        Scalar sc;
        if (s.contains("zero")) {
            if (!s["zero"].is_boolean()) {
                throw std::invalid_argument("diagram json: scalar 'zero' must be a bool");
            }
            sc.zero = s["zero"].get<bool>();
        }
        if (s.contains("sign")) {
            if (!s["sign"].is_number_integer() ||
                (s["sign"].get<int>() != 1 && s["sign"].get<int>() != -1)) {
                throw std::invalid_argument("diagram json: scalar 'sign' must be +1 or -1");
            }
            sc.sign = s["sign"].get<int>();
        }
        if (s.contains("half_power")) {
            if (!s["half_power"].is_number_integer()) {
                throw std::invalid_argument(
                    "diagram json: scalar 'half_power' must be an integer");
            }
            sc.half_power = s["half_power"].get<int64_t>();
        }
        if (sc.zero) sc = Scalar::zero_value();
        d.scalar = sc;
    }
    d.validate();
    return d;
}

std::string diagram_to_dot(const Diagram& d) {
    std::ostringstream os;
    os << "graph zx {\n";
    os << "  rankdir=LR;\n";
    for (const auto& [id, nd] : d.nodes) {
        os << "  n" << id << " [";
        switch (nd.kind) {
            case Kind::Z:
                os << "shape=circle,style=filled,fillcolor=\"#ccffcc\",label=\""
                   << (nd.phase ? "\xcf\x80" : "") << "\"";
                break;
            case Kind::X:
                os << "shape=circle,style=filled,fillcolor=\"#ffcccc\",label=\""
                   << (nd.phase ? "\xcf\x80" : "") << "\"";
                break;
            case Kind::B: {
                std::string tag = "b" + std::to_string(id);
                for (size_t i = 0; i < d.inputs.size(); i++) {
                    if (d.inputs[i] == id) tag = "in" + std::to_string(i);
                }
                for (size_t i = 0; i < d.outputs.size(); i++) {
                    if (d.outputs[i] == id) tag = "out" + std::to_string(i);
                }
                os << "shape=none,label=\"" << tag << "\"";
                break;
            }
        }
        os << "];\n";
    }
    for (const auto& [a, b] : d.edges) {
        os << "  n" << a << " -- n" << b << ";\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace zxcss::io
