#include "zxcss/diagram.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace zxcss {

std::string kind_name(Kind k) {
    switch (k) {
        case Kind::Z: return "Z";
        case Kind::X: return "X";
        case Kind::B: return "B";
    }
    return "?";
}

int Diagram::add_node(Kind kind, int phase) {
    int id = next_id++;
    nodes[id] = Node{kind, norm_phase(phase)};
    return id;
}

int Diagram::add_input() {
    int id = add_node(Kind::B);
    inputs.push_back(id);
    return id;
}

int Diagram::add_output() {
    int id = add_node(Kind::B);
    outputs.push_back(id);
    return id;
}

void Diagram::add_edge(int a, int b) {
    if (!has_node(a) || !has_node(b)) {
        throw std::invalid_argument("add_edge: unknown node id");
    }
    edges.emplace_back(a, b);
}

const Node& Diagram::node(int v) const {
    auto it = nodes.find(v);
    if (it == nodes.end()) {
        throw std::invalid_argument("node: unknown id " + std::to_string(v));
    }
    return it->second;
}

Node& Diagram::node(int v) {
    auto it = nodes.find(v);
    if (it == nodes.end()) {
        throw std::invalid_argument("node: unknown id " + std::to_string(v));
    }
    return it->second;
}

int Diagram::degree(int v) const {
    int d = 0;
    for (const auto& [a, b] : edges) {
        if (a == v) d++;
        if (b == v) d++;
    }
    return d;
}

int Diagram::self_loops(int v) const {
    int d = 0;
    for (const auto& [a, b] : edges) {
        if (a == v && b == v) d++;
    }
    return d;
}

int Diagram::edge_count(int a, int b) const {
    int d = 0;
    for (const auto& [x, y] : edges) {
        if ((x == a && y == b) || (x == b && y == a)) d++;
    }
    return d;
}

std::vector<int> Diagram::neighbors(int v) const {
    std::vector<int> out;
    for (const auto& [a, b] : edges) {
        if (a == v && b != v) out.push_back(b);
        else if (b == v && a != v) out.push_back(a);
    }
    return out;
}

int Diagram::boundary_neighbor(int b) const {
    if (!is_boundary(b)) {
        throw std::invalid_argument("boundary_neighbor: node is not a boundary");
    }
    auto ns = neighbors(b);
    if (ns.size() != 1) {
        throw std::invalid_argument("boundary_neighbor: boundary degree is not 1");
    }
    return ns[0];
}

bool Diagram::remove_edge_once(int a, int b) {
    for (size_t i = 0; i < edges.size(); i++) {
        auto [x, y] = edges[i];
        if ((x == a && y == b) || (x == b && y == a)) {
            edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(i));
            return true;
        }
    }
    return false;
}

void Diagram::remove_node(int v) {
    edges.erase(std::remove_if(edges.begin(), edges.end(),
                               [v](const std::pair<int, int>& e) {
                                   return e.first == v || e.second == v;
                               }),
                edges.end());
    nodes.erase(v);
}

int Diagram::spider_count() const {
    int n = 0;
    for (const auto& [id, nd] : nodes) {
        (void)id;
        if (nd.kind != Kind::B) n++;
    }
    return n;
}

void Diagram::validate() const {
    for (const auto& [a, b] : edges) {
        if (!has_node(a) || !has_node(b)) {
            throw std::invalid_argument("validate: edge endpoint does not exist");
        }
    }
    for (const auto& [id, nd] : nodes) {
        if (nd.phase != 0 && nd.phase != 1) {
            throw std::invalid_argument("validate: node " + std::to_string(id) +
                                        " has phase outside {0, pi}");
        }
        if (id >= next_id) {
            throw std::invalid_argument("validate: node id exceeds next_id");
        }
    }
    std::set<int> seen;
    for (const std::vector<int>* list : {&inputs, &outputs}) {
        for (int b : *list) {
            if (!has_node(b)) {
                throw std::invalid_argument("validate: boundary id does not exist");
            }
            if (node(b).kind != Kind::B) {
                throw std::invalid_argument("validate: interface node " +
                                            std::to_string(b) + " is not a boundary");
            }
            if (!seen.insert(b).second) {
                throw std::invalid_argument("validate: boundary " + std::to_string(b) +
                                            " listed twice");
            }
            if (degree(b) != 1) {
                throw std::invalid_argument("validate: boundary " + std::to_string(b) +
                                            " has degree " + std::to_string(degree(b)));
            }
        }
    }
    for (const auto& [id, nd] : nodes) {
        if (nd.kind == Kind::B && seen.count(id) == 0) {
            throw std::invalid_argument("validate: boundary " + std::to_string(id) +
                                        " is in neither interface list");
        }
    }
}

namespace {

// Copies `src` into `dst` with all ids shifted by dst.next_id; returns the
// shift. Scalars are multiplied.
int absorb(Diagram& dst, const Diagram& src) {
    int shift = dst.next_id;
    for (const auto& [id, nd] : src.nodes) {
        dst.nodes[id + shift] = nd;
    }
    for (const auto& [a, b] : src.edges) {
        dst.edges.emplace_back(a + shift, b + shift);
    }
    dst.next_id += src.next_id;
    dst.scalar *= src.scalar;
    return shift;
}

// Removes boundary nodes that became internal after gluing, reconnecting
// their two incident edge slots. A cycle of pure wire contributes 2.
void smooth_internal(Diagram& d, std::set<int> internal) {
    while (!internal.empty()) {
        int w = *internal.begin();
        internal.erase(internal.begin());
        if (d.self_loops(w) == 1 && d.degree(w) == 2) {
            d.remove_node(w);
            d.scalar *= Scalar::dyadic(1, 2);  // closed wire loop = trace of identity
            continue;
        }
        auto ns = d.neighbors(w);
        if (ns.size() != 2) {
            throw std::invalid_argument("compose: glued boundary has degree " +
                                        std::to_string(d.degree(w)));
        }
        d.remove_node(w);
        d.add_edge(ns[0], ns[1]);
    }
}

}  // namespace

Diagram compose(const Diagram& first, const Diagram& then) {
    if (first.num_outputs() != then.num_inputs()) {
        throw std::invalid_argument("compose: " + std::to_string(first.num_outputs()) +
                                    " outputs glued to " +
                                    std::to_string(then.num_inputs()) + " inputs");
    }
    Diagram r = first;
    int shift = absorb(r, then);
    std::set<int> internal;
    for (size_t i = 0; i < first.outputs.size(); i++) {
        int o = first.outputs[i];
        int in = then.inputs[i] + shift;
        r.add_edge(o, in);
        internal.insert(o);
        internal.insert(in);
    }
    r.outputs.clear();
    for (int o : then.outputs) r.outputs.push_back(o + shift);
    smooth_internal(r, std::move(internal));
    return r;
}

Diagram tensor_product(const Diagram& top, const Diagram& bottom) {
    Diagram r = top;
    int shift = absorb(r, bottom);
    for (int i : bottom.inputs) r.inputs.push_back(i + shift);
    for (int o : bottom.outputs) r.outputs.push_back(o + shift);
    return r;
}

Diagram bend_inputs(const Diagram& d) {
    Diagram r = d;
    std::vector<int> outs = r.inputs;
    outs.insert(outs.end(), r.outputs.begin(), r.outputs.end());
    r.inputs.clear();
    r.outputs = std::move(outs);
    return r;
}

Diagram unbend_outputs(const Diagram& d, int count) {
    if (count < 0 || count > d.num_outputs()) {
        throw std::invalid_argument("unbend_outputs: bad count");
    }
    Diagram r = d;
    r.inputs.insert(r.inputs.end(), r.outputs.begin(), r.outputs.begin() + count);
    r.outputs.erase(r.outputs.begin(), r.outputs.begin() + count);
    return r;
}

Diagram colour_swap(const Diagram& d) {
    Diagram r = d;
    for (auto& [id, nd] : r.nodes) {
        (void)id;
        if (nd.kind == Kind::Z) nd.kind = Kind::X;
        else if (nd.kind == Kind::X) nd.kind = Kind::Z;
    }
    return r;
}

Diagram spider_diagram(Kind kind, int n_in, int n_out, int phase) {
    if (kind == Kind::B) {
        throw std::invalid_argument("spider_diagram: boundary is not a spider kind");
    }
    Diagram d;
    int s = d.add_node(kind, phase);
    for (int i = 0; i < n_in; i++) d.add_edge(d.add_input(), s);
    for (int i = 0; i < n_out; i++) d.add_edge(s, d.add_output());
    return d;
}

Diagram identity_diagram(int n) {
    Diagram d;
    for (int i = 0; i < n; i++) {
        int in = d.add_input();
        int out = d.add_output();
        d.add_edge(in, out);
    }
    return d;
}

}  // namespace zxcss
