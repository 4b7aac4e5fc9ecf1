#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "zxcss/scalar.hpp"

namespace zxcss {

enum class Kind { Z, X, B };

std::string kind_name(Kind k);

struct Node {
    Kind kind = Kind::Z;
    int phase = 0;  // multiple of pi, stored as 0 or 1
};

// Open undirected multigraph of Z/X spiders with an exact global scalar.
// Self loops and parallel edges are allowed. Boundary nodes (Kind::B) carry
// the interface; each appears exactly once in `inputs` or `outputs` and has
// degree exactly 1 in a valid diagram.
struct Diagram {
    std::map<int, Node> nodes;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> inputs;
    std::vector<int> outputs;
    Scalar scalar = Scalar::one();
    int next_id = 0;

    static int norm_phase(int p) { return ((p % 2) + 2) % 2; }

    int add_node(Kind kind, int phase = 0);
    int add_input();               // fresh boundary node appended to inputs
    int add_output();              // fresh boundary node appended to outputs
    void add_edge(int a, int b);

    bool has_node(int v) const { return nodes.count(v) != 0; }
    const Node& node(int v) const;
    Node& node(int v);
    bool is_boundary(int v) const { return node(v).kind == Kind::B; }

    int degree(int v) const;       // a self loop counts twice
    int self_loops(int v) const;
    int edge_count(int a, int b) const;          // multiplicity, a != b
    std::vector<int> neighbors(int v) const;     // with multiplicity, loops excluded
    int boundary_neighbor(int b) const;          // unique neighbor of a boundary node

    bool remove_edge_once(int a, int b);         // first matching edge
    void remove_node(int v);                     // drops all incident edges

    int num_inputs() const { return static_cast<int>(inputs.size()); }
    int num_outputs() const { return static_cast<int>(outputs.size()); }
    int spider_count() const;

    void validate() const;  // throws std::invalid_argument on malformed structure
};

// Sequential composition: run `first`, then `then`. Output i of `first` is
// glued to input i of `then`; a closed wire cycle contributes a factor 2.
Diagram compose(const Diagram& first, const Diagram& then);

// Parallel composition; wires of `top` come before (more significant than)
// wires of `bottom`.
Diagram tensor_product(const Diagram& top, const Diagram& bottom);

// Turn all inputs into outputs, placed before the existing outputs in order.
// The graph is untouched: entries are reindexed, not changed.
Diagram bend_inputs(const Diagram& d);

// Inverse of bend_inputs: the first `count` outputs become inputs, appended
// after any existing inputs in order.
Diagram unbend_outputs(const Diagram& d, int count);

// Swap the colour of every spider; phases and boundaries are untouched.
Diagram colour_swap(const Diagram& d);

// Single spider with n_in inputs and n_out outputs.
Diagram spider_diagram(Kind kind, int n_in, int n_out, int phase = 0);

// n parallel wires.
Diagram identity_diagram(int n);

}  // namespace zxcss
