#include "zxcss/pauli.hpp"

#include <stdexcept>

namespace zxcss {

PauliOp::PauliOp(int n_, f2::BitVector x_, f2::BitVector z_, int sign_)
    : n(n_), x(std::move(x_)), z(std::move(z_)), sign(sign_) {
    if (x.size() != static_cast<size_t>(n) || z.size() != static_cast<size_t>(n)) {
        throw std::invalid_argument("PauliOp: flag vectors must have length n");
    }
    if (sign != 1 && sign != -1) {
        throw std::invalid_argument("PauliOp: sign must be +1 or -1");
    }
}

PauliOp PauliOp::identity(int n) {
    return PauliOp(n, f2::BitVector(n), f2::BitVector(n), 1);
}

PauliOp PauliOp::single(int n, int qubit, char which) {
    PauliOp p = identity(n);
    if (which == 'X') p.x.set(qubit, true);
    else if (which == 'Z') p.z.set(qubit, true);
    else throw std::invalid_argument("PauliOp::single: expected 'X' or 'Z'");
    return p;
}

PauliOp PauliOp::parse(const std::string& s) {
    size_t i = 0;
    int sign = 1;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        sign = s[i] == '-' ? -1 : 1;
        i++;
    }
    int n = static_cast<int>(s.size() - i);
    if (n == 0) {
        throw std::invalid_argument("PauliOp::parse: empty operator");
    }
    PauliOp p = identity(n);
    p.sign = sign;
    for (int q = 0; q < n; q++, i++) {
        switch (s[i]) {
            case 'I': break;
            case 'X': p.x.set(q, true); break;
            case 'Z': p.z.set(q, true); break;
            case 'Y': p.x.set(q, true); p.z.set(q, true); break;
            default:
                throw std::invalid_argument(std::string("PauliOp::parse: bad letter '") +
                                            s[i] + "'");
        }
    }
    return p;
}

std::string PauliOp::str() const {
    std::string s(sign < 0 ? "-" : "+");
    for (int q = 0; q < n; q++) {
        bool a = x.get(q), b = z.get(q);
        s += a ? (b ? 'Y' : 'X') : (b ? 'Z' : 'I');
    }
    return s;
}

PauliOp PauliOp::times(const PauliOp& o) const {
    if (n != o.n) {
        throw std::invalid_argument("PauliOp::times: size mismatch");
    }
    // Z^z X^x' = (-1)^(z.x') X^x' Z^z
    int s = sign * o.sign * (z.dot(o.x) ? -1 : 1);
    return PauliOp(n, x ^ o.x, z ^ o.z, s);
}

PauliOp PauliOp::dagger() const {
    // (X^x Z^z)^T = Z^z X^x = (-1)^(x.z) X^x Z^z, and all factors are real.
    PauliOp p = *this;
    if (x.dot(z)) p.sign = -p.sign;
    return p;
}

bool PauliOp::commutes_with(const PauliOp& o) const {
    if (n != o.n) {
        throw std::invalid_argument("PauliOp::commutes_with: size mismatch");
    }
    return x.dot(o.z) == z.dot(o.x);
}

int PauliOp::weight() const {
    int w = 0;
    for (int q = 0; q < n; q++) {
        if (x.get(q) || z.get(q)) w++;
    }
    return w;
}

bool PauliOp::operator==(const PauliOp& o) const {
    return n == o.n && sign == o.sign && x == o.x && z == o.z;
}

Diagram apply_pauli_at_outputs(const Diagram& d, const PauliOp& p) {
    if (p.n != d.num_outputs()) {
        throw std::invalid_argument("apply_pauli_at_outputs: operator size " +
                                    std::to_string(p.n) + " vs " +
                                    std::to_string(d.num_outputs()) + " outputs");
    }
    Diagram r = d;
    for (int q = 0; q < p.n; q++) {
        if (!p.x.get(q) && !p.z.get(q)) continue;
        int b = r.outputs[q];
        int u = r.boundary_neighbor(b);
        r.remove_edge_once(u, b);
        int prev = u;
        if (p.z.get(q)) {
            int s = r.add_node(Kind::Z, 1);
            r.add_edge(prev, s);
            prev = s;
        }
        if (p.x.get(q)) {
            int s = r.add_node(Kind::X, 1);
            r.add_edge(prev, s);
            prev = s;
        }
        r.add_edge(prev, b);
    }
    if (p.sign < 0) r.scalar *= Scalar::dyadic(-1, 0);
    return r;
}

}  // namespace zxcss
