#include "zxcss/tensor.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace zxcss {

namespace {

constexpr int kMaxWorkLegs = 26;

int64_t checked_narrow(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) {
        throw std::overflow_error("oracle: tensor entry overflows int64");
    }
    return static_cast<int64_t>(v);
}

struct WorkTensor {
    std::vector<int> legs;  // edge ids; legs[0] is the most significant index bit
    std::vector<int64_t> num;
    int64_t hp = 0;
    bool dead = false;

    void reduce() {
        bool any = false, all_even = true;
        for (int64_t v : num) {
            if (v != 0) any = true;
            if (v % 2 != 0) all_even = false;
        }
        if (!any) {
            hp = 0;
            return;
        }
        while (all_even) {
            for (auto& v : num) {
                v /= 2;
                if (v % 2 != 0) all_even = false;
            }
            hp += 2;
        }
    }
};

WorkTensor contract_pair(const WorkTensor& a, const WorkTensor& b) {
    std::vector<int> shared;
    for (int l : a.legs) {
        if (std::find(b.legs.begin(), b.legs.end(), l) != b.legs.end()) {
            shared.push_back(l);
        }
    }
    std::vector<int> free_a, free_b;
    for (int l : a.legs) {
        if (std::find(shared.begin(), shared.end(), l) == shared.end()) free_a.push_back(l);
    }
    for (int l : b.legs) {
        if (std::find(shared.begin(), shared.end(), l) == shared.end()) free_b.push_back(l);
    }

    WorkTensor r;
    r.legs = free_a;
    r.legs.insert(r.legs.end(), free_b.begin(), free_b.end());
    if (static_cast<int>(r.legs.size()) > kMaxWorkLegs) {
        throw std::runtime_error("oracle: intermediate tensor too large");
    }
    r.hp = a.hp + b.hp;
    r.num.assign(size_t{1} << r.legs.size(), 0);

    const int na = static_cast<int>(free_a.size());
    const int nb = static_cast<int>(free_b.size());
    const int ns = static_cast<int>(shared.size());

    // For each tensor, bit position of every leg (0 = least significant).
    auto bit_of = [](const std::vector<int>& legs, int leg) {
        for (size_t i = 0; i < legs.size(); i++) {
            if (legs[i] == leg) return static_cast<int>(legs.size() - 1 - i);
        }
        throw std::logic_error("oracle: leg lookup failed");
    };

    std::vector<__int128> acc(r.num.size(), 0);
    for (uint64_t fa = 0; fa < (uint64_t{1} << na); fa++) {
        for (uint64_t fb = 0; fb < (uint64_t{1} << nb); fb++) {
            uint64_t ridx = (fa << nb) | fb;
            __int128 sum = 0;
            for (uint64_t s = 0; s < (uint64_t{1} << ns); s++) {
                uint64_t ia = 0, ib = 0;
                for (int i = 0; i < na; i++) {
                    if ((fa >> (na - 1 - i)) & 1) ia |= uint64_t{1} << bit_of(a.legs, free_a[i]);
                }
                for (int i = 0; i < ns; i++) {
                    if ((s >> (ns - 1 - i)) & 1) {
                        ia |= uint64_t{1} << bit_of(a.legs, shared[i]);
                        ib |= uint64_t{1} << bit_of(b.legs, shared[i]);
                    }
                }
                for (int i = 0; i < nb; i++) {
                    if ((fb >> (nb - 1 - i)) & 1) ib |= uint64_t{1} << bit_of(b.legs, free_b[i]);
                }
                sum += static_cast<__int128>(a.num[ia]) * static_cast<__int128>(b.num[ib]);
            }
            acc[ridx] = sum;
        }
    }
    for (size_t i = 0; i < acc.size(); i++) {
        r.num[i] = checked_narrow(acc[i]);
    }
    r.reduce();
    return r;
}

WorkTensor spider_tensor(Kind kind, int phase, const std::vector<int>& legs) {
    WorkTensor t;
    t.legs = legs;
    int d = static_cast<int>(legs.size());
    t.num.assign(size_t{1} << d, 0);
    if (kind == Kind::Z) {
        t.num[0] += 1;
        t.num[(size_t{1} << d) - 1] += phase ? -1 : 1;
        t.hp = 0;
    } else {
        for (uint64_t idx = 0; idx < (uint64_t{1} << d); idx++) {
            if ((std::popcount(idx) & 1) == phase) t.num[idx] = 1;
        }
        t.hp = 2 - d;
    }
    t.reduce();
    return t;
}

}  // namespace

bool DenseTensor::is_zero() const {
    for (int64_t v : num) {
        if (v != 0) return false;
    }
    return true;
}

void DenseTensor::canonicalize() {
    bool any = false, all_even = true;
    for (int64_t v : num) {
        if (v != 0) any = true;
        if (v % 2 != 0) all_even = false;
    }
    if (!any) {
        half_power = 0;
        return;
    }
    while (all_even) {
        for (auto& v : num) {
            v /= 2;
            if (v % 2 != 0) all_even = false;
        }
        half_power += 2;
    }
}

bool DenseTensor::operator==(const DenseTensor& o) const {
    DenseTensor a = *this, b = o;
    a.canonicalize();
    b.canonicalize();
    return a.in_qubits == b.in_qubits && a.out_qubits == b.out_qubits &&
           a.num == b.num && (a.is_zero() || a.half_power == b.half_power);
}

int oracle_qubit_limit() {
    if (const char* s = std::getenv("ZXCSS_ORACLE_LIMIT")) {
        int v = std::atoi(s);
        if (v > 0) return std::min(v, kMaxWorkLegs);
    }
    return 20;
}

DenseTensor evaluate(const Diagram& input) {
    input.validate();
    int open = input.num_inputs() + input.num_outputs();
    if (open > oracle_qubit_limit()) {
        throw std::runtime_error("oracle: " + std::to_string(open) +
                                 " boundary qubits exceeds limit " +
                                 std::to_string(oracle_qubit_limit()));
    }

    Diagram d = input;
    // Self loops on spiders contract away with no scalar change for either
    // colour, so strip them before building tensors.
    d.edges.erase(std::remove_if(d.edges.begin(), d.edges.end(),
                                 [](const std::pair<int, int>& e) {
                                     return e.first == e.second;
                                 }),
                  d.edges.end());
    // A wire between two boundaries carries no tensor; a degree-2 phase-free
    // Z spider is the identity, so splice one in.
    for (size_t i = 0; i < d.edges.size(); i++) {
        auto [a, b] = d.edges[i];
        if (d.is_boundary(a) && d.is_boundary(b)) {
            int m = d.add_node(Kind::Z, 0);
            d.edges[i] = {a, m};
            d.add_edge(m, b);
        }
    }

    // Edge index doubles as the leg label.
    std::vector<WorkTensor> work;
    for (const auto& [id, nd] : d.nodes) {
        if (nd.kind == Kind::B) continue;
        std::vector<int> legs;
        for (size_t e = 0; e < d.edges.size(); e++) {
            if (d.edges[e].first == id) legs.push_back(static_cast<int>(e));
            if (d.edges[e].second == id) legs.push_back(static_cast<int>(e));
        }
        work.push_back(spider_tensor(nd.kind, nd.phase, legs));
    }
    if (work.empty()) {
        WorkTensor unit;
        unit.num = {1};
        work.push_back(unit);
    }

    auto live_count = [&work] {
        int n = 0;
        for (const auto& t : work) {
            if (!t.dead) n++;
        }
        return n;
    };

    while (live_count() > 1) {
        int best_i = -1, best_j = -1;
        int best_size = INT32_MAX;
        for (size_t i = 0; i < work.size(); i++) {
            if (work[i].dead) continue;
            for (size_t j = i + 1; j < work.size(); j++) {
                if (work[j].dead) continue;
                int shared = 0;
                for (int l : work[i].legs) {
                    if (std::find(work[j].legs.begin(), work[j].legs.end(), l) !=
                        work[j].legs.end()) {
                        shared++;
                    }
                }
                if (shared == 0) continue;
                int size = static_cast<int>(work[i].legs.size() + work[j].legs.size()) -
                           2 * shared;
                if (size < best_size) {
                    best_size = size;
                    best_i = static_cast<int>(i);
                    best_j = static_cast<int>(j);
                }
            }
        }
        if (best_i < 0) {
            // Disconnected components: outer product of the two smallest.
            std::vector<int> live;
            for (size_t i = 0; i < work.size(); i++) {
                if (!work[i].dead) live.push_back(static_cast<int>(i));
            }
            std::sort(live.begin(), live.end(), [&work](int a, int b) {
                if (work[a].legs.size() != work[b].legs.size()) {
                    return work[a].legs.size() < work[b].legs.size();
                }
                return a < b;
            });
            best_i = live[0];
            best_j = live[1];
        }
        WorkTensor merged = contract_pair(work[best_i], work[best_j]);
        work[best_i].dead = true;
        work[best_j].dead = true;
        work.push_back(std::move(merged));
    }

    WorkTensor& final_t = *std::find_if(work.begin(), work.end(),
                                        [](const WorkTensor& t) { return !t.dead; });

    // Target leg order: outputs then inputs, first entry most significant.
    std::vector<int> target;
    auto boundary_edge = [&d](int b) {
        for (size_t e = 0; e < d.edges.size(); e++) {
            if (d.edges[e].first == b || d.edges[e].second == b) {
                return static_cast<int>(e);
            }
        }
        throw std::logic_error("oracle: boundary lost its edge");
    };
    for (int o : d.outputs) target.push_back(boundary_edge(o));
    for (int i : d.inputs) target.push_back(boundary_edge(i));

    if (target.size() != final_t.legs.size()) {
        throw std::logic_error("oracle: open leg mismatch after contraction");
    }

    DenseTensor out;
    out.in_qubits = d.num_inputs();
    out.out_qubits = d.num_outputs();
    out.half_power = final_t.hp;
    out.num.assign(size_t{1} << target.size(), 0);
    int n = static_cast<int>(target.size());
    for (uint64_t idx = 0; idx < (uint64_t{1} << n); idx++) {
        uint64_t src = 0;
        for (int p = 0; p < n; p++) {
            if ((idx >> (n - 1 - p)) & 1) {
                for (size_t q = 0; q < final_t.legs.size(); q++) {
                    if (final_t.legs[q] == target[p]) {
                        src |= uint64_t{1} << (final_t.legs.size() - 1 - q);
                        break;
                    }
                }
            }
        }
        out.num[idx] = final_t.num[src];
    }

    if (d.scalar.zero) {
        std::fill(out.num.begin(), out.num.end(), 0);
        out.half_power = 0;
    } else {
        if (d.scalar.sign < 0) {
            for (auto& v : out.num) v = -v;
        }
        out.half_power += d.scalar.half_power;
    }
    out.canonicalize();
    return out;
}

std::optional<Scalar> equal_up_to_scalar(const DenseTensor& t1, const DenseTensor& t2) {
    if (t1.in_qubits != t2.in_qubits || t1.out_qubits != t2.out_qubits) {
        throw std::invalid_argument("equal_up_to_scalar: shape mismatch");
    }
    DenseTensor a = t1, b = t2;
    a.canonicalize();
    b.canonicalize();
    if (b.is_zero()) {
        if (a.is_zero()) return Scalar::one();
        return std::nullopt;
    }
    if (a.is_zero()) return Scalar::zero_value();

    size_t j = 0;
    while (b.num[j] == 0) j++;
    if (a.num[j] == 0) return std::nullopt;
    for (size_t i = 0; i < a.num.size(); i++) {
        __int128 lhs = static_cast<__int128>(a.num[i]) * b.num[j];
        __int128 rhs = static_cast<__int128>(a.num[j]) * b.num[i];
        if (lhs != rhs) return std::nullopt;
    }
    int64_t p = a.num[j], q = b.num[j];
    int sign = ((p < 0) != (q < 0)) ? -1 : 1;
    uint64_t ap = static_cast<uint64_t>(p < 0 ? -p : p);
    uint64_t aq = static_cast<uint64_t>(q < 0 ? -q : q);
    int64_t t;
    if (ap >= aq) {
        if (ap % aq != 0 || !std::has_single_bit(ap / aq)) return std::nullopt;
        t = std::countr_zero(ap / aq);
    } else {
        if (aq % ap != 0 || !std::has_single_bit(aq / ap)) return std::nullopt;
        t = -std::countr_zero(aq / ap);
    }
    return Scalar::dyadic(sign, 2 * t + (a.half_power - b.half_power));
}

DenseTensor apply_output_pauli(const DenseTensor& t, const PauliOp& p) {
    if (p.n != t.out_qubits) {
        throw std::invalid_argument("apply_output_pauli: operator size mismatch");
    }
    uint64_t xm = 0, zm = 0;
    for (int q = 0; q < p.n; q++) {
        if (p.x.get(q)) xm |= uint64_t{1} << (t.out_qubits - 1 - q);
        if (p.z.get(q)) zm |= uint64_t{1} << (t.out_qubits - 1 - q);
    }
    DenseTensor r = t;
    uint64_t nin = uint64_t{1} << t.in_qubits;
    for (uint64_t out = 0; out < (uint64_t{1} << t.out_qubits); out++) {
        uint64_t src_out = out ^ xm;
        // (X^x Z^z v)[out] = (-1)^(src_out . z) v[src_out]
        int s = (std::popcount(src_out & zm) & 1) ? -1 : 1;
        for (uint64_t in = 0; in < nin; in++) {
            r.num[(out << t.in_qubits) | in] =
                s * p.sign * t.num[(src_out << t.in_qubits) | in];
        }
    }
    r.canonicalize();
    return r;
}

bool equal_up_to_output_paulis(const Diagram& a, const Diagram& b, const PauliOp& correction) {
    if (a.num_inputs() != b.num_inputs() || a.num_outputs() != b.num_outputs()) {
        throw std::invalid_argument("equal_up_to_output_paulis: boundary arities differ");
    }
    if (correction.n != b.num_outputs()) {
        throw std::invalid_argument("equal_up_to_output_paulis: correction arity mismatch");
    }
    std::optional<Scalar> r =
        equal_up_to_scalar(evaluate(a), apply_output_pauli(evaluate(b), correction));
    return r.has_value() && !r->zero;
}

}  // namespace zxcss
