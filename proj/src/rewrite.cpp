#include "zxcss/rewrite.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <set>
#include <stdexcept>

namespace zxcss {

std::string rule_name(Rule r) {
    switch (r) {
        case Rule::Fuse: return "fuse";
        case Rule::Identity: return "identity";
        case Rule::SelfLoop: return "self_loop";
        case Rule::StrongComp: return "strong_comp";
        case Rule::Comp: return "comp";
        case Rule::PiCopy: return "pi_copy";
        case Rule::PiPush: return "pi_push";
    }
    return "?";
}

bool phase_free(const Diagram& d) {
    for (const auto& [id, nd] : d.nodes) {
        (void)id;
        if (nd.kind != Kind::B && nd.phase != 0) return false;
    }
    return true;
}

namespace {

void note(Trace* tr, Rule r, std::vector<int> site, Scalar delta) {
    if (tr) tr->push_back(RuleApplication{r, std::move(site), delta});
}

const Node& spider_at(const Diagram& d, int v, const char* who) {
    const Node& nd = d.node(v);
    if (nd.kind == Kind::B) {
        throw std::invalid_argument(std::string(who) + ": node " + std::to_string(v) +
                                    " is a boundary, not a spider");
    }
    return nd;
}

// --- rule cores; preconditions are the caller's responsibility -------------

void core_fuse(Diagram& d, int keep, int merge) {
    d.node(keep).phase = Diagram::norm_phase(d.node(keep).phase + d.node(merge).phase);
    d.remove_edge_once(keep, merge);
    for (auto& e : d.edges) {
        if (e.first == merge) e.first = keep;
        if (e.second == merge) e.second = keep;
    }
    d.nodes.erase(merge);
}

// Splices a phase-free degree-2 spider out of its wire; a bare circle is the
// scalar 2.
Scalar core_identity(Diagram& d, int v) {
    if (d.self_loops(v) == 1) {
        d.remove_node(v);
        Scalar delta = Scalar::dyadic(1, 2);
        d.scalar *= delta;
        return delta;
    }
    std::vector<int> ends;
    for (const auto& e : d.edges) {
        if (e.first == v) ends.push_back(e.second);
        else if (e.second == v) ends.push_back(e.first);
    }
    d.remove_node(v);
    d.add_edge(ends[0], ends[1]);
    return Scalar::one();
}

// Evaluates an isolated spider: phase 0 is the scalar 2, phase pi is 0.
Scalar core_pop(Diagram& d, int v) {
    Scalar delta = d.node(v).phase ? Scalar::zero_value() : Scalar::dyadic(1, 2);
    d.remove_node(v);
    d.scalar *= delta;
    return delta;
}

struct StrongOut {
    Scalar delta;
    // (new spider, the neighbor it was placed next to), in leg order
    std::vector<std::pair<int, int>> z_news;  // on former X-spider legs
    std::vector<std::pair<int, int>> x_news;  // on former Z-spider legs
};

StrongOut core_strong(Diagram& d, int z, int x) {
    int j = d.node(z).phase, k = d.node(x).phase;
    std::vector<int> z_ends, x_ends;
    for (const auto& e : d.edges) {
        bool za = e.first == z, zb = e.second == z;
        bool xa = e.first == x, xb = e.second == x;
        if ((za && xb) || (xa && zb)) continue;  // the connecting edge
        if (za) z_ends.push_back(e.second);
        else if (zb) z_ends.push_back(e.first);
        else if (xa) x_ends.push_back(e.second);
        else if (xb) x_ends.push_back(e.first);
    }
    d.remove_node(z);
    d.remove_node(x);
    StrongOut out;
    for (int w : x_ends) {
        int nz = d.add_node(Kind::Z, j);
        d.add_edge(nz, w);
        out.z_news.emplace_back(nz, w);
    }
    for (int u : z_ends) {
        int nx = d.add_node(Kind::X, k);
        d.add_edge(nx, u);
        out.x_news.emplace_back(nx, u);
    }
    for (const auto& [nz, w] : out.z_news) {
        (void)w;
        for (const auto& [nx, u] : out.x_news) {
            (void)u;
            d.add_edge(nz, nx);
        }
    }
    int64_t m = static_cast<int64_t>(z_ends.size());
    int64_t n = static_cast<int64_t>(x_ends.size());
    out.delta = Scalar::dyadic((j && k) ? -1 : 1, (m - 1) * (n - 1));
    d.scalar *= out.delta;
    return out;
}

struct StrongRevOut {
    Scalar delta;
    int new_z;
    int new_x;
};

StrongRevOut core_strong_reverse(Diagram& d, const std::vector<int>& zs,
                                 const std::vector<int>& xs) {
    int j = d.node(zs[0]).phase, k = d.node(xs[0]).phase;
    std::set<int> in_z(zs.begin(), zs.end()), in_x(xs.begin(), xs.end());
    std::vector<int> z_extra, x_extra;
    for (int zn : zs) {
        for (const auto& e : d.edges) {
            int other;
            if (e.first == zn) other = e.second;
            else if (e.second == zn) other = e.first;
            else continue;
            if (!in_x.count(other)) z_extra.push_back(other);
        }
    }
    for (int xn : xs) {
        for (const auto& e : d.edges) {
            int other;
            if (e.first == xn) other = e.second;
            else if (e.second == xn) other = e.first;
            else continue;
            if (!in_z.count(other)) x_extra.push_back(other);
        }
    }
    for (int v : zs) d.remove_node(v);
    for (int v : xs) d.remove_node(v);
    StrongRevOut out;
    out.new_x = d.add_node(Kind::X, k);
    for (int u : z_extra) d.add_edge(out.new_x, u);
    out.new_z = d.add_node(Kind::Z, j);
    for (int u : x_extra) d.add_edge(out.new_z, u);
    d.add_edge(out.new_z, out.new_x);
    int64_t a = static_cast<int64_t>(zs.size());
    int64_t b = static_cast<int64_t>(xs.size());
    out.delta = Scalar::dyadic((j && k) ? -1 : 1, -(a - 1) * (b - 1));
    d.scalar *= out.delta;
    return out;
}

// --- the reduction engine ----------------------------------------------------

struct Engine {
    Diagram d;
    Trace* tr = nullptr;
    Form form = Form::ZX;
    bool zero = false;

    std::vector<int> row_ids;      // interior spiders, in surviving order
    std::vector<int> cols;         // boundary-layer spider per output index
    std::map<int, int> col_pos;    // spider id -> output index

    Kind row_kind() const { return form == Form::ZX ? Kind::Z : Kind::X; }
    Kind col_kind() const { return form == Form::ZX ? Kind::X : Kind::Z; }

    void rec(Rule r, std::vector<int> site, Scalar delta) {
        note(tr, r, std::move(site), delta);
    }

    std::vector<int> spider_ids() const {
        std::vector<int> out;
        for (const auto& [id, nd] : d.nodes) {
            if (nd.kind != Kind::B) out.push_back(id);
        }
        return out;
    }

    bool touches_boundary(int v) const {
        for (int u : d.neighbors(v)) {
            if (d.node(u).kind == Kind::B) return true;
        }
        return false;
    }

    void set_zero() {
        zero = true;
        d.scalar = Scalar::zero_value();
    }

    bool cleanup_pass() {
        for (int v : spider_ids()) {
            if (d.self_loops(v) > 0) {
                d.remove_edge_once(v, v);
                rec(Rule::SelfLoop, {v}, Scalar::one());
                return true;
            }
        }
        for (int v : spider_ids()) {
            auto ns = d.neighbors(v);
            std::sort(ns.begin(), ns.end());
            ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
            for (int u : ns) {
                if (d.node(u).kind == d.node(v).kind) {
                    int keep = std::min(v, u), merge = std::max(v, u);
                    core_fuse(d, keep, merge);
                    rec(Rule::Fuse, {keep, merge}, Scalar::one());
                    return true;
                }
            }
        }
        for (int v : spider_ids()) {
            auto ns = d.neighbors(v);
            std::sort(ns.begin(), ns.end());
            ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
            for (int u : ns) {
                if (u > v && d.node(u).kind != Kind::B &&
                    d.node(u).kind != d.node(v).kind && d.edge_count(v, u) >= 2) {
                    d.remove_edge_once(v, u);
                    d.remove_edge_once(v, u);
                    Scalar delta = Scalar::dyadic(1, -2);
                    d.scalar *= delta;
                    rec(Rule::Comp, {v, u}, delta);
                    return true;
                }
            }
        }
        for (int v : spider_ids()) {
            if (d.degree(v) == 0) {
                Scalar delta = core_pop(d, v);
                rec(Rule::Identity, {v}, delta);
                if (d.scalar.zero) set_zero();
                return true;
            }
        }
        // No identity splicing here: degree-2 spiders are legitimate rows and
        // columns of the target shape, and the loop never needs to remove one.
        return false;
    }

    void cleanup() {
        while (!zero && cleanup_pass()) {
        }
    }

    // Lemma loop: remove interior spiders of the boundary colour, one strong
    // complementarity step at a time; their count must strictly decrease.
    void lemma_loop() {
        int prev = INT_MAX;
        while (!zero) {
            cleanup();
            if (zero) return;
            std::vector<int> interior;
            for (int v : spider_ids()) {
                if (d.node(v).kind == col_kind() && !touches_boundary(v)) {
                    interior.push_back(v);
                }
            }
            if (interior.empty()) return;
            if (static_cast<int>(interior.size()) >= prev) {
                throw std::logic_error("reduction made no progress");
            }
            prev = static_cast<int>(interior.size());
            int victim = interior[0];
            auto ns = d.neighbors(victim);
            std::sort(ns.begin(), ns.end());
            if (ns.empty() || d.node(ns[0]).kind != row_kind()) {
                throw std::logic_error("interior spider lacks an opposite-colour neighbor");
            }
            int partner = ns[0];
            StrongOut out = (form == Form::ZX) ? core_strong(d, partner, victim)
                                               : core_strong(d, victim, partner);
            rec(Rule::StrongComp, {partner, victim}, out.delta);
        }
    }

    // After the loop, give every output its own boundary-layer spider.
    void fixup() {
        for (size_t i = 0; i < d.outputs.size(); i++) {
            int b = d.outputs[i];
            int u = d.boundary_neighbor(b);
            if (d.node(u).kind == col_kind()) continue;
            d.remove_edge_once(b, u);
            int m = d.add_node(col_kind(), 0);
            d.add_edge(u, m);
            d.add_edge(m, b);
            rec(Rule::Identity, {m}, Scalar::one());
        }
        for (int s : spider_ids()) {
            if (d.node(s).kind != col_kind()) continue;
            std::vector<size_t> touching;
            for (size_t i = 0; i < d.outputs.size(); i++) {
                if (d.edge_count(s, d.outputs[i]) > 0) touching.push_back(i);
            }
            for (size_t t = 1; t < touching.size(); t++) {
                int b = d.outputs[touching[t]];
                d.remove_edge_once(s, b);
                int r = d.add_node(row_kind(), 0);
                int c = d.add_node(col_kind(), 0);
                d.add_edge(s, r);
                d.add_edge(r, c);
                d.add_edge(c, b);
                rec(Rule::Identity, {r}, Scalar::one());
                rec(Rule::Identity, {c}, Scalar::one());
            }
        }
    }

    void read_layout() {
        cols.clear();
        row_ids.clear();
        col_pos.clear();
        for (size_t i = 0; i < d.outputs.size(); i++) {
            int c = d.boundary_neighbor(d.outputs[i]);
            if (d.node(c).kind != col_kind()) {
                throw std::logic_error("output not guarded by a boundary-layer spider");
            }
            if (!col_pos.emplace(c, static_cast<int>(i)).second) {
                throw std::logic_error("boundary-layer spider serves two outputs");
            }
            cols.push_back(c);
        }
        for (int v : spider_ids()) {
            if (col_pos.count(v)) continue;
            if (d.node(v).kind != row_kind()) {
                throw std::logic_error("stray spider of the boundary colour");
            }
            if (d.self_loops(v) > 0) throw std::logic_error("row spider has a self loop");
            auto ns = d.neighbors(v);
            std::sort(ns.begin(), ns.end());
            ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
            for (int u : ns) {
                if (!col_pos.count(u)) {
                    throw std::logic_error("row spider adjacent to a non-column node");
                }
                if (d.edge_count(v, u) != 1) {
                    throw std::logic_error("parallel row-column edges survived cleanup");
                }
            }
            row_ids.push_back(v);
        }
    }

    f2::BitVector row_vector(int node) const {
        f2::BitVector v(d.outputs.size());
        for (int u : d.neighbors(node)) {
            v.set(static_cast<size_t>(col_pos.at(u)), true);
        }
        return v;
    }

    // Row operation dst ^= src on the underlying diagram. Returns the node id
    // that carries the src row afterwards (the manoeuvre rebuilds that spider).
    int apply_change_basis(int src, int dst) {
        f2::BitVector vs = row_vector(src), vd = row_vector(dst);
        auto col_neighbors = [this](int v) {
            auto ns = d.neighbors(v);
            std::sort(ns.begin(), ns.end());
            ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
            return ns;
        };
        std::vector<int> sc = col_neighbors(src), dc = col_neighbors(dst);
        std::vector<int> common;
        std::set_intersection(sc.begin(), sc.end(), dc.begin(), dc.end(),
                              std::back_inserter(common));
        int new_src = src;
        if (common.empty()) {
            // The two-step manoeuvre needs a shared column; with disjoint rows
            // the XOR is a plain edge move compensated by the weight factor.
            int64_t w_before = static_cast<int64_t>(dc.size());
            for (int c : sc) {
                if (!d.remove_edge_once(dst, c)) d.add_edge(dst, c);
            }
            int64_t w_after = static_cast<int64_t>(col_neighbors(dst).size());
            d.node(dst).phase =
                Diagram::norm_phase(d.node(dst).phase + d.node(src).phase);
            d.scalar *= Scalar::dyadic(1, w_after - w_before);
        } else {
            bool zx = row_kind() == Kind::Z;
            // unfuse the shared legs off both rows
            int s2 = d.add_node(row_kind(), 0);
            for (int c : common) {
                d.remove_edge_once(src, c);
                d.add_edge(s2, c);
            }
            d.add_edge(src, s2);
            rec(Rule::Fuse, {src, s2}, Scalar::one());
            int d2 = d.add_node(row_kind(), 0);
            for (int c : common) {
                d.remove_edge_once(dst, c);
                d.add_edge(d2, c);
            }
            d.add_edge(dst, d2);
            rec(Rule::Fuse, {dst, d2}, Scalar::one());
            // and one carrier off every shared column
            std::vector<int> c2s;
            for (int c : common) {
                int c2 = d.add_node(col_kind(), 0);
                d.remove_edge_once(s2, c);
                d.add_edge(s2, c2);
                d.remove_edge_once(d2, c);
                d.add_edge(d2, c2);
                d.add_edge(c2, c);
                rec(Rule::Fuse, {c, c2}, Scalar::one());
                c2s.push_back(c2);
            }
            std::vector<int> zs, xs;
            if (zx) {
                zs = {s2, d2};
                xs = c2s;
            } else {
                zs = c2s;
                xs = {s2, d2};
            }
            StrongRevOut rev = core_strong_reverse(d, zs, xs);
            std::vector<int> site = zs;
            site.insert(site.end(), xs.begin(), xs.end());
            rec(Rule::StrongComp, site, rev.delta);
            int connector = zx ? rev.new_x : rev.new_z;
            new_src = zx ? rev.new_z : rev.new_x;
            StrongOut fwd = zx ? core_strong(d, src, connector)
                               : core_strong(d, connector, src);
            rec(Rule::StrongComp, {src, connector}, fwd.delta);
            const auto& on_connector_legs = zx ? fwd.z_news : fwd.x_news;
            const auto& on_src_legs = zx ? fwd.x_news : fwd.z_news;
            for (const auto& [nid, endpoint] : on_connector_legs) {
                core_fuse(d, endpoint, nid);  // folds into dst / the rebuilt src
                rec(Rule::Fuse, {endpoint, nid}, Scalar::one());
            }
            for (const auto& [nid, endpoint] : on_src_legs) {
                core_fuse(d, endpoint, nid);  // folds into the column spider
                rec(Rule::Fuse, {endpoint, nid}, Scalar::one());
            }
        }
        if (row_vector(new_src) != vs || row_vector(dst) != (vs ^ vd)) {
            throw std::logic_error("row operation produced wrong connectivity");
        }
        return new_src;
    }

    static bool share_support(const f2::BitVector& a, const f2::BitVector& b) {
        for (size_t i = 0; i < a.size(); i++) {
            if (a.get(i) && b.get(i)) return true;
        }
        return false;
    }

    static size_t first_one(const f2::BitVector& v) {
        for (size_t i = 0; i < v.size(); i++) {
            if (v.get(i)) return i;
        }
        throw std::logic_error("first_one on zero vector");
    }

    // Rewrites away linearly dependent rows (each pops as a scalar 2, or 0
    // when a pi phase is left behind).
    void eliminate_dependencies() {
        while (!zero) {
            std::vector<f2::BitVector> vec;
            vec.reserve(row_ids.size());
            for (int id : row_ids) vec.push_back(row_vector(id));

            struct ShadowRow {
                f2::BitVector v;
                std::set<size_t> comb;
                size_t pivot;
            };
            std::vector<ShadowRow> shadow;
            int dep = -1;
            std::set<size_t> comb;
            for (size_t s = 0; s < vec.size() && dep < 0; s++) {
                f2::BitVector v = vec[s];
                std::set<size_t> c = {s};
                for (const auto& sr : shadow) {
                    if (v.get(sr.pivot)) {
                        v ^= sr.v;
                        for (size_t t : sr.comb) {
                            if (!c.erase(t)) c.insert(t);
                        }
                    }
                }
                if (v.is_zero()) {
                    c.erase(s);
                    dep = static_cast<int>(s);
                    comb = c;
                    break;
                }
                size_t piv = first_one(v);
                for (auto& sr : shadow) {
                    if (sr.v.get(piv)) {
                        sr.v ^= v;
                        for (size_t t : c) {
                            if (!sr.comb.erase(t)) sr.comb.insert(t);
                        }
                    }
                }
                shadow.push_back({v, c, piv});
            }
            if (dep < 0) return;

            f2::BitVector cur = vec[dep];
            std::set<size_t> remaining = comb;
            while (!remaining.empty()) {
                size_t pick = SIZE_MAX;
                for (size_t t : remaining) {
                    if (share_support(vec[t], cur)) {
                        pick = t;
                        break;
                    }
                }
                if (pick == SIZE_MAX) {
                    throw std::logic_error("dependent row cannot be reached");
                }
                row_ids[pick] = apply_change_basis(row_ids[pick], row_ids[dep]);
                cur ^= vec[pick];
                remaining.erase(pick);
            }
            int node = row_ids[dep];
            if (d.degree(node) != 0) {
                throw std::logic_error("dependent row did not clear");
            }
            Scalar delta = core_pop(d, node);
            rec(Rule::Identity, {node}, delta);
            row_ids.erase(row_ids.begin() + dep);
            if (d.scalar.zero) {
                set_zero();
                return;
            }
        }
    }

    // Converts the row and column phases into a boundary Pauli, leaving the
    // diagram phase-free with the same scalar.
    PauliOp extract_record() {
        size_t n = d.outputs.size();
        size_t p = row_ids.size();
        f2::BitVector a(p), c(n);
        for (size_t i = 0; i < p; i++) {
            a.set(i, d.node(row_ids[i]).phase != 0);
            d.node(row_ids[i]).phase = 0;
        }
        for (size_t j = 0; j < n; j++) {
            c.set(j, d.node(cols[j]).phase != 0);
            d.node(cols[j]).phase = 0;
        }
        f2::BitMatrix rows(p, n);
        for (size_t i = 0; i < p; i++) {
            rows.row(i) = row_vector(row_ids[i]);
        }
        auto sol = f2::solve(rows.transposed(), a);
        if (!sol) {
            throw std::logic_error("interior phases not expressible on independent rows");
        }
        if (form == Form::ZX) {
            // state = X^c Z^sol (phase-free state)
            return PauliOp(static_cast<int>(n), c, *sol, 1);
        }
        // state = Z^c X^sol (phase-free state) = (-1)^(c.sol) X^sol Z^c ...
        return PauliOp(static_cast<int>(n), *sol, c, c.dot(*sol) ? -1 : 1);
    }

    NormalForm to_nf() const {
        NormalForm nf;
        nf.form = form;
        nf.n = static_cast<int>(d.outputs.size());
        if (zero) {
            nf.rows = f2::BitMatrix(0, nf.n);
            nf.scalar = Scalar::zero_value();
            return nf;
        }
        f2::BitMatrix m(row_ids.size(), nf.n);
        for (size_t i = 0; i < row_ids.size(); i++) {
            m.row(i) = row_vector(row_ids[i]);
        }
        nf.rows = m;
        nf.scalar = d.scalar;
        return nf;
    }

    void run(const Diagram& input) {
        d = input;
        if (!d.inputs.empty()) {
            throw std::logic_error("reduction engine expects a bent state");
        }
        d.validate();
        if (d.scalar.zero) {
            set_zero();
            return;
        }
        cleanup();
        if (zero) return;
        lemma_loop();
        if (zero) return;
        fixup();
        read_layout();
        eliminate_dependencies();
    }
};

struct Pushed {
    bool zero = false;
    NormalForm nf;
    PauliOp record;
};

Pushed push_state(const Diagram& d, Form form, Trace* tr) {
    Engine e;
    e.form = form;
    e.tr = tr;
    e.run(bend_inputs(d));
    Pushed out;
    out.zero = e.zero;
    if (e.zero) {
        out.nf = e.to_nf();
        out.record = PauliOp::identity(out.nf.n);
        return out;
    }
    out.record = e.extract_record();
    out.nf = e.to_nf();
    if (!out.record.acts_trivially() || out.record.sign != 1) {
        note(tr, Rule::PiPush, {}, Scalar::one());
    }
    return out;
}

// Common site validation for the public strong complementarity wrappers.
void check_strong_site(const Diagram& d, int z, int x) {
    const Node& nz = spider_at(d, z, "strong_comp");
    const Node& nx = spider_at(d, x, "strong_comp");
    if (nz.kind != Kind::Z || nx.kind != Kind::X) {
        throw std::invalid_argument("strong_comp: site must be a Z spider and an X spider");
    }
    if (d.edge_count(z, x) != 1) {
        throw std::invalid_argument("strong_comp: endpoints must share exactly one edge");
    }
    if (d.self_loops(z) > 0 || d.self_loops(x) > 0) {
        throw std::invalid_argument("strong_comp: remove self loops first");
    }
}

}  // namespace

// --- public rule wrappers ----------------------------------------------------

Diagram fuse(const Diagram& d, int keep, int merge, Trace* tr) {
    const Node& a = spider_at(d, keep, "fuse");
    const Node& b = spider_at(d, merge, "fuse");
    if (keep == merge) throw std::invalid_argument("fuse: need two distinct spiders");
    if (a.kind != b.kind) throw std::invalid_argument("fuse: colour mismatch");
    if (d.edge_count(keep, merge) == 0) {
        throw std::invalid_argument("fuse: spiders are not adjacent");
    }
    Diagram r = d;
    core_fuse(r, keep, merge);
    note(tr, Rule::Fuse, {keep, merge}, Scalar::one());
    return r;
}

Diagram remove_self_loop(const Diagram& d, int v, Trace* tr) {
    spider_at(d, v, "remove_self_loop");
    if (d.self_loops(v) == 0) {
        throw std::invalid_argument("remove_self_loop: node has no self loop");
    }
    Diagram r = d;
    r.remove_edge_once(v, v);
    note(tr, Rule::SelfLoop, {v}, Scalar::one());
    return r;
}

Diagram remove_identity(const Diagram& d, int v, Trace* tr) {
    const Node& nd = spider_at(d, v, "remove_identity");
    if (nd.phase != 0) throw std::invalid_argument("remove_identity: spider carries a phase");
    if (d.degree(v) != 2) throw std::invalid_argument("remove_identity: degree must be 2");
    Diagram r = d;
    Scalar delta = core_identity(r, v);
    note(tr, Rule::Identity, {v}, delta);
    return r;
}

Diagram comp(const Diagram& d, int a, int b, Trace* tr) {
    const Node& na = spider_at(d, a, "comp");
    const Node& nb = spider_at(d, b, "comp");
    if (na.kind == nb.kind) {
        throw std::invalid_argument("comp: spiders must have opposite colours");
    }
    if (d.edge_count(a, b) < 2) {
        throw std::invalid_argument("comp: need two parallel edges");
    }
    Diagram r = d;
    r.remove_edge_once(a, b);
    r.remove_edge_once(a, b);
    Scalar delta = Scalar::dyadic(1, -2);
    r.scalar *= delta;
    note(tr, Rule::Comp, {a, b}, delta);
    return r;
}

Diagram strong_comp(const Diagram& d, int z, int x, Trace* tr) {
    check_strong_site(d, z, x);
    Diagram r = d;
    StrongOut out = core_strong(r, z, x);
    note(tr, Rule::StrongComp, {z, x}, out.delta);
    return r;
}

Diagram strong_comp_reverse(const Diagram& d, const std::vector<int>& zs,
                            const std::vector<int>& xs, Trace* tr, int* new_z,
                            int* new_x) {
    if (zs.empty() || xs.empty()) {
        throw std::invalid_argument("strong_comp_reverse: both sides must be nonempty");
    }
    std::set<int> seen;
    for (int v : zs) {
        if (spider_at(d, v, "strong_comp_reverse").kind != Kind::Z) {
            throw std::invalid_argument("strong_comp_reverse: zs must be Z spiders");
        }
        if (!seen.insert(v).second) {
            throw std::invalid_argument("strong_comp_reverse: repeated node");
        }
    }
    for (int v : xs) {
        if (spider_at(d, v, "strong_comp_reverse").kind != Kind::X) {
            throw std::invalid_argument("strong_comp_reverse: xs must be X spiders");
        }
        if (!seen.insert(v).second) {
            throw std::invalid_argument("strong_comp_reverse: repeated node");
        }
    }
    for (int v : zs) {
        if (d.node(v).phase != d.node(zs[0]).phase) {
            throw std::invalid_argument("strong_comp_reverse: unequal Z phases");
        }
        if (d.self_loops(v) > 0 ||
            d.degree(v) != static_cast<int>(xs.size()) + 1) {
            throw std::invalid_argument("strong_comp_reverse: Z spider degree mismatch");
        }
        for (int u : xs) {
            if (d.edge_count(v, u) != 1) {
                throw std::invalid_argument(
                    "strong_comp_reverse: block is not simple complete bipartite");
            }
        }
    }
    for (int v : xs) {
        if (d.node(v).phase != d.node(xs[0]).phase) {
            throw std::invalid_argument("strong_comp_reverse: unequal X phases");
        }
        if (d.self_loops(v) > 0 ||
            d.degree(v) != static_cast<int>(zs.size()) + 1) {
            throw std::invalid_argument("strong_comp_reverse: X spider degree mismatch");
        }
    }
    Diagram r = d;
    StrongRevOut out = core_strong_reverse(r, zs, xs);
    std::vector<int> site = zs;
    site.insert(site.end(), xs.begin(), xs.end());
    note(tr, Rule::StrongComp, site, out.delta);
    if (new_z) *new_z = out.new_z;
    if (new_x) *new_x = out.new_x;
    return r;
}

Diagram pi_copy(const Diagram& d, int moving, int through, Trace* tr) {
    const Node& m = spider_at(d, moving, "pi_copy");
    const Node& t = spider_at(d, through, "pi_copy");
    if (m.phase != 1) throw std::invalid_argument("pi_copy: moving spider must carry pi");
    if (m.kind == t.kind) throw std::invalid_argument("pi_copy: colours must differ");
    if (d.degree(moving) > 2 || d.self_loops(moving) > 0) {
        throw std::invalid_argument("pi_copy: moving spider must have at most one other leg");
    }
    if (d.edge_count(moving, through) != 1) {
        throw std::invalid_argument("pi_copy: need exactly one connecting edge");
    }
    if (d.self_loops(through) > 0) {
        throw std::invalid_argument("pi_copy: remove self loops first");
    }
    Diagram r = d;
    int z = m.kind == Kind::Z ? moving : through;
    int x = m.kind == Kind::Z ? through : moving;
    StrongOut out = core_strong(r, z, x);
    note(tr, Rule::PiCopy, {moving, through}, out.delta);
    return r;
}

// --- normal forms -------------------------------------------------------------

Diagram nf_to_diagram(const NormalForm& nf) {
    if (static_cast<int>(nf.rows.cols()) != nf.n) {
        throw std::invalid_argument("nf_to_diagram: row width differs from n");
    }
    Kind ck = nf.form == Form::ZX ? Kind::X : Kind::Z;
    Kind rk = nf.form == Form::ZX ? Kind::Z : Kind::X;
    Diagram d;
    d.scalar = nf.scalar;
    std::vector<int> col_nodes;
    for (int j = 0; j < nf.n; j++) {
        int c = d.add_node(ck, 0);
        int b = d.add_output();
        d.add_edge(c, b);
        col_nodes.push_back(c);
    }
    for (size_t i = 0; i < nf.rows.rows(); i++) {
        int r = d.add_node(rk, 0);
        for (int j = 0; j < nf.n; j++) {
            if (nf.rows.get(i, j)) d.add_edge(r, col_nodes[j]);
        }
    }
    return d;
}

NormalForm normalize(const Diagram& d, Form form, Trace* tr) {
    if (!phase_free(d)) {
        throw std::invalid_argument("normalize: diagram contains pi phases");
    }
    Pushed p = push_state(d, form, tr);
    if (!p.zero && !p.record.is_identity()) {
        throw std::logic_error("phase-free reduction produced a Pauli record");
    }
    return p.nf;
}

f2::Subspace subspace_of(const NormalForm& nf) {
    if (nf.form == Form::ZX) {
        return f2::Subspace::span_of(nf.rows);
    }
    return f2::Subspace::span_of(f2::orthocomplement(nf.rows, nf.n));
}

NormalForm nf_from_subspace(const f2::Subspace& s, Form form) {
    NormalForm nf;
    nf.form = form;
    nf.n = static_cast<int>(s.ambient());
    nf.rows = form == Form::ZX ? s.basis() : s.orthocomplement().basis();
    nf.scalar = Scalar::one();
    return nf;
}

namespace {

// Loads a normal form into an engine without running the reduction; the
// builder's layout is already canonical.
Engine engine_for_nf(const NormalForm& nf) {
    Engine e;
    e.form = nf.form;
    e.d = nf_to_diagram(nf);
    e.read_layout();
    return e;
}

}  // namespace

NormalForm change_basis(const NormalForm& nf, int src, int dst) {
    int p = static_cast<int>(nf.rows.rows());
    if (src < 0 || dst < 0 || src >= p || dst >= p || src == dst) {
        throw std::invalid_argument("change_basis: bad row indices");
    }
    Engine e = engine_for_nf(nf);
    e.row_ids[src] = e.apply_change_basis(e.row_ids[src], e.row_ids[dst]);
    NormalForm out;
    out.form = nf.form;
    out.n = nf.n;
    f2::BitMatrix rows(nf.rows.rows(), nf.n);
    for (size_t i = 0; i < e.row_ids.size(); i++) {
        rows.row(i) = e.row_vector(e.row_ids[i]);
    }
    out.rows = rows;
    out.scalar = e.d.scalar;
    return out;
}

NormalForm canonical_nf(const NormalForm& nf) {
    NormalForm out;
    out.form = nf.form;
    out.n = nf.n;
    if (nf.scalar.zero) {
        out.rows = f2::BitMatrix(0, nf.n);
        out.scalar = Scalar::zero_value();
        return out;
    }
    NormalForm cur = nf;
    size_t p = cur.rows.rows();
    std::vector<int> pivot(p, -1);
    std::set<size_t> used;
    for (int c = 0; c < cur.n; c++) {
        size_t r = p;
        for (size_t i = 0; i < p; i++) {
            if (!used.count(i) && cur.rows.get(i, c)) {
                r = i;
                break;
            }
        }
        if (r == p) continue;
        for (size_t j = 0; j < p; j++) {
            if (j != r && cur.rows.get(j, c)) {
                cur = change_basis(cur, static_cast<int>(r), static_cast<int>(j));
            }
        }
        used.insert(r);
        pivot[r] = c;
    }
    // surviving rows sorted by pivot; zero rows pop as the scalar 2
    std::vector<size_t> order;
    for (size_t i = 0; i < p; i++) {
        if (pivot[i] >= 0) order.push_back(i);
    }
    std::sort(order.begin(), order.end(),
              [&pivot](size_t a, size_t b) { return pivot[a] < pivot[b]; });
    f2::BitMatrix rows(order.size(), cur.n);
    for (size_t i = 0; i < order.size(); i++) {
        rows.row(i) = cur.rows.row(order[i]);
    }
    out.rows = rows;
    out.scalar = cur.scalar * Scalar::dyadic(1, 2 * static_cast<int64_t>(p - order.size()));
    if (out.rows != f2::rref(nf.rows)) {
        throw std::logic_error("canonical_nf: rows disagree with rref");
    }
    return out;
}

// --- Pauli extraction and equality --------------------------------------------

PiPushResult pi_push_to_boundary(const Diagram& d, Trace* tr) {
    Pushed p = push_state(d, Form::ZX, tr);
    PiPushResult out;
    out.nf = p.nf;
    out.diagram = nf_to_diagram(p.nf);
    out.record = p.record;
    return out;
}

Verdict pauli_equal(const Diagram& a, const Diagram& b) {
    if (a.num_inputs() != b.num_inputs() || a.num_outputs() != b.num_outputs()) {
        throw std::invalid_argument("pauli_equal: arity mismatch");
    }
    Pushed pa = push_state(a, Form::ZX, nullptr);
    Pushed pb = push_state(b, Form::ZX, nullptr);
    if (pa.zero || pb.zero) {
        if (pa.zero && pb.zero) return {VerdictKind::Equal, Scalar::one()};
        return {VerdictKind::Different, Scalar::one()};
    }
    NormalForm ca = canonical_nf(pa.nf);
    NormalForm cb = canonical_nf(pb.nf);
    if (ca.rows != cb.rows) {
        return {VerdictKind::Different, Scalar::one()};
    }
    PauliOp q = pb.record.dagger().times(pa.record);
    // a = lambda * b iff q fixes the shared normal-form state
    if (!f2::solve(ca.rows, q.x)) {
        return {VerdictKind::Different, Scalar::one()};
    }
    for (size_t i = 0; i < ca.rows.rows(); i++) {
        if (ca.rows.row(i).dot(q.z)) {
            return {VerdictKind::Different, Scalar::one()};
        }
    }
    int mu = q.sign * (q.x.dot(q.z) ? -1 : 1);
    Scalar lambda = ca.scalar.divided_by(cb.scalar);
    if (mu < 0) lambda.sign = -lambda.sign;
    return {lambda.is_one() ? VerdictKind::Equal : VerdictKind::EqualUpToScalar, lambda};
}

Verdict equal_diagrams(const Diagram& a, const Diagram& b) {
    if (a.num_inputs() != b.num_inputs() || a.num_outputs() != b.num_outputs()) {
        throw std::invalid_argument("equal_diagrams: arity mismatch");
    }
    if (!phase_free(a) || !phase_free(b)) {
        throw std::invalid_argument("equal_diagrams: inputs must be phase-free");
    }
    return pauli_equal(a, b);
}

}  // namespace zxcss
