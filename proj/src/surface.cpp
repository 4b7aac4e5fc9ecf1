#include "zxcss/surface.hpp"

#include <stdexcept>
#include <string>

#include "zxcss/rewrite.hpp"
#include "zxcss/tensor.hpp"

namespace zxcss {

namespace {

void check_patch_size(int d, int e, const char* who) {
    if (d < 2 || e < 2)
        throw std::invalid_argument(std::string(who) + ": d and e must be at least 2");
}

void check_outcome_bits(const std::vector<int>& outcomes, const char* who) {
    for (int j : outcomes)
        if (j != 0 && j != 1)
            throw std::invalid_argument(std::string(who) + ": outcome bits must be 0 or 1");
}

// X stabilisers of the merged 2d x e patch whose support crosses the seam
// between rows d and d+1, in that patch's generator order.
std::vector<f2::BitVector> xmerge_seam_rows(int d, int e) {
    Patch big = surface_code(2 * d, e, 0);
    std::vector<f2::BitVector> rows;
    for (size_t r = 0; r < big.code.sx.rows(); ++r) {
        const f2::BitVector& row = big.code.sx.row(r);
        bool upper = false, lower = false;
        for (int j = 1; j <= e; ++j) {
            if (row.get(size_t((d - 1) * e + j - 1))) upper = true;
            if (row.get(size_t(d * e + j - 1))) lower = true;
        }
        if (upper && lower) rows.push_back(row);
    }
    return rows;
}

// Z stabilisers of the merged d x 2e patch (parity 1) whose support crosses
// the seam between columns e and e+1, in that patch's generator order.
std::vector<f2::BitVector> zmerge_seam_rows(int d, int e) {
    Patch wide = surface_code(d, 2 * e, 1);
    std::vector<f2::BitVector> rows;
    for (size_t r = 0; r < wide.code.sz.rows(); ++r) {
        const f2::BitVector& row = wide.code.sz.row(r);
        bool left = false, right = false;
        for (int i = 1; i <= d; ++i) {
            if (row.get(size_t((i - 1) * 2 * e + e - 1))) left = true;
            if (row.get(size_t((i - 1) * 2 * e + e))) right = true;
        }
        if (left && right) rows.push_back(row);
    }
    return rows;
}

// Reorders outputs so that new slot q reads the boundary at old slot src[q].
Diagram permute_outputs(const Diagram& d, const std::vector<int>& src) {
    if (src.size() != d.outputs.size())
        throw std::logic_error("permute_outputs: size mismatch");
    Diagram out = d;
    for (size_t q = 0; q < src.size(); ++q)
        out.outputs[q] = d.outputs[size_t(src[q])];
    return out;
}

void check_contract_arity(const Diagram& physical, const Diagram& encoder_before,
                          const Diagram& encoder_after, const Diagram& logical,
                          const char* who) {
    if (encoder_before.num_outputs() != physical.num_inputs() ||
        encoder_before.num_inputs() != logical.num_inputs() ||
        logical.num_outputs() != encoder_after.num_inputs() ||
        physical.num_outputs() != encoder_after.num_outputs())
        throw std::invalid_argument(std::string(who) + ": boundary mismatch");
}

}  // namespace

Patch surface_code(int d, int e, int parity) {
    check_patch_size(d, e, "surface_code");
    if (parity != 0 && parity != 1)
        throw std::invalid_argument("surface_code: parity must be 0 or 1");
    const int n = d * e;
    auto bit = [e](int i, int j) { return size_t((i - 1) * e + (j - 1)); };
    auto tile_is_z = [parity](int i, int j) { return (i + j + parity) % 2 == 0; };

    f2::BitMatrix sx(0, size_t(n));
    f2::BitMatrix sz(0, size_t(n));
    for (int i = 1; i <= d - 1; ++i)
        for (int j = 1; j <= e - 1; ++j) {
            f2::BitVector row{size_t(n)};
            row.flip(bit(i, j));
            row.flip(bit(i, j + 1));
            row.flip(bit(i + 1, j));
            row.flip(bit(i + 1, j + 1));
            (tile_is_z(i, j) ? sz : sx).append_row(row);
        }
    // Boundary blobs are coloured opposite to the tile they lean on, so the
    // pair commutes on its two shared qubits.
    for (int i = 1; i <= d - 1; ++i)
        if (tile_is_z(i, 1)) {
            f2::BitVector row{size_t(n)};
            row.flip(bit(i, 1));
            row.flip(bit(i + 1, 1));
            sx.append_row(row);
        }
    for (int i = 1; i <= d - 1; ++i)
        if (tile_is_z(i, e - 1)) {
            f2::BitVector row{size_t(n)};
            row.flip(bit(i, e));
            row.flip(bit(i + 1, e));
            sx.append_row(row);
        }
    for (int j = 1; j <= e - 1; ++j)
        if (!tile_is_z(1, j)) {
            f2::BitVector row{size_t(n)};
            row.flip(bit(1, j));
            row.flip(bit(1, j + 1));
            sz.append_row(row);
        }
    for (int j = 1; j <= e - 1; ++j)
        if (!tile_is_z(d - 1, j)) {
            f2::BitVector row{size_t(n)};
            row.flip(bit(d, j));
            row.flip(bit(d, j + 1));
            sz.append_row(row);
        }

    f2::BitVector lx{size_t(n)};
    for (int j = 1; j <= e; ++j) lx.flip(bit(d, j));
    f2::BitVector lz{size_t(n)};
    for (int i = 1; i <= d; ++i) lz.flip(bit(i, 1));

    Patch p;
    p.d = d;
    p.e = e;
    p.parity = parity;
    p.code = CssCode{n, sx, sz};
    p.logicals.lx = f2::BitMatrix(0, size_t(n));
    p.logicals.lx.append_row(lx);
    p.logicals.lz = f2::BitMatrix(0, size_t(n));
    p.logicals.lz.append_row(lz);
    if (!validate(p.code))
        throw std::logic_error("surface_code: construction broke the code invariants");
    return p;
}

Encoder surface_encoder(const Patch& p, Rep rep) {
    // encoder_from_code checks the code and the logical pairing for both reps.
    Encoder enc = encoder_from_code(p.code, p.logicals);
    if (rep == Rep::X) return enc;

    const size_t k = p.logicals.lx.rows();
    const size_t n = size_t(p.code.n);
    f2::BitMatrix rows(0, k + n);
    for (size_t i = 0; i < p.code.sz.rows(); ++i)
        rows.append_row(f2::BitVector(k).concat(p.code.sz.row(i)));
    for (size_t i = 0; i < k; ++i)
        rows.append_row(f2::BitVector::unit(k, i).concat(p.logicals.lz.row(i)));
    int64_t weight = 0;
    for (size_t i = 0; i < rows.rows(); ++i)
        weight += int64_t(rows.row(i).weight());
    // The bare diagram carries 2^((2p - W)/2) per codeword, p the row count
    // and W the total row weight; the codeword sum then contributes 2^(rx/2)
    // to each gram diagonal. The scalar cancels both.
    NormalForm nf{Form::XZ, int(k + n), rows,
                  Scalar::dyadic(1, weight - 2 * int64_t(rows.rows()) -
                                        int64_t(p.code.sx.rows()))};
    enc.diagram = unbend_outputs(nf_to_diagram(nf), int(k));
    return enc;
}

Patch deform_logical(const Patch& p, Rep which, int stabiliser_index) {
    const f2::BitMatrix& gens = which == Rep::X ? p.code.sx : p.code.sz;
    if (stabiliser_index < 0 || size_t(stabiliser_index) >= gens.rows())
        throw std::invalid_argument("deform_logical: stabiliser index out of range");
    Patch q = p;
    f2::BitMatrix& logical = which == Rep::X ? q.logicals.lx : q.logicals.lz;
    logical.row(0) ^= gens.row(size_t(stabiliser_index));
    return q;
}

int zsplit_seam_count(int d, int e) {
    check_patch_size(d, e, "zsplit_seam_count");
    int count = 0;
    for (int i = 1; i <= d - 1; ++i)
        if ((i + e - 1) % 2 == 0) ++count;
    return count;
}

int xmerge_seam_count(int d, int e) {
    check_patch_size(d, e, "xmerge_seam_count");
    return int(xmerge_seam_rows(d, e).size());
}

int xsplit_seam_count(int d, int e) {
    check_patch_size(d, e, "xsplit_seam_count");
    int count = 0;
    for (int j = 1; j <= e - 1; ++j)
        if ((j + d - 1) % 2 == 0) ++count;
    return count;
}

int zmerge_seam_count(int d, int e) {
    check_patch_size(d, e, "zmerge_seam_count");
    return int(zmerge_seam_rows(d, e).size());
}

Diagram zsplit_physical(int d, int e, const std::vector<int>& outcomes) {
    const int seams = zsplit_seam_count(d, e);
    if (int(outcomes.size()) != seams)
        throw std::invalid_argument("zsplit_physical: expected " + std::to_string(seams) +
                                    " outcome bits, got " + std::to_string(outcomes.size()));
    check_outcome_bits(outcomes, "zsplit_physical");
    const int n = d * 2 * e;
    Diagram out = identity_diagram(n);
    size_t next = 0;
    // One XX pair per right-boundary blob of the left d x e patch, down the
    // seam column e of the d x 2e patch.
    for (int i = 1; i <= d - 1; ++i) {
        if ((i + e - 1) % 2 != 0) continue;
        f2::BitVector x{size_t(n)};
        x.flip(size_t((i - 1) * 2 * e + e - 1));
        x.flip(size_t(i * 2 * e + e - 1));
        PauliOp pair(n, x, f2::BitVector{size_t(n)}, 1);
        out = compose(out, projection_diagram(pair, outcomes[next++]));
    }
    return out;
}

Diagram xmerge_physical(int d, int e, const std::vector<int>& outcomes) {
    check_patch_size(d, e, "xmerge_physical");
    const std::vector<f2::BitVector> rows = xmerge_seam_rows(d, e);
    if (outcomes.size() != rows.size())
        throw std::invalid_argument("xmerge_physical: expected " + std::to_string(rows.size()) +
                                    " outcome bits, got " + std::to_string(outcomes.size()));
    check_outcome_bits(outcomes, "xmerge_physical");
    const int n = 2 * d * e;
    Diagram out = identity_diagram(n);
    for (size_t i = 0; i < rows.size(); ++i) {
        PauliOp stab(n, rows[i], f2::BitVector{size_t(n)}, 1);
        out = compose(out, projection_diagram(stab, outcomes[i]));
    }
    return out;
}

Diagram xsplit_physical(int d, int e, const std::vector<int>& outcomes) {
    const int seams = xsplit_seam_count(d, e);
    if (int(outcomes.size()) != seams)
        throw std::invalid_argument("xsplit_physical: expected " + std::to_string(seams) +
                                    " outcome bits, got " + std::to_string(outcomes.size()));
    check_outcome_bits(outcomes, "xsplit_physical");
    const int n = 2 * d * e;
    Diagram out = identity_diagram(n);
    size_t next = 0;
    // One ZZ pair per bottom-boundary blob of the top d x e patch, along the
    // seam row d of the 2d x e patch.
    for (int j = 1; j <= e - 1; ++j) {
        if ((j + d - 1) % 2 != 0) continue;
        f2::BitVector z{size_t(n)};
        z.flip(size_t((d - 1) * e + j - 1));
        z.flip(size_t((d - 1) * e + j));
        PauliOp pair(n, f2::BitVector{size_t(n)}, z, 1);
        out = compose(out, projection_diagram(pair, outcomes[next++]));
    }
    return out;
}

Diagram zmerge_physical(int d, int e, const std::vector<int>& outcomes) {
    check_patch_size(d, e, "zmerge_physical");
    const std::vector<f2::BitVector> rows = zmerge_seam_rows(d, e);
    if (outcomes.size() != rows.size())
        throw std::invalid_argument("zmerge_physical: expected " + std::to_string(rows.size()) +
                                    " outcome bits, got " + std::to_string(outcomes.size()));
    check_outcome_bits(outcomes, "zmerge_physical");
    const int n = 2 * d * e;
    Diagram out = identity_diagram(n);
    for (size_t i = 0; i < rows.size(); ++i) {
        PauliOp stab(n, f2::BitVector{size_t(n)}, rows[i], 1);
        out = compose(out, projection_diagram(stab, outcomes[i]));
    }
    return out;
}

Diagram logical_split(Rep kind) {
    return spider_diagram(kind == Rep::Z ? Kind::Z : Kind::X, 1, 2);
}

Diagram logical_merge(Rep kind, int outcome) {
    const Kind main = kind == Rep::Z ? Kind::Z : Kind::X;
    const Kind flag = kind == Rep::Z ? Kind::X : Kind::Z;
    Diagram d;
    int a = d.add_input();
    int b = d.add_input();
    int out = d.add_output();
    int hub = d.add_node(main);
    int mark = d.add_node(flag, Diagram::norm_phase(outcome));
    d.add_edge(a, mark);
    d.add_edge(mark, hub);
    d.add_edge(b, hub);
    d.add_edge(hub, out);
    return d;
}

Diagram cnot_diagram() {
    Diagram d;
    int ci = d.add_input();
    int ti = d.add_input();
    int co = d.add_output();
    int to = d.add_output();
    int control = d.add_node(Kind::Z);
    int target = d.add_node(Kind::X);
    d.add_edge(ci, control);
    d.add_edge(control, co);
    d.add_edge(ti, target);
    d.add_edge(target, to);
    d.add_edge(control, target);
    return d;
}

Diagram contract_lhs(const SurgeryContract& c) {
    check_contract_arity(c.physical, c.encoder_before, c.encoder_after, c.logical,
                         "contract_lhs");
    return compose(c.encoder_before, c.physical);
}

Diagram contract_rhs(const SurgeryContract& c) {
    check_contract_arity(c.physical, c.encoder_before, c.encoder_after, c.logical,
                         "contract_rhs");
    if (c.correction.n != c.physical.num_outputs())
        throw std::invalid_argument("contract_rhs: correction arity mismatch");
    return apply_pauli_at_outputs(compose(c.logical, c.encoder_after), c.correction);
}

bool verify_surgery(const SurgeryContract& c, VerifyMethod method) {
    Diagram lhs = contract_lhs(c);
    Diagram rhs = contract_rhs(c);
    if (method == VerifyMethod::Rewrite)
        return pauli_equal(lhs, rhs).kind != VerdictKind::Different;
    std::optional<Scalar> ratio = equal_up_to_scalar(evaluate(lhs), evaluate(rhs));
    return ratio.has_value() && !ratio->zero;
}

std::optional<PauliOp> derive_correction(const Diagram& physical,
                                         const Diagram& encoder_before,
                                         const Diagram& encoder_after,
                                         const Diagram& logical) {
    check_contract_arity(physical, encoder_before, encoder_after, logical,
                         "derive_correction");
    const size_t k = size_t(encoder_before.num_inputs());
    const size_t n = size_t(physical.num_outputs());

    PiPushResult lhs = pi_push_to_boundary(compose(encoder_before, physical));
    PiPushResult rhs = pi_push_to_boundary(compose(logical, encoder_after));
    if (lhs.nf.scalar.zero && rhs.nf.scalar.zero) return PauliOp::identity(int(n));
    if (lhs.nf.scalar.zero || rhs.nf.scalar.zero) return std::nullopt;

    // Both sides are Pauli * residue; they agree up to a scalar and an output
    // correction iff the residues share one canonical form and the Pauli
    // difference can be moved off the bent former-input slots.
    NormalForm ca = canonical_nf(lhs.nf);
    NormalForm cb = canonical_nf(rhs.nf);
    if (ca.rows != cb.rows) return std::nullopt;

    f2::BitVector xq = lhs.record.x ^ rhs.record.x;
    f2::BitVector zq = lhs.record.z ^ rhs.record.z;
    const f2::BitMatrix& v = ca.rows;
    const size_t p = v.rows();

    // X side: some row combination must match the difference on the inputs;
    // adding it leaves a vector supported on the outputs alone.
    f2::BitMatrix vin(0, k);
    for (size_t i = 0; i < p; ++i) vin.append_row(v.row(i).slice(0, k));
    std::optional<f2::BitVector> t = f2::solve(vin, xq.slice(0, k));
    if (!t) return std::nullopt;
    f2::BitVector xc = xq;
    for (size_t i = 0; i < p; ++i)
        if (t->get(i)) xc ^= v.row(i);

    // Z side: an output-supported vector must reproduce the difference's dot
    // pattern against the rows. Columns of v over the output slots, solved
    // against row-by-row dots with the difference.
    f2::BitVector b(p);
    for (size_t i = 0; i < p; ++i)
        if (v.row(i).dot(zq)) b.flip(i);
    f2::BitMatrix vout_t(n, p);
    for (size_t c = 0; c < n; ++c)
        for (size_t i = 0; i < p; ++i)
            if (v.row(i).get(k + c)) vout_t.set(c, i, true);
    std::optional<f2::BitVector> y = f2::solve(vout_t, b);
    if (!y) return std::nullopt;

    return PauliOp(int(n), xc.slice(k, n), *y, 1);
}

SurgeryContract zsplit_contract(int d, int e, const std::vector<int>& outcomes) {
    SurgeryContract c;
    c.physical = zsplit_physical(d, e, outcomes);
    c.encoder_before = surface_encoder(surface_code(d, 2 * e, 0), Rep::X).diagram;
    // The right patch keeps the wide patch's checkerboard, whose colour at
    // column e+1 depends on e.
    Diagram pair = tensor_product(surface_encoder(surface_code(d, e, 0), Rep::X).diagram,
                                  surface_encoder(surface_code(d, e, e % 2), Rep::X).diagram);
    std::vector<int> src(size_t(d) * size_t(2 * e));
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= 2 * e; ++j) {
            int wide = (i - 1) * 2 * e + j - 1;
            src[size_t(wide)] = j <= e ? (i - 1) * e + j - 1
                                       : d * e + (i - 1) * e + (j - e) - 1;
        }
    c.encoder_after = permute_outputs(pair, src);
    c.logical = logical_split(Rep::Z);
    c.outcomes = outcomes;
    std::optional<PauliOp> corr =
        derive_correction(c.physical, c.encoder_before, c.encoder_after, c.logical);
    if (!corr) throw std::logic_error("zsplit_contract: no output correction exists");
    c.correction = *corr;
    return c;
}

SurgeryContract xmerge_contract(int d, int e, const std::vector<int>& outcomes) {
    SurgeryContract c;
    c.physical = xmerge_physical(d, e, outcomes);
    // Stacked patches concatenate row-major, so no output permutation; the
    // lower patch starts on row d+1 of the tall patch's checkerboard.
    c.encoder_before = tensor_product(surface_encoder(surface_code(d, e, 0), Rep::X).diagram,
                                      surface_encoder(surface_code(d, e, d % 2), Rep::X).diagram);
    c.encoder_after = surface_encoder(surface_code(2 * d, e, 0), Rep::X).diagram;
    int fold = 0;
    for (int j : outcomes) fold ^= j;
    c.logical = logical_merge(Rep::X, fold);
    c.outcomes = outcomes;
    std::optional<PauliOp> corr =
        derive_correction(c.physical, c.encoder_before, c.encoder_after, c.logical);
    if (!corr) throw std::logic_error("xmerge_contract: no output correction exists");
    c.correction = *corr;
    return c;
}

SurgeryContract xsplit_contract(int d, int e, const std::vector<int>& outcomes) {
    SurgeryContract c;
    c.physical = xsplit_physical(d, e, outcomes);
    c.encoder_before = surface_encoder(surface_code(2 * d, e, 1), Rep::X).diagram;
    // Stacked halves concatenate row-major; the lower half starts on row d+1
    // of the tall patch's checkerboard.
    c.encoder_after = tensor_product(surface_encoder(surface_code(d, e, 1), Rep::X).diagram,
                                     surface_encoder(surface_code(d, e, (1 + d) % 2), Rep::X).diagram);
    c.logical = logical_split(Rep::X);
    c.outcomes = outcomes;
    std::optional<PauliOp> corr =
        derive_correction(c.physical, c.encoder_before, c.encoder_after, c.logical);
    if (!corr) throw std::logic_error("xsplit_contract: no output correction exists");
    c.correction = *corr;
    return c;
}

SurgeryContract zmerge_contract(int d, int e, const std::vector<int>& outcomes) {
    SurgeryContract c;
    c.physical = zmerge_physical(d, e, outcomes);
    Diagram pair = tensor_product(surface_encoder(surface_code(d, e, 1), Rep::X).diagram,
                                  surface_encoder(surface_code(d, e, (e + 1) % 2), Rep::X).diagram);
    std::vector<int> src(size_t(d) * size_t(2 * e));
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= 2 * e; ++j) {
            int wide = (i - 1) * 2 * e + j - 1;
            src[size_t(wide)] = j <= e ? (i - 1) * e + j - 1
                                       : d * e + (i - 1) * e + (j - e) - 1;
        }
    c.encoder_before = permute_outputs(pair, src);
    c.encoder_after = surface_encoder(surface_code(d, 2 * e, 1), Rep::X).diagram;
    int fold = 0;
    for (int j : outcomes) fold ^= j;
    c.logical = logical_merge(Rep::Z, fold);
    c.outcomes = outcomes;
    std::optional<PauliOp> corr =
        derive_correction(c.physical, c.encoder_before, c.encoder_after, c.logical);
    if (!corr) throw std::logic_error("zmerge_contract: no output correction exists");
    c.correction = *corr;
    return c;
}

Diagram cnot_network(int outcome) {
    Diagram first = tensor_product(logical_split(Rep::Z), identity_diagram(1));
    Diagram second = tensor_product(identity_diagram(1), logical_merge(Rep::X, outcome));
    return compose(first, second);
}

std::vector<CnotVerification> verify_cnot_network() {
    std::vector<CnotVerification> report;
    for (int outcome = 0; outcome < 2; ++outcome) {
        CnotVerification v;
        v.outcome = outcome;
        f2::BitVector z(2);
        if (outcome) z.flip(0);
        v.correction = PauliOp(2, f2::BitVector(2), z, 1);
        Diagram network = cnot_network(outcome);
        Diagram target = apply_pauli_at_outputs(cnot_diagram(), v.correction);
        // exact by rewriting and proportional on the dense oracle, which
        // must not disagree
        v.matches = pauli_equal(network, target).kind == VerdictKind::Equal &&
                    equal_up_to_output_paulis(network, cnot_diagram(), v.correction);
        report.push_back(v);
    }
    return report;
}

}  // namespace zxcss
