#pragma once

#include <string>
#include <vector>

#include "zxcss/diagram.hpp"
#include "zxcss/f2.hpp"
#include "zxcss/pauli.hpp"

namespace zxcss {

enum class Rule { Fuse, Identity, SelfLoop, StrongComp, Comp, PiCopy, PiPush };

std::string rule_name(Rule r);

struct RuleApplication {
    Rule rule;
    std::vector<int> site;  // node ids the application touched
    Scalar scalar_delta;    // factor picked up by the diagram scalar
};

using Trace = std::vector<RuleApplication>;

// ---------------------------------------------------------------------------
// Primitive rewrites. Each returns the rewritten diagram, multiplies the
// scalar by the exact rule factor, and preserves the dense semantics; bad
// sites throw std::invalid_argument. All site scans in higher-level code pick
// ascending node ids, so results are deterministic.
// ---------------------------------------------------------------------------

// Merge two spiders of the same colour joined by at least one edge. `merge`
// is folded into `keep`; phases add mod 2; further parallel edges between the
// two become self loops. Scalar factor 1.
Diagram fuse(const Diagram& d, int keep, int merge, Trace* tr = nullptr);

// Drop one self loop; scalar factor 1 for both colours.
Diagram remove_self_loop(const Diagram& d, int v, Trace* tr = nullptr);

// Remove a phase-free spider of total degree 2: splice its two edge slots
// together, or, when they form one self loop, evaluate the closed circle to
// the factor 2.
Diagram remove_identity(const Diagram& d, int v, Trace* tr = nullptr);

// Complementarity: delete one pair of parallel edges between a Z and an X
// spider; scalar factor 1/2 (fixed once against the oracle, see tests).
Diagram comp(const Diagram& d, int a, int b, Trace* tr = nullptr);

// Strong complementarity, forward direction, on the single edge between a
// Z(j pi) spider with m further legs and an X(k pi) spider with n further
// legs. The pair is replaced by a complete bipartite graph of n Z(j pi)
// spiders (one per former X leg) and m X(k pi) spiders (one per former Z
// leg); the scalar gains (-1)^(jk) * 2^((m-1)(n-1)/2). Both endpoints must be
// loop-free with exactly one connecting edge.
Diagram strong_comp(const Diagram& d, int z, int x, Trace* tr = nullptr);

// Strong complementarity in reverse, restricted to the shape produced by the
// forward rule: zs is a set of Z spiders of equal phase with exactly one leg
// beyond the block, xs likewise for X, joined pairwise by single edges. The
// block collapses to one Z spider (on the former X extra legs) and one X
// spider (on the former Z extra legs) joined by an edge; the scalar gains the
// inverse factor. Returns via out parameters the ids of the new Z and X
// spiders when requested.
Diagram strong_comp_reverse(const Diagram& d, const std::vector<int>& zs,
                            const std::vector<int>& xs, Trace* tr = nullptr,
                            int* new_z = nullptr, int* new_x = nullptr);

// The pi-copy shape: a degree-2 pi spider pushed through an adjacent spider
// of the other colour, copying the pi onto all its other legs. A special case
// of strong complementarity; the factor is 1 when the carrier is phase-free
// and (-1) otherwise.
Diagram pi_copy(const Diagram& d, int moving, int through, Trace* tr = nullptr);

// ---------------------------------------------------------------------------
// Normal forms
// ---------------------------------------------------------------------------

enum class Form { ZX, XZ };

// ZX: a layer of interior Z spiders (the rows) over one boundary X spider per
// output; the diagram denotes scalar * 2^((n - W)/2) * sum over the row space
// of the rows, W = total row weight. XZ is the colour dual and denotes the
// sum over the orthocomplement of its row space.
struct NormalForm {
    Form form = Form::ZX;
    int n = 0;
    f2::BitMatrix rows;
    Scalar scalar = Scalar::one();
};

// The canonical diagram of a normal form: one boundary spider per output, one
// interior spider per row, edges where the row has a 1.
Diagram nf_to_diagram(const NormalForm& nf);

// Reduce a phase-free diagram to normal form. Inputs are bent to outputs
// first, so nf.n counts inputs + outputs; interior rows keep the order in
// which they survive reduction. Throws on diagrams containing pi phases.
NormalForm normalize(const Diagram& d, Form form, Trace* tr = nullptr);

// The subspace the normal form sums over.
f2::Subspace subspace_of(const NormalForm& nf);

// Inverse of subspace_of up to basis choice; rows are the canonical rref
// basis (of s for ZX, of its orthocomplement for XZ); scalar one.
NormalForm nf_from_subspace(const f2::Subspace& s, Form form);

// Row operation dst ^= src, carried out on the underlying diagram by the
// two-step strong-complementarity manoeuvre so the scalar is tracked exactly.
// Row order is preserved. When the rows share no column the manoeuvre does
// not apply and the rows are rebuilt directly with the matching weight
// factor.
NormalForm change_basis(const NormalForm& nf, int src, int dst);

// Rows replaced by their rref basis via change_basis steps (zero rows popped
// into the scalar); canonical representative of the same state.
NormalForm canonical_nf(const NormalForm& nf);

// ---------------------------------------------------------------------------
// Pauli extraction and equality
// ---------------------------------------------------------------------------

struct PiPushResult {
    Diagram diagram;  // phase-free normal-form state (inputs were bent)
    PauliOp record;   // on the state's outputs, applied after the diagram
    NormalForm nf;    // the normal form underlying `diagram` (ZX form)
};

// Push every pi phase to the boundary: semantics(bend_inputs(d)) equals
// apply_pauli_at_outputs(result.diagram, result.record) exactly. Zero
// diagrams come back with a zero scalar and the identity record.
PiPushResult pi_push_to_boundary(const Diagram& d, Trace* tr = nullptr);

enum class VerdictKind { Equal, EqualUpToScalar, Different };

struct Verdict {
    VerdictKind kind = VerdictKind::Different;
    Scalar lambda = Scalar::one();  // a = lambda * b when kind != Different
};

// Exact equality decision for Pauli-fragment diagrams of matching arity:
// both sides are pushed to Pauli normal form and compared there.
Verdict pauli_equal(const Diagram& a, const Diagram& b);

// The phase-free completeness decision; requires phase-free inputs.
Verdict equal_diagrams(const Diagram& a, const Diagram& b);

bool phase_free(const Diagram& d);

}  // namespace zxcss
