#pragma once

#include <optional>
#include <vector>

#include "zxcss/css.hpp"
#include "zxcss/diagram.hpp"
#include "zxcss/pauli.hpp"

namespace zxcss {

// Rotated surface code patch of d rows by e columns, qubits numbered
// row-major 1..d*e. The checkerboard origin is fixed by parity: the tile
// with corner (1,1) is Z-type when parity is 0.
struct Patch {
    int d = 0;
    int e = 0;
    int parity = 0;
    CssCode code;
    LogicalSet logicals;
};

// Builds the patch: one four-qubit tile stabiliser per interior corner
// (i,j), Z-type iff i+j+parity is even, plus weight-2 blobs on alternating
// boundary edges coloured opposite to the nearest tile (left/right edges
// carry X blobs, top/bottom carry Z blobs). Logical X is the bottom row,
// logical Z the left column. Generator order: interior tiles row-major,
// then left/top blobs, then right/bottom blobs. Throws std::invalid_argument
// when d or e is below 2.
Patch surface_code(int d, int e, int parity);

// Encoder of the patch in either representation; both are exact isometries
// realising the same map. Rep::X wires one hub per X generator, Rep::Z is
// the colour-swapped dual built from the Z generators.
Encoder surface_encoder(const Patch& p, Rep rep);

// Multiplies the single logical operator of the given type by the indexed
// stabiliser of the same type. The encoder is unchanged: the new logical
// sits in the same coset. Throws std::invalid_argument on a bad index.
Patch deform_logical(const Patch& p, Rep which, int stabiliser_index);

// Number of seam measurements each surgery layer performs.
int zsplit_seam_count(int d, int e);
int xmerge_seam_count(int d, int e);
int xsplit_seam_count(int d, int e);
int zmerge_seam_count(int d, int e);

// Physical layer splitting a d x 2e patch into two d x e patches: one XX
// measurement with outcome bit outcomes[i] on the column-e qubit pairs
// (i,e),(i+1,e) wherever the left patch would grow a right-boundary blob,
// identity on all other wires. Throws on outcome count mismatch.
Diagram zsplit_physical(int d, int e, const std::vector<int>& outcomes);

// Physical layer merging two stacked d x e patches (top parity 0, bottom
// parity d mod 2): one measurement per X stabiliser of the combined 2d x e
// patch whose support crosses rows d and d+1, in that patch's generator
// order. Throws on outcome count mismatch.
Diagram xmerge_physical(int d, int e, const std::vector<int>& outcomes);

// Colour-reversed quarter-turn partners of the two layers above. xsplit cuts
// a 2d x e patch (parity 1) into two stacked d x e patches with one ZZ
// measurement on the horizontal qubit pairs (d,j),(d,j+1) wherever the top
// patch would grow a bottom-boundary blob. zmerge joins two side-by-side
// d x e patches into the d x 2e patch (parity 1) by measuring its Z
// stabilisers that cross columns e and e+1.
Diagram xsplit_physical(int d, int e, const std::vector<int>& outcomes);
Diagram zmerge_physical(int d, int e, const std::vector<int>& outcomes);

// Logical layer maps. Split: a 1-to-2 spider of the given colour. Merge:
// the 2-to-1 spider with a phase (outcome * pi) spider of the opposite
// colour on its first input, recording the measured sign.
Diagram logical_split(Rep kind);
Diagram logical_merge(Rep kind, int outcome);

// The two-spider controlled-NOT: control Z on wire 0 linked to target X on
// wire 1. Evaluates to the CNOT matrix times 2^(-1/2).
Diagram cnot_diagram();

// A physical operation together with the encoders it acts between, the
// logical map it should implement, and the output correction making the
// equation physical . before = correction . after . logical hold up to a
// nonzero scalar.
struct SurgeryContract {
    Diagram physical;
    Diagram encoder_before;
    Diagram encoder_after;
    Diagram logical;
    PauliOp correction;
    std::vector<int> outcomes;
};

enum class VerifyMethod { Rewrite, Oracle };

// The two sides of the contract equation: the physical operation after the
// first encoder, and the corrected logical map after the second.
Diagram contract_lhs(const SurgeryContract& c);
Diagram contract_rhs(const SurgeryContract& c);

// Checks the contract equation. Rewrite pushes both sides to Pauli normal
// form and compares there; Oracle contracts both sides densely and is
// limited to the evaluator's qubit budget.
bool verify_surgery(const SurgeryContract& c, VerifyMethod method);

// Solves for the output correction: pushes both sides, requires the
// phase-free residues to agree, and resolves the Pauli difference into an
// operator supported on the outputs alone. Absent when the residues differ
// or the difference cannot leave the inputs.
std::optional<PauliOp> derive_correction(const Diagram& physical,
                                         const Diagram& encoder_before,
                                         const Diagram& encoder_after,
                                         const Diagram& logical);

// Ready-made contracts for the surgery primitives, corrections derived.
// zsplit: d x 2e patch into side-by-side d x e patches under logical_split(Z).
// xmerge: stacked d x e patches into the 2d x e patch under
// logical_merge(X, xor of outcomes). xsplit and zmerge are their
// colour-reversed quarter-turn partners, assembled from the same pieces on
// the rotated patches rather than by transforming the originals, so their
// verification is independent evidence for the symmetry. Throws
// std::logic_error if derivation fails, since these shapes are constructed
// to verify.
SurgeryContract zsplit_contract(int d, int e, const std::vector<int>& outcomes);
SurgeryContract xmerge_contract(int d, int e, const std::vector<int>& outcomes);
SurgeryContract xsplit_contract(int d, int e, const std::vector<int>& outcomes);
SurgeryContract zmerge_contract(int d, int e, const std::vector<int>& outcomes);

// Surgery network for a controlled-NOT: split the control with a Z spider,
// then X-merge the copy into the target with the given outcome.
Diagram cnot_network(int outcome);

struct CnotVerification {
    int outcome = 0;
    PauliOp correction;  // Z^outcome on the control output
    bool matches = false;
};

// Checks cnot_network(k) against cnot_diagram with its outcome-determined
// correction for every outcome.
std::vector<CnotVerification> verify_cnot_network();

}  // namespace zxcss
