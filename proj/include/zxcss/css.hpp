#pragma once

#include <optional>
#include <string>
#include <utility>

#include "zxcss/diagram.hpp"
#include "zxcss/f2.hpp"
#include "zxcss/pauli.hpp"

namespace zxcss {

// CSS code on n qubits: every X stabiliser generator is a row of sx read as
// the support of an X-type Pauli, and likewise sz for Z-type. All generators
// carry sign +1.
struct CssCode {
    int n = 0;
    f2::BitMatrix sx;
    f2::BitMatrix sz;
};

// True iff the code is well formed: row lengths match n (a 0-row matrix is
// accepted with any column count), every X generator commutes with every Z
// generator, and each generator list is independent.
bool validate(const CssCode& code);

// Choice of spider colour carrying the wires of a state diagram.
enum class Rep { X, Z };

// Logical operator choices for a code with k encoded qubits, one row per
// logical qubit. Row i of lx is the support of the physical X-type operator
// acting as X on logical qubit i; lz likewise for Z.
struct LogicalSet {
    f2::BitMatrix lx;
    f2::BitMatrix lz;
};

// Encoder of a CSS code: an isometry taking k logical qubits to n physical
// ones, fixed by the code together with a choice of logical operators.
struct Encoder {
    CssCode code;
    LogicalSet logicals;
    Diagram diagram;  // k inputs, n outputs
};

// State diagram of the maximal CSS code determined by the subspace s.
// Rep::X: one X spider per output plus one interior Z spider per basis row
// of s, wired to the row's support. Rep::Z: the same with colours swapped,
// built from the orthocomplement of s. Both denote the same state.
Diagram max_css_to_diagram(const f2::Subspace& s, Rep rep);

// Inverse direction: reduce a phase-free state diagram to normal form and
// read off the subspace pair (S, S-perp) whose maximal CSS code fixes the
// state. Throws std::invalid_argument if d has inputs or carries phases.
std::pair<f2::Subspace, f2::Subspace> diagram_to_max_css(const Diagram& d);

// True iff p fixes the state of d exactly: p applied at the outputs equals d
// with scalar 1 included. Pre: d has no inputs.
bool stabilises(const Diagram& d, const PauliOp& p);

// Number of logical qubits: n minus the number of independent stabiliser
// generators. Throws std::invalid_argument on an invalid code.
int ftst_dimension(const CssCode& code);

// Builds the encoder fixed by the code and the given logical operators.
// The bent-up encoder state on k + n qubits is the maximal CSS state whose
// X stabilisers are the code's X generators on the physical block together
// with one X_i (x) lx_i per logical qubit; outputs are ordered with the k
// logical wires first, which then become the inputs. The scalar is chosen
// so the result is an exact isometry. Throws std::invalid_argument if the
// code is invalid or the logicals do not satisfy the commutation, pairing,
// or independence requirements.
Encoder encoder_from_code(const CssCode& code, const LogicalSet& logicals);

// Searches for the logical counterpart of a physical n-qubit Pauli map:
// a signed k-qubit Pauli f with physical . E = E . f, exactly. Returns the
// realising diagram of the first match in a fixed enumeration order, or
// nullopt when no signed Pauli works. When found is non-null it receives
// the matching operator.
std::optional<Diagram> logical_action(const Encoder& e, const Diagram& physical,
                                      PauliOp* found = nullptr);

// Measurement projection onto the (-1)^outcome eigenspace of a pure X-type
// or pure Z-type Pauli: each supported wire gets a spider of the operator's
// colour with a third leg into one hub spider of the opposite colour and
// phase (outcome mod 2) pi. Equals (I + (-1)^outcome P) / 2 up to the fixed
// factor 2^(1 - w/2) where w is the support size. A -1 sign on p folds into
// the outcome. Throws std::invalid_argument on mixed X/Z support.
Diagram projection_diagram(const PauliOp& p, int outcome);

// Sparse Pauli string with 1-based qubit indices: "X2X3X5X6", "-Z1Z2", "I".
// Letters X and Z only; repeated indices cancel. n is the qubit count.
PauliOp parse_pauli_terms(const std::string& s, int n);
std::string pauli_terms_string(const PauliOp& p);

// JSON form:
// {
//   "n": 7,
//   "sx": [[1,0,0,0,1,1,1], ...], "sz": [...],
//   "lx": [[0,0,0,1,1,1,0]], "lz": [...]
// }
// lx/lz are optional and must appear together; unknown keys are rejected.
std::string code_to_json(const CssCode& code, const LogicalSet* logicals = nullptr,
                         int indent = 2);
CssCode code_from_json(const std::string& text);
std::optional<LogicalSet> logicals_from_json(const std::string& text);

}  // namespace zxcss
