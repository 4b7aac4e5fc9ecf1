#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "zxcss/diagram.hpp"
#include "zxcss/f2.hpp"
#include "zxcss/pauli.hpp"

namespace zxcss {

// Exact dense map: entry(out, in) = num[out * 2^in_qubits + in] * 2^(half_power/2).
// Output 0 is the most significant bit of the out block, input 0 of the in
// block. Canonical form: all-zero entries with half_power 0, otherwise at
// least one odd entry.
struct DenseTensor {
    int in_qubits = 0;
    int out_qubits = 0;
    std::vector<int64_t> num;
    int64_t half_power = 0;

    size_t size() const { return size_t{1} << (in_qubits + out_qubits); }
    int64_t entry(uint64_t out, uint64_t in) const {
        return num[(out << in_qubits) | in];
    }
    bool is_zero() const;
    void canonicalize();

    bool operator==(const DenseTensor& o) const;
    bool operator!=(const DenseTensor& o) const { return !(*this == o); }
};

// Contracts the diagram to its dense map. Totally independent of the rewrite
// engine: spider tensors are written out from their definition and summed
// over internal wires, exactly over the integers. Throws if the boundary is
// wider than the oracle limit (default 20 qubits, env ZXCSS_ORACLE_LIMIT
// overrides) or if an entry would overflow int64.
DenseTensor evaluate(const Diagram& d);

int oracle_qubit_limit();

// t1 == r * t2 for an exact dyadic r? Returns r when it exists, nullopt when
// the tensors are not proportional by a scalar of the form +-2^(k/2). Both
// zero compares as ratio one; t2 zero with t1 nonzero is not proportional.
std::optional<Scalar> equal_up_to_scalar(const DenseTensor& t1, const DenseTensor& t2);

// The map p * t (operator applied after t, on its output side).
DenseTensor apply_output_pauli(const DenseTensor& t, const PauliOp& p);

// True iff a equals correction * b up to a nonzero scalar on the dense
// oracle. The identity correction reduces to equal_up_to_scalar. Throws on
// boundary or correction arity mismatch.
bool equal_up_to_output_paulis(const Diagram& a, const Diagram& b, const PauliOp& correction);

}  // namespace zxcss
