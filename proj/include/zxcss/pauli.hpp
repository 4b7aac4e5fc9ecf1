#pragma once

#include <string>

#include "zxcss/diagram.hpp"
#include "zxcss/f2.hpp"

namespace zxcss {

// Signed product of single-qubit X and Z factors on n qubits:
//   sign * X^x * Z^z   (all X factors to the left of all Z factors).
// The letter Y in the string form denotes the real product XZ on a site,
// with no factor i.
struct PauliOp {
    int n = 0;
    f2::BitVector x;
    f2::BitVector z;
    int sign = 1;

    PauliOp() = default;
    PauliOp(int n, f2::BitVector x, f2::BitVector z, int sign = 1);

    static PauliOp identity(int n);
    static PauliOp single(int n, int qubit, char which);  // 'X' or 'Z'
    static PauliOp parse(const std::string& s);           // [+-]?[IXZY]+
    std::string str() const;

    PauliOp times(const PauliOp& o) const;
    PauliOp dagger() const;
    bool commutes_with(const PauliOp& o) const;
    int weight() const;
    bool acts_trivially() const { return x.is_zero() && z.is_zero(); }
    bool is_identity() const { return acts_trivially() && sign == 1; }

    bool operator==(const PauliOp& o) const;
    bool operator!=(const PauliOp& o) const { return !(*this == o); }
};

// Appends the spiders realising `p` after the outputs of `d`: along each
// output wire a Z(z pi) spider then an X(x pi) spider, diagram side first.
// Both spiders are exact 2x2 gates, so only the sign touches the scalar.
Diagram apply_pauli_at_outputs(const Diagram& d, const PauliOp& p);

}  // namespace zxcss
