#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace zxcss::f2 {

// Vector over F2 with bits packed into 64-bit words.
class BitVector {
  public:
    BitVector() = default;
    explicit BitVector(size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    static BitVector from_bits(const std::vector<int>& bits);
    static BitVector unit(size_t n, size_t i);

    size_t size() const { return n_; }
    bool get(size_t i) const { return (w_[i / 64] >> (i % 64)) & 1; }
    void set(size_t i, bool v) {
        uint64_t m = uint64_t(1) << (i % 64);
        if (v) {
            w_[i / 64] |= m;
        } else {
            w_[i / 64] &= ~m;
        }
    }
    void flip(size_t i) { w_[i / 64] ^= uint64_t(1) << (i % 64); }

    BitVector& operator^=(const BitVector& o);
    friend BitVector operator^(BitVector a, const BitVector& b) {
        a ^= b;
        return a;
    }

    // Parity of the AND of the two vectors.
    bool dot(const BitVector& o) const;
    size_t weight() const;
    bool is_zero() const;

    bool operator==(const BitVector& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const BitVector& o) const { return !(*this == o); }
    // Lexicographic on the bit string, coordinate 0 first.
    bool operator<(const BitVector& o) const;

    // Integer whose most significant bit is coordinate 0. Requires n <= 63.
    uint64_t index() const;
    // Inverse of index() for a given length.
    static BitVector from_index(size_t n, uint64_t idx);

    // Coordinates [start, start + len).
    BitVector slice(size_t start, size_t len) const;
    // This vector followed by o.
    BitVector concat(const BitVector& o) const;

    std::vector<int> bits() const;
    std::string str() const;

  private:
    size_t n_ = 0;
    std::vector<uint64_t> w_;
};

class BitMatrix {
  public:
    BitMatrix() = default;
    BitMatrix(size_t rows, size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {}
    explicit BitMatrix(std::vector<BitVector> rows);

    static BitMatrix from_rows(const std::vector<std::vector<int>>& rows);
    static BitMatrix identity(size_t n);

    size_t rows() const { return rows_.size(); }
    size_t cols() const { return cols_; }
    const BitVector& row(size_t i) const { return rows_[i]; }
    BitVector& row(size_t i) { return rows_[i]; }
    bool get(size_t i, size_t j) const { return rows_[i].get(j); }
    void set(size_t i, size_t j, bool v) { rows_[i].set(j, v); }

    // dst ^= src.
    void row_add(size_t src, size_t dst);
    void append_row(const BitVector& v);
    void swap_rows(size_t i, size_t j) { std::swap(rows_[i], rows_[j]); }
    void remove_row(size_t i) { rows_.erase(rows_.begin() + i); }

    BitMatrix transposed() const;
    // Matrix of row-by-row dot products is zero.
    bool rows_orthogonal_to(const BitMatrix& o) const;

    bool operator==(const BitMatrix& o) const { return cols_ == o.cols_ && rows_ == o.rows_; }
    bool operator!=(const BitMatrix& o) const { return !(*this == o); }

    std::string str() const;

  private:
    size_t cols_ = 0;
    std::vector<BitVector> rows_;
};

// Reduced row-echelon form with zero rows dropped. Canonical for the row space:
// two matrices span the same subspace iff their rref is identical.
BitMatrix rref(const BitMatrix& m);
size_t rank(const BitMatrix& m);

// Canonical basis of {v : m v^T = 0}. A 0-row matrix over F2^n has the full
// space as orthocomplement (identity basis); the full space has the empty one.
BitMatrix orthocomplement(const BitMatrix& m, size_t n);

bool span_equal(const BitMatrix& a, const BitMatrix& b);

// Coefficients x with x^T m = b, i.e. b expressed in the row space of m.
// Empty optional when b is not in the row space. When m's rows are dependent
// the returned combination is the one produced by pivot elimination.
std::optional<BitVector> solve(const BitMatrix& m, const BitVector& b);

// Subspace of F2^n held as its canonical rref basis.
class Subspace {
  public:
    Subspace() = default;
    explicit Subspace(size_t n) : n_(n), basis_(0, n) {}

    static Subspace span_of(const BitMatrix& gens);
    static Subspace full(size_t n) { return span_of(BitMatrix::identity(n)); }

    size_t ambient() const { return n_; }
    size_t dim() const { return basis_.rows(); }
    const BitMatrix& basis() const { return basis_; }

    bool contains(const BitVector& v) const;
    Subspace orthocomplement() const;

    bool operator==(const Subspace& o) const { return n_ == o.n_ && basis_ == o.basis_; }
    bool operator!=(const Subspace& o) const { return !(*this == o); }

    // All 2^dim elements in order of increasing coefficient index. dim <= 24.
    std::vector<BitVector> elements() const;

  private:
    size_t n_ = 0;
    BitMatrix basis_;
};

}  // namespace zxcss::f2
