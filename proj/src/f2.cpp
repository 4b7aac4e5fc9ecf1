#include "zxcss/f2.hpp"

#include <bit>
#include <stdexcept>

namespace zxcss::f2 {

BitVector BitVector::from_bits(const std::vector<int>& bits) {
    BitVector v(bits.size());
    for (size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] != 0 && bits[i] != 1) {
            throw std::invalid_argument("BitVector::from_bits: entries must be 0 or 1");
        }
        v.set(i, bits[i] == 1);
    }
    return v;
}

BitVector BitVector::unit(size_t n, size_t i) {
    BitVector v(n);
    v.set(i, true);
    return v;
}

BitVector& BitVector::operator^=(const BitVector& o) {
    if (n_ != o.n_) {
        throw std::invalid_argument("BitVector: xor of different lengths");
    }
    for (size_t i = 0; i < w_.size(); ++i) {
        w_[i] ^= o.w_[i];
    }
    return *this;
}

bool BitVector::dot(const BitVector& o) const {
    if (n_ != o.n_) {
        throw std::invalid_argument("BitVector: dot of different lengths");
    }
    uint64_t acc = 0;
    for (size_t i = 0; i < w_.size(); ++i) {
        acc ^= w_[i] & o.w_[i];
    }
    return std::popcount(acc) % 2 == 1;
}

size_t BitVector::weight() const {
    size_t w = 0;
    for (uint64_t x : w_) {
        w += std::popcount(x);
    }
    return w;
}

bool BitVector::is_zero() const {
    for (uint64_t x : w_) {
        if (x != 0) {
            return false;
        }
    }
    return true;
}

bool BitVector::operator<(const BitVector& o) const {
    if (n_ != o.n_) {
        return n_ < o.n_;
    }
    for (size_t i = 0; i < n_; ++i) {
        if (get(i) != o.get(i)) {
            return !get(i);
        }
    }
    return false;
}

uint64_t BitVector::index() const {
    if (n_ > 63) {
        throw std::invalid_argument("BitVector::index: length > 63");
    }
    uint64_t idx = 0;
    for (size_t i = 0; i < n_; ++i) {
        idx = (idx << 1) | (get(i) ? 1 : 0);
    }
    return idx;
}

BitVector BitVector::from_index(size_t n, uint64_t idx) {
    BitVector v(n);
    for (size_t i = 0; i < n; ++i) {
        v.set(i, (idx >> (n - 1 - i)) & 1);
    }
    return v;
}

BitVector BitVector::slice(size_t start, size_t len) const {
    if (start + len > n_) {
        throw std::invalid_argument("BitVector::slice: out of range");
    }
    BitVector v(len);
    for (size_t i = 0; i < len; ++i) {
        v.set(i, get(start + i));
    }
    return v;
}

BitVector BitVector::concat(const BitVector& o) const {
    BitVector v(n_ + o.n_);
    for (size_t i = 0; i < n_; ++i) {
        v.set(i, get(i));
    }
    for (size_t i = 0; i < o.n_; ++i) {
        v.set(n_ + i, o.get(i));
    }
    return v;
}

std::vector<int> BitVector::bits() const {
    std::vector<int> out(n_);
    for (size_t i = 0; i < n_; ++i) {
        out[i] = get(i) ? 1 : 0;
    }
    return out;
}

std::string BitVector::str() const {
    std::string s;
    s.reserve(n_);
    for (size_t i = 0; i < n_; ++i) {
        s.push_back(get(i) ? '1' : '0');
    }
    return s;
}

BitMatrix::BitMatrix(std::vector<BitVector> rows) : rows_(std::move(rows)) {
    cols_ = rows_.empty() ? 0 : rows_[0].size();
    for (const auto& r : rows_) {
        if (r.size() != cols_) {
            throw std::invalid_argument("BitMatrix: rows of different lengths");
        }
    }
}

BitMatrix BitMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
    std::vector<BitVector> rs;
    rs.reserve(rows.size());
    for (const auto& r : rows) {
        rs.push_back(BitVector::from_bits(r));
    }
    return BitMatrix(std::move(rs));
}

BitMatrix BitMatrix::identity(size_t n) {
    BitMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) {
        m.set(i, i, true);
    }
    return m;
}

void BitMatrix::row_add(size_t src, size_t dst) {
    if (src == dst) {
        throw std::invalid_argument("BitMatrix::row_add: src == dst");
    }
    rows_[dst] ^= rows_[src];
}

void BitMatrix::append_row(const BitVector& v) {
    if (!rows_.empty() && v.size() != cols_) {
        throw std::invalid_argument("BitMatrix::append_row: wrong length");
    }
    if (rows_.empty()) {
        cols_ = v.size();
    }
    rows_.push_back(v);
}

BitMatrix BitMatrix::transposed() const {
    BitMatrix t(cols_, rows());
    for (size_t i = 0; i < rows(); ++i) {
        for (size_t j = 0; j < cols_; ++j) {
            if (get(i, j)) {
                t.set(j, i, true);
            }
        }
    }
    return t;
}

bool BitMatrix::rows_orthogonal_to(const BitMatrix& o) const {
    for (size_t i = 0; i < rows(); ++i) {
        for (size_t j = 0; j < o.rows(); ++j) {
            if (row(i).dot(o.row(j))) {
                return false;
            }
        }
    }
    return true;
}

std::string BitMatrix::str() const {
    std::string s;
    for (size_t i = 0; i < rows(); ++i) {
        s += rows_[i].str();
        s.push_back('\n');
    }
    return s;
}

BitMatrix rref(const BitMatrix& m) {
    BitMatrix r = m;
    size_t pivot_row = 0;
    for (size_t c = 0; c < r.cols() && pivot_row < r.rows(); ++c) {
        size_t sel = pivot_row;
        while (sel < r.rows() && !r.get(sel, c)) {
            ++sel;
        }
        if (sel == r.rows()) {
            continue;
        }
        r.swap_rows(pivot_row, sel);
        for (size_t i = 0; i < r.rows(); ++i) {
            if (i != pivot_row && r.get(i, c)) {
                r.row_add(pivot_row, i);
            }
        }
        ++pivot_row;
    }
    while (r.rows() > pivot_row) {
        r.remove_row(r.rows() - 1);
    }
    return r;
}

size_t rank(const BitMatrix& m) {
    return rref(m).rows();
}

BitMatrix orthocomplement(const BitMatrix& m, size_t n) {
    BitMatrix r = rref(m);
    if (r.cols() != n && r.rows() != 0) {
        throw std::invalid_argument("orthocomplement: ambient dimension mismatch");
    }
    std::vector<size_t> pivot_col(r.rows());
    std::vector<bool> is_pivot(n, false);
    for (size_t i = 0; i < r.rows(); ++i) {
        size_t c = 0;
        while (!r.get(i, c)) {
            ++c;
        }
        pivot_col[i] = c;
        is_pivot[c] = true;
    }
    BitMatrix out(0, n);
    for (size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) {
            continue;
        }
        BitVector v(n);
        v.set(f, true);
        for (size_t i = 0; i < r.rows(); ++i) {
            if (r.get(i, f)) {
                v.set(pivot_col[i], true);
            }
        }
        out.append_row(v);
    }
    return rref(out);
}

bool span_equal(const BitMatrix& a, const BitMatrix& b) {
    return rref(a) == rref(b);
}

std::optional<BitVector> solve(const BitMatrix& m, const BitVector& b) {
    if (m.rows() != 0 && m.cols() != b.size()) {
        throw std::invalid_argument("solve: length mismatch");
    }
    // Eliminate downward, tracking each working row as a combination of the
    // original rows; then reduce b by the pivots.
    std::vector<BitVector> work, comb;
    for (size_t i = 0; i < m.rows(); ++i) {
        work.push_back(m.row(i));
        comb.push_back(BitVector::unit(m.rows(), i));
    }
    BitVector target = b;
    BitVector coeffs(m.rows());
    size_t pivot_row = 0;
    for (size_t c = 0; c < b.size() && pivot_row < work.size(); ++c) {
        size_t sel = pivot_row;
        while (sel < work.size() && !work[sel].get(c)) {
            ++sel;
        }
        if (sel == work.size()) {
            continue;
        }
        std::swap(work[pivot_row], work[sel]);
        std::swap(comb[pivot_row], comb[sel]);
        for (size_t i = pivot_row + 1; i < work.size(); ++i) {
            if (work[i].get(c)) {
                work[i] ^= work[pivot_row];
                comb[i] ^= comb[pivot_row];
            }
        }
        if (target.get(c)) {
            target ^= work[pivot_row];
            coeffs ^= comb[pivot_row];
        }
        ++pivot_row;
    }
    if (!target.is_zero()) {
        return std::nullopt;
    }
    return coeffs;
}

Subspace Subspace::span_of(const BitMatrix& gens) {
    Subspace s;
    s.n_ = gens.cols();
    s.basis_ = rref(gens);
    return s;
}

bool Subspace::contains(const BitVector& v) const {
    if (v.size() != n_) {
        throw std::invalid_argument("Subspace::contains: length mismatch");
    }
    return solve(basis_, v).has_value();
}

Subspace Subspace::orthocomplement() const {
    Subspace s;
    s.n_ = n_;
    s.basis_ = f2::orthocomplement(basis_, n_);
    return s;
}

std::vector<BitVector> Subspace::elements() const {
    if (dim() > 24) {
        throw std::invalid_argument("Subspace::elements: dimension too large");
    }
    std::vector<BitVector> out;
    out.reserve(size_t(1) << dim());
    for (uint64_t mask = 0; mask < (uint64_t(1) << dim()); ++mask) {
        BitVector v(n_);
        for (size_t i = 0; i < dim(); ++i) {
            if ((mask >> i) & 1) {
                v ^= basis_.row(i);
            }
        }
        out.push_back(v);
    }
    return out;
}

}  // namespace zxcss::f2
