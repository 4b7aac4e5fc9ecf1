#include <doctest.h>

#include <random>

#include "zxcss/f2.hpp"

using namespace zxcss;
using f2::BitMatrix;
using f2::BitVector;
using f2::Subspace;

namespace {

// Brute-force span: all xor combinations of the rows.
std::vector<BitVector> enumerate_span(const BitMatrix& m) {
    std::vector<BitVector> out;
    size_t n = m.cols();
    for (uint64_t mask = 0; mask < (uint64_t(1) << m.rows()); ++mask) {
        BitVector v(n);
        for (size_t i = 0; i < m.rows(); ++i) {
            if ((mask >> i) & 1) {
                v ^= m.row(i);
            }
        }
        bool seen = false;
        for (const auto& u : out) {
            if (u == v) {
                seen = true;
                break;
            }
        }
        if (!seen) {
            out.push_back(v);
        }
    }
    return out;
}

BitMatrix random_matrix(std::mt19937_64& rng, size_t rows, size_t cols) {
    BitMatrix m(rows, cols);
    for (size_t i = 0; i < rows; ++i) {
        for (size_t j = 0; j < cols; ++j) {
            m.set(i, j, rng() & 1);
        }
    }
    return m;
}

}  // namespace

TEST_CASE("bitvector basics") {
    auto v = BitVector::from_bits({1, 0, 1, 1});
    CHECK(v.size() == 4);
    CHECK(v.get(0));
    CHECK(!v.get(1));
    CHECK(v.weight() == 3);
    CHECK(v.str() == "1011");
    CHECK(v.index() == 11);
    CHECK(BitVector::from_index(4, 11) == v);

    auto u = BitVector::from_bits({1, 1, 0, 0});
    CHECK((u ^ v) == BitVector::from_bits({0, 1, 1, 1}));
    CHECK(v.dot(u) == true);
    CHECK(v.dot(v) == true);
    CHECK(BitVector(70).is_zero());
}

TEST_CASE("bitvector across word boundary") {
    BitVector v(130);
    v.set(0, true);
    v.set(64, true);
    v.set(129, true);
    CHECK(v.weight() == 3);
    BitVector u(130);
    u.set(64, true);
    CHECK(v.dot(u) == true);
    v ^= u;
    CHECK(v.weight() == 2);
    CHECK(!v.get(64));
}

TEST_CASE("rref frozen example") {
    auto m = BitMatrix::from_rows({{1, 1}, {0, 1}});
    CHECK(f2::rref(m) == BitMatrix::identity(2));
}

TEST_CASE("rref drops zero and duplicate rows") {
    auto m = BitMatrix::from_rows({{1, 0, 1}, {0, 0, 0}, {1, 0, 1}});
    auto r = f2::rref(m);
    CHECK(r.rows() == 1);
    CHECK(r.row(0) == BitVector::from_bits({1, 0, 1}));
    CHECK(f2::rank(m) == 1);
}

TEST_CASE("rref is idempotent and canonical") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        size_t rows = 1 + rng() % 5;
        size_t cols = 1 + rng() % 6;
        auto m = random_matrix(rng, rows, cols);
        auto r = f2::rref(m);
        CHECK(f2::rref(r) == r);
        // Same span as the input, element by element.
        auto span_m = enumerate_span(m);
        auto span_r = enumerate_span(r);
        CHECK(span_m.size() == span_r.size());
        for (const auto& v : span_m) {
            CHECK(Subspace::span_of(r).contains(v));
        }
        // Shuffling rows and adding random combinations leaves the rref alone.
        auto m2 = m;
        for (int k = 0; k < 6; ++k) {
            size_t a = rng() % rows, b = rng() % rows;
            if (a != b) {
                m2.row_add(a, b);
            }
        }
        CHECK(f2::rref(m2) == r);
    }
}

TEST_CASE("orthocomplement frozen example") {
    auto m = BitMatrix::from_rows({{1, 1, 1}});
    auto oc = f2::orthocomplement(m, 3);
    CHECK(f2::span_equal(oc, BitMatrix::from_rows({{1, 1, 0}, {0, 1, 1}})));
    CHECK(oc.rows() == 2);
}

TEST_CASE("orthocomplement against enumeration") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        size_t n = 1 + rng() % 6;
        size_t rows = rng() % (n + 1);
        auto m = random_matrix(rng, rows, n);
        auto oc = f2::orthocomplement(m, n);
        // Oracle: test every vector of F2^n.
        size_t count = 0;
        Subspace oc_span = Subspace::span_of(oc);
        for (uint64_t idx = 0; idx < (uint64_t(1) << n); ++idx) {
            auto v = BitVector::from_index(n, idx);
            bool orth = true;
            for (size_t i = 0; i < m.rows(); ++i) {
                if (m.row(i).dot(v)) {
                    orth = false;
                    break;
                }
            }
            CHECK(oc_span.contains(v) == orth);
            if (orth) {
                ++count;
            }
        }
        CHECK((uint64_t(1) << oc.rows()) == count);
        // Dimension identity.
        CHECK(f2::rank(m) + oc.rows() == n);
    }
}

TEST_CASE("double orthocomplement is identity") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        size_t n = 1 + rng() % 8;
        auto m = random_matrix(rng, rng() % (n + 1), n);
        auto s = Subspace::span_of(m);
        if (s.dim() == 0 && s.ambient() == 0) {
            continue;
        }
        CHECK(s.orthocomplement().orthocomplement() == s);
    }
}

TEST_CASE("orthocomplement edge conventions") {
    // Zero subspace of F2^3 -> full space.
    CHECK(f2::orthocomplement(BitMatrix(0, 3), 3) == BitMatrix::identity(3));
    // Full space -> zero subspace.
    auto oc = f2::orthocomplement(BitMatrix::identity(3), 3);
    CHECK(oc.rows() == 0);
    CHECK(oc.cols() == 3);
}

TEST_CASE("solve frozen example") {
    auto m = BitMatrix::from_rows({{1, 1, 0}, {0, 1, 1}});
    auto x = f2::solve(m, BitVector::from_bits({1, 0, 1}));
    REQUIRE(x.has_value());
    CHECK(*x == BitVector::from_bits({1, 1}));
    CHECK(!f2::solve(m, BitVector::from_bits({1, 0, 0})).has_value());
}

TEST_CASE("solve against enumeration") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        size_t n = 1 + rng() % 5;
        size_t rows = 1 + rng() % 4;
        auto m = random_matrix(rng, rows, n);
        auto b = BitVector::from_index(n, rng() & ((uint64_t(1) << n) - 1));
        auto x = f2::solve(m, b);
        // Oracle: try every coefficient vector.
        bool solvable = false;
        for (uint64_t mask = 0; mask < (uint64_t(1) << rows); ++mask) {
            BitVector acc(n);
            for (size_t i = 0; i < rows; ++i) {
                if ((mask >> i) & 1) {
                    acc ^= m.row(i);
                }
            }
            if (acc == b) {
                solvable = true;
                break;
            }
        }
        CHECK(x.has_value() == solvable);
        if (x.has_value()) {
            BitVector acc(n);
            for (size_t i = 0; i < rows; ++i) {
                if (x->get(i)) {
                    acc ^= m.row(i);
                }
            }
            CHECK(acc == b);
        }
    }
}

TEST_CASE("span_equal and row_add preserve span") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        size_t n = 2 + rng() % 5;
        auto m = random_matrix(rng, 2 + rng() % 3, n);
        auto m2 = m;
        size_t src = rng() % m.rows(), dst = rng() % m.rows();
        if (src == dst) {
            continue;
        }
        m2.row_add(src, dst);
        CHECK(f2::span_equal(m, m2));
        // Different span when an outside vector is appended.
        auto oc = f2::orthocomplement(m, n);
        if (oc.rows() > 0) {
            auto m3 = m;
            // A nonzero vector not in span(m) exists iff rank < n; take a
            // coset representative by flipping a coordinate not covered.
            Subspace s = Subspace::span_of(m);
            for (uint64_t idx = 1; idx < (uint64_t(1) << n); ++idx) {
                auto v = BitVector::from_index(n, idx);
                if (!s.contains(v)) {
                    m3.append_row(v);
                    break;
                }
            }
            if (m3.rows() > m.rows()) {
                CHECK(!f2::span_equal(m, m3));
            }
        }
    }
}

TEST_CASE("hamming subspace is self-orthogonal") {
    auto s = Subspace::span_of(BitMatrix::from_rows({
        {1, 0, 0, 0, 1, 1, 1},
        {0, 1, 0, 1, 0, 1, 1},
        {0, 0, 1, 1, 1, 0, 1},
    }));
    CHECK(s.dim() == 3);
    auto perp = s.orthocomplement();
    CHECK(perp.dim() == 4);
    // Self-orthogonal: S is contained in its own orthocomplement.
    for (size_t i = 0; i < s.basis().rows(); ++i) {
        CHECK(perp.contains(s.basis().row(i)));
    }
}

TEST_CASE("subspace elements enumeration") {
    auto s = Subspace::span_of(BitMatrix::from_rows({{1, 1, 0}, {0, 1, 1}}));
    auto elems = s.elements();
    CHECK(elems.size() == 4);
    CHECK(elems[0].is_zero());
    for (const auto& v : elems) {
        CHECK(s.contains(v));
    }
}
