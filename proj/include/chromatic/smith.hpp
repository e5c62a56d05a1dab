#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "chromatic/errors.hpp"

namespace chromatic {

// Exact arithmetic over Z_(p): integers carry the data, a unit is anything
// of p-adic valuation zero, and row/column operations may rescale by units.
using Int = boost::multiprecision::cpp_int;

struct IntMat {
    int rows = 0;
    int cols = 0;
    std::vector<Int> a;

    IntMat() = default;
    IntMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    Int& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    const Int& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

    static IntMat identity(int n);
};

IntMat mul(const IntMat& a, const IntMat& b);
IntMat hconcat(const IntMat& a, const IntMat& b);
IntMat scaled_identity(int n, const Int& value);

// p-adic valuation; returns a large sentinel for zero.
int p_valuation(const Int& x, int64_t p);
constexpr int kZeroValuation = 1 << 30;

struct SmithOptions {
    // When set, pivots are drawn uniformly among the entries of minimal
    // valuation instead of taking the first one.  The invariants must not
    // depend on the choice.
    std::mt19937* rng = nullptr;
};

// p-exponents of the nonzero invariant factors, ascending (0 entries are
// unit factors).  Unit parts of the diagonal are discarded.
std::vector<int> smith_invariants(IntMat m, int64_t p, const SmithOptions& options = {});

// Integer basis of the column span over Z_(p) (columns may rescale by
// units, which does not change the span).
IntMat column_echelon_basis(IntMat gens, int64_t p);

// Integer basis of the kernel over Z_(p).
IntMat kernel_basis(const IntMat& m, int64_t p);

// Coordinates of the columns of target inside the span of basis (full
// column rank).  Columns of the result are rescaled by p-units so the
// matrix stays integral; throws std::logic_error when a column lies outside
// the span over Z_(p).
IntMat solve_in_span(const IntMat& basis, const IntMat& target, int64_t p);

struct Subquotient {
    int64_t free_rank = 0;
    std::vector<int> torsion_exponents;  // ascending
};

// Invariants of span(big)/span(small); the small span must sit inside the
// big one over Z_(p).
Subquotient quotient_invariants(const IntMat& big, const IntMat& small, int64_t p,
                                const SmithOptions& options = {});

}  // namespace chromatic
