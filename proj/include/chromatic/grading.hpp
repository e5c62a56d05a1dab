#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "chromatic/errors.hpp"

namespace chromatic {

// Truncated coefficient ring Z_(p)[v_1, ..., v_N] with |v_i| = 2(p^i - 1)
// and the distinguished degree-zero regular element v_0 = p.
struct RingDescriptor {
    int64_t prime = 2;
    int truncation = 0;  // N, number of positive-degree generators
};

// Validates primality and truncation >= 0.
RingDescriptor make_ring(int64_t prime, int truncation);

// |v_i| for 0 <= i <= truncation; index 0 is the scalar p in degree 0.
int64_t generator_degree(const RingDescriptor& ring, int index);

// The ideal generated by v_0, ..., v_top (nonempty, contiguous from 0).
struct IdealSpec {
    int top = 0;
    int count() const { return top + 1; }
};

IdealSpec make_ideal(const RingDescriptor& ring, int top);

// Exponent vector for v_1..v_N; entry i-1 is the exponent of v_i.
using Monomial = std::vector<int>;

// Per-generator exponent ranges used to enumerate graded-piece bases.
// nonnegative with an upper bound models a finite quotient direction,
// nonnegative without one a free direction, strictly_negative an
// infinite-quotient direction, all_integers an inverted direction.
struct ExponentConstraint {
    struct Range {
        enum class Kind { nonnegative, strictly_negative, all_integers };
        Kind kind = Kind::nonnegative;
        std::optional<int> upper;  // exclusive; only with Kind::nonnegative
    };
    std::vector<Range> ranges;  // one per v_1..v_N
};

// Whether every degree-d solution set of the constraint is finite.  The set
// is infinite exactly when two distinct positive-degree indices allow an
// exponent trade: one arbitrarily negative, the other arbitrarily positive.
// A single all_integers index with everything else bounded stays finite
// (the degree equation pins it).
bool degreewise_finite(const RingDescriptor& ring, const ExponentConstraint& c);

// All solutions of sum_i e_i |v_i| = degree subject to the constraint,
// sorted lexicographically.  Throws NonFiniteDegreewise when the constraint
// fails the finiteness criterion; never silently truncates.
std::vector<Monomial> monomials_of_degree(const RingDescriptor& ring,
                                          const ExponentConstraint& c,
                                          int64_t degree);

}  // namespace chromatic
