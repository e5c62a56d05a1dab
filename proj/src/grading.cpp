#include "chromatic/grading.hpp"

#include <algorithm>
#include <limits>

namespace chromatic {

namespace {

bool is_prime(int64_t n)
{
    if (n < 2)
        return false;
    for (int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

using Range = ExponentConstraint::Range;
using Kind = ExponentConstraint::Range::Kind;

bool neg_capable(const Range& r)
{
    return r.kind == Kind::strictly_negative || r.kind == Kind::all_integers;
}

bool pos_capable(const Range& r)
{
    return r.kind == Kind::all_integers || (r.kind == Kind::nonnegative && !r.upper);
}

int64_t floor_div(int64_t a, int64_t b)
{
    int64_t q = a / b, r = a % b;
    return (r != 0 && (r < 0) != (b < 0)) ? q - 1 : q;
}

int64_t ceil_div(int64_t a, int64_t b)
{
    return -floor_div(-a, b);
}

}  // namespace

RingDescriptor make_ring(int64_t prime, int truncation)
{
    if (!is_prime(prime))
        throw std::invalid_argument("ring prime must be a prime number");
    if (truncation < 0)
        throw std::invalid_argument("ring truncation must be nonnegative");
    return RingDescriptor{prime, truncation};
}

int64_t generator_degree(const RingDescriptor& ring, int index)
{
    if (index < 0 || index > ring.truncation)
        throw std::out_of_range("generator index out of range");
    if (index == 0)
        return 0;
    int64_t power = 1;
    for (int i = 0; i < index; ++i)
        power *= ring.prime;
    return 2 * (power - 1);
}

IdealSpec make_ideal(const RingDescriptor& ring, int top)
{
    if (top < 0)
        throw std::invalid_argument("ideal must contain at least the index-0 generator");
    if (top > ring.truncation)
        throw TruncationExceeded("ideal index exceeds ring truncation");
    return IdealSpec{top};
}

bool degreewise_finite(const RingDescriptor& ring, const ExponentConstraint& c)
{
    const int n = ring.truncation;
    if (static_cast<int>(c.ranges.size()) != n)
        throw std::invalid_argument("constraint size does not match truncation");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && neg_capable(c.ranges[i]) && pos_capable(c.ranges[j]))
                return false;
    return true;
}

std::vector<Monomial> monomials_of_degree(const RingDescriptor& ring,
                                          const ExponentConstraint& c,
                                          int64_t degree)
{
    if (!degreewise_finite(ring, c))
        throw NonFiniteDegreewise("constraint admits opposite unbounded directions");

    const int n = ring.truncation;
    if (n == 0)
        return degree == 0 ? std::vector<Monomial>{Monomial{}} : std::vector<Monomial>{};

    std::vector<int64_t> w(n);
    for (int i = 0; i < n; ++i)
        w[i] = generator_degree(ring, i + 1);

    constexpr int64_t unset = std::numeric_limits<int64_t>::min();
    std::vector<int64_t> lo(n, unset), hi(n, unset);
    for (int i = 0; i < n; ++i) {
        switch (c.ranges[i].kind) {
            case Kind::nonnegative:
                lo[i] = 0;
                if (c.ranges[i].upper) {
                    if (*c.ranges[i].upper <= 0)
                        return {};
                    hi[i] = *c.ranges[i].upper - 1;
                }
                break;
            case Kind::strictly_negative:
                hi[i] = -1;
                break;
            case Kind::all_integers:
                break;
        }
    }

    // Close unbounded ends.  Finiteness guarantees that whenever an end is
    // open, the complementary ends of all other variables are closed.
    for (int i = 0; i < n; ++i) {
        if (hi[i] == unset) {
            int64_t rest = 0;
            for (int j = 0; j < n; ++j)
                if (j != i)
                    rest += lo[j] * w[j];
            hi[i] = floor_div(degree - rest, w[i]);
        }
    }
    for (int i = 0; i < n; ++i) {
        if (lo[i] == unset) {
            int64_t rest = 0;
            for (int j = 0; j < n; ++j)
                if (j != i)
                    rest += hi[j] * w[j];
            lo[i] = ceil_div(degree - rest, w[i]);
        }
    }
    for (int i = 0; i < n; ++i)
        if (lo[i] > hi[i])
            return {};

    // Suffix contribution windows for pruning.
    std::vector<int64_t> suf_min(n + 1, 0), suf_max(n + 1, 0);
    for (int i = n - 1; i >= 0; --i) {
        suf_min[i] = suf_min[i + 1] + lo[i] * w[i];
        suf_max[i] = suf_max[i + 1] + hi[i] * w[i];
    }

    std::vector<Monomial> out;
    Monomial cur(n, 0);
    auto rec = [&](auto&& self, int idx, int64_t remaining) -> void {
        if (idx == n) {
            if (remaining == 0)
                out.push_back(cur);
            return;
        }
        int64_t a_lo = std::max<int64_t>(lo[idx], ceil_div(remaining - suf_max[idx + 1], w[idx]));
        int64_t a_hi = std::min<int64_t>(hi[idx], floor_div(remaining - suf_min[idx + 1], w[idx]));
        for (int64_t a = a_lo; a <= a_hi; ++a) {
            cur[idx] = static_cast<int>(a);
            self(self, idx + 1, remaining - a * w[idx]);
        }
        cur[idx] = 0;
    };
    rec(rec, 0, degree);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace chromatic
