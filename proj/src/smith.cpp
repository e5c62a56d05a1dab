#include "chromatic/smith.hpp"

#include <algorithm>

#include <boost/multiprecision/cpp_int.hpp>

namespace chromatic {

namespace {

using boost::multiprecision::gcd;

// Splits x = p^val * unit.
std::pair<int, Int> split_valuation(Int x, int64_t p)
{
    int val = 0;
    while (x != 0 && x % p == 0) {
        x /= p;
        ++val;
    }
    return {val, x};
}

}  // namespace

IntMat IntMat::identity(int n)
{
    IntMat m(n, n);
    for (int i = 0; i < n; ++i)
        m.at(i, i) = 1;
    return m;
}

IntMat mul(const IntMat& a, const IntMat& b)
{
    if (a.cols != b.rows)
        throw std::logic_error("matrix dimension mismatch");
    IntMat out(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            const Int& aik = a.at(i, k);
            if (aik == 0)
                continue;
            for (int j = 0; j < b.cols; ++j) {
                const Int& bkj = b.at(k, j);
                if (bkj != 0)
                    out.at(i, j) += aik * bkj;
            }
        }
    return out;
}

IntMat hconcat(const IntMat& a, const IntMat& b)
{
    if (a.rows != b.rows)
        throw std::logic_error("row count mismatch in concatenation");
    IntMat out(a.rows, a.cols + b.cols);
    for (int i = 0; i < a.rows; ++i) {
        for (int j = 0; j < a.cols; ++j)
            out.at(i, j) = a.at(i, j);
        for (int j = 0; j < b.cols; ++j)
            out.at(i, a.cols + j) = b.at(i, j);
    }
    return out;
}

IntMat scaled_identity(int n, const Int& value)
{
    IntMat m(n, n);
    for (int i = 0; i < n; ++i)
        m.at(i, i) = value;
    return m;
}

int p_valuation(const Int& x, int64_t p)
{
    if (x == 0)
        return kZeroValuation;
    return split_valuation(x, p).first;
}

std::vector<int> smith_invariants(IntMat m, int64_t p, const SmithOptions& options)
{
    std::vector<int> invariants;
    int pos = 0;
    const int limit = std::min(m.rows, m.cols);
    while (pos < limit) {
        // Pivot of minimal valuation in the remaining submatrix; it divides
        // everything there over Z_(p), so no later fixups are needed.
        int best = kZeroValuation;
        std::vector<std::pair<int, int>> candidates;
        for (int i = pos; i < m.rows; ++i)
            for (int j = pos; j < m.cols; ++j) {
                int v = p_valuation(m.at(i, j), p);
                if (v < best) {
                    best = v;
                    candidates.clear();
                }
                if (v == best && v != kZeroValuation)
                    candidates.emplace_back(i, j);
            }
        if (candidates.empty())
            break;
        auto [pi, pj] = options.rng
                            ? candidates[(*options.rng)() % candidates.size()]
                            : candidates.front();
        for (int j = 0; j < m.cols; ++j)
            std::swap(m.at(pos, j), m.at(pi, j));
        for (int i = 0; i < m.rows; ++i)
            std::swap(m.at(i, pos), m.at(i, pj));

        auto [pval, punit] = split_valuation(m.at(pos, pos), p);
        // Clear the pivot column with row operations, then the pivot row
        // with column operations; the second pass preserves the zeros.
        for (int i = pos + 1; i < m.rows; ++i) {
            if (m.at(i, pos) == 0)
                continue;
            auto [ev, eu] = split_valuation(m.at(i, pos), p);
            Int shift = Int(1);
            for (int k = 0; k < ev - pval; ++k)
                shift *= p;
            for (int j = pos; j < m.cols; ++j)
                m.at(i, j) = punit * m.at(i, j) - shift * eu * m.at(pos, j);
        }
        for (int j = pos + 1; j < m.cols; ++j) {
            if (m.at(pos, j) == 0)
                continue;
            auto [ev, eu] = split_valuation(m.at(pos, j), p);
            Int shift = Int(1);
            for (int k = 0; k < ev - pval; ++k)
                shift *= p;
            for (int i = pos; i < m.rows; ++i)
                m.at(i, j) = punit * m.at(i, j) - shift * eu * m.at(i, pos);
        }
        invariants.push_back(pval);
        ++pos;
    }
    std::sort(invariants.begin(), invariants.end());
    return invariants;
}

namespace {

// Column echelon pass; optionally tracks the column transform to read off a
// kernel basis.
struct Echelon {
    IntMat mat;
    IntMat transform;  // square, invertible over Z_(p)
    std::vector<int> pivot_rows;
    int rank = 0;
};

Echelon column_echelon(IntMat m, int64_t p, bool want_transform)
{
    Echelon e;
    e.transform = want_transform ? IntMat::identity(m.cols) : IntMat();
    std::vector<bool> row_used(m.rows, false);
    int c = 0;
    while (c < m.cols) {
        int best = kZeroValuation, bi = -1, bj = -1;
        for (int i = 0; i < m.rows; ++i) {
            if (row_used[i])
                continue;
            for (int j = c; j < m.cols; ++j) {
                int v = p_valuation(m.at(i, j), p);
                if (v < best) {
                    best = v;
                    bi = i;
                    bj = j;
                }
            }
        }
        if (bi < 0)
            break;
        for (int i = 0; i < m.rows; ++i)
            std::swap(m.at(i, c), m.at(i, bj));
        if (want_transform)
            for (int i = 0; i < e.transform.rows; ++i)
                std::swap(e.transform.at(i, c), e.transform.at(i, bj));

        auto [pval, punit] = split_valuation(m.at(bi, c), p);
        // Clearing only to the right keeps the trailing columns zero at all
        // pivot rows: later combinations use columns that already vanish
        // there.
        for (int j = c + 1; j < m.cols; ++j) {
            if (m.at(bi, j) == 0)
                continue;
            auto [ev, eu] = split_valuation(m.at(bi, j), p);
            if (ev < pval)
                throw std::logic_error("pivot was not minimal");
            Int shift = Int(1);
            for (int k = 0; k < ev - pval; ++k)
                shift *= p;
            for (int i = 0; i < m.rows; ++i)
                m.at(i, j) = punit * m.at(i, j) - shift * eu * m.at(i, c);
            if (want_transform)
                for (int i = 0; i < e.transform.rows; ++i)
                    e.transform.at(i, j) =
                        punit * e.transform.at(i, j) - shift * eu * e.transform.at(i, c);
        }
        row_used[bi] = true;
        e.pivot_rows.push_back(bi);
        ++c;
    }
    e.rank = c;
    e.mat = std::move(m);
    return e;
}

IntMat take_columns(const IntMat& m, int from, int to)
{
    IntMat out(m.rows, to - from);
    for (int i = 0; i < m.rows; ++i)
        for (int j = from; j < to; ++j)
            out.at(i, j - from) = m.at(i, j);
    return out;
}

}  // namespace

IntMat column_echelon_basis(IntMat gens, int64_t p)
{
    auto e = column_echelon(std::move(gens), p, false);
    return take_columns(e.mat, 0, e.rank);
}

IntMat kernel_basis(const IntMat& m, int64_t p)
{
    auto e = column_echelon(m, p, true);
    return take_columns(e.transform, e.rank, e.transform.cols);
}

IntMat solve_in_span(const IntMat& basis, const IntMat& target, int64_t p)
{
    using boost::multiprecision::cpp_rational;
    const int n = basis.rows, u = basis.cols, w = target.cols;
    if (target.rows != n)
        throw std::logic_error("row count mismatch in solve");

    std::vector<cpp_rational> a(static_cast<size_t>(n) * u);
    std::vector<cpp_rational> y(static_cast<size_t>(n) * w);
    auto A = [&](int i, int j) -> cpp_rational& { return a[static_cast<size_t>(i) * u + j]; };
    auto Y = [&](int i, int j) -> cpp_rational& { return y[static_cast<size_t>(i) * w + j]; };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < u; ++j)
            A(i, j) = cpp_rational(basis.at(i, j));
        for (int j = 0; j < w; ++j)
            Y(i, j) = cpp_rational(target.at(i, j));
    }

    std::vector<int> pivot_row(u, -1);
    std::vector<bool> used(n, false);
    for (int c = 0; c < u; ++c) {
        int pr = -1;
        for (int i = 0; i < n; ++i)
            if (!used[i] && A(i, c) != 0) {
                pr = i;
                break;
            }
        if (pr < 0)
            throw std::logic_error("basis is not of full column rank");
        used[pr] = true;
        pivot_row[c] = pr;
        for (int i = 0; i < n; ++i) {
            if (i == pr || A(i, c) == 0)
                continue;
            cpp_rational f = A(i, c) / A(pr, c);
            for (int j = c; j < u; ++j)
                A(i, j) -= f * A(pr, j);
            for (int j = 0; j < w; ++j)
                Y(i, j) -= f * Y(pr, j);
        }
    }
    // Rows without pivots must have been annihilated for every target column.
    for (int i = 0; i < n; ++i)
        if (!used[i])
            for (int j = 0; j < w; ++j)
                if (Y(i, j) != 0)
                    throw std::logic_error("target column lies outside the span");

    // X(c, j) = Y(pivot_row[c], j) / A(pivot_row[c], c); rescale columns by
    // their denominator, which must be a p-unit for Z_(p) membership.
    IntMat out(u, w);
    for (int j = 0; j < w; ++j) {
        std::vector<cpp_rational> col(u);
        Int denom = 1;
        for (int c = 0; c < u; ++c) {
            col[c] = Y(pivot_row[c], j) / A(pivot_row[c], c);
            Int d = boost::multiprecision::denominator(col[c]);
            denom = denom / gcd(denom, d) * d;
        }
        if (denom % p == 0)
            throw std::logic_error("solution is not p-integral");
        for (int c = 0; c < u; ++c) {
            cpp_rational scaled = col[c] * denom;
            out.at(c, j) = boost::multiprecision::numerator(scaled);
        }
    }
    return out;
}

Subquotient quotient_invariants(const IntMat& big, const IntMat& small, int64_t p,
                                const SmithOptions& options)
{
    IntMat basis = column_echelon_basis(big, p);
    if (basis.cols == 0) {
        for (int i = 0; i < small.rows; ++i)
            for (int j = 0; j < small.cols; ++j)
                if (small.at(i, j) != 0)
                    throw std::logic_error("small span not inside zero span");
        return {};
    }
    IntMat coords = solve_in_span(basis, small, p);
    auto invariants = smith_invariants(std::move(coords), p, options);
    Subquotient out;
    out.free_rank = basis.cols - static_cast<int>(invariants.size());
    for (int e : invariants)
        if (e > 0)
            out.torsion_exponents.push_back(e);
    return out;
}

}  // namespace chromatic
