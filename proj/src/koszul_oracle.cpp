#include "chromatic/koszul_oracle.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace chromatic {

namespace {

std::vector<int> ideal_generators(const IdealSpec& ideal)
{
    std::vector<int> gens(static_cast<size_t>(ideal.top) + 1);
    for (int i = 0; i <= ideal.top; ++i)
        gens[i] = i;
    return gens;
}

// Multiplies a basis monomial of the module by v_index^power.  Returns the
// image monomial together with the p-exponent it picks up, or nullopt when
// the product dies in the quotient.
std::optional<std::pair<Monomial, int>> generator_multiply(const CyclicModule& m,
                                                           const Monomial& monomial,
                                                           int index, int power)
{
    if (index == 0)
        return std::make_pair(monomial, power);
    Monomial image = monomial;
    image[index - 1] += power;
    auto it = m.exponents.find(index);
    if (it != m.exponents.end()) {
        if (it->second == kInfExponent) {
            if (image[index - 1] > -1)
                return std::nullopt;  // climbed out of the colimit tower
        }
        else if (image[index - 1] >= it->second) {
            return std::nullopt;  // hit the quotient relation
        }
    }
    return std::make_pair(std::move(image), 0);
}

Int p_power(int64_t p, int e)
{
    Int out = 1;
    for (int i = 0; i < e; ++i)
        out *= p;
    return out;
}

struct BasisIndex {
    std::map<std::pair<unsigned, Monomial>, int> lookup;
};

}  // namespace

bool oracle_admissible(const RingDescriptor& ring, const IdealSpec& ideal,
                       const CyclicModule& m)
{
    if (m.inverted.count(0))
        return false;
    if (auto it = m.exponents.find(0); it != m.exponents.end() && it->second == kInfExponent)
        return false;
    bool exotic = false;
    for (const auto& [index, exponent] : m.exponents)
        if (index > 0 && exponent == kInfExponent)
            exotic = true;
    for (int index : m.inverted)
        if (index > 0)
            exotic = true;
    return !exotic || ideal.top == ring.truncation;
}

void require_oracle_admissible(const RingDescriptor& ring, const IdealSpec& ideal,
                               const CyclicModule& m)
{
    if (!oracle_admissible(ring, ideal, m))
        throw UnsupportedModule(
            "module is not presentable by finitely generated p-local data here");
}

PerDegreeComplex dual_koszul_complex(const RingDescriptor& ring,
                                     const std::vector<int>& generators, int power,
                                     const CyclicModule& m, int64_t degree)
{
    if (power < 1)
        throw std::invalid_argument("ideal power must be >= 1");
    for (size_t i = 0; i < generators.size(); ++i) {
        if (generators[i] < 0 || generators[i] > ring.truncation)
            throw TruncationExceeded("generator index exceeds ring truncation");
        if (i > 0 && generators[i] <= generators[i - 1])
            throw std::invalid_argument("generators must be strictly ascending");
    }

    PerDegreeComplex complex;
    complex.degree = degree;
    complex.prime = ring.prime;
    if (auto it = m.exponents.find(0); it != m.exponents.end()) {
        if (it->second == kInfExponent)
            throw UnsupportedModule("divisible coefficient direction");
        complex.coeff_exponent = it->second;
    }
    if (m.inverted.count(0))
        throw UnsupportedModule("rational coefficient direction");

    const int count = static_cast<int>(generators.size());
    complex.bases.resize(static_cast<size_t>(count) + 1);
    std::vector<BasisIndex> index(static_cast<size_t>(count) + 1);

    const auto constraint = constraint_of(ring, m);
    for (unsigned mask = 0; mask < (1u << count); ++mask) {
        int k = std::popcount(mask);
        int64_t subset_degree = 0;
        for (int b = 0; b < count; ++b)
            if (mask & (1u << b))
                subset_degree += generator_degree(ring, generators[b]);
        auto monomials = monomials_of_degree(
            ring, constraint, degree + power * subset_degree - m.suspension);
        for (auto& monomial : monomials) {
            index[k].lookup.emplace(std::make_pair(mask, monomial),
                                    static_cast<int>(complex.bases[k].size()));
            complex.bases[k].push_back({mask, std::move(monomial)});
        }
    }

    complex.differentials.resize(count == 0 ? 0 : static_cast<size_t>(count));
    for (int k = 0; k < count; ++k) {
        IntMat d(static_cast<int>(complex.bases[k + 1].size()),
                 static_cast<int>(complex.bases[k].size()));
        for (int col = 0; col < d.cols; ++col) {
            const auto& element = complex.bases[k][col];
            for (int b = 0; b < count; ++b) {
                if (element.subset & (1u << b))
                    continue;
                int sign_count = std::popcount(element.subset & ((1u << b) - 1));
                auto image = generator_multiply(m, element.monomial, generators[b], power);
                if (!image)
                    continue;
                auto it = index[k + 1].lookup.find(
                    std::make_pair(element.subset | (1u << b), image->first));
                if (it == index[k + 1].lookup.end())
                    throw std::logic_error("image monomial missing from target basis");
                Int value = p_power(ring.prime, image->second);
                if (sign_count % 2 == 1)
                    value = -value;
                d.at(it->second, col) += value;
            }
        }
        complex.differentials[k] = std::move(d);
    }
    return complex;
}

PerDegreeComplex dual_koszul_complex(const RingDescriptor& ring,
                                     const KoszulDescriptor& desc, const CyclicModule& m,
                                     int64_t degree)
{
    if (desc.ideal.top > ring.truncation)
        throw TruncationExceeded("ideal index exceeds ring truncation");
    require_oracle_admissible(ring, desc.ideal, m);
    return dual_koszul_complex(ring, ideal_generators(desc.ideal), desc.power, m, degree);
}

namespace {

struct PositionData {
    IntMat cycles;      // generator matrix of {x : d(x) lies in the relations}
    IntMat boundaries;  // generator matrix of im(d) + relations
    int dim = 0;
};

PositionData position_data(const PerDegreeComplex& c, int k, int64_t p)
{
    PositionData out;
    const int positions = static_cast<int>(c.bases.size());
    out.dim = static_cast<int>(c.bases[k].size());
    const int e = c.coeff_exponent;

    if (k + 1 < positions && out.dim > 0) {
        const IntMat& d = c.differentials[k];
        if (e == 0) {
            out.cycles = kernel_basis(d, p);
        }
        else {
            IntMat joint = hconcat(d, scaled_identity(d.rows, p_power(p, e)));
            IntMat kern = kernel_basis(joint, p);
            out.cycles = IntMat(out.dim, kern.cols);
            for (int i = 0; i < out.dim; ++i)
                for (int j = 0; j < kern.cols; ++j)
                    out.cycles.at(i, j) = kern.at(i, j);
        }
    }
    else {
        out.cycles = IntMat::identity(out.dim);
    }

    IntMat boundary(out.dim, 0);
    if (k > 0 && out.dim > 0)
        boundary = c.differentials[k - 1];
    if (e > 0 && out.dim > 0)
        boundary = hconcat(boundary, scaled_identity(out.dim, p_power(p, e)));
    out.boundaries = std::move(boundary);
    return out;
}

PerDegreeGroup to_group(const Subquotient& q)
{
    PerDegreeGroup g;
    g.free_rank = q.free_rank;
    g.torsion_exponents = q.torsion_exponents;
    return g;
}

}  // namespace

std::vector<PerDegreeGroup> snf_cohomology(const PerDegreeComplex& complex,
                                           const SmithOptions& options)
{
    const int64_t p = complex.prime;
    const int positions = static_cast<int>(complex.bases.size());
    const int e = complex.coeff_exponent;

    for (int k = 0; k + 1 < static_cast<int>(complex.differentials.size()); ++k) {
        IntMat composite = mul(complex.differentials[k + 1], complex.differentials[k]);
        for (const Int& value : composite.a) {
            if (value == 0)
                continue;
            if (e == 0 || p_valuation(value, p) < e)
                throw NonZeroComposite("consecutive differentials do not compose to zero");
        }
    }

    std::vector<PerDegreeGroup> out(positions);
    for (int k = 0; k < positions; ++k) {
        auto data = position_data(complex, k, p);
        if (data.dim == 0)
            continue;
        out[k] = to_group(quotient_invariants(data.cycles, data.boundaries, p, options));
    }
    return out;
}

PerDegreeGroup ext_group(const RingDescriptor& ring, int k, const KoszulDescriptor& desc,
                         const CyclicModule& m, int64_t degree)
{
    if (k < 0)
        throw std::invalid_argument("cohomological degree must be nonnegative");
    auto complex = dual_koszul_complex(ring, desc, m, degree);
    if (k >= static_cast<int>(complex.bases.size()))
        return {};
    return snf_cohomology(complex)[k];
}

namespace {

// Torsion bookkeeping for one transition: splits the earlier multiset into
// a stable part and a part whose orders all grow by exactly p, optionally
// letting fresh order-p elements enter.  The split is forced, top order
// down, so the result is deterministic.
struct GrowthSplit {
    std::vector<int> stable;
    int growing = 0;
    int newcomers = 0;
};

std::optional<GrowthSplit> decompose_growth(const std::vector<int>& before,
                                            const std::vector<int>& after,
                                            bool allow_newcomers)
{
    int top = 1;
    for (int v : before)
        top = std::max(top, v + 1);
    for (int v : after)
        top = std::max(top, v);
    std::vector<int> c1(top + 2, 0), c2(top + 2, 0), stay(top + 2, 0), grow(top + 2, 0);
    for (int v : before)
        ++c1[v];
    for (int v : after)
        ++c2[v];
    for (int e = top; e >= 1; --e) {
        stay[e] = c1[e] - grow[e];
        if (stay[e] < 0)
            return std::nullopt;
        grow[e - 1] = c2[e] - stay[e];
        if (grow[e - 1] < 0)
            return std::nullopt;
    }
    // grow[0] counts elements entering at order p with no predecessor.
    if (grow[0] != 0 && !allow_newcomers)
        return std::nullopt;
    GrowthSplit split;
    split.newcomers = grow[0];
    for (int e = 1; e <= top; ++e) {
        split.stable.insert(split.stable.end(), stay[e], e);
        split.growing += grow[e];
    }
    return split;
}

int64_t exponent_mass(const PerDegreeGroup& g)
{
    int64_t mass = 0;
    for (int e : g.torsion_exponents)
        mass += e;
    return mass;
}

// A persistent image strictly smaller than its group witnesses classes that
// the composite transition has already started to kill.
bool shrunk(const PerDegreeGroup& image, const PerDegreeGroup& group)
{
    if (image.free_rank < group.free_rank)
        return true;
    return image.free_rank == group.free_rank &&
           exponent_mass(image) < exponent_mass(group);
}

struct DetectorResult {
    PerDegreeGroup colimit;
    int junk = 0;
};

// Reads the colimit off the tail of the tower data.  The persistent images
// form a nested increasing chain of subgroups of the last group.  An equal
// terminal streak of length stable_window means stabilization: a growth
// chain changes every step, and a class drifting along a finite quotient
// direction can hold its order for at most the quotient exponent many steps
// before dying, which is what the window length must out-wait.  A divisible
// summand shows as a consistent growth split over the last three persistent
// values, and the groups themselves must grow along with it: bounded groups
// can only feed immature images, never a divisible colimit.  Trailing
// entries are set aside as immature when the first one skipped is strictly
// smaller than its own group, the witness that its classes are already
// dying.
std::optional<DetectorResult> detect_colimit(const std::vector<PerDegreeGroup>& groups,
                                             const std::vector<PerDegreeGroup>& persistent,
                                             int stable_window)
{
    const int total = static_cast<int>(persistent.size());
    for (int junk = 0; junk <= total - 2; ++junk) {
        const int len = total - junk;
        if (junk > 0 && !shrunk(persistent[len], groups[len]))
            continue;
        const auto& last = persistent[len - 1];
        bool stable = len >= stable_window;
        for (int back = 2; stable && back <= stable_window; ++back)
            stable = persistent[len - back] == last;
        if (stable)
            return DetectorResult{last, junk};
        if (len >= 3) {
            const auto& a = persistent[len - 3];
            const auto& b = persistent[len - 2];
            if (a.free_rank != b.free_rank || b.free_rank != last.free_rank)
                continue;
            auto first = decompose_growth(a.torsion_exponents, b.torsion_exponents, false);
            auto second =
                decompose_growth(b.torsion_exponents, last.torsion_exponents, false);
            if (!first || !second || first->stable != second->stable ||
                first->growing != second->growing || first->growing < 1)
                continue;
            auto g1 = decompose_growth(groups[len - 3].torsion_exponents,
                                       groups[len - 2].torsion_exponents, true);
            auto g2 = decompose_growth(groups[len - 2].torsion_exponents,
                                       groups[len - 1].torsion_exponents, true);
            if (!g1 || !g2 || g1->growing < first->growing ||
                g2->growing < first->growing)
                continue;
            PerDegreeGroup colimit;
            colimit.free_rank = last.free_rank;
            colimit.torsion_exponents = first->stable;
            colimit.divisible_corank = first->growing;
            return DetectorResult{colimit, junk};
        }
    }
    return std::nullopt;
}

}  // namespace

Stabilization colim_stabilize(const RingDescriptor& ring, int k, const IdealSpec& ideal,
                              const CyclicModule& m, int64_t degree, int max_power)
{
    if (max_power < 2)
        throw std::invalid_argument("need at least two points in the power tower");
    if (k < 0)
        throw std::invalid_argument("cohomological degree must be nonnegative");
    require_oracle_admissible(ring, ideal, m);

    Stabilization out;
    if (k > ideal.top + 1) {
        // Beyond the length of the resolution every group vanishes.
        out.stabilized = true;
        for (int r = 1; r <= max_power; ++r)
            out.rows.push_back({r, {}, {}});
        return out;
    }

    std::vector<PerDegreeComplex> complexes(static_cast<size_t>(max_power) + 1);
    std::vector<PositionData> data(static_cast<size_t>(max_power) + 1);
    for (int r = 1; r <= max_power; ++r) {
        complexes[r] = dual_koszul_complex(ring, KoszulDescriptor{ideal, r}, m, degree);
        data[r] = position_data(complexes[r], k, ring.prime);
    }

    // Chain maps between consecutive powers: on the S-component the
    // transition multiplies by the product of the generators in S.
    auto transition = [&](int r) {
        const auto& src = complexes[r].bases[k];
        const auto& dst = complexes[r + 1].bases[k];
        std::map<std::pair<unsigned, Monomial>, int> lookup;
        for (size_t i = 0; i < dst.size(); ++i)
            lookup.emplace(std::make_pair(dst[i].subset, dst[i].monomial),
                           static_cast<int>(i));
        IntMat t(static_cast<int>(dst.size()), static_cast<int>(src.size()));
        for (int col = 0; col < t.cols; ++col) {
            const auto& element = src[col];
            Monomial monomial = element.monomial;
            int gain = 0;
            bool alive = true;
            for (int b = 0; b <= ideal.top && alive; ++b) {
                if (!(element.subset & (1u << b)))
                    continue;
                auto image = generator_multiply(m, monomial, b, 1);
                if (!image) {
                    alive = false;
                    break;
                }
                monomial = image->first;
                gain += image->second;
            }
            if (!alive)
                continue;
            auto it = lookup.find(std::make_pair(element.subset, monomial));
            if (it == lookup.end())
                throw std::logic_error("transition image missing from target basis");
            t.at(it->second, col) = p_power(ring.prime, gain);
        }
        return t;
    };

    std::vector<IntMat> suffix(static_cast<size_t>(max_power) + 1);
    suffix[max_power] = IntMat::identity(data[max_power].dim);
    for (int r = max_power - 1; r >= 1; --r)
        suffix[r] = mul(suffix[r + 1], transition(r));

    std::vector<PerDegreeGroup> groups, persistent;
    for (int r = 1; r <= max_power; ++r) {
        PerDegreeGroup group =
            data[r].dim == 0
                ? PerDegreeGroup{}
                : to_group(quotient_invariants(data[r].cycles, data[r].boundaries,
                                               ring.prime));
        IntMat pushed = mul(suffix[r], data[r].cycles);
        PerDegreeGroup image =
            data[max_power].dim == 0
                ? PerDegreeGroup{}
                : to_group(quotient_invariants(
                      hconcat(pushed, data[max_power].boundaries),
                      data[max_power].boundaries, ring.prime));
        groups.push_back(group);
        persistent.push_back(image);
        out.rows.push_back({r, std::move(group), std::move(image)});
    }

    int stable_window = 2;
    for (const auto& [index, exponent] : m.exponents)
        if (index > 0 && exponent != kInfExponent)
            stable_window = std::max(stable_window, exponent + 2);

    auto detected = detect_colimit(groups, persistent, stable_window);
    if (!detected)
        throw NoStabilization("power tower shows neither stabilization nor clean growth");
    out.colimit = detected->colimit;
    out.stabilized = true;
    out.junk_steps = detected->junk;
    return out;
}

Stabilization colim_stabilize(const RingDescriptor& ring, int k, const IdealSpec& ideal,
                              const ModuleSum& m, int64_t degree, int max_power)
{
    Stabilization out;
    out.stabilized = true;
    for (int r = 1; r <= max_power; ++r)
        out.rows.push_back({r, {}, {}});
    for (const auto& summand : m.summands) {
        auto part = colim_stabilize(ring, k, ideal, summand, degree, max_power);
        out.colimit += part.colimit;
        out.junk_steps = std::max(out.junk_steps, part.junk_steps);
        for (int r = 0; r < max_power; ++r) {
            out.rows[r].group += part.rows[r].group;
            out.rows[r].persistent += part.rows[r].persistent;
        }
    }
    return out;
}

ComparisonReport compare_with_symbolic(const RingDescriptor& ring,
                                       const CohomologyTable& table, const ModuleSum& m,
                                       int64_t degree_lo, int64_t degree_hi,
                                       int max_power)
{
    ComparisonReport report;
    for (int k = 0; k <= table.ideal.top + 1; ++k) {
        for (int64_t d = degree_lo; d <= degree_hi; ++d) {
            ComparisonRow row;
            row.k = k;
            row.degree = d;
            row.engine = per_degree_evaluate(ring, table.at(k), d);
            try {
                row.oracle = colim_stabilize(ring, k, table.ideal, m, d, max_power).colimit;
                row.match = row.engine == row.oracle;
            }
            catch (const NoStabilization&) {
                row.oracle_failed = true;
                row.match = false;
            }
            report.all_match = report.all_match && row.match;
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

namespace {

std::string orders_string(int64_t prime, const std::vector<int>& exponents)
{
    std::string out;
    for (size_t i = 0; i < exponents.size(); ++i) {
        if (i > 0)
            out += ";";
        out += std::to_string(prime) + "^" + std::to_string(exponents[i]);
    }
    return out;
}

Json group_to_json(const PerDegreeGroup& g)
{
    return Json{{"free_rank", g.free_rank},
                {"torsion_exponents", g.torsion_exponents},
                {"divisible_corank", g.divisible_corank},
                {"rational_rank", g.rational_rank}};
}

}  // namespace

std::string stabilization_to_csv(const RingDescriptor& ring, int k, int64_t degree,
                                 const Stabilization& s)
{
    std::ostringstream os;
    for (const auto& row : s.rows)
        os << k << "," << degree << "," << row.power << "," << row.group.free_rank << ","
           << orders_string(ring.prime, row.group.torsion_exponents) << ","
           << row.group.divisible_corank << "," << row.group.rational_rank << ",\n";
    os << k << "," << degree << ",colim," << s.colimit.free_rank << ","
       << orders_string(ring.prime, s.colimit.torsion_exponents) << ","
       << s.colimit.divisible_corank << "," << s.colimit.rational_rank << ","
       << (s.stabilized ? "true" : "false") << "\n";
    return os.str();
}

Json stabilization_to_json(const Stabilization& s)
{
    Json rows = Json::array();
    for (const auto& row : s.rows)
        rows.push_back(Json{{"r", row.power},
                            {"group", group_to_json(row.group)},
                            {"persistent", group_to_json(row.persistent)}});
    return Json{{"colimit", group_to_json(s.colimit)},
                {"stabilized", s.stabilized},
                {"junk_steps", s.junk_steps},
                {"rows", rows}};
}

std::string comparison_to_csv(const RingDescriptor& ring, const ComparisonReport& report)
{
    std::ostringstream os;
    os << "k,d,r,free_rank,torsion_orders,divisible_corank,rational_rank,stabilized,"
          "match\n";
    for (const auto& row : report.rows) {
        os << row.k << "," << row.degree << ",engine," << row.engine.free_rank << ","
           << orders_string(ring.prime, row.engine.torsion_exponents) << ","
           << row.engine.divisible_corank << "," << row.engine.rational_rank << ",,\n";
        os << row.k << "," << row.degree << ",colim," << row.oracle.free_rank << ","
           << orders_string(ring.prime, row.oracle.torsion_exponents) << ","
           << row.oracle.divisible_corank << "," << row.oracle.rational_rank << ","
           << (row.oracle_failed ? "false" : "true") << ","
           << (row.match ? "true" : "false") << "\n";
    }
    return os.str();
}

Json comparison_to_json(const ComparisonReport& report)
{
    Json rows = Json::array();
    for (const auto& row : report.rows)
        rows.push_back(Json{{"k", row.k},
                            {"d", row.degree},
                            {"engine", group_to_json(row.engine)},
                            {"oracle", group_to_json(row.oracle)},
                            {"oracle_failed", row.oracle_failed},
                            {"match", row.match}});
    return Json{{"rows", rows}, {"all_match", report.all_match}};
}

}  // namespace chromatic
