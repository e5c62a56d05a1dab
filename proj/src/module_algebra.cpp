#include "chromatic/module_algebra.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace chromatic {

namespace {

// Sort key treating the colimit direction as larger than every finite power.
int64_t exponent_key(int e)
{
    return e == kInfExponent ? std::numeric_limits<int64_t>::max() : e;
}

void check_index(const RingDescriptor& ring, int index)
{
    if (index < 0)
        throw std::invalid_argument("negative generator index");
    if (index > ring.truncation)
        throw TruncationExceeded("generator index exceeds ring truncation");
}

}  // namespace

bool cyclic_less(const CyclicModule& a, const CyclicModule& b)
{
    if (a.suspension != b.suspension)
        return a.suspension < b.suspension;
    {
        auto ia = a.exponents.begin(), ib = b.exponents.begin();
        for (; ia != a.exponents.end() && ib != b.exponents.end(); ++ia, ++ib) {
            if (ia->first != ib->first)
                return ia->first < ib->first;
            if (ia->second != ib->second)
                return exponent_key(ia->second) < exponent_key(ib->second);
        }
        if ((ia != a.exponents.end()) != (ib != b.exponents.end()))
            return ib != b.exponents.end();
    }
    return a.inverted < b.inverted;
}

std::optional<CyclicModule> normalize(const RingDescriptor& ring, CyclicModule raw)
{
    for (const auto& [index, exponent] : raw.exponents) {
        check_index(ring, index);
        if (exponent != kInfExponent && exponent < 1)
            throw std::invalid_argument("quotient exponents must be >= 1 or infinite");
    }
    for (int index : raw.inverted) {
        check_index(ring, index);
        if (raw.exponents.count(index))
            return std::nullopt;  // the generator acts both invertibly and torsionly
    }

    // Multiplication by an inverted positive-degree generator is a graded
    // isomorphism, so the suspension only matters modulo those degrees.
    int64_t g = 0;
    for (int index : raw.inverted)
        if (index > 0)
            g = std::gcd(g, generator_degree(ring, index));
    if (g > 0)
        raw.suspension = ((raw.suspension % g) + g) % g;

    return raw;
}

ModuleSum zero_module()
{
    return ModuleSum{};
}

ModuleSum module_of(const RingDescriptor& ring, CyclicModule raw)
{
    return module_sum(ring, {std::move(raw)});
}

ModuleSum module_sum(const RingDescriptor& ring, std::vector<CyclicModule> raws)
{
    ModuleSum out;
    for (auto& raw : raws)
        if (auto m = normalize(ring, std::move(raw)))
            out.summands.push_back(std::move(*m));
    std::sort(out.summands.begin(), out.summands.end(), cyclic_less);
    return out;
}

ModuleSum direct_sum(ModuleSum a, const ModuleSum& b)
{
    a.summands.insert(a.summands.end(), b.summands.begin(), b.summands.end());
    std::sort(a.summands.begin(), a.summands.end(), cyclic_less);
    return a;
}

CyclicModule free_cyclic()
{
    return CyclicModule{};
}

CyclicModule ideal_quotient(int k)
{
    CyclicModule m;
    for (int i = 0; i < k; ++i)
        m.exponents[i] = 1;
    return m;
}

ModuleSum suspend(const RingDescriptor& ring, const ModuleSum& m, int64_t t)
{
    std::vector<CyclicModule> raws = m.summands;
    for (auto& s : raws)
        s.suspension += t;
    return module_sum(ring, std::move(raws));
}

ModuleSum localize(const RingDescriptor& ring, const ModuleSum& m, int index)
{
    check_index(ring, index);
    std::vector<CyclicModule> raws;
    for (const auto& s : m.summands) {
        if (s.exponents.count(index))
            continue;  // inverting a torsion action kills the summand
        CyclicModule t = s;
        t.inverted.insert(index);
        raws.push_back(std::move(t));
    }
    return module_sum(ring, std::move(raws));
}

ModuleSum torsion_part(const RingDescriptor& ring, const ModuleSum& m, int index)
{
    check_index(ring, index);
    std::vector<CyclicModule> raws;
    for (const auto& s : m.summands)
        if (s.exponents.count(index))
            raws.push_back(s);
    return module_sum(ring, std::move(raws));
}

ModuleSum local_cokernel(const RingDescriptor& ring, const ModuleSum& m, int index)
{
    check_index(ring, index);
    std::vector<CyclicModule> raws;
    for (const auto& s : m.summands) {
        if (s.exponents.count(index) || s.inverted.count(index))
            continue;  // the localization map is already surjective
        CyclicModule t = s;
        t.exponents[index] = kInfExponent;
        raws.push_back(std::move(t));
    }
    return module_sum(ring, std::move(raws));
}

bool is_ideal_torsion(const ModuleSum& m, const IdealSpec& ideal)
{
    for (const auto& s : m.summands)
        for (int i = 0; i <= ideal.top; ++i)
            if (!s.exponents.count(i))
                return false;
    return true;
}

bool modules_equal(const ModuleSum& a, const ModuleSum& b)
{
    return a.summands == b.summands;
}

bool PerDegreeGroup::is_zero() const
{
    return free_rank == 0 && torsion_exponents.empty() && divisible_corank == 0 &&
           rational_rank == 0;
}

PerDegreeGroup& PerDegreeGroup::operator+=(const PerDegreeGroup& other)
{
    free_rank += other.free_rank;
    divisible_corank += other.divisible_corank;
    rational_rank += other.rational_rank;
    torsion_exponents.insert(torsion_exponents.end(), other.torsion_exponents.begin(),
                             other.torsion_exponents.end());
    std::sort(torsion_exponents.begin(), torsion_exponents.end());
    return *this;
}

ExponentConstraint constraint_of(const RingDescriptor& ring, const CyclicModule& m)
{
    using Kind = ExponentConstraint::Range::Kind;
    ExponentConstraint c;
    c.ranges.resize(ring.truncation);
    for (int i = 1; i <= ring.truncation; ++i) {
        auto& range = c.ranges[i - 1];
        auto it = m.exponents.find(i);
        if (it != m.exponents.end()) {
            if (it->second == kInfExponent)
                range.kind = Kind::strictly_negative;
            else
                range = {Kind::nonnegative, it->second};
        }
        else if (m.inverted.count(i)) {
            range.kind = Kind::all_integers;
        }
        else {
            range.kind = Kind::nonnegative;
        }
    }
    return c;
}

PerDegreeGroup per_degree_evaluate(const RingDescriptor& ring, const ModuleSum& m,
                                   int64_t degree)
{
    PerDegreeGroup out;
    for (const auto& s : m.summands) {
        auto monomials = monomials_of_degree(ring, constraint_of(ring, s),
                                             degree - s.suspension);
        const auto count = static_cast<int64_t>(monomials.size());
        if (count == 0)
            continue;
        if (s.inverted.count(0)) {
            out.rational_rank += count;
        }
        else if (auto it = s.exponents.find(0); it != s.exponents.end()) {
            if (it->second == kInfExponent)
                out.divisible_corank += count;
            else
                out.torsion_exponents.insert(out.torsion_exponents.end(), count,
                                             it->second);
        }
        else {
            out.free_rank += count;
        }
    }
    std::sort(out.torsion_exponents.begin(), out.torsion_exponents.end());
    return out;
}

std::string to_text(const CyclicModule& m)
{
    std::ostringstream os;
    if (m.suspension != 0)
        os << "S^" << m.suspension << " ";
    if (m.inverted.count(0))
        os << "p^-1 ";
    for (int index : m.inverted)
        if (index > 0)
            os << "v" << index << "^-1 ";
    os << "R";
    if (!m.exponents.empty()) {
        os << "/(";
        bool first = true;
        for (const auto& [index, exponent] : m.exponents) {
            if (!first)
                os << ", ";
            first = false;
            os << (index == 0 ? std::string("p") : "v" + std::to_string(index));
            if (exponent == kInfExponent)
                os << "^inf";
            else if (exponent != 1)
                os << "^" << exponent;
        }
        os << ")";
    }
    return os.str();
}

std::string to_text(const ModuleSum& m)
{
    if (m.is_zero())
        return "0";
    std::string out;
    for (size_t i = 0; i < m.summands.size(); ++i) {
        if (i > 0)
            out += " + ";
        out += to_text(m.summands[i]);
    }
    return out;
}

std::string to_text(const PerDegreeGroup& g, int64_t prime)
{
    if (g.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    auto sep = [&]() {
        if (!first)
            os << " + ";
        first = false;
    };
    if (g.free_rank > 0) {
        sep();
        os << "Z_(" << prime << ")";
        if (g.free_rank > 1)
            os << "^" << g.free_rank;
    }
    for (int e : g.torsion_exponents) {
        sep();
        os << "Z/" << prime << "^" << e;
    }
    if (g.divisible_corank > 0) {
        sep();
        os << "Z/" << prime << "^inf";
        if (g.divisible_corank > 1)
            os << "^" << g.divisible_corank;
    }
    if (g.rational_rank > 0) {
        sep();
        os << "Q";
        if (g.rational_rank > 1)
            os << "^" << g.rational_rank;
    }
    return os.str();
}

Json cyclic_to_json(const CyclicModule& m)
{
    Json exponents = Json::object();
    for (const auto& [index, exponent] : m.exponents) {
        if (exponent == kInfExponent)
            exponents[std::to_string(index)] = "inf";
        else
            exponents[std::to_string(index)] = exponent;
    }
    Json inverted = Json::array();
    for (int index : m.inverted)
        inverted.push_back(index);
    return Json{{"suspension", m.suspension}, {"exponents", exponents}, {"inverted", inverted}};
}

Json module_to_json(const ModuleSum& m)
{
    Json out = Json::array();
    for (const auto& s : m.summands)
        out.push_back(cyclic_to_json(s));
    return out;
}

namespace {

CyclicModule raw_cyclic_from_json(const Json& j)
{
    CyclicModule m;
    m.suspension = j.at("suspension").get<int64_t>();
    for (const auto& [key, value] : j.at("exponents").items()) {
        int index = std::stoi(key);
        if (value.is_string() && value.get<std::string>() == "inf")
            m.exponents[index] = kInfExponent;
        else
            m.exponents[index] = value.get<int>();
    }
    for (const auto& value : j.at("inverted"))
        m.inverted.insert(value.get<int>());
    return m;
}

}  // namespace

CyclicModule cyclic_from_json(const RingDescriptor& ring, const Json& j)
{
    auto normalized = normalize(ring, raw_cyclic_from_json(j));
    if (!normalized)
        throw std::invalid_argument("serialized cyclic module normalizes to zero");
    return *normalized;
}

ModuleSum module_from_json(const RingDescriptor& ring, const Json& j)
{
    std::vector<CyclicModule> raws;
    for (const auto& entry : j)
        raws.push_back(raw_cyclic_from_json(entry));
    return module_sum(ring, std::move(raws));
}

}  // namespace chromatic
