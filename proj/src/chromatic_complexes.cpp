#include "chromatic/chromatic_complexes.hpp"

#include <sstream>

namespace chromatic {

CanonicalMap localize_map(const RingDescriptor& ring, ModuleSum source, int index)
{
    CanonicalMap map;
    map.steps.push_back({CanonicalMap::Step::Kind::localize, index});
    map.target = localize(ring, source, index);
    map.source = std::move(source);
    return map;
}

CanonicalMap quotient_to_infinity_map(const RingDescriptor& ring, ModuleSum source,
                                      int index)
{
    std::vector<CyclicModule> raws;
    for (const auto& summand : source.summands) {
        if (!summand.inverted.count(index))
            throw std::invalid_argument(
                "quotient-to-infinity requires the index to be inverted in the source");
        CyclicModule t = summand;
        t.inverted.erase(index);
        t.exponents[index] = kInfExponent;
        raws.push_back(std::move(t));
    }
    CanonicalMap map;
    map.steps.push_back({CanonicalMap::Step::Kind::quotient_to_infinity, index});
    map.target = module_sum(ring, std::move(raws));
    map.source = std::move(source);
    return map;
}

CanonicalMap compose(CanonicalMap first, const CanonicalMap& second)
{
    if (!modules_equal(first.target, second.source))
        throw std::invalid_argument("composite of canonical maps does not line up");
    first.steps.insert(first.steps.end(), second.steps.begin(), second.steps.end());
    first.target = second.target;
    return first;
}

ChromaticResolution build_chromatic_resolution(const RingDescriptor& ring, int k,
                                               int length)
{
    if (k < 0 || length < 0)
        throw std::invalid_argument("resolution base and length must be nonnegative");
    if (k + length > ring.truncation)
        throw TruncationExceeded("resolution runs past the ring truncation");

    ChromaticResolution res;
    res.base = k;
    res.length = length;

    CyclicModule torsion = ideal_quotient(k);
    for (int t = 0; t <= length; ++t) {
        res.torsion_terms.push_back(torsion);
        CyclicModule local = torsion;
        local.inverted.insert(t + k);
        res.terms.push_back(local);
        torsion.exponents[t + k] = kInfExponent;
    }
    for (int t = 0; t < length; ++t) {
        auto projection = quotient_to_infinity_map(ring, module_of(ring, res.terms[t]), t + k);
        auto localization = localize_map(ring, projection.target, t + k + 1);
        res.maps.push_back(compose(std::move(projection), localization));
    }
    return res;
}

TruncatedComplex localize_resolution(const RingDescriptor& ring,
                                     const ChromaticResolution& resolution, int n)
{
    if (n > ring.truncation)
        throw TruncationExceeded("level exceeds ring truncation");
    TruncatedComplex out;
    out.base = resolution.base;
    out.level = n;
    for (int t = 0; t <= resolution.length; ++t) {
        // Each J_t has v_{t+base} inverted and is torsion below it, so it is
        // untouched at levels >= t+base and dies at levels < t+base.
        if (t + resolution.base <= n)
            out.terms.push_back(module_of(ring, resolution.terms[t]));
        else
            out.terms.push_back(zero_module());
    }
    return out;
}

CohomologyTable derived_localization_via_resolution(const RingDescriptor& ring, int k,
                                                    int n)
{
    if (k < 0 || n < 0)
        throw std::invalid_argument("negative resolution parameters");
    if (k > ring.truncation || n > ring.truncation)
        throw TruncationExceeded("parameters exceed ring truncation");

    CohomologyTable table;
    table.ideal = make_ideal(ring, n);
    table.route = Route::chromatic;
    if (k > n)
        return table;

    int surviving = n - k;  // highest t with J_t alive
    int length = std::min(surviving + 1, ring.truncation - k);
    auto resolution = build_chromatic_resolution(ring, k, length);
    auto truncated = localize_resolution(ring, resolution, n);

    // Degree 0: when the next term survives, the kernel of J_0 -> J_1 is the
    // resolved module itself; otherwise all of J_0.
    if (surviving >= 1 && !truncated.terms[1].is_zero())
        table.entries.emplace(0, module_of(ring, resolution.torsion_terms[0]));
    else
        table.entries.emplace(0, truncated.terms[0]);

    // Top degree: the cokernel of J_{T-1} -> J_T is the colimit quotient of
    // the last torsion term in the level-n direction.  Middle degrees vanish
    // by exactness of the tower.
    if (surviving >= 1) {
        ModuleSum top = local_cokernel(
            ring, module_of(ring, resolution.torsion_terms[surviving]), n);
        if (!top.is_zero())
            table.entries.emplace(surviving, std::move(top));
    }
    return table;
}

std::string to_text(const CanonicalMap& map)
{
    std::ostringstream os;
    bool first = true;
    for (const auto& step : map.steps) {
        if (!first)
            os << "; ";
        first = false;
        const std::string gen =
            step.index == 0 ? std::string("p") : "v" + std::to_string(step.index);
        if (step.kind == CanonicalMap::Step::Kind::localize)
            os << "invert " << gen;
        else
            os << "quotient by the " << gen << "-tower";
    }
    return os.str();
}

std::string to_text(const ChromaticResolution& resolution)
{
    std::ostringstream os;
    os << to_text(resolution.torsion_terms[0]) << " -> J_*\n";
    for (int t = 0; t <= resolution.length; ++t) {
        os << "  J_" << t << " = " << to_text(resolution.terms[t]) << "\n";
        if (t < resolution.length)
            os << "    -> " << to_text(resolution.maps[t]) << "\n";
    }
    return os.str();
}

}  // namespace chromatic
