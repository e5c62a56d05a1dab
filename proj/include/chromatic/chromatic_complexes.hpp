#pragma once

#include <string>
#include <vector>

#include "chromatic/cohomology.hpp"

namespace chromatic {

// Composite of the two primitive arrows the rewrite rules know about:
// inverting a generator, and projecting a localization onto the colimit
// quotient of the inverted direction.  Composites are kept flat.
struct CanonicalMap {
    struct Step {
        enum class Kind { localize, quotient_to_infinity };
        Kind kind;
        int index;
    };
    std::vector<Step> steps;
    ModuleSum source;
    ModuleSum target;
};

CanonicalMap localize_map(const RingDescriptor& ring, ModuleSum source, int index);
// Source must have the index inverted in every summand; the target trades
// the inversion for the colimit quotient in that direction.
CanonicalMap quotient_to_infinity_map(const RingDescriptor& ring, ModuleSum source,
                                      int index);
CanonicalMap compose(CanonicalMap first, const CanonicalMap& second);

// Tower resolving R/(v_0..v_{k-1}) by one-generator localizations:
//   N_t = R/(v_0, .., v_{k-1}, v_k^inf, .., v_{t+k-1}^inf),  J_t = v_{t+k}^-1 N_t,
// with J_t -> J_{t+1} the quotient-to-infinity projection followed by the
// next localization.
struct ChromaticResolution {
    int base = 0;  // k
    int length = 0;
    std::vector<CyclicModule> torsion_terms;  // N_0 .. N_length
    std::vector<CyclicModule> terms;          // J_0 .. J_length
    std::vector<CanonicalMap> maps;           // J_t -> J_{t+1}
};

ChromaticResolution build_chromatic_resolution(const RingDescriptor& ring, int k,
                                               int length);

// Termwise image under localization away from level-n torsion: J_t survives
// exactly when t + k <= n.
struct TruncatedComplex {
    int base = 0;
    int level = 0;  // n
    std::vector<ModuleSum> terms;
};

TruncatedComplex localize_resolution(const RingDescriptor& ring,
                                     const ChromaticResolution& resolution, int n);

// Cohomology of the truncated complex by the canonical-map rewrite rules; an
// independent route to the derived localization of R/(v_0..v_{k-1}).
CohomologyTable derived_localization_via_resolution(const RingDescriptor& ring, int k,
                                                    int n);

std::string to_text(const ChromaticResolution& resolution);
std::string to_text(const CanonicalMap& map);

}  // namespace chromatic
