#pragma once

#include <map>
#include <string>

#include "chromatic/module_algebra.hpp"

namespace chromatic {

enum class Route { iterative, closed, chromatic };

std::string route_name(Route route);

// Graded table s -> module.  Local tables live in 0..top+1, the sheaf-style
// ones in 0..top; only nonzero entries are stored.
struct CohomologyTable {
    IdealSpec ideal;
    Route route = Route::closed;
    std::map<int, ModuleSum> entries;

    ModuleSum at(int s) const;
    int max_degree() const;  // largest s with a nonzero entry, -1 when empty
};

// Same ideal and same entries; the provenance tag is not compared.
bool tables_equal(const CohomologyTable& a, const CohomologyTable& b);

// Torsion/cokernel tower: the index-0 generator first, then one generator at
// a time through the degenerate two-row assembly.  Each summand lands
// entirely on one side of every step, so no extension problems arise.
CohomologyTable local_cohomology_iterative(const RingDescriptor& ring, const ModuleSum& m,
                                           const IdealSpec& ideal);

// Closed form per summand: zero if some ideal index is inverted; otherwise
// concentrated in degree |F| where F is the set of ideal indices missing
// from the support, with value the summand extended by colimit quotients in
// the F directions.
CohomologyTable local_cohomology_closed_form(const RingDescriptor& ring,
                                             const CyclicModule& m, const IdealSpec& ideal);
CohomologyTable local_cohomology_closed_form(const RingDescriptor& ring, const ModuleSum& m,
                                             const IdealSpec& ideal);

// Degree-shifted companion of the local table: a four-term comparison in
// degree 0/1 and an identification one degree down above that.
CohomologyTable cech_cohomology(const RingDescriptor& ring, const ModuleSum& m,
                                const IdealSpec& ideal);

// Right derived functors of localization away from level-n torsion and of
// the level-n torsion submodule functor.
ModuleSum derived_localization(const RingDescriptor& ring, const ModuleSum& m, int n, int i);
ModuleSum derived_torsion(const RingDescriptor& ring, const ModuleSum& m, int n, int i);

std::string to_text(const CohomologyTable& table, const std::string& label);
Json table_to_json(const CohomologyTable& table);

}  // namespace chromatic
