#pragma once

#include <string>
#include <vector>

#include "chromatic/cohomology.hpp"
#include "chromatic/smith.hpp"

namespace chromatic {

// The r-th power ideal (v_0^r, ..., v_top^r) of an ideal.
struct KoszulDescriptor {
    IdealSpec ideal;
    int power = 1;
};

// One internal degree of the dual Koszul complex tensored with a cyclic
// module: the k-th term is the sum over k-element generator subsets S of
// the degree-(d + power * deg v_S) piece of the module, and the
// differentials are signed generator-power multiplications.  All terms
// share the module's coefficient structure: free over Z_(p) or Z/p^e.
struct PerDegreeComplex {
    int64_t degree = 0;
    int64_t prime = 2;
    int coeff_exponent = 0;  // 0 = free; e >= 1 = Z/p^e per basis element

    struct BasisElement {
        unsigned subset;  // bit i set <=> generator index i in S
        Monomial monomial;
    };
    std::vector<std::vector<BasisElement>> bases;  // position k = 0 .. |S|max
    std::vector<IntMat> differentials;             // position k -> k+1
};

// Whether the oracle can present the module by finitely generated Z_(p)
// data: the p-direction must be a finite quotient or free, and infinite or
// inverted positive directions are allowed only when the ideal covers every
// positive-degree generator.
bool oracle_admissible(const RingDescriptor& ring, const IdealSpec& ideal,
                       const CyclicModule& m);
void require_oracle_admissible(const RingDescriptor& ring, const IdealSpec& ideal,
                               const CyclicModule& m);

// Builder on an explicit generator list; an empty list gives the one-term
// complex with the degree-d piece of the module.
PerDegreeComplex dual_koszul_complex(const RingDescriptor& ring,
                                     const std::vector<int>& generators, int power,
                                     const CyclicModule& m, int64_t degree);
PerDegreeComplex dual_koszul_complex(const RingDescriptor& ring,
                                     const KoszulDescriptor& desc, const CyclicModule& m,
                                     int64_t degree);

// Cohomology of one per-degree complex by exact Smith normal form over
// Z_(p).  Checks that consecutive differentials compose to zero.
std::vector<PerDegreeGroup> snf_cohomology(const PerDegreeComplex& complex,
                                           const SmithOptions& options = {});

// Ext^k against the power-ideal quotient, in one internal degree.
PerDegreeGroup ext_group(const RingDescriptor& ring, int k, const KoszulDescriptor& desc,
                         const CyclicModule& m, int64_t degree);

// Colimit over the power tower with the transition maps induced by the
// quotient maps between consecutive power ideals.  `group` is the Ext group
// at that power; `persistent` is the image of that group in the last one,
// which is what the colimit detector reads.
struct StabilizationRow {
    int power = 0;
    PerDegreeGroup group;
    PerDegreeGroup persistent;
};

struct Stabilization {
    PerDegreeGroup colimit;
    bool stabilized = false;
    int junk_steps = 0;  // trailing not-yet-mature entries the detector set aside
    std::vector<StabilizationRow> rows;
};

Stabilization colim_stabilize(const RingDescriptor& ring, int k, const IdealSpec& ideal,
                              const CyclicModule& m, int64_t degree, int max_power);
Stabilization colim_stabilize(const RingDescriptor& ring, int k, const IdealSpec& ideal,
                              const ModuleSum& m, int64_t degree, int max_power);

// Per-(s, d) comparison of the symbolic table against the oracle colimit.
struct ComparisonRow {
    int k = 0;
    int64_t degree = 0;
    PerDegreeGroup engine;
    PerDegreeGroup oracle;
    bool oracle_failed = false;  // detector gave up (NoStabilization)
    bool match = false;
};

struct ComparisonReport {
    std::vector<ComparisonRow> rows;
    bool all_match = true;
};

ComparisonReport compare_with_symbolic(const RingDescriptor& ring,
                                       const CohomologyTable& table, const ModuleSum& m,
                                       int64_t degree_lo, int64_t degree_hi,
                                       int max_power);

std::string comparison_to_csv(const RingDescriptor& ring, const ComparisonReport& report);
Json comparison_to_json(const ComparisonReport& report);
Json stabilization_to_json(const Stabilization& s);
std::string stabilization_to_csv(const RingDescriptor& ring, int k, int64_t degree,
                                 const Stabilization& s);

}  // namespace chromatic
