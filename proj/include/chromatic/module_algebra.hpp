#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "chromatic/grading.hpp"

namespace chromatic {

using Json = nlohmann::ordered_json;

// Marks a colimit quotient direction v^inf (the union of the quotients by
// all finite powers, so the generator acts surjectively and every element
// is power-torsion for it).
constexpr int kInfExponent = -1;

inline bool is_finite_exponent(int e) { return e != kInfExponent; }

// One cyclic building block
//
//     S^t (prod_{s in inverted} v_s^-1) R/(v_i^{e_i} : i in support).
//
// Canonical form: support and inverted are disjoint (otherwise the module is
// zero), exponents are >= 1 or kInfExponent, indices lie in [0, N], and the
// suspension is reduced modulo the gcd of the degrees of positively indexed
// inverted generators, since multiplication by an inverted generator is a
// graded isomorphism.
struct CyclicModule {
    int64_t suspension = 0;
    std::map<int, int> exponents;  // generator index -> power (kInfExponent allowed)
    std::set<int> inverted;

    bool operator==(const CyclicModule&) const = default;
};

bool cyclic_less(const CyclicModule& a, const CyclicModule& b);

// Canonical form of a raw block, or nullopt for the zero module.
std::optional<CyclicModule> normalize(const RingDescriptor& ring, CyclicModule raw);

// Finite formal direct sum of cyclic blocks; empty means the zero module.
// Summands are kept normalized, nonzero and sorted (multiset semantics).
struct ModuleSum {
    std::vector<CyclicModule> summands;

    bool is_zero() const { return summands.empty(); }
    bool operator==(const ModuleSum&) const = default;
};

ModuleSum zero_module();
ModuleSum module_of(const RingDescriptor& ring, CyclicModule raw);
ModuleSum module_sum(const RingDescriptor& ring, std::vector<CyclicModule> raws);
ModuleSum direct_sum(ModuleSum a, const ModuleSum& b);

// The free rank-one module R.
CyclicModule free_cyclic();
// R/(v_0, ..., v_{k-1}); k = 0 gives R itself.
CyclicModule ideal_quotient(int k);

ModuleSum suspend(const RingDescriptor& ring, const ModuleSum& m, int64_t t);

// Per summand: zero if the index sits in the support, unchanged if already
// inverted, otherwise the index is added to the inverted set.
ModuleSum localize(const RingDescriptor& ring, const ModuleSum& m, int index);

// H^0 of the one-generator localization complex: all-or-nothing per summand.
ModuleSum torsion_part(const RingDescriptor& ring, const ModuleSum& m, int index);

// H^1 of the one-generator localization complex: the cokernel of
// M -> M[1/v_index], per summand either zero or the summand with the index
// sent to the colimit quotient direction.
ModuleSum local_cokernel(const RingDescriptor& ring, const ModuleSum& m, int index);

// Every summand is annihilated by a power of each ideal generator.
bool is_ideal_torsion(const ModuleSum& m, const IdealSpec& ideal);

// Canonical-form multiset equality; sound and complete within the class.
bool modules_equal(const ModuleSum& a, const ModuleSum& b);

// Invariants of one internal graded piece.
struct PerDegreeGroup {
    int64_t free_rank = 0;
    std::vector<int> torsion_exponents;  // ascending; entry e means order p^e
    int64_t divisible_corank = 0;
    int64_t rational_rank = 0;

    bool operator==(const PerDegreeGroup&) const = default;
    bool is_zero() const;
    PerDegreeGroup& operator+=(const PerDegreeGroup& other);
};

// Exponent ranges of the positive-degree generators for one summand.
ExponentConstraint constraint_of(const RingDescriptor& ring, const CyclicModule& m);

// Aggregated coefficient structure of the degree-d piece.  Throws
// NonFiniteDegreewise when some summand has an infinite basis in fixed
// degrees.
PerDegreeGroup per_degree_evaluate(const RingDescriptor& ring, const ModuleSum& m,
                                   int64_t degree);

// Canonical text form, e.g. "S^-2 v2^-1 R/(p^inf, v1^3)"; sums join with
// " + " and the zero module prints as "0".
std::string to_text(const CyclicModule& m);
std::string to_text(const ModuleSum& m);
std::string to_text(const PerDegreeGroup& g, int64_t prime);

Json cyclic_to_json(const CyclicModule& m);
Json module_to_json(const ModuleSum& m);
CyclicModule cyclic_from_json(const RingDescriptor& ring, const Json& j);
ModuleSum module_from_json(const RingDescriptor& ring, const Json& j);

}  // namespace chromatic
