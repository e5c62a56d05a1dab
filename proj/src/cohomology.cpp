#include "chromatic/cohomology.hpp"

#include <sstream>

namespace chromatic {

namespace {

void check_ideal(const RingDescriptor& ring, const IdealSpec& ideal)
{
    if (ideal.top < 0)
        throw std::invalid_argument("empty ideal");
    if (ideal.top > ring.truncation)
        throw TruncationExceeded("ideal index exceeds ring truncation");
}

CohomologyTable make_table(const IdealSpec& ideal, Route route,
                           std::map<int, ModuleSum> entries)
{
    CohomologyTable table;
    table.ideal = ideal;
    table.route = route;
    for (auto& [s, value] : entries)
        if (!value.is_zero())
            table.entries.emplace(s, std::move(value));
    return table;
}

// Value of the closed form: the summand with every missing ideal direction
// sent to its colimit quotient.
CyclicModule closed_value(const CyclicModule& m, const IdealSpec& ideal)
{
    CyclicModule value = m;
    for (int j = 0; j <= ideal.top; ++j)
        if (!value.exponents.count(j))
            value.exponents[j] = kInfExponent;
    return value;
}

bool has_inverted_ideal_index(const CyclicModule& m, const IdealSpec& ideal)
{
    for (int j : m.inverted)
        if (j <= ideal.top)
            return true;
    return false;
}

std::vector<int> missing_ideal_indices(const CyclicModule& m, const IdealSpec& ideal)
{
    std::vector<int> missing;
    for (int j = 0; j <= ideal.top; ++j)
        if (!m.exponents.count(j))
            missing.push_back(j);
    return missing;
}

}  // namespace

std::string route_name(Route route)
{
    switch (route) {
        case Route::iterative: return "iterative";
        case Route::closed: return "closed";
        case Route::chromatic: return "chromatic";
    }
    return "?";
}

ModuleSum CohomologyTable::at(int s) const
{
    auto it = entries.find(s);
    return it == entries.end() ? zero_module() : it->second;
}

int CohomologyTable::max_degree() const
{
    return entries.empty() ? -1 : entries.rbegin()->first;
}

bool tables_equal(const CohomologyTable& a, const CohomologyTable& b)
{
    return a.ideal.top == b.ideal.top && a.entries == b.entries;
}

CohomologyTable local_cohomology_iterative(const RingDescriptor& ring, const ModuleSum& m,
                                           const IdealSpec& ideal)
{
    check_ideal(ring, ideal);
    std::vector<ModuleSum> table(static_cast<size_t>(ideal.top) + 2, zero_module());
    table[0] = torsion_part(ring, m, 0);
    table[1] = local_cokernel(ring, m, 0);

    for (int j = 1; j <= ideal.top; ++j) {
        for (const auto& level : table)
            for (const auto& summand : level.summands) {
                ModuleSum single{{summand}};
                if (!torsion_part(ring, single, j).is_zero() &&
                    !local_cokernel(ring, single, j).is_zero())
                    throw AmbiguousExtension("summand contributes to both rows");
            }
        std::vector<ModuleSum> next(table.size(), zero_module());
        for (size_t k = 0; k < table.size(); ++k) {
            ModuleSum piece = torsion_part(ring, table[k], j);
            if (k > 0)
                piece = direct_sum(std::move(piece), local_cokernel(ring, table[k - 1], j));
            next[k] = std::move(piece);
        }
        table = std::move(next);
    }

    std::map<int, ModuleSum> entries;
    for (size_t k = 0; k < table.size(); ++k)
        entries.emplace(static_cast<int>(k), std::move(table[k]));
    return make_table(ideal, Route::iterative, std::move(entries));
}

CohomologyTable local_cohomology_closed_form(const RingDescriptor& ring,
                                             const CyclicModule& m, const IdealSpec& ideal)
{
    check_ideal(ring, ideal);
    auto normalized = normalize(ring, m);
    if (!normalized || has_inverted_ideal_index(*normalized, ideal))
        return make_table(ideal, Route::closed, {});
    auto missing = missing_ideal_indices(*normalized, ideal);
    std::map<int, ModuleSum> entries;
    entries[static_cast<int>(missing.size())] =
        module_of(ring, closed_value(*normalized, ideal));
    return make_table(ideal, Route::closed, std::move(entries));
}

CohomologyTable local_cohomology_closed_form(const RingDescriptor& ring, const ModuleSum& m,
                                             const IdealSpec& ideal)
{
    check_ideal(ring, ideal);
    std::map<int, ModuleSum> entries;
    for (const auto& summand : m.summands) {
        auto single = local_cohomology_closed_form(ring, summand, ideal);
        for (const auto& [s, value] : single.entries) {
            auto [it, inserted] = entries.emplace(s, value);
            if (!inserted)
                it->second = direct_sum(std::move(it->second), value);
        }
    }
    return make_table(ideal, Route::closed, std::move(entries));
}

CohomologyTable cech_cohomology(const RingDescriptor& ring, const ModuleSum& m,
                                const IdealSpec& ideal)
{
    check_ideal(ring, ideal);
    std::map<int, ModuleSum> entries;
    auto add = [&](int s, ModuleSum value) {
        if (value.is_zero())
            return;
        auto [it, inserted] = entries.emplace(s, value);
        if (!inserted)
            it->second = direct_sum(std::move(it->second), value);
    };

    for (const auto& summand : m.summands) {
        ModuleSum single{{summand}};
        if (has_inverted_ideal_index(summand, ideal)) {
            // Some ideal generator already acts isomorphically, so the
            // summand is local and untouched by the higher functors.
            add(0, single);
            continue;
        }
        auto missing = missing_ideal_indices(summand, ideal);
        if (missing.empty())
            continue;  // ideal-torsion summand, all groups vanish
        if (missing.size() == 1) {
            // The localization at the single free direction is local and the
            // cokernel of the comparison map is torsion, so it computes the
            // degree-0 functor on the nose.
            add(0, localize(ring, single, missing.front()));
            continue;
        }
        add(0, single);
        add(static_cast<int>(missing.size()) - 1,
            module_of(ring, closed_value(summand, ideal)));
    }
    return make_table(ideal, Route::closed, std::move(entries));
}

ModuleSum derived_localization(const RingDescriptor& ring, const ModuleSum& m, int n, int i)
{
    if (i < 0)
        throw std::invalid_argument("derived functor index must be nonnegative");
    return cech_cohomology(ring, m, make_ideal(ring, n)).at(i);
}

ModuleSum derived_torsion(const RingDescriptor& ring, const ModuleSum& m, int n, int i)
{
    if (i < 0)
        throw std::invalid_argument("derived functor index must be nonnegative");
    return local_cohomology_closed_form(ring, m, make_ideal(ring, n)).at(i);
}

std::string to_text(const CohomologyTable& table, const std::string& label)
{
    if (table.entries.empty())
        return label + "^* = 0\n";
    std::ostringstream os;
    for (const auto& [s, value] : table.entries)
        os << label << "^" << s << " = " << to_text(value) << "\n";
    return os.str();
}

Json table_to_json(const CohomologyTable& table)
{
    Json entries = Json::array();
    for (const auto& [s, value] : table.entries)
        entries.push_back(Json{{"s", s}, {"module", module_to_json(value)}});
    return Json{{"ideal", table.ideal.top + 1},
                {"entries", entries},
                {"route", route_name(table.route)}};
}

}  // namespace chromatic
