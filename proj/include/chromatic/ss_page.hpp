#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chromatic/cohomology.hpp"

namespace chromatic {

// E_2-page columns of the descent spectral sequence at chromatic level n:
// column s is the s-th derived localization of the input.  Columns above n
// vanish.  Column 0 is flagged when it literally equals the input, in which
// case its elements are permanent cycles.
struct E2Page {
    int level = 0;  // n
    std::map<int, ModuleSum> columns;
    bool column0_is_input = false;

    ModuleSum column(int s) const;
};

E2Page assemble_e2_page(const RingDescriptor& ring, const ModuleSum& input, int n);

// Differentials d_r go from column s to column s + r for r >= 2.  A page
// collapses when no nonzero column can support one: column 0 consists of
// permanent cycles when it carries the input, and any other source needs a
// nonzero target column.
struct CollapseVerdict {
    bool collapsed = false;
    std::vector<std::pair<int, int>> differentials;  // (source column, page r)
};

CollapseVerdict detect_collapse(const E2Page& page);

// Associated graded of the abutment for a collapsed page: contribution of
// column s appears shifted by S^-s.  Pieces are listed by descending
// filtration; a two-column page renders as a short exact sequence with the
// deeper piece as the submodule.
struct AbutmentReport {
    struct Piece {
        int column;
        ModuleSum module;  // already shifted by S^-column
    };
    std::vector<Piece> pieces;
    std::optional<std::string> short_exact_sequence;
    bool splits = false;  // column 0 carries the input and lifts to the abutment
};

AbutmentReport abutment_report(const RingDescriptor& ring, const E2Page& page);

std::string to_text(const E2Page& page, const CollapseVerdict& verdict,
                    const AbutmentReport* report);
Json page_to_json(const E2Page& page, const CollapseVerdict& verdict,
                  const AbutmentReport* report);

}  // namespace chromatic
