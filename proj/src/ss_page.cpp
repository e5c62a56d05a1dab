#include "chromatic/ss_page.hpp"

#include <sstream>

namespace chromatic {

ModuleSum E2Page::column(int s) const
{
    auto it = columns.find(s);
    return it == columns.end() ? zero_module() : it->second;
}

E2Page assemble_e2_page(const RingDescriptor& ring, const ModuleSum& input, int n)
{
    E2Page page;
    page.level = n;
    page.columns = cech_cohomology(ring, input, make_ideal(ring, n)).entries;
    page.column0_is_input = modules_equal(page.column(0), input);
    return page;
}

CollapseVerdict detect_collapse(const E2Page& page)
{
    CollapseVerdict verdict;
    for (const auto& [s, value] : page.columns) {
        if (value.is_zero())
            continue;
        if (s == 0 && page.column0_is_input)
            continue;  // permanent cycles
        for (int r = 2; s + r <= page.level; ++r)
            if (!page.column(s + r).is_zero())
                verdict.differentials.emplace_back(s, r);
    }
    verdict.collapsed = verdict.differentials.empty();
    return verdict;
}

AbutmentReport abutment_report(const RingDescriptor& ring, const E2Page& page)
{
    auto verdict = detect_collapse(page);
    if (!verdict.collapsed)
        throw NotCollapsed("abutment report requires a collapsed page");

    AbutmentReport report;
    for (auto it = page.columns.rbegin(); it != page.columns.rend(); ++it)
        if (!it->second.is_zero())
            report.pieces.push_back({it->first, suspend(ring, it->second, -it->first)});

    if (report.pieces.size() == 2) {
        std::ostringstream os;
        os << "0 -> " << to_text(report.pieces[0].module) << " -> abutment -> "
           << to_text(report.pieces[1].module) << " -> 0";
        report.short_exact_sequence = os.str();
    }
    report.splits = page.column0_is_input && !page.column(0).is_zero();
    return report;
}

std::string to_text(const E2Page& page, const CollapseVerdict& verdict,
                    const AbutmentReport* report)
{
    std::ostringstream os;
    os << "E2 page, level " << page.level << "\n";
    if (page.columns.empty())
        os << "  all columns vanish\n";
    for (const auto& [s, value] : page.columns) {
        os << "  column " << s << " = " << to_text(value);
        if (s == 0 && page.column0_is_input)
            os << "   [input]";
        os << "\n";
    }
    os << "verdict: " << (verdict.collapsed ? "COLLAPSED" : "UNDETERMINED") << "\n";
    for (const auto& [s, r] : verdict.differentials)
        os << "  possible d_" << r << " out of column " << s << "\n";
    if (report) {
        if (report->pieces.empty()) {
            os << "abutment = 0\n";
        }
        else if (report->short_exact_sequence) {
            os << *report->short_exact_sequence;
            if (report->splits)
                os << "   (splits: the quotient lifts)";
            os << "\n";
        }
        else {
            os << "abutment filtration:\n";
            for (const auto& piece : report->pieces)
                os << "  from column " << piece.column << ": " << to_text(piece.module)
                   << "\n";
        }
    }
    return os.str();
}

Json page_to_json(const E2Page& page, const CollapseVerdict& verdict,
                  const AbutmentReport* report)
{
    Json columns = Json::object();
    for (const auto& [s, value] : page.columns)
        columns[std::to_string(s)] = module_to_json(value);
    Json out{{"n", page.level},
             {"columns", columns},
             {"column0_is_input", page.column0_is_input},
             {"verdict", verdict.collapsed ? "COLLAPSED" : "UNDETERMINED"}};
    if (!verdict.collapsed) {
        Json diffs = Json::array();
        for (const auto& [s, r] : verdict.differentials)
            diffs.push_back(Json{{"s", s}, {"r", r}});
        out["possible_differentials"] = diffs;
    }
    if (report) {
        Json pieces = Json::array();
        for (const auto& piece : report->pieces)
            pieces.push_back(
                Json{{"s", piece.column}, {"module", module_to_json(piece.module)}});
        out["report"] = pieces;
        if (report->short_exact_sequence)
            out["ses"] = *report->short_exact_sequence;
        out["split"] = report->splits;
    }
    return out;
}

}  // namespace chromatic
