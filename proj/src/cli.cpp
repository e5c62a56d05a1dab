#include "chromatic/cli.hpp"

#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "chromatic/chromatic_complexes.hpp"
#include "chromatic/cohomology.hpp"
#include "chromatic/expression.hpp"
#include "chromatic/koszul_oracle.hpp"
#include "chromatic/ss_page.hpp"

namespace chromatic {

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kComputation = 2;
constexpr int kMismatch = 3;

struct Options {
    int64_t prime = 2;
    int truncation = 6;
    int n = 0;
    int i = 0;
    int k = 0;
    int length = -1;
    int r_max = 8;
    std::string degrees;
    std::string format = "text";
    std::string route = "closed";
    std::string expression;
};

std::pair<int64_t, int64_t> parse_degree_range(const std::string& text)
{
    auto sep = text.find("..");
    if (sep == std::string::npos)
        throw CLI::ValidationError("--degrees", "expected a range like -20..0");
    try {
        int64_t lo = std::stoll(text.substr(0, sep));
        int64_t hi = std::stoll(text.substr(sep + 2));
        if (lo > hi)
            throw CLI::ValidationError("--degrees", "empty range");
        return {lo, hi};
    }
    catch (const std::invalid_argument&) {
        throw CLI::ValidationError("--degrees", "expected a range like -20..0");
    }
}

// Route "all" recomputes through every applicable pipeline and fails loudly
// on disagreement.
int table_command(const Options& opt, bool cech, std::ostream& out, std::ostream& err)
{
    auto ring = make_ring(opt.prime, opt.truncation);
    auto parsed = parse_expression(ring, opt.expression);
    for (const auto& warning : parsed.warnings)
        err << "warning: " << warning << "\n";
    auto ideal = make_ideal(ring, opt.n);

    // The resolution route only resolves the ideal quotients.
    auto quotient_index = [&]() -> std::optional<int> {
        for (int k = 0; k <= ring.truncation; ++k)
            if (modules_equal(parsed.module, module_of(ring, ideal_quotient(k))))
                return k;
        return std::nullopt;
    };

    CohomologyTable table;
    if (opt.route == "iterative") {
        table = cech ? cech_cohomology(ring, parsed.module, ideal)
                     : local_cohomology_iterative(ring, parsed.module, ideal);
    }
    else if (opt.route == "closed") {
        table = cech ? cech_cohomology(ring, parsed.module, ideal)
                     : local_cohomology_closed_form(ring, parsed.module, ideal);
    }
    else if (opt.route == "chromatic") {
        auto k = quotient_index();
        if (!cech || !k) {
            err << "the chromatic route applies to cech tables of R/I_k only\n";
            return kUsage;
        }
        table = derived_localization_via_resolution(ring, *k, opt.n);
    }
    else if (opt.route == "all") {
        auto closed = cech ? cech_cohomology(ring, parsed.module, ideal)
                           : local_cohomology_closed_form(ring, parsed.module, ideal);
        auto iterative = local_cohomology_iterative(ring, parsed.module, ideal);
        bool agree = cech || tables_equal(closed, iterative);
        if (cech) {
            // The sheaf-style table is pinned against the local one by the
            // degree-shift identification above degree zero.
            for (int s = 1; s <= opt.n; ++s)
                agree = agree && modules_equal(closed.at(s), iterative.at(s + 1));
        }
        if (auto k = quotient_index(); cech && k && agree)
            agree = tables_equal(closed,
                                 derived_localization_via_resolution(ring, *k, opt.n));
        if (!agree) {
            err << "route mismatch\n";
            return kMismatch;
        }
        table = closed;
    }
    else {
        err << "unknown route: " << opt.route << "\n";
        return kUsage;
    }

    if (opt.format == "json") {
        out << table_to_json(table).dump(2) << "\n";
    }
    else if (opt.format == "csv") {
        out << "s,module\n";
        for (const auto& [s, value] : table.entries)
            out << s << "," << to_text(value) << "\n";
    }
    else {
        out << to_text(table, cech ? "\xC4\x8CH" : "H");
    }
    return kOk;
}

int derived_command(const Options& opt, bool torsion, std::ostream& out, std::ostream& err)
{
    auto ring = make_ring(opt.prime, opt.truncation);
    auto parsed = parse_expression(ring, opt.expression);
    for (const auto& warning : parsed.warnings)
        err << "warning: " << warning << "\n";

    ModuleSum value = torsion ? derived_torsion(ring, parsed.module, opt.n, opt.i)
                              : derived_localization(ring, parsed.module, opt.n, opt.i);
    if (opt.route == "all" && !torsion) {
        auto ideal = make_ideal(ring, opt.n);
        auto iterative = local_cohomology_iterative(ring, parsed.module, ideal);
        ModuleSum other = opt.i == 0 ? value : iterative.at(opt.i + 1);
        if (opt.i > 0 && !modules_equal(value, other)) {
            err << "route mismatch\n";
            return kMismatch;
        }
    }
    if (opt.format == "json")
        out << module_to_json(value).dump(2) << "\n";
    else
        out << to_text(value) << "\n";
    return kOk;
}

int chromatic_command(const Options& opt, std::ostream& out, std::ostream&)
{
    auto ring = make_ring(opt.prime, opt.truncation);
    int length = opt.length >= 0 ? opt.length : ring.truncation - opt.k;
    auto resolution = build_chromatic_resolution(ring, opt.k, length);
    if (opt.format == "json") {
        Json terms = Json::array();
        for (const auto& term : resolution.terms)
            terms.push_back(cyclic_to_json(term));
        Json maps = Json::array();
        for (const auto& map : resolution.maps)
            maps.push_back(to_text(map));
        out << Json{{"k", resolution.base}, {"terms", terms}, {"maps", maps}}.dump(2)
            << "\n";
    }
    else {
        out << to_text(resolution);
    }
    return kOk;
}

int ss_command(const Options& opt, std::ostream& out, std::ostream& err)
{
    auto ring = make_ring(opt.prime, opt.truncation);
    auto parsed = parse_expression(ring, opt.expression);
    for (const auto& warning : parsed.warnings)
        err << "warning: " << warning << "\n";

    auto page = assemble_e2_page(ring, parsed.module, opt.n);
    auto verdict = detect_collapse(page);
    std::optional<AbutmentReport> report;
    if (verdict.collapsed)
        report = abutment_report(ring, page);

    if (opt.format == "json")
        out << page_to_json(page, verdict, report ? &*report : nullptr).dump(2) << "\n";
    else
        out << to_text(page, verdict, report ? &*report : nullptr);
    return kOk;
}

int eval_degree_command(const Options& opt, std::ostream& out, std::ostream& err)
{
    auto ring = make_ring(opt.prime, opt.truncation);
    auto parsed = parse_expression(ring, opt.expression);
    for (const auto& warning : parsed.warnings)
        err << "warning: " << warning << "\n";
    auto [lo, hi] = parse_degree_range(opt.degrees);

    if (opt.format == "json") {
        Json rows = Json::array();
        for (int64_t d = lo; d <= hi; ++d) {
            auto g = per_degree_evaluate(ring, parsed.module, d);
            rows.push_back(Json{{"d", d},
                                {"free_rank", g.free_rank},
                                {"torsion_exponents", g.torsion_exponents},
                                {"divisible_corank", g.divisible_corank},
                                {"rational_rank", g.rational_rank}});
        }
        out << rows.dump(2) << "\n";
    }
    else if (opt.format == "csv") {
        out << "d,free_rank,torsion_orders,divisible_corank,rational_rank\n";
        for (int64_t d = lo; d <= hi; ++d) {
            auto g = per_degree_evaluate(ring, parsed.module, d);
            out << d << "," << g.free_rank << ",";
            for (size_t i = 0; i < g.torsion_exponents.size(); ++i)
                out << (i ? ";" : "") << ring.prime << "^" << g.torsion_exponents[i];
            out << "," << g.divisible_corank << "," << g.rational_rank << "\n";
        }
    }
    else {
        for (int64_t d = lo; d <= hi; ++d)
            out << "d=" << d << ": "
                << to_text(per_degree_evaluate(ring, parsed.module, d), ring.prime)
                << "\n";
    }
    return kOk;
}

int oracle_check_command(const Options& opt, std::ostream& out, std::ostream& err)
{
    auto ring = make_ring(opt.prime, opt.truncation);
    auto parsed = parse_expression(ring, opt.expression);
    for (const auto& warning : parsed.warnings)
        err << "warning: " << warning << "\n";
    auto [lo, hi] = parse_degree_range(opt.degrees);
    auto ideal = make_ideal(ring, opt.n);

    auto closed = local_cohomology_closed_form(ring, parsed.module, ideal);
    auto iterative = local_cohomology_iterative(ring, parsed.module, ideal);
    if (!tables_equal(closed, iterative)) {
        err << "route mismatch before oracle comparison\n";
        return kMismatch;
    }
    auto report = compare_with_symbolic(ring, closed, parsed.module, lo, hi, opt.r_max);

    if (opt.format == "json")
        out << comparison_to_json(report).dump(2) << "\n";
    else if (opt.format == "csv")
        out << comparison_to_csv(ring, report);
    else
        for (const auto& row : report.rows)
            out << "s=" << row.k << " d=" << row.degree << ": engine "
                << to_text(row.engine, ring.prime) << ", oracle "
                << (row.oracle_failed ? std::string("no stabilization")
                                      : to_text(row.oracle, ring.prime))
                << (row.match ? "" : "  <-- mismatch") << "\n";
    if (!report.all_match) {
        err << "oracle mismatch\n";
        return kMismatch;
    }
    return kOk;
}

}  // namespace

CliResult run_cli(const std::vector<std::string>& args)
{
    CliResult result;
    std::ostringstream out, err;

    CLI::App app{"symbolic local cohomology of chromatic module sums"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* cmd, bool with_expr) {
        cmd->add_option("--prime", opt.prime, "p-local prime")->capture_default_str();
        cmd->add_option("--truncation", opt.truncation, "number of positive generators")
            ->capture_default_str();
        cmd->add_option("--format", opt.format, "text|json|csv")->capture_default_str();
        if (with_expr)
            cmd->add_option("expression", opt.expression, "module expression")->required();
    };

    auto* lc = app.add_subcommand("lc", "local cohomology table");
    add_common(lc, true);
    lc->add_option("--n", opt.n, "ideal level (generators v0..vn)")->required();
    lc->add_option("--route", opt.route, "closed|iterative|all")->capture_default_str();

    auto* cech = app.add_subcommand("cech", "derived localization table");
    add_common(cech, true);
    cech->add_option("--n", opt.n, "ideal level")->required();
    cech->add_option("--route", opt.route, "closed|iterative|chromatic|all")
        ->capture_default_str();

    auto* ln = app.add_subcommand("ln", "one derived localization group");
    add_common(ln, true);
    ln->add_option("--n", opt.n, "chromatic level")->required();
    ln->add_option("--i", opt.i, "derived degree")->required();
    ln->add_option("--route", opt.route, "closed|all")->capture_default_str();

    auto* tn = app.add_subcommand("tn", "one derived torsion group");
    add_common(tn, true);
    tn->add_option("--n", opt.n, "chromatic level")->required();
    tn->add_option("--i", opt.i, "derived degree")->required();

    auto* chrom = app.add_subcommand("chromatic", "print a chromatic resolution");
    add_common(chrom, false);
    chrom->add_option("--k", opt.k, "resolved quotient index")->required();
    chrom->add_option("--length", opt.length, "number of tower steps");

    auto* ss = app.add_subcommand("ss", "assemble the E2 page and its abutment");
    add_common(ss, true);
    ss->add_option("--n", opt.n, "chromatic level")->required();

    auto* eval = app.add_subcommand("eval-degree", "per-degree invariants");
    add_common(eval, true);
    eval->add_option("--degrees", opt.degrees, "range a..b")->required();

    auto* oracle = app.add_subcommand("oracle-check", "engine vs power-tower oracle");
    add_common(oracle, true);
    oracle->add_option("--n", opt.n, "ideal level")->required();
    oracle->add_option("--degrees", opt.degrees, "range a..b")->required();
    oracle->add_option("--r-max", opt.r_max, "largest ideal power")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
        if (lc->parsed())
            result.exit_code = table_command(opt, false, out, err);
        else if (cech->parsed())
            result.exit_code = table_command(opt, true, out, err);
        else if (ln->parsed())
            result.exit_code = derived_command(opt, false, out, err);
        else if (tn->parsed())
            result.exit_code = derived_command(opt, true, out, err);
        else if (chrom->parsed())
            result.exit_code = chromatic_command(opt, out, err);
        else if (ss->parsed())
            result.exit_code = ss_command(opt, out, err);
        else if (eval->parsed())
            result.exit_code = eval_degree_command(opt, out, err);
        else if (oracle->parsed())
            result.exit_code = oracle_check_command(opt, out, err);
    }
    catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        result.exit_code = e.get_exit_code() == 0 ? kOk : kUsage;
    }
    catch (const ParseError& e) {
        err << "parse error at position " << e.position << ": " << e.what() << "\n";
        result.exit_code = kUsage;
    }
    catch (const TruncationExceeded& e) {
        err << e.what() << "\n";
        result.exit_code = kUsage;
    }
    catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        result.exit_code = kUsage;
    }
    catch (const NonFiniteDegreewise& e) {
        err << "computation error: " << e.what() << "\n";
        result.exit_code = kComputation;
    }
    catch (const UnsupportedModule& e) {
        err << "computation error: " << e.what() << "\n";
        result.exit_code = kComputation;
    }
    catch (const NoStabilization& e) {
        err << "computation error: " << e.what() << "\n";
        result.exit_code = kComputation;
    }
    catch (const std::exception& e) {
        err << "computation error: " << e.what() << "\n";
        result.exit_code = kComputation;
    }

    result.out = out.str();
    result.err = err.str();
    return result;
}

}  // namespace chromatic
