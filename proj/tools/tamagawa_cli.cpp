#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "tamagawa/harness.hpp"

namespace {

using namespace tamagawa;

std::string default_family_path() {
    return std::string(TAMAGAWA_DATA_DIR) + "/torsion_2_14.json";
}

Rat parse_rat_arg(const std::string& text) {
    Rat q;
    if (mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0 || q.get_den() == 0)
        throw CLI::ValidationError("rational", "cannot parse \"" + text + "\"");
    q.canonicalize();
    return q;
}

// 0 = clean report, 1 = at least one failed check, 2 = operational error
int emit(const ScanReport& report, const std::string& out_path) {
    const std::string text = report.to_json();
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "error: cannot open " << out_path << "\n";
            return 2;
        }
        out << text;
    }
    return report.clean() ? 0 : 1;
}

struct CommonArgs {
    std::string out;
    int workers = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--out", args.out, "write the JSON report to this file");
    cmd->add_option("--workers", args.workers,
                    "worker threads (0 = hardware concurrency)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"local reduction scans over elliptic curve families"};
    app.require_subcommand(1);

    CommonArgs common;
    ScanOptions opts;

    auto* scan = app.add_subcommand("scan", "enumerate fibers and check divisibility");
    scan->require_subcommand(1);

    long height = 0, twists = 0, n = 0, pbound = 0;
    unsigned long long seed = 0;
    std::string family_path = default_family_path();
    std::string only_u, only_h;
    std::optional<long> only_d;

    auto* torsion = scan->add_subcommand(
        "torsion", "fibers of the rank-one torsion family by parameter height");
    torsion->add_option("--height", height, "max parameter height")->required();
    torsion->add_option("--family", family_path, "family definition file");
    torsion->add_option("--only-u", only_u, "restrict to one parameter value");
    add_common(torsion, common);

    auto* x0 = scan->add_subcommand(
        "x0", "fibers of a modular curve parameterization, with quadratic twists");
    x0->add_option("--n", n, "isogeny level (6, 8, 10 or 18)")->required();
    x0->add_option("--height", height, "max parameter height")->required();
    x0->add_option("--twists", twists, "max |d| over squarefree twists")->required();
    x0->add_option("--only-h", only_h, "restrict to one parameter value");
    x0->add_option("--only-d", only_d, "restrict to one twist");
    add_common(x0, common);

    auto* verify = app.add_subcommand("verify", "check fixed curve lists and congruences");
    verify->require_subcommand(1);

    auto* fixed = verify->add_subcommand(
        "fixed", "twists of the finitely many curves at the rigid isogeny levels");
    fixed->add_option("--n", n, "isogeny level (default: all seven)");
    fixed->add_option("--twists", twists, "max |d| over squarefree twists")->required();
    fixed->add_option("--only-d", only_d, "restrict to one twist");
    add_common(fixed, common);

    auto* i0star = verify->add_subcommand(
        "i0star", "I_0* twist congruences, the printed twist table, and root density");
    i0star->add_option("--pbound", pbound, "check twist primes up to this bound")
        ->required();
    add_common(i0star, common);

    auto* all = verify->add_subcommand("all", "run every acceptance criterion");
    all->add_option("--family", family_path, "family definition file");
    add_common(all, common);

    auto* props = app.add_subcommand("props", "seeded randomized property suite");
    props->add_option("--seed", seed, "RNG seed")->required();
    add_common(props, common);

    CLI11_PARSE(app, argc, argv);

    opts.budget = budget_from_env();
    opts.workers = common.workers;
    if (!only_u.empty()) opts.only_parameter = parse_rat_arg(only_u);
    if (!only_h.empty()) opts.only_parameter = parse_rat_arg(only_h);
    if (only_d) opts.only_twist = Int(*only_d);

    try {
        if (torsion->parsed()) {
            auto family = load_torsion_family(family_path);
            return emit(scan_torsion_family(family, height, opts), common.out);
        }
        if (x0->parsed())
            return emit(scan_isogeny_family(n, height, twists, opts), common.out);
        if (fixed->parsed())
            return emit(verify_fixed_isogeny(n, twists, opts), common.out);
        if (i0star->parsed())
            return emit(verify_i0star_congruences(pbound, opts), common.out);
        if (all->parsed())
            return emit(acceptance_report(family_path, opts), common.out);
        if (props->parsed())
            return emit(run_property_suite(seed, opts), common.out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
