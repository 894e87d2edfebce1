// Command-line driver: catenoid and Willmore tables, verification sweeps,
// critical ratio.

#include "rotsym/errors.hpp"
#include "rotsym/experiments.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>

using namespace rotsym;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_usage = 2;

bool usage_kind(ErrorKind k)
{
    return k == ErrorKind::InvalidArgument || k == ErrorKind::InvalidExponent || k == ErrorKind::BetaZero;
}

// writes to --out when given, otherwise stdout
template <class F>
int emit(const std::string& path, F write)
{
    if (path.empty() || path == "-") {
        write(std::cout);
        return exit_ok;
    }
    std::ofstream out(path);
    if (!out) {
        std::cerr << "cannot open " << path << " for writing\n";
        return exit_usage;
    }
    write(out);
    return out ? exit_ok : exit_failed;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Rotationally symmetric minimal and Willmore surfaces between two rings"};
    app.require_subcommand(1);
    // global flags may follow the subcommand too
    app.fallthrough();

    RunConfig cfg;
    OutputFormat format = OutputFormat::Csv;
    app.add_option("--grid-n", cfg.grid_n, "grid nodes for the Willmore solver")
        ->check(CLI::Range(101, 1000000));
    app.add_option("--holder-alpha", cfg.alpha_holder, "Hoelder exponent used by the verification suite")
        ->check(CLI::Range(0.0, 1.0));
    const std::map<std::string, CurvatureVariant> variants{{"paper", CurvatureVariant::Reduced},
                                                          {"principal", CurvatureVariant::Principal}};
    app.add_option("--k-variant", cfg.k_variant, "Gauss curvature term in the Willmore equation")
        ->transform(CLI::CheckedTransformer(variants, CLI::ignore_case));
    const std::map<std::string, OutputFormat> formats{{"csv", OutputFormat::Csv}, {"dat", OutputFormat::Dat}};
    app.add_option("--format", format, "table format")->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));

    double cat_r = reference_radius, cat_dh = reference_step;
    int cat_steps = reference_steps;
    std::string cat_out;
    auto* cat = app.add_subcommand("catenoid-table", "areas of the outer catenoid for h = dh, 2 dh, ...");
    cat->add_option("--radius", cat_r, "ring radius")->check(CLI::PositiveNumber);
    cat->add_option("--dh", cat_dh, "height step")->check(CLI::PositiveNumber);
    cat->add_option("--steps", cat_steps, "number of rows")->check(CLI::Range(1, 1000000));
    cat->add_option("--out", cat_out, "output file (default stdout)");

    double wm_r = 1.0;
    std::string heights = "1.0:0.1:3.0", wm_out;
    ModelParams params;
    auto* wm = app.add_subcommand("willmore-table", "area and Willmore energy of the solution between two rings");
    wm->add_option("--radius", wm_r, "ring radius")->check(CLI::PositiveNumber);
    wm->add_option("--heights", heights, "START:STEP:END");
    wm->add_option("--alpha", params.alpha, "area weight");
    wm->add_option("--beta", params.beta, "bending weight, nonzero");
    wm->add_option("--gamma", params.gamma, "Gauss curvature weight");
    wm->add_option("--out", wm_out, "output file (default stdout)");

    std::uint64_t seed = 42;
    int cases = 50;
    auto* ver = app.add_subcommand("verify", "seeded property sweeps; exit 1 on any failure");
    ver->add_option("--seed", seed, "random seed");
    ver->add_option("--cases", cases, "cases per sweep")->check(CLI::Range(1, 1000000));

    auto* crit = app.add_subcommand("critical-ratio", "largest h/r spanned by a catenoid");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        cfg.validate();
        if (*cat) {
            const auto rows = catenoid_table(cat_r, cat_dh, cat_steps, cfg);
            return emit(cat_out, [&](std::ostream& o) { write_catenoid_table(o, rows, format); });
        }
        if (*wm) {
            const auto rows = willmore_table(wm_r, parse_heights(heights), params, cfg);
            return emit(wm_out, [&](std::ostream& o) { write_willmore_table(o, rows, format); });
        }
        if (*ver) {
            const auto report = verify_suite(seed, cases, cfg);
            write_report(std::cout, report);
            return report.exit_code() == 0 ? exit_ok : exit_failed;
        }
        if (*crit) {
            write_report(std::cout, critical_ratio_report());
            return exit_ok;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage_kind(e.kind()) ? exit_usage : exit_failed;
    }
    return exit_usage;
}
