#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "rotsym/errors.hpp"
#include "rotsym/experiments.hpp"

#include <cmath>
#include <functional>
#include <sstream>

using namespace rotsym;

namespace {

ErrorKind kind_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::InvalidArgument;
}

} // namespace

TEST_CASE("catenoid sweep at the reference radius")
{
    const auto rows = catenoid_table(reference_radius, reference_step, reference_steps);
    REQUIRE(rows.size() == 20);
    const auto& ref = oracle::catenoid_rows();
    for (std::size_t i = 0; i < ref.size(); ++i) {
        INFO("row " << i);
        CHECK(rows[i].status == RowStatus::Ok);
        CHECK(rows[i].key == doctest::Approx(ref[i].first).epsilon(1e-4));
        CHECK_FALSE(rows[i].energy.has_value());
        // closed-form area of the outer branch
        const double h = 0.1 * (i + 1);
        const double c = oracle::catenary_scales(reference_radius, h).first;
        CHECK(rows[i].area == doctest::Approx(oracle::catenoid_area(c, h)).epsilon(1e-10));
    }
    // the first row is off the reference by several percent, the rest within 1%
    for (std::size_t i = 1; i < ref.size(); ++i) CHECK(std::abs(rows[i].area / ref[i].second - 1.0) <= 0.01);

    const auto& last = rows.back();
    CHECK(last.status == RowStatus::Goldschmidt);
    CHECK(last.key == doctest::Approx(oracle::breakdown_ratio).epsilon(1e-4));
    CHECK(last.area == 2.0 * M_PI * reference_radius * reference_radius);
    CHECK(std::abs(last.area / oracle::breakdown_area - 1.0) <= 0.005);
}

TEST_CASE("catenoid table areas grow with h until breakdown")
{
    const auto rows = catenoid_table(1.0, 0.05, 30);
    bool past = false;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].status == RowStatus::Goldschmidt) {
            past = true;
            CHECK(rows[i].area == doctest::Approx(2.0 * M_PI));
            continue;
        }
        CHECK_FALSE(past);  // no spanning row after the first breakdown
        CHECK(rows[i].area > rows[i - 1].area);
    }
    CHECK(past);
}

TEST_CASE("csv and dat output")
{
    const std::vector<TableRow> rows{{0.5, 3.14159265, std::nullopt, RowStatus::Ok},
                                     {1.4, 2.0 * M_PI, std::nullopt, RowStatus::Goldschmidt}};
    std::ostringstream csv, dat;
    write_catenoid_table(csv, rows, OutputFormat::Csv);
    write_catenoid_table(dat, rows, OutputFormat::Dat);
    CHECK(csv.str() == "h_over_r,area,status\n0.5,3.14159,ok\n1.4,6.28319,goldschmidt\n");
    CHECK(dat.str() == "# h_over_r area status\n0.5 3.14159 ok\n1.4 6.28319 goldschmidt\n");

    const std::vector<TableRow> wrows{{2.0, 10.1439, 0.98383, RowStatus::Ok},
                                      {9.0, NAN, std::optional<double>(NAN), RowStatus::NoConvergence}};
    std::ostringstream w;
    write_willmore_table(w, wrows, OutputFormat::Csv);
    CHECK(w.str() == "h,area,willmore_energy,status\n2,10.1439,0.98383,ok\n9,nan,nan,no_convergence\n");

    CHECK(format_number(1234567.0) == "1.23457e+06");
    CHECK(format_number(-0.000123456789) == "-0.000123457");
}

TEST_CASE("height ranges")
{
    const auto hs = parse_heights("1.0:0.1:1.3");
    REQUIRE(hs.size() == 4);
    CHECK(hs[3] == doctest::Approx(1.3));
    CHECK(parse_heights("2:1:2").size() == 1);
    CHECK(parse_heights("1:0.3:2").size() == 4);
    for (const char* bad : {"1:0:2", "2:1:1", "1,2,3", "1:2", "a:b:c", "0:1:2", "1:1:3x"})
        CHECK(kind_of([&] { parse_heights(bad); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("Willmore table")
{
    const std::vector<double> hs{1.0, 1.3, 2.0, 2.5, 3.0};
    const auto rows = willmore_table(1.0, hs, ModelParams{});
    REQUIRE(rows.size() == hs.size());
    double prev = -1.0;
    for (std::size_t j = 0; j < hs.size(); ++j) {
        CHECK(rows[j].status == RowStatus::Ok);
        CHECK(rows[j].key == hs[j]);
        REQUIRE(rows[j].energy.has_value());
        CHECK(*rows[j].energy >= prev);
        prev = *rows[j].energy;
    }
    CHECK(*rows[0].energy < 1e-3);
    CHECK(std::abs(rows[0].area / 5.98 - 1.0) <= 0.01);
    CHECK(std::abs(*rows[3].energy / 2.13 - 1.0) <= 0.15);

    // the reported energy is the bending part only, whatever the weights
    const auto weighted = willmore_table(1.0, {2.0}, ModelParams{0.0, 3.0, 0.5});
    CHECK(*weighted[0].energy == doctest::Approx(*rows[2].energy).epsilon(1e-10));

    std::ostringstream a, b;
    write_willmore_table(a, rows, OutputFormat::Csv);
    write_willmore_table(b, willmore_table(1.0, hs, ModelParams{}), OutputFormat::Csv);
    CHECK(a.str() == b.str());

    CHECK(kind_of([] { willmore_table(1.0, {2.0}, ModelParams{0.0, 0.0, 0.0}); }) == ErrorKind::BetaZero);
}

TEST_CASE("run config validation")
{
    RunConfig c;
    c.grid_n = 50;
    CHECK(kind_of([&] { c.validate(); }) == ErrorKind::InvalidArgument);
    c = RunConfig{};
    c.residual_tol = 0.0;
    CHECK(kind_of([&] { c.validate(); }) == ErrorKind::InvalidArgument);
    c = RunConfig{};
    c.alpha_holder = 1.0;
    CHECK(kind_of([&] { c.validate(); }) == ErrorKind::InvalidExponent);
}

TEST_CASE("verification suite")
{
    const auto rep = verify_suite(42, 20);
    CHECK(rep.exit_code() == 0);
    CHECK(rep.failures.empty());
    REQUIRE(rep.skips.size() == 1);
    CHECK(rep.skips[0].find("q > 0") != std::string::npos);
    int total = 0;
    for (const auto& s : rep.suites) total += s.passed;
    CHECK(total > 100);

    std::ostringstream a, b;
    write_report(a, rep);
    write_report(b, verify_suite(42, 20));
    CHECK(a.str() == b.str());

    CHECK(kind_of([] { verify_suite(1, 0); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("critical ratio report")
{
    const auto rep = critical_ratio_report();
    CHECK(rep.ratio > 1.2592);
    CHECK(rep.ratio < 1.3256);
    CHECK(std::abs(rep.ratio - oracle::critical_ratio()) <= 1e-4);
    CHECK(rep.below.status == RowStatus::Ok);
    CHECK(rep.above.status == RowStatus::Goldschmidt);
    CHECK(rep.below.key < rep.ratio);

    std::ostringstream a, b;
    write_report(a, rep);
    write_report(b, critical_ratio_report());
    CHECK(a.str() == b.str());
    CHECK(a.str().rfind("critical h/r = 1.32549\n", 0) == 0);
}
