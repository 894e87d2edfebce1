#pragma once

#include "rotsym/meridian.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace rotsym {

enum class RowStatus { Ok, Goldschmidt, NoConvergence };
const char* to_string(RowStatus s);

struct TableRow {
    double key = 0.0;  // h/r for catenoid tables, h for Willmore tables
    double area = 0.0;
    std::optional<double> energy;
    RowStatus status = RowStatus::Ok;
};

struct RunConfig {
    int grid_n = 401;
    double residual_tol = 1e-8;
    double fixedpoint_tol = 1e-10;
    double alpha_holder = 0.5;
    CurvatureVariant k_variant = CurvatureVariant::Principal;
    std::string output_path;
    std::uint64_t seed = 42;

    // throws InvalidArgument
    void validate() const;
};

enum class OutputFormat { Csv, Dat };

// rows h = dh * k for k = 1..steps; past the fold the two-disc area 2 pi r^2
std::vector<TableRow> catenoid_table(double r, double dh, int steps, const RunConfig& config = {});

std::vector<TableRow> willmore_table(double r, const std::vector<double>& heights, const ModelParams& params,
                                     const RunConfig& config = {});

// "START:STEP:END", END included when hit to within STEP * 1e-9
std::vector<double> parse_heights(const std::string& spec);

// %.6g, "nan" for missing values
std::string format_number(double v);

void write_catenoid_table(std::ostream& out, const std::vector<TableRow>& rows, OutputFormat format);
void write_willmore_table(std::ostream& out, const std::vector<TableRow>& rows, OutputFormat format);

struct SuiteCount {
    std::string name;
    int passed = 0;
    int failed = 0;
    int skipped = 0;
};

struct VerifyReport {
    std::vector<SuiteCount> suites;
    std::vector<std::string> failures;  // one line per failing case
    std::vector<std::string> skips;     // one line per skipped case, with the reason

    int failed() const;
    int exit_code() const { return failed() == 0 ? 0 : 1; }
};

// seeded sweeps over the maximum principle, the a priori estimates, the
// Hoelder interpolation inequalities and the perturbation contraction
VerifyReport verify_suite(std::uint64_t seed, int cases, const RunConfig& config = {});
void write_report(std::ostream& out, const VerifyReport& report);

struct CriticalRatioReport {
    double ratio = 0.0;
    TableRow below;  // last spanning row of the reference table run
    TableRow above;  // first row past the fold
};

CriticalRatioReport critical_ratio_report();
void write_report(std::ostream& out, const CriticalRatioReport& report);

// radius and step of the standard catenoid sweep
constexpr double reference_radius = 1.5088795;
constexpr double reference_step = 0.1;
constexpr int reference_steps = 20;

} // namespace rotsym
