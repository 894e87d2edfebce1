#include "rotsym/experiments.hpp"

#include "rotsym/catenary.hpp"
#include "rotsym/errors.hpp"
#include "rotsym/schauder.hpp"
#include "rotsym/stability.hpp"
#include "rotsym/willmore_bvp.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

namespace rotsym {

const char* to_string(RowStatus s)
{
    switch (s) {
    case RowStatus::Ok: return "ok";
    case RowStatus::Goldschmidt: return "goldschmidt";
    case RowStatus::NoConvergence: return "no_convergence";
    }
    return "unknown";
}

void RunConfig::validate() const
{
    if (grid_n < 101) fail(ErrorKind::InvalidArgument, "grid_n must be at least 101");
    if (!(residual_tol > 0.0) || !(fixedpoint_tol > 0.0))
        fail(ErrorKind::InvalidArgument, "tolerances must be positive");
    if (!(alpha_holder > 0.0 && alpha_holder < 1.0))
        fail(ErrorKind::InvalidExponent, "Hoelder exponent must lie in (0, 1)");
}

// fits this close to the fold are numerically meaningless; treat them as past it
constexpr double table_fold_margin = 1e-6;

std::vector<TableRow> catenoid_table(double r, double dh, int steps, const RunConfig& config)
{
    config.validate();
    if (!(r > 0.0) || !(dh > 0.0) || !std::isfinite(r) || !std::isfinite(dh))
        fail(ErrorKind::InvalidArgument, "radius and step must be positive");
    if (steps < 1) fail(ErrorKind::InvalidArgument, "need at least one step");
    std::vector<TableRow> rows;
    rows.reserve(steps);
    for (int k = 1; k <= steps; ++k) {
        const RingBoundary rings{r, dh * k};
        TableRow row;
        row.key = rings.h / r;
        try {
            row.area = area(fit(rings, table_fold_margin).front().curve, rings);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NoSolution) throw;
            row.area = 2.0 * M_PI * r * r;
            row.status = RowStatus::Goldschmidt;
        }
        rows.push_back(row);
    }
    return rows;
}

namespace {

TableRow willmore_row(double h, const WillmoreSolution& s)
{
    const MeridianSurface bending(s.surface.f, s.surface.H, ModelParams{0.0, 1.0, 0.0}, s.surface.variant);
    return TableRow{h, area(s.surface.f), energy(bending), RowStatus::Ok};
}

} // namespace

std::vector<TableRow> willmore_table(double r, const std::vector<double>& heights, const ModelParams& params,
                                     const RunConfig& config)
{
    config.validate();
    if (params.beta == 0.0) fail(ErrorKind::BetaZero, "beta must be nonzero");
    WillmoreConfig wc;
    wc.grid_n = config.grid_n;
    wc.residual_tol = config.residual_tol;
    wc.variant = config.k_variant;

    std::vector<TableRow> rows;
    try {
        const auto sols = solve_willmore_family(r, heights, params, wc);
        for (std::size_t j = 0; j < heights.size(); ++j) rows.push_back(willmore_row(heights[j], sols[j]));
        return rows;
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NoConvergence && e.kind() != ErrorKind::NonPositiveProfile) throw;
    }
    // the shared path broke somewhere: give every height its own chance
    for (double h : heights) {
        try {
            rows.push_back(willmore_row(h, solve_willmore_bvp(RingBoundary{r, h}, params, wc)));
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NoConvergence && e.kind() != ErrorKind::NonPositiveProfile) throw;
            rows.push_back(TableRow{h, NAN, std::optional<double>(NAN), RowStatus::NoConvergence});
        }
    }
    return rows;
}

std::vector<double> parse_heights(const std::string& spec)
{
    std::istringstream in(spec);
    double start = 0.0, step = 0.0, end = 0.0;
    char c1 = 0, c2 = 0;
    if (!(in >> start >> c1 >> step >> c2 >> end) || c1 != ':' || c2 != ':' || !(in >> std::ws).eof())
        fail(ErrorKind::InvalidArgument, "heights must look like START:STEP:END");
    if (!(start > 0.0) || !(step > 0.0) || !(end >= start) || !std::isfinite(end))
        fail(ErrorKind::InvalidArgument, "heights need 0 < START <= END and STEP > 0");
    const double span = (end - start) / step;
    if (span > 1e6) fail(ErrorKind::InvalidArgument, "too many heights");
    const long count = static_cast<long>(std::floor(span + 1e-9)) + 1;
    std::vector<double> hs;
    hs.reserve(count);
    for (long k = 0; k < count; ++k) hs.push_back(start + k * step);
    return hs;
}

std::string format_number(double v)
{
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

namespace {

void write_table(std::ostream& out, const std::vector<std::string>& header, const std::vector<TableRow>& rows,
                 OutputFormat format, bool with_energy)
{
    const char* sep = format == OutputFormat::Csv ? "," : " ";
    if (format == OutputFormat::Dat) out << "# ";
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? sep : "") << header[i];
    out << '\n';
    for (const auto& row : rows) {
        out << format_number(row.key) << sep << format_number(row.area);
        if (with_energy) out << sep << format_number(row.energy.value_or(NAN));
        out << sep << to_string(row.status) << '\n';
    }
}

} // namespace

void write_catenoid_table(std::ostream& out, const std::vector<TableRow>& rows, OutputFormat format)
{
    write_table(out, {"h_over_r", "area", "status"}, rows, format, false);
}

void write_willmore_table(std::ostream& out, const std::vector<TableRow>& rows, OutputFormat format)
{
    write_table(out, {"h", "area", "willmore_energy", "status"}, rows, format, true);
}

int VerifyReport::failed() const
{
    int n = 0;
    for (const auto& s : suites) n += s.failed;
    return n;
}

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

class Suite {
public:
    Suite(VerifyReport& report, std::string name) : report_(report), count_{std::move(name)} {}
    ~Suite() { report_.suites.push_back(count_); }

    void pass() { ++count_.passed; }
    void check(bool ok, int index, const std::string& what)
    {
        if (ok) {
            ++count_.passed;
            return;
        }
        ++count_.failed;
        report_.failures.push_back(count_.name + " case " + std::to_string(index) + ": " + what);
    }
    void skip(int index, const std::string& why)
    {
        ++count_.skipped;
        report_.skips.push_back(count_.name + " case " + std::to_string(index) + ": " + why);
    }

private:
    VerifyReport& report_;
    SuiteCount count_;
};

SampledFunction smooth_positive(const Grid& g, Rng& rng)
{
    const double k1 = uniform(rng, 0.0, 1.0), k2 = uniform(rng, 0.0, 2.0);
    return SampledFunction::sample(
        g, [=](double x) { return 1.0 + 0.5 * k1 * std::sin(k2 * x); },
        [=](double x) { return 0.5 * k1 * k2 * std::cos(k2 * x); },
        [=](double x) { return -0.5 * k1 * k2 * k2 * std::sin(k2 * x); });
}

void max_principle_sweep(VerifyReport& report, Rng& rng, int cases)
{
    Suite suite(report, "max_principle");
    for (int c = 0; c < cases; ++c) {
        const double a = uniform(rng, -1.0, 1.0);
        const Grid g = uniform_grid(a, a + uniform(rng, 0.2, 3.0), 201);
        const double k3 = uniform(rng, 0.0, 4.0), k4 = uniform(rng, 0.0, 2.0), w = uniform(rng, 0.0, 6.0);
        const auto q = SampledFunction::sample(g, [=](double x) { return -k3 * (1.0 + std::sin(w * x) * std::sin(w * x)); });
        const auto rhs = SampledFunction::sample(g, [=](double x) { return k4 * (1.0 + std::cos(w * x)); });
        const SturmLiouvilleProblem pr(smooth_positive(g, rng), q, rhs, 0.0, 0.0);
        const double top = solve(pr).max();
        std::ostringstream os;
        os << "max u = " << top;
        suite.check(top <= 1e-10, c, os.str());
    }
}

void estimate_sweep(VerifyReport& report, Rng& rng, int cases, double alpha)
{
    Suite suite(report, "estimates");
    auto run = [&](int c, const SturmLiouvilleProblem& pr) {
        if (!max_principle_applies(pr)) {
            suite.skip(c, "q > 0 somewhere, the estimates do not apply");
            return;
        }
        const auto u = solve(pr);
        const double L = pr.grid().length();
        const auto b = coefficient_bounds(pr, alpha);
        double mu = 0.0;
        try {
            mu = choose_mu(b, L, alpha);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NoValidMu) throw;
            suite.skip(c, "no admissible mu for these coefficients");
            return;
        }
        const auto led = compute_ledger(b, L, alpha, mu);
        auto all = verify_intermediate_estimates(pr, u, led);
        all.push_back(verify_global_estimate(pr, u, led));
        all.push_back(verify_c0_estimate(pr, u));
        for (const auto& r : verify_poisson_estimates(u, poisson_forcing(pr, u), led.mu, alpha)) all.push_back(r);
        for (const auto& r : all) {
            std::ostringstream os;
            os << to_string(r.which) << " lhs " << r.lhs << " > rhs " << r.rhs;
            suite.check(r.holds, c, os.str());
        }
    };
    for (int c = 0; c < cases; ++c) {
        const double a = -uniform(rng, 0.0, 1.0);
        const Grid g = uniform_grid(a, a + uniform(rng, 0.5, 2.0), 151);
        const auto p = smooth_positive(g, rng);
        const double k3 = uniform(rng, 0.0, 1.0), k4 = uniform(rng, 0.0, 1.0), w = uniform(rng, 0.0, 4.0);
        const auto q = SampledFunction::sample(g, [=](double x) { return -k3 * (1.0 + x * x); });
        // manufactured solution u = k4 cos(w x) + x
        auto u = [=](double x) { return k4 * std::cos(w * x) + x; };
        std::vector<double> rhs(g.n);
        for (int i = 0; i < g.n; ++i) {
            const double x = g.node(i);
            const double du = -k4 * w * std::sin(w * x) + 1.0, d2u = -k4 * w * w * std::cos(w * x);
            rhs[i] = p.d1()[i] * du + p[i] * d2u + q[i] * u(x);
        }
        run(c, SturmLiouvilleProblem(p, q, SampledFunction(g, rhs), u(g.a), u(g.b)));
    }
    // one case outside the hypotheses, which must be gated rather than failed
    const Grid g = uniform_grid(0.0, 1.0, 51);
    run(cases, SturmLiouvilleProblem(SampledFunction::constant(g, 1.0), SampledFunction::constant(g, 0.5),
                                     SampledFunction::constant(g, 1.0), 0.0, 0.0));
}

void interpolation_sweep(VerifyReport& report, Rng& rng, int cases)
{
    Suite suite(report, "interpolation");
    for (int c = 0; c < cases; ++c) {
        const double a = uniform(rng, -1.0, 1.0), L = uniform(rng, 0.2, 3.0), alpha = uniform(rng, 0.05, 0.95);
        const Grid g = uniform_grid(a, a + L, 161);
        const double c0 = uniform(rng, -1, 1), c1 = uniform(rng, -1, 1), c2 = uniform(rng, -1, 1), w = uniform(rng, -4, 4);
        const auto u = SampledFunction::sample(
            g, [=](double x) { return c0 + c1 * std::sin(w * x) + c2 * x * x; },
            [=](double x) { return c1 * w * std::cos(w * x) + 2.0 * c2 * x; },
            [=](double x) { return -c1 * w * w * std::sin(w * x) + 2.0 * c2; });
        const double k = 1.0 + std::pow(L, 1.0 - alpha);
        suite.check(holder_norm(u, 0, alpha) <= k * holder_norm(u, 1, alpha), c, "first interpolation inequality");
        suite.check(holder_norm(u, 0, alpha) <= k * k * holder_norm(u, 2, alpha), c, "second interpolation inequality");
    }
}

void contraction_sweep(VerifyReport& report, Rng& rng, int cases, const RunConfig& config)
{
    Suite suite(report, "contraction");
    const Grid g = uniform_grid(-0.4, 0.4, 201);
    const auto f = SampledFunction::sample(
        g, [](double x) { return std::cosh(x); }, [](double x) { return std::sinh(x); },
        [](double x) { return std::cosh(x); });
    const double eps = 0.5;
    PerturbConfig pc;
    pc.alpha = config.alpha_holder;
    pc.tol = config.fixedpoint_tol;
    const double a_max = perturb(f, 0.0, 0.0, eps, pc).a_max;
    // each run costs a few linear solves; a handful is plenty
    const int runs = std::min(cases, 8);
    for (int c = 0; c < runs; ++c) {
        const double left = uniform(rng, -0.5, 0.5) * a_max, right = uniform(rng, -0.5, 0.5) * a_max;
        const auto r = perturb(f, left, right, eps, pc);
        double worst = 0.0;
        for (double q : r.trace.ratios) worst = std::max(worst, q);
        std::ostringstream os;
        os << "worst ratio " << worst;
        suite.check(r.trace.converged && worst <= eps + 0.05, c, os.str());
        const auto total = f + r.psi;
        const Catenary refit = fit_through(g.a, total[0], g.b, total[g.n - 1], Catenary{1.0, 0.0});
        double err = 0.0;
        for (int i = 0; i < g.n; ++i) err = std::max(err, std::abs(total[i] - refit.value(g.node(i))));
        std::ostringstream es;
        es << "refit error " << err;
        suite.check(err <= 1e-6, c, es.str());
    }
}

} // namespace

VerifyReport verify_suite(std::uint64_t seed, int cases, const RunConfig& config)
{
    config.validate();
    if (cases < 1) fail(ErrorKind::InvalidArgument, "need at least one case");
    VerifyReport report;
    // one stream per suite so adding cases to one leaves the others unchanged
    Rng r1(seed), r2(seed + 1), r3(seed + 2), r4(seed + 3);
    max_principle_sweep(report, r1, cases);
    estimate_sweep(report, r2, cases, config.alpha_holder);
    interpolation_sweep(report, r3, cases);
    contraction_sweep(report, r4, cases, config);
    return report;
}

void write_report(std::ostream& out, const VerifyReport& report)
{
    for (const auto& s : report.suites)
        out << s.name << ": " << s.passed << " passed, " << s.failed << " failed, " << s.skipped << " skipped\n";
    for (const auto& line : report.skips) out << "skipped " << line << '\n';
    for (const auto& line : report.failures) out << "FAILED " << line << '\n';
    out << (report.exit_code() == 0 ? "all checks hold\n" : "verification failed\n");
}

CriticalRatioReport critical_ratio_report()
{
    CriticalRatioReport rep;
    rep.ratio = critical_ratio();
    const auto rows = catenoid_table(reference_radius, reference_step, reference_steps);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].status != RowStatus::Ok) {
            rep.above = rows[i];
            if (i > 0) rep.below = rows[i - 1];
            break;
        }
    }
    return rep;
}

void write_report(std::ostream& out, const CriticalRatioReport& rep)
{
    out << "critical h/r = " << format_number(rep.ratio) << '\n';
    out << "last spanning row: h/r = " << format_number(rep.below.key) << " area " << format_number(rep.below.area)
        << '\n';
    out << "first row past the fold: h/r = " << format_number(rep.above.key) << " " << to_string(rep.above.status)
        << " area " << format_number(rep.above.area) << '\n';
}

} // namespace rotsym
