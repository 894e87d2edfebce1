// Runs every acceptance criterion and prints one PASS/FAIL line each.
// Exit status is the number of failed criteria (capped at 1).

#include "oracles.hpp"
#include "rotsym/catenary.hpp"
#include "rotsym/coupled.hpp"
#include "rotsym/errors.hpp"
#include "rotsym/schauder.hpp"
#include "rotsym/stability.hpp"
#include "rotsym/willmore_bvp.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

using namespace rotsym;

namespace {

// tolerances pinned by the acceptance criteria
constexpr double tol_identity_analytic = 1e-10;
constexpr double tol_identity_fd = 1e-5;
constexpr double runtime_identity = 1.0;
constexpr double tol_catenoid_rel = 0.01;
constexpr double tol_goldschmidt_rel = 0.005;
constexpr double runtime_catenoid = 5.0;
constexpr double tol_critical = 1e-4;
constexpr double tol_catenoid_energy = 1e-3;
constexpr double tol_bent_rel = 0.15;
constexpr double bent_small_abs = 0.1;
constexpr double tol_genuine_residual = 1e-6;
constexpr int estimate_cases = 50;
constexpr double runtime_estimates = 30.0;
constexpr int max_principle_cases = 200;
constexpr double tol_max_principle = 1e-10;
constexpr double contraction_slack = 0.05;
constexpr double tol_refit = 1e-6;
constexpr double tol_coupled_residual = 1e-6;
constexpr double tol_ledger = 1e-12;
constexpr double order_lo = 3.5, order_hi = 4.5;

struct Outcome {
    bool pass = true;
    std::string detail;
};

class Detail {
public:
    template <class T>
    Detail& operator<<(const T& v)
    {
        os_ << v;
        return *this;
    }
    std::string str() const { return os_.str(); }

private:
    std::ostringstream os_;
};

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SampledFunction cosh_on(const Grid& g, bool analytic)
{
    if (!analytic) return SampledFunction::sample(g, [](double x) { return std::cosh(x); });
    return SampledFunction::sample(
        g, [](double x) { return std::cosh(x); }, [](double x) { return std::sinh(x); },
        [](double x) { return std::cosh(x); });
}

double sup_diff_to_refit(const SampledFunction& total)
{
    const Grid& g = total.grid();
    const Catenary refit = fit_through(g.a, total[0], g.b, total[g.n - 1], Catenary{1.0, 0.0});
    double err = 0.0;
    for (int i = 0; i < g.n; ++i) err = std::max(err, std::abs(total[i] - refit.value(g.node(i))));
    return err;
}

bool raises(ErrorKind kind, const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind() == kind;
    }
    return false;
}

Outcome catenary_identity()
{
    const auto t0 = std::chrono::steady_clock::now();
    const double exact = minimal_residual(cosh_on(uniform_grid(-1.0, 1.0, 201), true));
    const double fd = minimal_residual(cosh_on(uniform_grid(-1.0, 1.0, 1001), false));
    const double t = seconds_since(t0);
    Detail d;
    d << "analytic " << exact << ", fd " << fd << ", " << t << " s";
    return {exact <= tol_identity_analytic && fd <= tol_identity_fd && t < runtime_identity, d.str()};
}

Outcome catenoid_table_rows()
{
    const auto t0 = std::chrono::steady_clock::now();
    const double r = oracle::catenoid_radius;
    Outcome out;
    Detail d;
    int k = 1, bad = 0;
    for (const auto& [ratio, ref] : oracle::catenoid_rows()) {
        const RingBoundary rings{r, 0.1 * k++};
        const double a = area(fit(rings).front().curve, rings);
        const double rel = a / ref - 1.0;
        if (std::abs(rings.h / r - ratio) > 1e-4 || std::abs(rel) > tol_catenoid_rel) {
            ++bad;
            d << "h/r " << ratio << ": area " << a << " vs " << ref << " (" << 100.0 * rel << "%); ";
        }
    }
    const bool breaks = raises(ErrorKind::NoSolution, [&] { fit(RingBoundary{r, oracle::breakdown_ratio * r}); });
    const double disc = 2.0 * M_PI * r * r;
    const double disc_rel = disc / oracle::breakdown_area - 1.0;
    const double t = seconds_since(t0);
    d << bad << " of 19 rows outside 1%; breakdown " << (breaks ? "NoSolution" : "MISSING") << ", two discs " << disc
      << " (" << 100.0 * disc_rel << "%), " << t << " s";
    out.pass = bad == 0 && breaks && std::abs(disc_rel) <= tol_goldschmidt_rel && t < runtime_catenoid;
    out.detail = d.str();
    return out;
}

Outcome critical_ratio_value()
{
    const double c = critical_ratio();
    const double ref = oracle::critical_ratio();
    Detail d;
    d << c << " vs oracle " << ref;
    return {c > 1.2592 && c < 1.3256 && std::abs(c - ref) <= tol_critical, d.str()};
}

const std::vector<double> willmore_heights{1.0, 1.1, 1.2, 1.3, 1.4, 2.0, 2.5, 3.0};

const std::vector<WillmoreSolution>& willmore_solutions()
{
    static const auto sols = solve_willmore_family(1.0, willmore_heights, ModelParams{});
    return sols;
}

const oracle::WillmoreRow& willmore_row(double h)
{
    for (const auto& r : oracle::willmore_rows())
        if (std::abs(r.h - h) < 1e-12) return r;
    throw std::logic_error("missing reference row");
}

Outcome willmore_catenoid_rows()
{
    Outcome out;
    Detail d;
    for (std::size_t j = 0; j < 4; ++j) {
        const auto& s = willmore_solutions()[j];
        const double E = energy(s.surface), A = area(s.surface.f);
        const double ref = willmore_row(willmore_heights[j]).area;
        d << "h " << willmore_heights[j] << ": A " << A << " E " << E << "; ";
        if (!(E < tol_catenoid_energy) || std::abs(A / ref - 1.0) > tol_catenoid_rel) out.pass = false;
    }
    out.detail = d.str();
    return out;
}

Outcome willmore_bent_rows()
{
    Outcome out;
    Detail d;
    double prev = -INFINITY;
    for (std::size_t j = 0; j < willmore_heights.size(); ++j) {
        const auto& s = willmore_solutions()[j];
        const double E = energy(s.surface);
        if (!(E >= prev)) {
            out.pass = false;
            d << "E not monotone at h " << willmore_heights[j] << "; ";
        }
        prev = E;
        if (j < 4) continue;
        const double ref = willmore_row(willmore_heights[j]).energy;
        const bool ok = ref < bent_small_abs ? E < bent_small_abs : std::abs(E / ref - 1.0) <= tol_bent_rel;
        d << "h " << willmore_heights[j] << ": E " << E;
        if (!ok) {
            out.pass = false;
            d << " OUT OF TOLERANCE vs " << ref;
        }
        if (!ok || s.mc_residual > tol_genuine_residual || s.willmore_residual > tol_genuine_residual)
            d << " (residuals " << s.mc_residual << ", " << s.willmore_residual << ")";
        d << "; ";
    }
    out.detail = d.str();
    return out;
}

Outcome estimate_suite()
{
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    int checks = 0, failures = 0, redraws = 0;
    Detail d;
    for (int c = 0; c < estimate_cases;) {
        const double a = -U(rng);
        const Grid g = uniform_grid(a, a + 0.5 + 1.5 * U(rng), 151);
        const double k1 = U(rng), k2 = 2.0 * U(rng), k3 = U(rng), k4 = U(rng), w = 4.0 * U(rng);
        const auto p = SampledFunction::sample(
            g, [&](double x) { return 1.0 + 0.5 * k1 * std::sin(k2 * x); },
            [&](double x) { return 0.5 * k1 * k2 * std::cos(k2 * x); },
            [&](double x) { return -0.5 * k1 * k2 * k2 * std::sin(k2 * x); });
        const auto q = SampledFunction::sample(g, [&](double x) { return -k3 * (1.0 + x * x); });
        auto u = [&](double x) { return k4 * std::cos(w * x) + x; };
        std::vector<double> rhs(g.n);
        for (int i = 0; i < g.n; ++i) {
            const double x = g.node(i);
            rhs[i] = p.d1()[i] * (1.0 - k4 * w * std::sin(w * x)) - p[i] * k4 * w * w * std::cos(w * x) + q[i] * u(x);
        }
        const SturmLiouvilleProblem pr(p, q, SampledFunction(g, rhs), u(g.a), u(g.b));
        const auto sol = solve(pr);
        const auto b = coefficient_bounds(pr, 0.5);
        double mu = 0.0;
        try {
            mu = choose_mu(b, g.length(), 0.5);
        } catch (const Error& e) {
            // coefficients too rough for any admissible mu: outside the hypotheses, draw again
            if (e.kind() != ErrorKind::NoValidMu) throw;
            ++redraws;
            continue;
        }
        const auto led = compute_ledger(b, g.length(), 0.5, mu);
        auto all = verify_intermediate_estimates(pr, sol, led);
        all.push_back(verify_global_estimate(pr, sol, led));
        all.push_back(verify_c0_estimate(pr, sol));
        for (const auto& r : verify_poisson_estimates(sol, poisson_forcing(pr, sol), led.mu, 0.5)) all.push_back(r);
        for (const auto& r : all) {
            ++checks;
            if (!r.holds) {
                ++failures;
                d << "case " << c << " " << to_string(r.which) << " fails; ";
            }
        }
        ++c;
    }
    const double t = seconds_since(t0);
    d << estimate_cases << " problems, " << checks << " checks, " << failures << " failures, " << redraws
      << " draws without admissible mu, " << t << " s";
    return {failures == 0 && t < runtime_estimates, d.str()};
}

Outcome max_principle_sweep()
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    double worst = -INFINITY;
    for (int c = 0; c < max_principle_cases; ++c) {
        const double a = 2.0 * U(rng) - 1.0;
        const Grid g = uniform_grid(a, a + 0.2 + 2.8 * U(rng), 201);
        const double k1 = U(rng), k2 = 2.0 * U(rng), k3 = 4.0 * U(rng), k4 = 2.0 * U(rng), w = 6.0 * U(rng);
        const auto p = SampledFunction::sample(g, [&](double x) { return 1.0 + 0.5 * k1 * std::sin(k2 * x); });
        const auto q = SampledFunction::sample(g, [&](double x) { return -k3 * std::cos(w * x) * std::cos(w * x); });
        const auto f = SampledFunction::sample(g, [&](double x) { return k4 * (1.0 + std::sin(w * x)); });
        worst = std::max(worst, solve(SturmLiouvilleProblem(p, q, f, 0.0, 0.0)).max());
    }
    const Grid g = uniform_grid(0.0, M_PI, 201);
    const bool singular = raises(ErrorKind::SingularSystem, [&] {
        solve(SturmLiouvilleProblem(SampledFunction::constant(g, 1.0), SampledFunction::constant(g, 1.0),
                                    SampledFunction::constant(g, 1.0), 0.0, 1.0));
    });
    Detail d;
    d << "largest solution value " << worst << ", resonant problem " << (singular ? "SingularSystem" : "NOT REJECTED");
    return {worst <= tol_max_principle && singular, d.str()};
}

Outcome contraction()
{
    const auto f = cosh_on(uniform_grid(-0.4, 0.4, 201), true);
    const double eps = 0.5;
    const double a = 0.5 * perturb(f, 0.0, 0.0, eps).a_max;
    const auto r = perturb(f, a, -0.5 * a, eps);
    double worst = 0.0;
    for (double q : r.trace.ratios) worst = std::max(worst, q);
    const double err = sup_diff_to_refit(f + r.psi);
    // informational: data far beyond the proven bound still contracts
    PerturbConfig loose;
    loose.enforce_smallness = false;
    loose.residual_tol = 1e-4;  // FD truncation on this grid is about 1e-6
    const auto big = perturb(f, 0.02, -0.01, eps, loose);
    double big_worst = 0.0;
    for (double q : big.trace.ratios) big_worst = std::max(big_worst, q);
    Detail d;
    d << "boundary data " << a << ", worst ratio " << worst << ", refit error " << err
      << "; unproven data 0.02: worst ratio " << big_worst << ", refit error " << sup_diff_to_refit(f + big.psi);
    return {r.trace.converged && worst <= eps + contraction_slack && err <= tol_refit, d.str()};
}

Outcome coupled()
{
    const Grid g = uniform_grid(-0.4, 0.4, 201);
    const auto f = cosh_on(g, true);
    const auto chi = stability_function(f).chi;
    const ModelParams two{2.0, 1.0, 0.0};
    const auto c = coupled_constants(f, chi, two, CurvatureVariant::Reduced);
    const double eps = 0.5 * std::min(epsilon_growth_bound(c), epsilon_contraction_bound(c));
    const auto zero = iterate_coupled(f, chi, two, 0.0, 0.0, eps);
    const bool zero_ok = zero.trace.converged && zero.trace.steps == 1 && zero.phi.max_abs() == 0.0
                         && zero.H.max_abs() == 0.0;
    const auto r = iterate_coupled(f, chi, two, 0.5 * eps, 0.25 * eps, eps);
    Detail d;
    d << "eps " << eps << ", zero data " << (zero_ok ? "(0,0) in one step" : "WRONG") << ", residuals "
      << r.willmore_residual << ", " << r.mc_residual << " after " << r.trace.steps << " steps";
    return {zero_ok && r.trace.converged && r.willmore_residual <= tol_coupled_residual
                && r.mc_residual <= tol_coupled_residual,
            d.str()};
}

Outcome ledger_example()
{
    CoefficientBounds b;
    b.p0 = b.p1 = b.p1hat = b.p1prime_hat = 1.0;
    b.p1prime = b.q1 = b.q1hat = 0.0;
    const auto led = compute_ledger(b, 1.0, 0.5, 0.25);
    const auto& hand = oracle::identity_ledger();
    double worst = 0.0;
    for (int i = 0; i < 15; ++i) worst = std::max(worst, std::abs(led.c[i] - hand[i]));
    worst = std::max({worst, std::abs(led.C1_global - oracle::identity_C1), std::abs(led.C2_global - oracle::identity_C2)});
    const bool listed = led.ci(4) == 1.5 && led.ci(5) == 9.0 && led.ci(13) == 4.125 && led.ci(14) == 18.0
                        && led.ci(15) == 0.5 && std::abs(led.C1_global - 4.7143) < 5e-5
                        && std::abs(led.C2_global - 20.5714) < 5e-5;
    Detail d;
    d << "max deviation " << worst << ", C1 " << led.C1_global << ", C2 " << led.C2_global;
    return {worst <= tol_ledger && listed, d.str()};
}

Outcome fd_order()
{
    std::vector<double> e1, e2, eb;
    for (int n : {101, 201, 401, 801}) {
        const Grid g = uniform_grid(0.0, 1.0, n);
        const auto s = SampledFunction::sample(g, [](double x) { return std::sin(3.0 * x); });
        double d1 = 0.0, d2 = 0.0;
        for (int i = 0; i < n; ++i) {
            const double x = g.node(i);
            d1 = std::max(d1, std::abs(s.d1()[i] - 3.0 * std::cos(3.0 * x)));
            d2 = std::max(d2, std::abs(s.d2()[i] + 9.0 * std::sin(3.0 * x)));
        }
        e1.push_back(d1);
        e2.push_back(d2);
        // ((1+x) u')' - u = f with u = sin(pi x)
        const auto p = SampledFunction::sample(
            g, [](double x) { return 1.0 + x; }, [](double) { return 1.0; }, [](double) { return 0.0; });
        const auto rhs = SampledFunction::sample(g, [](double x) {
            return M_PI * std::cos(M_PI * x) - (1.0 + x) * M_PI * M_PI * std::sin(M_PI * x) - std::sin(M_PI * x);
        });
        const auto u = solve(SturmLiouvilleProblem(p, SampledFunction::constant(g, -1.0), rhs, 0.0, 0.0));
        double eu = 0.0;
        for (int i = 0; i < n; ++i) eu = std::max(eu, std::abs(u[i] - std::sin(M_PI * g.node(i))));
        eb.push_back(eu);
    }
    Outcome out;
    Detail d;
    auto ratios = [&](const char* name, const std::vector<double>& e) {
        d << name << " ratios";
        for (std::size_t k = 0; k + 1 < e.size(); ++k) {
            const double q = e[k] / e[k + 1];
            d << " " << q;
            if (!(q >= order_lo && q <= order_hi)) out.pass = false;
        }
        d << "; ";
    };
    ratios("first derivative", e1);
    ratios("second derivative", e2);
    ratios("boundary value solve", eb);
    out.detail = d.str();
    return out;
}

} // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"catenary identity", catenary_identity},
        {"catenoid table", catenoid_table_rows},
        {"critical ratio", critical_ratio_value},
        {"Willmore catenoid rows", willmore_catenoid_rows},
        {"Willmore bent rows", willmore_bent_rows},
        {"estimate suite", estimate_suite},
        {"maximum principle", max_principle_sweep},
        {"fixed-point contraction", contraction},
        {"coupled scheme", coupled},
        {"ledger example", ledger_example},
        {"finite difference order", fd_order},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::cout << (o.pass ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << ": " << o.detail
                  << std::endl;
    }
    std::cout << criteria.size() - failed << " of " << criteria.size() << " criteria pass" << std::endl;
    return failed == 0 ? 0 : 1;
}
