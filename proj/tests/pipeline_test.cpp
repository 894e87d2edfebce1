// Cross-module consistency: the same surface reached through different
// solvers must agree.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "rotsym/catenary.hpp"
#include "rotsym/coupled.hpp"
#include "rotsym/errors.hpp"
#include "rotsym/experiments.hpp"
#include "rotsym/stability.hpp"
#include "rotsym/willmore_bvp.hpp"

#include <cmath>

using namespace rotsym;

namespace {

SampledFunction cosh_on(const Grid& g)
{
    return SampledFunction::sample(
        g, [](double x) { return std::cosh(x); }, [](double x) { return std::sinh(x); },
        [](double x) { return std::cosh(x); });
}

double sup_diff(const SampledFunction& a, const SampledFunction& b)
{
    double e = 0.0;
    for (int i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
    return e;
}

} // namespace

TEST_CASE("fixed-point perturbation and direct Willmore solve find the same catenoid")
{
    const Grid g = uniform_grid(-0.4, 0.4, 401);
    const auto f = cosh_on(g);
    PerturbConfig pc;
    pc.enforce_smallness = false;
    const double a = 0.01;
    const auto pert = perturb(f, a, a, 0.5, pc);
    const auto total = f + pert.psi;

    WillmoreConfig wc;
    wc.grid_n = g.n;
    const auto direct = solve_willmore_bvp(RingBoundary{total[0], 0.8}, ModelParams{}, wc);
    CHECK(direct.from_catenoid);
    CHECK(sup_diff(direct.surface.f, total) < 1e-7);
    CHECK(energy(direct.surface) < 1e-12);
}

TEST_CASE("coupled iteration and direct solve agree with an area term")
{
    const Grid g = uniform_grid(-0.4, 0.4, 201);
    const auto f = cosh_on(g);
    const auto chi = stability_function(f).chi;
    const ModelParams two{2.0, 1.0, 0.0};
    CoupledConfig cc;
    cc.enforce_epsilon = false;
    const double a = 0.005;
    const auto coupled = iterate_coupled(f, chi, two, a, a, 0.5, cc);
    REQUIRE(coupled.trace.converged);
    const auto total = f + coupled.psi;

    WillmoreConfig wc;
    wc.grid_n = g.n;
    wc.variant = CurvatureVariant::Reduced;
    const auto direct = solve_willmore_bvp(RingBoundary{total[0], 0.8}, two, wc);
    CHECK(sup_diff(direct.surface.f, total) < 1e-6);
    CHECK(direct.surface.H.max_abs() < 1e-8);
    CHECK(coupled.H.max_abs() == 0.0);
}

TEST_CASE("Willmore catenoids carry a stability certificate")
{
    WillmoreConfig wc;
    wc.grid_n = 401;
    for (double h : {0.6, 1.0}) {
        const auto s = solve_willmore_bvp(RingBoundary{1.0, h}, ModelParams{}, wc);
        const auto cert = stability_function(s.surface.f);
        CHECK(cert.margin > 0.0);
        CHECK(cert.chi.min() > 0.0);
    }
    // the inner branch at the same rings is not certifiable
    const auto inner = fit(RingBoundary{1.0, 1.0})[1].curve.sample(uniform_grid(-0.5, 0.5, 401));
    bool unstable = false;
    try {
        stability_function(inner);
    } catch (const Error& e) {
        unstable = e.kind() == ErrorKind::Unstable;
    }
    CHECK(unstable);
}

TEST_CASE("tables and the critical ratio tell the same story")
{
    const double crit = critical_ratio_report().ratio;
    for (const auto& row : catenoid_table(1.0, 0.02, 80)) {
        if (row.status == RowStatus::Ok) CHECK(row.key < crit + 1e-9);
        else CHECK(row.key > crit - 1e-9);
    }
    // the Willmore branch leaves the catenoid exactly where the table breaks down
    const auto w = willmore_table(1.0, {1.3, 1.32, 1.33, 1.4}, ModelParams{});
    CHECK(*w[0].energy < 1e-12);
    CHECK(*w[1].energy < 1e-12);
    CHECK(*w[2].energy > 0.0);
    CHECK(*w[3].energy > *w[2].energy);
    // area keeps growing across the fold
    CHECK(w[3].area > w[1].area);
}
