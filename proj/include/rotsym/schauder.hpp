#pragma once

#include "rotsym/sturm_liouville.hpp"

#include <array>
#include <vector>

namespace rotsym {

/// The explicit a priori constants for (p u')' + q u = f on an interval.
/// c[i] holds the constant numbered i+1.
struct ConstantLedger {
    double mu = 0.25;
    double nu = 1.0;
    std::array<double, 15> c{};
    double C1_global = 0.0;
    double C2_global = 0.0;
    CoefficientBounds inputs;
    double interval_length = 1.0;
    double alpha = 0.5;

    double ci(int i) const { return c.at(i - 1); }
};

ConstantLedger compute_ledger(const CoefficientBounds& bounds, double interval_length, double alpha,
                              double mu);

// largest mu on {0.49, 0.45, 0.40, ..., 0.05, 0.01} with mu * c15 < 1/2
double choose_mu(const CoefficientBounds& bounds, double interval_length, double alpha);

enum class Estimate {
    SupNorm,                // sup norm from the maximum principle
    FirstDerivative,        // C^1 norm
    Holder0,                // C^alpha norm from the C^1 norm
    Holder1,                // C^{1+alpha} with c1, c2, c3
    Holder1Combined,        // C^{1+alpha} with c4, c5, c6
    PoissonSupNorm,
    PoissonFirstDerivative,
    PoissonSecondDerivative,
    PoissonHolder0,
    PoissonHolder1,
    PoissonHolder2,
    GlobalBeforeAbsorption, // c13, c14, mu c15 chain
    Global,                 // C1, C2
};

const char* to_string(Estimate e);

struct EstimateReport {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = true;
    double slack = 0.0;
    Estimate which = Estimate::SupNorm;
};

EstimateReport make_report(Estimate which, double lhs, double rhs);

// F = f/p - (p'/p) u' - (q/p) u, i.e. u'' rewritten from the equation
SampledFunction poisson_forcing(const SturmLiouvilleProblem& problem, const SampledFunction& u);

EstimateReport verify_c0_estimate(const SturmLiouvilleProblem& problem, const SampledFunction& u);

// u'' = F is checked against rel_tol * max(1, |F|_0) before anything else
std::vector<EstimateReport> verify_poisson_estimates(const SampledFunction& u, const SampledFunction& F,
                                                     double mu = 0.25, double alpha = 0.5,
                                                     double rel_tol = 1e-2);

EstimateReport verify_global_estimate(const SturmLiouvilleProblem& problem, const SampledFunction& u,
                                      const ConstantLedger& ledger);

// C^1, C^alpha, both C^{1+alpha} forms and the chain before absorption
std::vector<EstimateReport> verify_intermediate_estimates(const SturmLiouvilleProblem& problem,
                                                          const SampledFunction& u,
                                                          const ConstantLedger& ledger);

} // namespace rotsym
