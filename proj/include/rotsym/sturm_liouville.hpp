#pragma once

#include "rotsym/grid.hpp"

namespace rotsym {

/// (p u')' + q u = rhs on the grid, u(a) = eta1, u(b) = eta2.
struct SturmLiouvilleProblem {
    SturmLiouvilleProblem(SampledFunction p, SampledFunction q, SampledFunction rhs,
                          double eta1, double eta2);

    const Grid& grid() const { return p.grid(); }

    SampledFunction p;
    SampledFunction q;
    SampledFunction rhs;
    double eta1;
    double eta2;
};

/// Coefficients of u'' + pt u' + qt u = ft after multiplying by
/// p = exp(int pt): the self-adjoint pair (p, q) and the scaled right side.
struct NormalizedOperator {
    SampledFunction p;
    SampledFunction q;
    SampledFunction rhs;

    SturmLiouvilleProblem problem(double eta1, double eta2) const;
    // same operator, different right side ft (scaled by p here)
    SturmLiouvilleProblem problem(const SampledFunction& f_tilde, double eta1, double eta2) const;
};

NormalizedOperator normalize_to_sl(const SampledFunction& p_tilde, const SampledFunction& q_tilde,
                                   const SampledFunction& f_tilde);

struct SolveOptions {
    double pivot_ratio_tol = 1e-10;
    // compare the smallest discrete eigenvalue against the truncation error
    // of the stencil; only meaningful (and only run) when q > 0 somewhere
    bool kernel_check = true;
    double kernel_factor = 4.0;
};

SampledFunction solve(const SturmLiouvilleProblem& problem, const SolveOptions& options = {});

bool max_principle_applies(const SturmLiouvilleProblem& problem, double tol = 0.0);

struct CoefficientBounds {
    double p0 = 1.0;
    double p1 = 1.0;
    double p1prime = 0.0;
    double q1 = 0.0;
    double p1hat = 1.0;
    double q1hat = 0.0;
    double p1prime_hat = 1.0;
    double alpha = 0.5;
};

CoefficientBounds coefficient_bounds(const SturmLiouvilleProblem& problem, double alpha);

// max interior |L_h u - rhs| with the conservative stencil used by solve
double residual(const SturmLiouvilleProblem& problem, const SampledFunction& u);
// max interior |p' u' + p u'' + q u - rhs| from the derivatives carried by u
double fd_residual(const SturmLiouvilleProblem& problem, const SampledFunction& u);

} // namespace rotsym
