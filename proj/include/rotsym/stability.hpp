#pragma once

#include "rotsym/schauder.hpp"
#include "rotsym/sturm_liouville.hpp"

#include <vector>

namespace rotsym {

/// Positive chi with chi'' - (2f'/f) chi' + (f''/f) chi <= 0.
struct StabilityCertificate {
    SampledFunction chi;
    double margin = 0.0;           // min chi
    double inequality_slack = 0.0; // max interior value of the left side, FD chi''
    double slope = 0.0;            // chi'(x_l) with chi(x_l) = 1
};

// Shoots the homogeneous linearized equation from chi(x_l) = 1. The two
// fundamental solutions are marched once; the feasible slopes form an
// interval and the slope maximizing min chi is taken. chi'' is carried
// from the equation itself. Throws Unstable when no slope stays positive.
StabilityCertificate stability_function(const SampledFunction& f);

struct LinearizedOperator {
    SampledFunction p_tilde;
    SampledFunction q_tilde; // after snapping tiny positives to zero
    NormalizedOperator sl;
};

// q_tilde above q_tol anywhere, or chi <= 0, is CertificateInvalid
LinearizedOperator operator_L(const SampledFunction& f, const SampledFunction& chi, double q_tol = 1e-6);

// (chi/f) phi'^2 - (chi/f) phi phi'' + (chi'^2/(f chi) - chi''/f) phi^2
SampledFunction phi_rhs(const SampledFunction& phi, const SampledFunction& chi, const SampledFunction& f);

double lipschitz_constant(const SampledFunction& chi, const SampledFunction& f, double alpha);

// Constants of |phi|_{2+a} <= C2 |rhs|_a + C3 max|boundary|
struct SchauderPair {
    double C2 = 0.0;
    double C3 = 0.0;
    ConstantLedger ledger;
};

SchauderPair schauder_pair(const NormalizedOperator& op, double alpha);
SchauderPair schauder_pair(const LinearizedOperator& op, double alpha);

// largest a with 2 t (1 + t/(1 - eps)) <= eps, t = a C1 C2 C3
double smallness_threshold(double C1, double C2, double C3, double epsilon);

struct IterationTrace {
    std::vector<double> step_norms; // |phi_k|_{2+alpha}
    std::vector<double> diff_norms; // |phi_{k+1} - phi_k|_{2+alpha}, diff_norms[0] = |phi_1|
    std::vector<double> ratios;
    double epsilon = 0.0;
    bool converged = false;
    int steps = 0;
};

struct PerturbConfig {
    double alpha = 0.5;
    double tol = 1e-10;
    int max_iter = 200;
    double residual_tol = 1e-6;
    // off: run beyond the smallness bound, e.g. to observe contraction anyway
    bool enforce_smallness = true;
};

struct PerturbationResult {
    SampledFunction psi;
    SampledFunction phi;
    IterationTrace trace;
    double a = 0.0;
    double C1 = 0.0;
    double C2 = 0.0;
    double C3 = 0.0;
    double a_max = 0.0;
    // every iterate phi_1, phi_2, ...
    std::vector<SampledFunction> iterates;
};

PerturbationResult perturb(const SampledFunction& f, double phi_left, double phi_right, double epsilon,
                           const PerturbConfig& config = {});

} // namespace rotsym
