#pragma once

#include "rotsym/meridian.hpp"
#include "rotsym/stability.hpp"

#include <cstdint>
#include <vector>

namespace rotsym {

// H'' + q H with q = 2 (f''/f) g - (2 alpha/beta)(1+f'^2), g = 1 or 1/(1+f'^2)
NormalizedOperator operator_L2(const SampledFunction& f, const ModelParams& params, CurvatureVariant variant);

// psi'' - (2f'/f) psi' + (f''/f) psi - 2 (1+f'^2)^{3/2} (H[f+psi] - H[f]); exact, no series
SampledFunction psi1(const SampledFunction& psi, const SampledFunction& f);

// (2 (1+f'^2)^{3/2} / chi) H + psi1(phi chi) / chi
SampledFunction phi1(const SampledFunction& phi, const SampledFunction& H, const SampledFunction& f,
                     const SampledFunction& chi);

// L2[H] minus the full H operator along f + psi; vanishes for H = 0
SampledFunction phi2(const SampledFunction& psi, const SampledFunction& H, const SampledFunction& f,
                     const ModelParams& params, CurvatureVariant variant);

struct CoupledConstants {
    double C4 = 0.0; // growth of both right sides
    double C5 = 0.0; // Lipschitz constant of both right sides
    double C6 = 0.0; // Schauder constant of both linear solves, zero data
    double C3 = 0.0; // boundary term of the phi solve
};

struct ConstantFitOptions {
    double alpha = 0.5;
    double scale = 1e-2; // largest sampled amplitude
    int samples = 200;
    std::uint64_t seed = 7;
    double safety = 2.0;
};

// C4, C5 as the worst sampled quotients times a safety factor; C6 from the ledger
CoupledConstants coupled_constants(const SampledFunction& f, const SampledFunction& chi, const ModelParams& params,
                                   CurvatureVariant variant, const ConstantFitOptions& options = {});

// min{1, 1/(2 C4 C6), 1/(C4 C6 (1 + C4 C6))}
double epsilon_growth_bound(const CoupledConstants& c);
// epsilon must stay strictly below this for contraction
double epsilon_contraction_bound(const CoupledConstants& c);

struct CoupledTrace {
    std::vector<double> phi_norms;
    std::vector<double> H_norms;
    std::vector<double> diff_norms; // |dphi| + |dH| in the 2+alpha norm
    std::vector<double> ratios;
    double epsilon = 0.0;
    double ratio_bound = 0.0; // 10 eps C5^2 C6^2
    bool converged = false;
    int steps = 0;
};

struct CoupledConfig {
    double tol = 1e-10;
    int max_iter = 200;
    CurvatureVariant variant = CurvatureVariant::Reduced;
    ConstantFitOptions fit;
    bool enforce_epsilon = true;
};

struct CoupledResult {
    SampledFunction phi;
    SampledFunction H;
    SampledFunction psi;
    CoupledTrace trace;
    CoupledConstants constants;
    double willmore_residual = 0.0; // H equation along f + psi
    double mc_residual = 0.0;       // mean curvature of f + psi against H
};

CoupledResult iterate_coupled(const SampledFunction& f, const SampledFunction& chi, const ModelParams& params,
                              double phi_left, double phi_right, double epsilon, const CoupledConfig& config = {});

} // namespace rotsym
