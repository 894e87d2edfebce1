#pragma once

#include "rotsym/grid.hpp"

namespace rotsym {

/// Weights of the functional: alpha (area), beta (H^2), gamma (K).
struct ModelParams {
    double alpha = 0.0;
    double beta = 1.0;
    double gamma = 0.0;
};

// Gauss curvature along the meridian: Reduced is -f''/(f (1+f'^2)), Principal
// the product of the principal curvatures, -f''/(f (1+f'^2)^2).
// to_string gives "paper" and "principal", the command-line spellings.
enum class CurvatureVariant { Reduced, Principal };

const char* to_string(CurvatureVariant v);

struct MeridianSurface {
    SampledFunction f;
    SampledFunction H;
    ModelParams params;
    CurvatureVariant variant = CurvatureVariant::Reduced;

    MeridianSurface(SampledFunction f, SampledFunction H, ModelParams params = {},
                    CurvatureVariant variant = CurvatureVariant::Reduced);
};

// f''/(2 (1+f'^2)^{3/2}) - 1/(2 f sqrt(1+f'^2)); catenoid 0, cylinder -1/(2c)
SampledFunction mean_curvature(const SampledFunction& f);
SampledFunction gauss_curvature(const SampledFunction& f, CurvatureVariant variant);

// Laplace-Beltrami of a rotationally symmetric H along the meridian
SampledFunction laplace_beltrami_H(const SampledFunction& f, const SampledFunction& H);

// nodewise left side of the H equation; max interior |.| is the residual
SampledFunction willmore_operator(const SampledFunction& f, const SampledFunction& H, const ModelParams& params,
                                  CurvatureVariant variant);
double willmore_ode_residual(const MeridianSurface& surface);

// max interior |f'' - 2H (1+f'^2)^{3/2} - (1+f'^2)/f|
double mc_ode_residual(const SampledFunction& f, const SampledFunction& H);

// 2 pi int (alpha + beta H^2 - gamma K) f sqrt(1+f'^2) dx, Simpson
double energy(const MeridianSurface& surface);

// the H operator obeys the maximum principle when 1/min(f)^2 < alpha/beta
bool curvature_condition(const SampledFunction& f, const ModelParams& params);

} // namespace rotsym
