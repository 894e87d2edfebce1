#pragma once

#include "rotsym/catenary.hpp"
#include "rotsym/meridian.hpp"

#include <string>
#include <vector>

namespace rotsym {

struct WillmoreConfig {
    int grid_n = 401;
    double residual_tol = 1e-8;
    int max_newton = 40;
    int max_halvings = 30;
    CurvatureVariant variant = CurvatureVariant::Principal;
    // continuation past the fold: H at both rings is held at `imperfection`
    // while h/r climbs from 1 to `release_ratio`, then relaxed back to 0
    double imperfection = -0.02;
    double release_ratio = 1.5;
    double step_ratio = 0.02;     // initial continuation step in h/r
    double max_step_ratio = 0.1;
    double min_step_ratio = 1e-4;
};

struct WillmoreSolution {
    MeridianSurface surface;
    double mc_residual = 0.0;
    double willmore_residual = 0.0;
    int newton_steps = 0;        // for the final solve
    bool from_catenoid = false;  // true when seeded by the fitted catenoid
};

// f(+-h/2) = r, H(+-h/2) = 0. Seeds from the outer catenoid when it exists,
// otherwise continues in h from the catenoid at h = r.
WillmoreSolution solve_willmore_bvp(const RingBoundary& rings, const ModelParams& params,
                                    const WillmoreConfig& config = {});

// Same solutions for several heights at one radius, sharing a single
// continuation path. Results are in input order.
std::vector<WillmoreSolution> solve_willmore_family(double r, const std::vector<double>& heights,
                                                    const ModelParams& params, const WillmoreConfig& config = {});

} // namespace rotsym
