#pragma once

#include "rotsym/grid.hpp"

#include <vector>

namespace rotsym {

/// f(x) = c1 cosh(x / c1 + c2)
struct Catenary {
    double c1 = 1.0;
    double c2 = 0.0;

    double value(double x) const;
    double d1(double x) const;
    double d2(double x) const;
    // analytic derivatives attached
    SampledFunction sample(const Grid& grid) const;
};

/// Two coaxial rings of radius r at x = -h/2 and x = h/2.
struct RingBoundary {
    double r = 1.0;
    double h = 1.0;

    double left() const { return -0.5 * h; }
    double right() const { return 0.5 * h; }
};

enum class Branch { Outer, Inner };

struct FittedCatenary {
    Catenary curve;
    Branch branch = Branch::Outer;
};

// Solves c cosh(h / (2c)) = r. Returns the outer branch first. Throws
// NoSolution past the fold; fold_margin > 0 also rejects configurations
// whose minimum of c cosh(h/(2c)) - r lies within fold_margin * r of zero.
std::vector<FittedCatenary> fit(const RingBoundary& rings, double fold_margin = 0.0);

// Catenary through (xl, yl), (xr, yr) by Newton on (c1, c2) from seed.
Catenary fit_through(double xl, double yl, double xr, double yr, const Catenary& seed);

double area(const Catenary& cat, double xl, double xr);
double area(const Catenary& cat, const RingBoundary& rings);
double area(const SampledFunction& f);

// max interior |f f'' - 1 - f'^2|
double minimal_residual(const SampledFunction& f);

// largest h/r admitting a catenary, by bisection on solvability of fit
double critical_ratio();

} // namespace rotsym
