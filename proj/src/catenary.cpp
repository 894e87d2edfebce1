#include "rotsym/catenary.hpp"

#include "rotsym/errors.hpp"

#include <cmath>
#include <sstream>

namespace rotsym {

double Catenary::value(double x) const { return c1 * std::cosh(x / c1 + c2); }
double Catenary::d1(double x) const { return std::sinh(x / c1 + c2); }
double Catenary::d2(double x) const { return std::cosh(x / c1 + c2) / c1; }

SampledFunction Catenary::sample(const Grid& grid) const
{
    return SampledFunction::sample(
        grid, [this](double x) { return value(x); }, [this](double x) { return d1(x); },
        [this](double x) { return d2(x); });
}

namespace {

// root of t tanh t = 1; the minimum of c cosh(h/(2c)) sits at c = h/(2 t)
double fold_parameter()
{
    static const double t = [] {
        double lo = 1.0, hi = 1.5;
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (mid * std::tanh(mid) < 1.0) lo = mid; else hi = mid;
            if (hi - lo <= 0.0) break;
        }
        return 0.5 * (lo + hi);
    }();
    return t;
}

template <class G>
double bisect(G g, double lo, double hi)
{
    // g(lo) and g(hi) have opposite signs
    const bool lo_pos = g(lo) > 0.0;
    for (int i = 0; i < 300; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if ((g(mid) > 0.0) == lo_pos) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

std::vector<FittedCatenary> fit(const RingBoundary& rings, double fold_margin)
{
    const double r = rings.r, h = rings.h;
    if (!(r > 0.0) || !(h > 0.0) || !std::isfinite(r) || !std::isfinite(h))
        fail(ErrorKind::InvalidArgument, "ring radius and distance must be positive and finite");
    auto g = [&](double c) { return c * std::cosh(h / (2.0 * c)) - r; };
    const double c_fold = h / (2.0 * fold_parameter());
    const double g_fold = g(c_fold);
    if (g_fold > 0.0 || (fold_margin > 0.0 && g_fold > -fold_margin * r)) {
        std::ostringstream os;
        os << "h/r = " << h / r << " is past the fold; no catenary spans the rings";
        fail(ErrorKind::NoSolution, os.str());
    }
    if (g_fold == 0.0) return {FittedCatenary{Catenary{c_fold, 0.0}, Branch::Outer}};

    // g(r) > 0 always; g grows without bound as c -> 0
    const double outer = bisect(g, c_fold, r);
    double lo = c_fold;
    while (g(lo) <= 0.0) lo *= 0.5;
    const double inner = bisect(g, lo, c_fold);
    return {FittedCatenary{Catenary{outer, 0.0}, Branch::Outer},
            FittedCatenary{Catenary{inner, 0.0}, Branch::Inner}};
}

Catenary fit_through(double xl, double yl, double xr, double yr, const Catenary& seed)
{
    if (!(xr > xl)) fail(ErrorKind::DegenerateInterval, "need xl < xr");
    if (!(yl > 0.0) || !(yr > 0.0)) fail(ErrorKind::NonPositiveProfile, "boundary heights must be positive");
    double c1 = seed.c1, c2 = seed.c2;
    auto residual = [&](double a, double b, double& r1, double& r2) {
        r1 = a * std::cosh(xl / a + b) - yl;
        r2 = a * std::cosh(xr / a + b) - yr;
    };
    double r1, r2;
    residual(c1, c2, r1, r2);
    for (int it = 0; it < 100; ++it) {
        const double scale = std::max(std::abs(yl), std::abs(yr));
        if (std::max(std::abs(r1), std::abs(r2)) <= 1e-15 * scale) break;
        const double ul = xl / c1 + c2, ur = xr / c1 + c2;
        const double j11 = std::cosh(ul) - xl / c1 * std::sinh(ul);
        const double j12 = c1 * std::sinh(ul);
        const double j21 = std::cosh(ur) - xr / c1 * std::sinh(ur);
        const double j22 = c1 * std::sinh(ur);
        const double det = j11 * j22 - j12 * j21;
        if (!(std::abs(det) > 0.0)) fail(ErrorKind::NoSolution, "singular Jacobian while fitting catenary");
        const double d1 = (r1 * j22 - r2 * j12) / det;
        const double d2 = (j11 * r2 - j21 * r1) / det;
        double step = 1.0;
        const double old = std::hypot(r1, r2);
        for (int k = 0; k < 40; ++k) {
            const double a = c1 - step * d1, b = c2 - step * d2;
            double s1, s2;
            if (a > 0.0) {
                residual(a, b, s1, s2);
                if (std::isfinite(s1) && std::isfinite(s2) && std::hypot(s1, s2) < old) {
                    c1 = a;
                    c2 = b;
                    r1 = s1;
                    r2 = s2;
                    break;
                }
            }
            step *= 0.5;
            if (k == 39) {
                // no decrease: accept only if already at roundoff
                if (old <= 1e-12 * scale) return Catenary{c1, c2};
                fail(ErrorKind::NoSolution, "Newton stalled while fitting catenary");
            }
        }
    }
    if (std::max(std::abs(r1), std::abs(r2)) > 1e-10 * std::max(yl, yr))
        fail(ErrorKind::NoSolution, "catenary fit did not converge");
    return Catenary{c1, c2};
}

double area(const Catenary& cat, double xl, double xr)
{
    if (!(cat.c1 > 0.0)) fail(ErrorKind::NonPositiveProfile, "catenary with c1 <= 0 is not positive");
    const double c = cat.c1;
    auto F = [&](double x) { return x + 0.5 * c * std::sinh(2.0 * (x / c + cat.c2)); };
    return M_PI * c * (F(xr) - F(xl));
}

double area(const Catenary& cat, const RingBoundary& rings)
{
    return area(cat, rings.left(), rings.right());
}

namespace {

void require_positive(const SampledFunction& f)
{
    for (int i = 0; i < f.size(); ++i) {
        if (!(f[i] > 0.0)) {
            std::ostringstream os;
            os << "profile is " << f[i] << " at node " << i;
            fail(ErrorKind::NonPositiveProfile, os.str());
        }
    }
}

} // namespace

double area(const SampledFunction& f)
{
    require_positive(f);
    std::vector<double> integrand(f.size());
    for (int i = 0; i < f.size(); ++i) integrand[i] = f[i] * std::sqrt(1.0 + f.d1()[i] * f.d1()[i]);
    return 2.0 * M_PI * integrate_values(integrand, f.grid().spacing);
}

double minimal_residual(const SampledFunction& f)
{
    require_positive(f);
    double r = 0.0;
    for (int i = 1; i + 1 < f.size(); ++i)
        r = std::max(r, std::abs(f[i] * f.d2()[i] - 1.0 - f.d1()[i] * f.d1()[i]));
    return r;
}

double critical_ratio()
{
    auto solvable = [](double ratio) {
        try {
            fit(RingBoundary{1.0, ratio});
            return true;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NoSolution) throw;
            return false;
        }
    };
    double lo = 1.0, hi = 2.0;
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        if (solvable(mid)) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace rotsym
