#include "rotsym/meridian.hpp"

#include "rotsym/errors.hpp"

#include <cmath>
#include <sstream>

namespace rotsym {

const char* to_string(CurvatureVariant v)
{
    return v == CurvatureVariant::Reduced ? "paper" : "principal";
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

void require_beta(const ModelParams& p)
{
    if (p.beta == 0.0) fail(ErrorKind::BetaZero, "beta must be nonzero for the curvature equation");
}

double max_interior_abs(const std::vector<double>& v)
{
    double m = 0.0;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) m = std::max(m, std::abs(v[i]));
    return m;
}

} // namespace

MeridianSurface::MeridianSurface(SampledFunction f_, SampledFunction H_, ModelParams params_,
                                 CurvatureVariant variant_)
    : f(std::move(f_)), H(std::move(H_)), params(params_), variant(variant_)
{
    require_same_grid(f, H);
    require_positive(f);
}

SampledFunction mean_curvature(const SampledFunction& f)
{
    require_positive(f);
    const int n = f.size();
    std::vector<double> H(n);
    for (int i = 0; i < n; ++i) {
        const double w2 = 1.0 + f.d1()[i] * f.d1()[i];
        const double w = std::sqrt(w2);
        H[i] = f.d2()[i] / (2.0 * w2 * w) - 1.0 / (2.0 * f[i] * w);
    }
    return SampledFunction(f.grid(), std::move(H));
}

SampledFunction gauss_curvature(const SampledFunction& f, CurvatureVariant variant)
{
    require_positive(f);
    const int n = f.size();
    std::vector<double> K(n);
    for (int i = 0; i < n; ++i) {
        const double w2 = 1.0 + f.d1()[i] * f.d1()[i];
        K[i] = -f.d2()[i] / (f[i] * (variant == CurvatureVariant::Reduced ? w2 : w2 * w2));
    }
    return SampledFunction(f.grid(), std::move(K));
}

SampledFunction laplace_beltrami_H(const SampledFunction& f, const SampledFunction& H)
{
    require_same_grid(f, H);
    require_positive(f);
    const int n = f.size();
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        const double fp = f.d1()[i];
        const double w2 = 1.0 + fp * fp;
        out[i] = fp / w2 * (1.0 / f[i] - f.d2()[i] / w2) * H.d1()[i] + H.d2()[i] / w2;
    }
    return SampledFunction(f.grid(), std::move(out));
}

SampledFunction willmore_operator(const SampledFunction& f, const SampledFunction& H, const ModelParams& params,
                                  CurvatureVariant variant)
{
    require_beta(params);
    require_same_grid(f, H);
    require_positive(f);
    const double k = 2.0 * params.alpha / params.beta;
    const int n = f.size();
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        const double fp = f.d1()[i], fpp = f.d2()[i];
        const double w2 = 1.0 + fp * fp;
        const double h = H[i];
        const double g = variant == CurvatureVariant::Reduced ? 1.0 : 1.0 / w2;
        out[i] = H.d2()[i] + fp * (1.0 / f[i] - fpp / w2) * H.d1()[i] + 2.0 * h * h * h * w2
                 + 2.0 * fpp / f[i] * g * h - k * w2 * h;
    }
    return SampledFunction(f.grid(), std::move(out));
}

double willmore_ode_residual(const MeridianSurface& s)
{
    return max_interior_abs(willmore_operator(s.f, s.H, s.params, s.variant).values());
}

double mc_ode_residual(const SampledFunction& f, const SampledFunction& H)
{
    require_same_grid(f, H);
    require_positive(f);
    double r = 0.0;
    for (int i = 1; i + 1 < f.size(); ++i) {
        const double w2 = 1.0 + f.d1()[i] * f.d1()[i];
        r = std::max(r, std::abs(f.d2()[i] - 2.0 * H[i] * w2 * std::sqrt(w2) - w2 / f[i]));
    }
    return r;
}

double energy(const MeridianSurface& s)
{
    const SampledFunction K = gauss_curvature(s.f, s.variant);
    const int n = s.f.size();
    std::vector<double> integrand(n);
    for (int i = 0; i < n; ++i) {
        const double w = std::sqrt(1.0 + s.f.d1()[i] * s.f.d1()[i]);
        const double density = s.params.alpha + s.params.beta * s.H[i] * s.H[i] - s.params.gamma * K[i];
        integrand[i] = density * s.f[i] * w;
    }
    return 2.0 * M_PI * integrate_values(integrand, s.f.grid().spacing);
}

bool curvature_condition(const SampledFunction& f, const ModelParams& params)
{
    require_beta(params);
    require_positive(f);
    const double m = f.min();
    return 1.0 / (m * m) < params.alpha / params.beta;
}

} // namespace rotsym
