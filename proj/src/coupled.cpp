#include "rotsym/coupled.hpp"

#include "rotsym/errors.hpp"

#include <cfloat>
#include <cmath>
#include <random>
#include <sstream>

namespace rotsym {

namespace {

double curvature_weight(double w2, CurvatureVariant v)
{
    return v == CurvatureVariant::Reduced ? 1.0 : 1.0 / w2;
}

double mc_term(double fp)
{
    const double w2 = 1.0 + fp * fp;
    return 2.0 * w2 * std::sqrt(w2);
}

} // namespace

NormalizedOperator operator_L2(const SampledFunction& f, const ModelParams& params, CurvatureVariant variant)
{
    if (params.beta == 0.0) fail(ErrorKind::BetaZero, "beta must be nonzero");
    const int n = f.size();
    const double k = 2.0 * params.alpha / params.beta;
    std::vector<double> q(n);
    for (int i = 0; i < n; ++i) {
        const double w2 = 1.0 + f.d1()[i] * f.d1()[i];
        q[i] = 2.0 * f.d2()[i] / f[i] * curvature_weight(w2, variant) - k * w2;
    }
    const Grid& g = f.grid();
    return normalize_to_sl(SampledFunction::zeros(g), SampledFunction(g, std::move(q)), SampledFunction::zeros(g));
}

SampledFunction psi1(const SampledFunction& psi, const SampledFunction& f)
{
    require_same_grid(psi, f);
    const SampledFunction Hp = mean_curvature(f + psi);
    const SampledFunction H0 = mean_curvature(f);
    const int n = f.size();
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        const double fp = f.d1()[i];
        const double lin = psi.d2()[i] - 2.0 * fp / f[i] * psi.d1()[i] + f.d2()[i] / f[i] * psi[i];
        out[i] = lin - mc_term(fp) * (Hp[i] - H0[i]);
    }
    return SampledFunction(f.grid(), std::move(out));
}

SampledFunction phi1(const SampledFunction& phi, const SampledFunction& H, const SampledFunction& f,
                     const SampledFunction& chi)
{
    require_same_grid(phi, H);
    require_same_grid(phi, chi);
    const SampledFunction nl = psi1(multiply(phi, chi), f);
    const int n = f.size();
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = (mc_term(f.d1()[i]) * H[i] + nl[i]) / chi[i];
    return SampledFunction(f.grid(), std::move(out));
}

SampledFunction phi2(const SampledFunction& psi, const SampledFunction& H, const SampledFunction& f,
                     const ModelParams& params, CurvatureVariant variant)
{
    if (params.beta == 0.0) fail(ErrorKind::BetaZero, "beta must be nonzero");
    require_same_grid(psi, H);
    require_same_grid(psi, f);
    const SampledFunction F = f + psi;
    const double k = 2.0 * params.alpha / params.beta;
    const int n = f.size();
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        if (!(F[i] > 0.0)) fail(ErrorKind::NonPositiveProfile, "perturbed profile is not positive");
        const double w2 = 1.0 + f.d1()[i] * f.d1()[i];
        const double lin = (2.0 * f.d2()[i] / f[i] * curvature_weight(w2, variant) - k * w2) * H[i];
        const double Fp = F.d1()[i], Fpp = F.d2()[i];
        const double W2 = 1.0 + Fp * Fp;
        const double h = H[i];
        // H'' cancels between the two operators
        const double full = Fp * (1.0 / F[i] - Fpp / W2) * H.d1()[i] + 2.0 * h * h * h * W2
                            + 2.0 * Fpp / F[i] * curvature_weight(W2, variant) * h - k * W2 * h;
        out[i] = lin - full;
    }
    return SampledFunction(f.grid(), std::move(out));
}

namespace {

SampledFunction random_smooth(const Grid& g, std::mt19937_64& rng, double amplitude)
{
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    const double c = 0.5 * (g.a + g.b), L = g.length();
    const double a0 = U(rng), a1 = U(rng), a2 = U(rng), w = (0.05 + 4.0 * std::abs(U(rng))) * M_PI / L,
                 th = M_PI * U(rng);
    const double s = amplitude;
    return SampledFunction::sample(
        g, [=](double x) { return s * (a0 + a1 * (x - c) / L + a2 * std::sin(w * (x - c) + th)); },
        [=](double x) { return s * (a1 / L + a2 * w * std::cos(w * (x - c) + th)); },
        [=](double x) { return -s * a2 * w * w * std::sin(w * (x - c) + th); });
}

} // namespace

CoupledConstants coupled_constants(const SampledFunction& f, const SampledFunction& chi, const ModelParams& params,
                                   CurvatureVariant variant, const ConstantFitOptions& o)
{
    const Grid& g = f.grid();
    const double al = o.alpha;
    auto nrm = [al](const SampledFunction& u) { return holder_norm(u, 2, al); };
    auto nrm0 = [al](const SampledFunction& u) { return holder_norm(u, 0, al); };
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> amp(-3.0, 0.0);

    double c4 = 0.0, c5 = 0.0;
    for (int s = 0; s < o.samples; ++s) {
        auto draw = [&] { return random_smooth(g, rng, o.scale * std::pow(10.0, amp(rng))); };
        const SampledFunction p1 = draw(), h1 = draw();
        // every third pair differs only in H, every third only in phi
        const SampledFunction p2 = s % 3 == 1 ? p1 : draw();
        const SampledFunction h2 = s % 3 == 2 ? h1 : draw();
        const double np1 = nrm(p1), nh1 = nrm(h1), np2 = nrm(p2), nh2 = nrm(h2);

        const SampledFunction a1 = phi1(p1, h1, f, chi), b1 = phi2(multiply(p1, chi), h1, f, params, variant);
        c4 = std::max(c4, nrm0(a1) / (nh1 + np1 * np1));
        c4 = std::max(c4, nrm0(b1) / (nh1 * nh1 * nh1 + np1 * nh1));

        const SampledFunction a2 = phi1(p2, h2, f, chi), b2 = phi2(multiply(p2, chi), h2, f, params, variant);
        const double dp = nrm(p1 - p2), dh = nrm(h1 - h2);
        if (dp + dh == 0.0) continue;
        c5 = std::max(c5, nrm0(a1 - a2) / (dh + (np1 + np2) * dp));
        c5 = std::max(c5, nrm0(b1 - b2) / ((np1 + np2 + nh1 + nh2) * (dp + dh)));
    }

    const LinearizedOperator L1 = operator_L(f, chi);
    const SchauderPair s1 = schauder_pair(L1, al);
    const SchauderPair s2 = schauder_pair(operator_L2(f, params, variant), al);
    CoupledConstants out;
    out.C4 = o.safety * c4;
    out.C5 = o.safety * c5;
    out.C6 = std::max(s1.C2, s2.C2);
    out.C3 = s1.C3;
    return out;
}

double epsilon_growth_bound(const CoupledConstants& c)
{
    const double k = c.C4 * c.C6;
    return std::min({1.0, 1.0 / (2.0 * k), 1.0 / (k * (1.0 + k))});
}

double epsilon_contraction_bound(const CoupledConstants& c)
{
    return 1.0 / (20.0 * c.C5 * c.C5 * c.C6 * c.C6);
}

CoupledResult iterate_coupled(const SampledFunction& f, const SampledFunction& chi, const ModelParams& params,
                              double phi_left, double phi_right, double epsilon, const CoupledConfig& config)
{
    require_same_grid(f, chi);
    if (!curvature_condition(f, params))
        fail(ErrorKind::CurvatureConditionViolated, "1/min(f)^2 < alpha/beta fails; the H operator has no maximum principle");
    if (!(epsilon > 0.0)) fail(ErrorKind::InvalidArgument, "epsilon must be positive");
    const double al = config.fit.alpha;
    const LinearizedOperator L1 = operator_L(f, chi);
    const NormalizedOperator L2 = operator_L2(f, params, config.variant);

    CoupledResult res{SampledFunction::zeros(f.grid()), SampledFunction::zeros(f.grid()),
                      SampledFunction::zeros(f.grid()), {}, {}, 0.0, 0.0};
    res.constants = coupled_constants(f, chi, params, config.variant, config.fit);
    const double grow = epsilon_growth_bound(res.constants);
    const double contract = epsilon_contraction_bound(res.constants);
    if (config.enforce_epsilon && (epsilon > grow || epsilon >= contract)) {
        std::ostringstream os;
        os << "epsilon " << epsilon << " exceeds min(" << grow << ", " << contract << ")";
        fail(ErrorKind::EpsilonTooLarge, os.str());
    }

    CoupledTrace& tr = res.trace;
    tr.epsilon = epsilon;
    const double C = res.constants.C5 * res.constants.C6;
    tr.ratio_bound = 10.0 * epsilon * C * C;
    const double h = f.grid().spacing;

    SampledFunction phi = SampledFunction::zeros(f.grid());
    SampledFunction H = SampledFunction::zeros(f.grid());
    for (int k = 1; k <= config.max_iter; ++k) {
        const SampledFunction Hn =
            solve(L2.problem(phi2(multiply(phi, chi), H, f, params, config.variant), 0.0, 0.0));
        const SampledFunction phin = solve(L1.sl.problem(phi1(phi, Hn, f, chi), phi_left, phi_right));
        const double diff = holder_norm(phin - phi, 2, al) + holder_norm(Hn - H, 2, al);
        tr.phi_norms.push_back(holder_norm(phin, 2, al));
        tr.H_norms.push_back(holder_norm(Hn, 2, al));
        const double floor = 100.0 * DBL_EPSILON * std::max(phin.max_abs(), Hn.max_abs()) / (h * h);
        if (!tr.diff_norms.empty() && tr.diff_norms.back() > 10.0 * floor) {
            const double ratio = diff / tr.diff_norms.back();
            tr.ratios.push_back(ratio);
            if (ratio > 1.0) {
                std::ostringstream os;
                os << "coupled step " << k << " grew the update by " << ratio;
                fail(ErrorKind::NotContracting, os.str());
            }
        }
        tr.diff_norms.push_back(diff);
        phi = phin;
        H = Hn;
        tr.steps = k;
        if (diff < std::max(config.tol, floor)) {
            tr.converged = true;
            break;
        }
    }
    if (!tr.converged) fail(ErrorKind::NoConvergence, "coupled iteration hit the iteration cap");

    res.phi = phi;
    res.H = H;
    res.psi = multiply(phi, chi);
    const SampledFunction F = f + res.psi;
    res.willmore_residual = willmore_ode_residual(MeridianSurface(F, H, params, config.variant));
    res.mc_residual = mc_ode_residual(F, H);
    return res;
}

} // namespace rotsym
