#include "rotsym/schauder.hpp"

#include "rotsym/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rotsym {

ConstantLedger compute_ledger(const CoefficientBounds& b, double L, double alpha, double mu)
{
    if (!(alpha > 0.0 && alpha < 1.0))
        fail(ErrorKind::InvalidExponent, "Hoelder exponent must lie in (0, 1)");
    if (!(L > 0.0) || !std::isfinite(L))
        fail(ErrorKind::DegenerateInterval, "interval length must be positive");
    if (!(mu > 0.0))
        fail(ErrorKind::InvalidArgument, "mu must be positive");
    if (mu >= 0.5)
        fail(ErrorKind::MuTooLarge, "mu must stay below 1/2");
    if (!(b.p0 > 0.0))
        fail(ErrorKind::NonPositiveCoefficient, "p0 must be positive");

    const double p0 = b.p0, p1 = b.p1, dp = b.p1prime, q1 = b.q1;
    // p1hat is carried in the inputs but no constant uses it
    const double qh = b.q1hat, dph = b.p1prime_hat;
    const double La = std::pow(L, 1.0 - alpha);

    ConstantLedger led;
    led.mu = mu;
    led.alpha = alpha;
    led.interval_length = L;
    led.inputs = b;
    led.nu = (1.0 + dp) / p0;

    auto& c = led.c;
    c[0] = La * (dp / p0 + 2.0 * p1 * dp / (mu * p0 * p0 * L) + dp * q1 * L / (2.0 * p0 * p0) + q1 / p0);
    c[1] = La * (dp * L / (2.0 * p0 * p0) + 1.0 / p0);
    c[2] = p1 * dp * std::pow(L, 2.0 - alpha) / (2.0 * p0 * p0);

    c[3] = c[1] + L / (2.0 * p0);
    c[4] = 1.0 + c[0] + 2.0 * p1 / (mu * p0 * L) + q1 * L / (2.0 * p0);
    c[5] = c[2] + p1 * L / (2.0 * p0);

    c[6] = (1.0 + dp * c[3]) / p0;
    c[7] = (dp * c[4] + q1) / p0;
    c[8] = dp / p0 * c[5];

    c[9] = (1.0 + dph * c[3] + qh * La * c[3]) / p0;
    c[10] = (dph * c[4] + qh + qh * La * c[4]) / p0;
    c[11] = (dph * c[5] + qh * La * c[5]) / p0;

    const double k = (2.0 + (1.0 + mu) * L) / 2.0;
    c[12] = k * c[6] + c[9];
    c[13] = k * c[7] + (2.0 + mu * L) / (mu * L) + c[10];
    c[14] = k * c[8] + c[11];

    for (double v : c) {
        if (!std::isfinite(v))
            fail(ErrorKind::NonFiniteCoefficient, "ledger constant is not finite");
    }
    const double absorb = 1.0 - mu * c[14];
    if (absorb <= 0.0) {
        std::ostringstream os;
        os << "mu * c15 = " << mu * c[14] << " >= 1";
        fail(ErrorKind::MuTooLarge, os.str());
    }
    led.C1_global = c[12] / absorb;
    led.C2_global = c[13] / absorb;
    return led;
}

double choose_mu(const CoefficientBounds& bounds, double L, double alpha)
{
    static const double grid[] = {0.49, 0.45, 0.40, 0.35, 0.30, 0.25, 0.20,
                                  0.15, 0.10, 0.05, 0.01};
    for (double mu : grid) {
        try {
            const ConstantLedger led = compute_ledger(bounds, L, alpha, mu);
            if (mu * led.ci(15) < 0.5) return mu;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::MuTooLarge) throw;
        }
    }
    fail(ErrorKind::NoValidMu, "no mu on the search grid keeps mu * c15 below 1/2");
}

const char* to_string(Estimate e)
{
    switch (e) {
    case Estimate::SupNorm: return "sup_norm";
    case Estimate::FirstDerivative: return "c1_norm";
    case Estimate::Holder0: return "holder_alpha";
    case Estimate::Holder1: return "holder_1_alpha";
    case Estimate::Holder1Combined: return "holder_1_alpha_combined";
    case Estimate::PoissonSupNorm: return "poisson_sup_norm";
    case Estimate::PoissonFirstDerivative: return "poisson_c1_norm";
    case Estimate::PoissonSecondDerivative: return "poisson_c2_norm";
    case Estimate::PoissonHolder0: return "poisson_holder_alpha";
    case Estimate::PoissonHolder1: return "poisson_holder_1_alpha";
    case Estimate::PoissonHolder2: return "poisson_holder_2_alpha";
    case Estimate::GlobalBeforeAbsorption: return "global_before_absorption";
    case Estimate::Global: return "global";
    }
    return "unknown";
}

EstimateReport make_report(Estimate which, double lhs, double rhs)
{
    EstimateReport r;
    r.which = which;
    r.lhs = lhs;
    r.rhs = rhs;
    r.holds = lhs <= rhs;
    r.slack = rhs - lhs;
    return r;
}

SampledFunction poisson_forcing(const SturmLiouvilleProblem& pr, const SampledFunction& u)
{
    require_same_grid(pr.p, u);
    const int n = u.size();
    std::vector<double> F(n);
    for (int i = 0; i < n; ++i)
        F[i] = (pr.rhs[i] - pr.p.d1()[i] * u.d1()[i] - pr.q[i] * u[i]) / pr.p[i];
    return SampledFunction(u.grid(), std::move(F));
}

namespace {

double boundary_max(const SampledFunction& u)
{
    return std::max(std::abs(u[0]), std::abs(u[u.size() - 1]));
}

double max_abs_vec(const std::vector<double>& v)
{
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

} // namespace

EstimateReport verify_c0_estimate(const SturmLiouvilleProblem& pr, const SampledFunction& u)
{
    if (!max_principle_applies(pr))
        fail(ErrorKind::MaxPrincipleInapplicable, "q is positive somewhere");
    require_same_grid(pr.p, u);
    const double p0 = pr.p.min();
    const double dp = max_abs_vec(pr.p.d1());
    const double nu = (1.0 + dp) / p0;
    const double a = pr.grid().a, b = pr.grid().b;
    const double rhs = 3.0 * boundary_max(u) + pr.rhs.max_abs() / (nu * std::exp(nu * a)) * std::exp(nu * (b - a));
    return make_report(Estimate::SupNorm, ck_norm(u, 0), rhs);
}

std::vector<EstimateReport> verify_poisson_estimates(const SampledFunction& u, const SampledFunction& F,
                                                     double mu, double alpha, double rel_tol)
{
    require_same_grid(u, F);
    if (!(alpha > 0.0 && alpha < 1.0))
        fail(ErrorKind::InvalidExponent, "Hoelder exponent must lie in (0, 1)");
    if (!(mu > 0.0 && mu < 0.5))
        fail(ErrorKind::InvalidArgument, "mu must lie in (0, 1/2)");
    const double F0 = F.max_abs();
    double res = 0.0;
    for (int i = 0; i < u.size(); ++i) res = std::max(res, std::abs(u.d2()[i] - F[i]));
    if (res > rel_tol * std::max(1.0, F0)) {
        std::ostringstream os;
        os << "max |u'' - F| = " << res;
        fail(ErrorKind::NotAPoissonSolution, os.str());
    }

    const Grid& g = u.grid();
    const double L = g.length();
    const double La = std::pow(L, 1.0 - alpha);
    const double u0 = ck_norm(u, 0);
    const double u1 = ck_norm(u, 1);
    const double u2 = ck_norm(u, 2);
    const double semi1 = max_abs_vec(u.d1());
    const double semi2 = max_abs_vec(u.d2());
    const double kc = (2.0 + mu * L) / (mu * L);

    std::vector<EstimateReport> out;
    out.push_back(make_report(Estimate::PoissonSupNorm, u0, 3.0 * boundary_max(u) + F0 * std::exp(g.b - 2.0 * g.a)));
    out.push_back(make_report(Estimate::PoissonFirstDerivative, u1, (1.0 + mu) * L / 2.0 * F0 + kc * u0));
    out.push_back(make_report(Estimate::PoissonSecondDerivative, u2, (2.0 + (1.0 + mu) * L) / 2.0 * F0 + kc * u0));
    out.push_back(make_report(Estimate::PoissonHolder0, holder_norm(u, 0, alpha), u0 + La * semi1));
    out.push_back(make_report(Estimate::PoissonHolder1, holder_norm(u, 1, alpha), u1 + La * semi2));
    out.push_back(make_report(Estimate::PoissonHolder2, holder_norm(u, 2, alpha), u2 + holder_norm(F, 0, alpha)));
    return out;
}

namespace {

void require_matching_ledger(const SturmLiouvilleProblem& pr, const ConstantLedger& led)
{
    const CoefficientBounds b = coefficient_bounds(pr, led.alpha);
    const CoefficientBounds& l = led.inputs;
    auto close = [](double x, double y) { return std::abs(x - y) <= 1e-12 * std::max({1.0, std::abs(x), std::abs(y)}); };
    const bool same = close(b.p0, l.p0) && close(b.p1, l.p1) && close(b.p1prime, l.p1prime) && close(b.q1, l.q1)
                      && close(b.p1hat, l.p1hat) && close(b.q1hat, l.q1hat) && close(b.p1prime_hat, l.p1prime_hat)
                      && close(pr.grid().length(), led.interval_length);
    if (!same) fail(ErrorKind::LedgerMismatch, "ledger was computed for different coefficients");
}

} // namespace

EstimateReport verify_global_estimate(const SturmLiouvilleProblem& pr, const SampledFunction& u,
                                      const ConstantLedger& led)
{
    require_same_grid(pr.p, u);
    require_matching_ledger(pr, led);
    const double lhs = holder_norm(u, 2, led.alpha);
    const double rhs = led.C1_global * holder_norm(pr.rhs, 0, led.alpha) + led.C2_global * ck_norm(u, 0);
    return make_report(Estimate::Global, lhs, rhs);
}

std::vector<EstimateReport> verify_intermediate_estimates(const SturmLiouvilleProblem& pr,
                                                          const SampledFunction& u,
                                                          const ConstantLedger& led)
{
    require_same_grid(pr.p, u);
    require_matching_ledger(pr, led);
    const CoefficientBounds& b = led.inputs;
    const double L = led.interval_length;
    const double alpha = led.alpha;
    const double mu = led.mu;
    const double La = std::pow(L, 1.0 - alpha);

    const double u0 = ck_norm(u, 0);
    const double u1 = ck_norm(u, 1);
    const double u2a = holder_norm(u, 2, alpha);
    const double u1a = holder_norm(u, 1, alpha);
    const double f0 = pr.rhs.max_abs();
    const double fa = holder_norm(pr.rhs, 0, alpha);

    std::vector<EstimateReport> out;
    out.push_back(make_report(Estimate::FirstDerivative, u1,
                              L / (2.0 * b.p0) * f0
                                  + (1.0 + 2.0 * b.p1 / (mu * b.p0 * L) + b.q1 * L / (2.0 * b.p0)) * u0
                                  + mu * b.p1 * L / (2.0 * b.p0) * u2a));
    out.push_back(make_report(Estimate::Holder0, holder_norm(u, 0, alpha), u0 + La * u1));
    out.push_back(make_report(Estimate::Holder1, u1a,
                              u1 + led.ci(1) * u0 + led.ci(2) * f0 + mu * led.ci(3) * u2a));
    out.push_back(make_report(Estimate::Holder1Combined, u1a,
                              led.ci(4) * f0 + led.ci(5) * u0 + mu * led.ci(6) * u2a));
    out.push_back(make_report(Estimate::GlobalBeforeAbsorption, u2a,
                              led.ci(13) * fa + led.ci(14) * u0 + mu * led.ci(15) * u2a));
    return out;
}

} // namespace rotsym
