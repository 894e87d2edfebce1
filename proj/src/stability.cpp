#include "rotsym/stability.hpp"

#include "rotsym/catenary.hpp"
#include "rotsym/errors.hpp"

#include <cfloat>
#include <cmath>
#include <limits>
#include <sstream>

namespace rotsym {

namespace {

// chi'' = 2 a chi' - b chi with a = f'/f, b = f''/f, central differences
// marched from chi(x_l), chi'(x_l)
std::vector<double> march(const std::vector<double>& a, const std::vector<double>& b, double h, double c0,
                          double s0)
{
    const int n = static_cast<int>(a.size());
    std::vector<double> c(n);
    c[0] = c0;
    c[1] = c0 + h * s0 + 0.5 * h * h * (2.0 * a[0] * s0 - b[0] * c0);
    for (int i = 1; i + 1 < n; ++i) {
        const double lead = 1.0 / (h * h) - a[i] / h;
        c[i + 1] = ((2.0 / (h * h) - b[i]) * c[i] - (1.0 / (h * h) + a[i] / h) * c[i - 1]) / lead;
    }
    return c;
}

void require_positive_profile(const SampledFunction& f)
{
    if (!(f.min() > 0.0)) fail(ErrorKind::NonPositiveProfile, "profile must be positive");
}

} // namespace

StabilityCertificate stability_function(const SampledFunction& f)
{
    require_positive_profile(f);
    const Grid& g = f.grid();
    const int n = g.n;
    std::vector<double> a(n), b(n);
    for (int i = 0; i < n; ++i) {
        a[i] = f.d1()[i] / f[i];
        b[i] = f.d2()[i] / f[i];
    }
    const double h = g.spacing;
    const auto u = march(a, b, h, 1.0, 0.0);
    const auto v = march(a, b, h, 0.0, 1.0);

    // u + s v > 0 at every node is an interval in s
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (int i = 1; i < n; ++i) {
        if (v[i] > 0.0) lo = std::max(lo, -u[i] / v[i]);
        else if (v[i] < 0.0) hi = std::min(hi, -u[i] / v[i]);
        else if (!(u[i] > 0.0)) lo = hi;
    }
    if (!(lo < hi)) {
        std::ostringstream os;
        os << "no positive solution of the linearized equation on [" << g.a << ", " << g.b << "]";
        fail(ErrorKind::Unstable, os.str());
    }

    auto margin = [&](double s) {
        double m = 1.0;
        for (int i = 1; i < n; ++i) m = std::min(m, u[i] + s * v[i]);
        return m;
    };
    // concave in s; golden section on a finite window
    const double span = 100.0 / g.length();
    double x0 = std::isfinite(lo) ? lo : (std::isfinite(hi) ? hi - span : -span);
    double x1 = std::isfinite(hi) ? hi : x0 + span + (std::isfinite(lo) ? 0.0 : span);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double xa = x1 - gr * (x1 - x0), xb = x0 + gr * (x1 - x0);
    double ma = margin(xa), mb = margin(xb);
    for (int it = 0; it < 200 && x1 - x0 > 1e-14 * (1.0 + std::abs(x0)); ++it) {
        if (ma < mb) {
            x0 = xa;
            xa = xb;
            ma = mb;
            xb = x0 + gr * (x1 - x0);
            mb = margin(xb);
        } else {
            x1 = xb;
            xb = xa;
            mb = ma;
            xa = x1 - gr * (x1 - x0);
            ma = margin(xa);
        }
    }
    const double s = 0.5 * (x0 + x1);
    const double m = margin(s);
    if (!(m > 0.0)) fail(ErrorKind::Unstable, "linearized equation has a conjugate point in the interval");

    std::vector<double> chi(n);
    for (int i = 0; i < n; ++i) chi[i] = u[i] + s * v[i];
    std::vector<double> d1 = fd_first(chi, h);
    std::vector<double> d2(n);
    for (int i = 0; i < n; ++i) d2[i] = 2.0 * a[i] * d1[i] - b[i] * chi[i];

    const auto fd2 = fd_second(chi, h);
    double slack = -std::numeric_limits<double>::infinity();
    for (int i = 1; i + 1 < n; ++i) slack = std::max(slack, fd2[i] - 2.0 * a[i] * d1[i] + b[i] * chi[i]);

    StabilityCertificate cert{SampledFunction(g, std::move(chi), std::move(d1), std::move(d2)), m, slack, s};
    return cert;
}

LinearizedOperator operator_L(const SampledFunction& f, const SampledFunction& chi, double q_tol)
{
    require_same_grid(f, chi);
    require_positive_profile(f);
    const int n = f.size();
    for (int i = 0; i < n; ++i) {
        if (!(chi[i] > 0.0)) {
            std::ostringstream os;
            os << "chi(x_" << i << ") = " << chi[i] << " is not positive";
            fail(ErrorKind::CertificateInvalid, os.str());
        }
    }
    std::vector<double> pt(n), dpt(n), qt(n);
    for (int i = 0; i < n; ++i) {
        const double lc = chi.d1()[i] / chi[i];
        const double lf = f.d1()[i] / f[i];
        pt[i] = 2.0 * (lc - lf);
        dpt[i] = 2.0 * (chi.d2()[i] / chi[i] - lc * lc - f.d2()[i] / f[i] + lf * lf);
        qt[i] = chi.d2()[i] / chi[i] - 2.0 * lf * lc + f.d2()[i] / f[i];
        if (qt[i] > q_tol) {
            std::ostringstream os;
            os << "zeroth-order coefficient " << qt[i] << " > 0 at node " << i << "; chi is not a stability function";
            fail(ErrorKind::CertificateInvalid, os.str());
        }
        if (qt[i] > 0.0) qt[i] = 0.0;
    }
    const Grid& g = f.grid();
    SampledFunction p_tilde(g, std::move(pt), std::move(dpt), std::nullopt);
    SampledFunction q_tilde(g, std::move(qt));
    NormalizedOperator sl = normalize_to_sl(p_tilde, q_tilde, SampledFunction::zeros(g));
    return LinearizedOperator{p_tilde, q_tilde, sl};
}

SampledFunction phi_rhs(const SampledFunction& phi, const SampledFunction& chi, const SampledFunction& f)
{
    require_same_grid(phi, chi);
    require_same_grid(phi, f);
    const int n = phi.size();
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        const double w = chi[i] / f[i];
        const double dc = chi.d1()[i];
        const double z = dc * dc / (f[i] * chi[i]) - chi.d2()[i] / f[i];
        const double p = phi[i], dp = phi.d1()[i], d2p = phi.d2()[i];
        out[i] = w * dp * dp - w * p * d2p + z * p * p;
    }
    return SampledFunction(phi.grid(), std::move(out));
}

double lipschitz_constant(const SampledFunction& chi, const SampledFunction& f, double alpha)
{
    require_same_grid(chi, f);
    if (!(alpha > 0.0 && alpha < 1.0)) fail(ErrorKind::InvalidExponent, "Hoelder exponent must lie in (0, 1)");
    const int n = f.size();
    std::vector<double> w1(n), w2(n);
    for (int i = 0; i < n; ++i) {
        const double dc = chi.d1()[i];
        w1[i] = chi[i] / f[i];
        w2[i] = dc * dc / (chi[i] * f[i]) - chi.d2()[i] / f[i];
    }
    const Grid& g = f.grid();
    const double A = 1.0 + std::pow(g.length(), 1.0 - alpha);
    const double n1 = holder_norm(SampledFunction(g, std::move(w1)), 0, alpha);
    const double n2 = holder_norm(SampledFunction(g, std::move(w2)), 0, alpha);
    return (2.0 * n1 + n2 * A * A) * A * A;
}

SchauderPair schauder_pair(const LinearizedOperator& op, double alpha)
{
    return schauder_pair(op.sl, alpha);
}

SchauderPair schauder_pair(const NormalizedOperator& op, double alpha)
{
    const SturmLiouvilleProblem pr = op.problem(0.0, 0.0);
    const Grid& g = pr.grid();
    const CoefficientBounds b = coefficient_bounds(pr, alpha);
    const double L = g.length();
    SchauderPair out;
    out.ledger = compute_ledger(b, L, alpha, choose_mu(b, L, alpha));
    const double nu = out.ledger.nu;
    // |p rhs|_a <= |p|_a |rhs|_a for the global bound, sup-norm bound for u_0
    out.C2 = out.ledger.C1_global * b.p1hat
             + out.ledger.C2_global * b.p1 * std::exp(nu * (g.b - g.a)) / (nu * std::exp(nu * g.a));
    out.C3 = 3.0 * out.ledger.C2_global;
    return out;
}

double smallness_threshold(double C1, double C2, double C3, double epsilon)
{
    if (!(epsilon > 0.0 && epsilon < 1.0)) fail(ErrorKind::InvalidArgument, "epsilon must lie in (0, 1)");
    const double k = C1 * C2 * C3;
    if (!(k > 0.0) || !std::isfinite(k)) fail(ErrorKind::InvalidArgument, "constants must be positive and finite");
    const double t = 0.5 * (1.0 - epsilon) * (std::sqrt(1.0 + 2.0 * epsilon / (1.0 - epsilon)) - 1.0);
    return t / k;
}

PerturbationResult perturb(const SampledFunction& f, double phi_left, double phi_right, double epsilon,
                           const PerturbConfig& config)
{
    if (!(epsilon > 0.0 && epsilon < 1.0)) fail(ErrorKind::InvalidArgument, "epsilon must lie in (0, 1)");
    if (!std::isfinite(phi_left) || !std::isfinite(phi_right))
        fail(ErrorKind::NonFiniteValue, "boundary data must be finite");
    const StabilityCertificate cert = stability_function(f);
    const LinearizedOperator op = operator_L(f, cert.chi);
    const SchauderPair pair = schauder_pair(op, config.alpha);

    PerturbationResult res{SampledFunction::zeros(f.grid()), SampledFunction::zeros(f.grid()), {}, 0.0, 0.0, 0.0, 0.0, 0.0, {}};
    res.a = std::max(std::abs(phi_left), std::abs(phi_right));
    res.C1 = lipschitz_constant(cert.chi, f, config.alpha);
    res.C2 = pair.C2;
    res.C3 = pair.C3;
    res.a_max = smallness_threshold(res.C1, res.C2, res.C3, epsilon);
    if (config.enforce_smallness && res.a > res.a_max) {
        std::ostringstream os;
        os << "boundary magnitude " << res.a << " exceeds the admissible " << res.a_max;
        fail(ErrorKind::BoundaryDataTooLarge, os.str());
    }

    IterationTrace& tr = res.trace;
    tr.epsilon = epsilon;
    const double h = f.grid().spacing;
    SampledFunction prev = SampledFunction::zeros(f.grid());
    for (int k = 1; k <= config.max_iter; ++k) {
        const SampledFunction next = solve(op.sl.problem(phi_rhs(prev, cert.chi, f), phi_left, phi_right));
        const double diff = holder_norm(next - prev, 2, config.alpha);
        tr.step_norms.push_back(holder_norm(next, 2, config.alpha));
        // rounding in the tridiagonal solve shows up amplified by 1/h^2 in the norm
        const double floor = 100.0 * DBL_EPSILON * next.max_abs() / (h * h);
        if (!tr.diff_norms.empty() && tr.diff_norms.back() > 10.0 * floor) {
            const double ratio = diff / tr.diff_norms.back();
            tr.ratios.push_back(ratio);
            if (ratio > 1.0) {
                std::ostringstream os;
                os << "iteration " << k << " grew the update by " << ratio;
                fail(ErrorKind::NotContracting, os.str());
            }
        }
        tr.diff_norms.push_back(diff);
        res.iterates.push_back(next);
        prev = next;
        tr.steps = k;
        if (diff < std::max(config.tol, floor)) {
            tr.converged = true;
            break;
        }
    }
    if (!tr.converged) fail(ErrorKind::NoConvergence, "fixed-point iteration hit the iteration cap");

    res.phi = prev;
    res.psi = multiply(prev, cert.chi);
    const double r = minimal_residual(f + res.psi);
    if (r > config.residual_tol) {
        std::ostringstream os;
        os << "perturbed profile leaves a minimal-surface residual of " << r;
        fail(ErrorKind::NoConvergence, os.str());
    }
    return res;
}

} // namespace rotsym
