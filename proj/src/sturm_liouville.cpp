#include "rotsym/sturm_liouville.hpp"

#include "rotsym/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rotsym {

SturmLiouvilleProblem::SturmLiouvilleProblem(SampledFunction p_, SampledFunction q_,
                                             SampledFunction rhs_, double eta1_, double eta2_)
    : p(std::move(p_)), q(std::move(q_)), rhs(std::move(rhs_)), eta1(eta1_), eta2(eta2_)
{
    require_same_grid(p, q);
    require_same_grid(p, rhs);
    if (!std::isfinite(eta1) || !std::isfinite(eta2))
        fail(ErrorKind::NonFiniteValue, "boundary data must be finite");
    for (int i = 0; i < p.size(); ++i) {
        if (!(p[i] > 0.0)) {
            std::ostringstream os;
            os << "p(x_" << i << ") = " << p[i] << " is not positive";
            fail(ErrorKind::NonPositiveCoefficient, os.str());
        }
    }
}

SturmLiouvilleProblem NormalizedOperator::problem(double eta1, double eta2) const
{
    return SturmLiouvilleProblem(p, q, rhs, eta1, eta2);
}

SturmLiouvilleProblem NormalizedOperator::problem(const SampledFunction& f_tilde, double eta1,
                                                  double eta2) const
{
    return SturmLiouvilleProblem(p, q, multiply(p, f_tilde), eta1, eta2);
}

NormalizedOperator normalize_to_sl(const SampledFunction& p_tilde, const SampledFunction& q_tilde,
                                   const SampledFunction& f_tilde)
{
    require_same_grid(p_tilde, q_tilde);
    require_same_grid(p_tilde, f_tilde);
    const Grid& g = p_tilde.grid();
    const int n = g.n;
    for (const SampledFunction* s : {&p_tilde, &q_tilde, &f_tilde}) {
        for (int i = 0; i < n; ++i) {
            if (!std::isfinite(s->values()[i]) || !std::isfinite(s->d1()[i]))
                fail(ErrorKind::NonFiniteCoefficient, "coefficient sample is not finite");
        }
    }

    std::vector<double> p(n), dp(n), d2p(n);
    double integral = 0.0;
    for (int i = 0; i < n; ++i) {
        if (i > 0) integral += 0.5 * g.spacing * (p_tilde[i - 1] + p_tilde[i]);
        p[i] = std::exp(integral);
        if (!std::isfinite(p[i]) || p[i] <= 0.0)
            fail(ErrorKind::NonFiniteCoefficient, "exp of the integrated first-order coefficient overflowed");
        const double pt = p_tilde[i];
        dp[i] = p[i] * pt;
        d2p[i] = p[i] * (pt * pt + p_tilde.d1()[i]);
    }
    SampledFunction ps(g, std::move(p), std::move(dp), std::move(d2p));
    return NormalizedOperator{ps, multiply(ps, q_tilde), multiply(ps, f_tilde)};
}

namespace {

struct Tridiagonal {
    // rows for the interior unknowns 1..n-2
    std::vector<double> lower, diag, upper, rhs;
};

Tridiagonal assemble(const SturmLiouvilleProblem& pr)
{
    const Grid& g = pr.grid();
    const int n = g.n;
    const int m = n - 2;
    const double inv_h2 = 1.0 / (g.spacing * g.spacing);
    Tridiagonal t;
    t.lower.assign(m, 0.0);
    t.diag.assign(m, 0.0);
    t.upper.assign(m, 0.0);
    t.rhs.assign(m, 0.0);
    for (int k = 0; k < m; ++k) {
        const int i = k + 1;
        const double pl = 0.5 * (pr.p[i - 1] + pr.p[i]) * inv_h2;
        const double pu = 0.5 * (pr.p[i] + pr.p[i + 1]) * inv_h2;
        t.lower[k] = pl;
        t.upper[k] = pu;
        t.diag[k] = -(pl + pu) + pr.q[i];
        t.rhs[k] = pr.rhs[i];
    }
    t.rhs[0] -= t.lower[0] * pr.eta1;
    t.rhs[m - 1] -= t.upper[m - 1] * pr.eta2;
    return t;
}

// Thomas sweep; returns the pivots so callers can judge conditioning
std::vector<double> thomas(const Tridiagonal& t, const std::vector<double>& rhs,
                           std::vector<double>& x)
{
    const int m = static_cast<int>(t.diag.size());
    std::vector<double> c(m), d(m), piv(m);
    double beta = t.diag[0];
    piv[0] = beta;
    c[0] = t.upper[0] / beta;
    d[0] = rhs[0] / beta;
    for (int k = 1; k < m; ++k) {
        beta = t.diag[k] - t.lower[k] * c[k - 1];
        piv[k] = beta;
        c[k] = t.upper[k] / beta;
        d[k] = (rhs[k] - t.lower[k] * d[k - 1]) / beta;
    }
    x.assign(m, 0.0);
    x[m - 1] = d[m - 1];
    for (int k = m - 2; k >= 0; --k) x[k] = d[k] - c[k] * x[k + 1];
    return piv;
}

std::vector<double> tri_apply(const Tridiagonal& t, const std::vector<double>& v)
{
    const int m = static_cast<int>(v.size());
    std::vector<double> r(m);
    for (int k = 0; k < m; ++k) {
        double s = t.diag[k] * v[k];
        if (k > 0) s += t.lower[k] * v[k - 1];
        if (k + 1 < m) s += t.upper[k] * v[k + 1];
        r[k] = s;
    }
    return r;
}

double max_abs(const std::vector<double>& v)
{
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// Smallest-magnitude eigenpair by inverse iteration, then an estimate of
// how far the stencil is from the differential operator on that vector.
// A discrete eigenvalue inside the truncation band means the continuous
// homogeneous problem may well have a kernel.
bool near_kernel(const SturmLiouvilleProblem& pr, const Tridiagonal& t, double factor)
{
    const int m = static_cast<int>(t.diag.size());
    if (m < 3) return false;
    std::vector<double> v(m), w;
    const Grid& g = pr.grid();
    for (int k = 0; k < m; ++k) v[k] = std::sin(M_PI * (k + 1) / (m + 1)) + 0.01 * std::cos(3.0 * k);
    for (int it = 0; it < 30; ++it) {
        thomas(t, v, w);
        const double s = max_abs(w);
        if (!(s > 0.0) || !std::isfinite(s)) return true;
        for (int k = 0; k < m; ++k) v[k] = w[k] / s;
    }
    const auto av = tri_apply(t, v);
    double num = 0.0, den = 0.0;
    for (int k = 0; k < m; ++k) {
        num += v[k] * av[k];
        den += v[k] * v[k];
    }
    const double lambda = num / den;

    // coarse stencil (spacing 2h) on even full-grid nodes
    const int n = g.n;
    std::vector<double> full(n, 0.0);
    for (int k = 0; k < m; ++k) full[k + 1] = v[k];
    const double h = g.spacing;
    const double inv_h2 = 1.0 / (h * h);
    const double inv_H2 = 1.0 / (4.0 * h * h);
    double diff = 0.0;
    for (int j = 2; j + 2 <= n - 1; j += 2) {
        const double fine = (0.5 * (pr.p[j] + pr.p[j + 1]) * (full[j + 1] - full[j])
                             - 0.5 * (pr.p[j - 1] + pr.p[j]) * (full[j] - full[j - 1])) * inv_h2;
        const double coarse = (0.5 * (pr.p[j] + pr.p[j + 2]) * (full[j + 2] - full[j])
                               - 0.5 * (pr.p[j - 2] + pr.p[j]) * (full[j] - full[j - 2])) * inv_H2;
        diff = std::max(diff, std::abs(coarse - fine));
    }
    const double tau = diff / 3.0 / max_abs(v);
    return std::abs(lambda) <= factor * tau;
}

} // namespace

SampledFunction solve(const SturmLiouvilleProblem& problem, const SolveOptions& options)
{
    const Grid& g = problem.grid();
    const int n = g.n;
    for (int i = 0; i < n; ++i) {
        if (!std::isfinite(problem.q[i]) || !std::isfinite(problem.rhs[i]))
            fail(ErrorKind::NonFiniteCoefficient, "q or rhs is not finite");
    }
    const Tridiagonal t = assemble(problem);
    std::vector<double> x;
    const auto piv = thomas(t, t.rhs, x);

    double pmin = INFINITY, pmax = 0.0;
    for (double b : piv) {
        pmin = std::min(pmin, std::abs(b));
        pmax = std::max(pmax, std::abs(b));
    }
    if (!(pmax > 0.0) || pmin / pmax < options.pivot_ratio_tol || !std::isfinite(max_abs(x))) {
        std::ostringstream os;
        os << "pivot ratio " << (pmax > 0.0 ? pmin / pmax : 0.0)
           << "; the homogeneous problem has a non-trivial kernel";
        fail(ErrorKind::SingularSystem, os.str());
    }
    if (options.kernel_check && problem.q.max() > 0.0 && near_kernel(problem, t, options.kernel_factor))
        fail(ErrorKind::SingularSystem,
             "smallest eigenvalue of the discrete operator is within its truncation error of zero");

    std::vector<double> u(n);
    u[0] = problem.eta1;
    u[n - 1] = problem.eta2;
    for (int k = 0; k < n - 2; ++k) u[k + 1] = x[k];
    return SampledFunction(g, std::move(u));
}

bool max_principle_applies(const SturmLiouvilleProblem& problem, double tol)
{
    for (double v : problem.q.values())
        if (v > tol) return false;
    return true;
}

CoefficientBounds coefficient_bounds(const SturmLiouvilleProblem& problem, double alpha)
{
    if (!(alpha > 0.0 && alpha < 1.0))
        fail(ErrorKind::InvalidExponent, "Hoelder exponent must lie in (0, 1)");
    CoefficientBounds b;
    b.alpha = alpha;
    b.p0 = problem.p.min();
    b.p1 = problem.p.max();
    b.p1prime = 0.0;
    for (double v : problem.p.d1()) b.p1prime = std::max(b.p1prime, std::abs(v));
    b.q1 = problem.q.max_abs();
    b.p1hat = holder_norm(problem.p, 0, alpha);
    b.q1hat = holder_norm(problem.q, 0, alpha);
    b.p1prime_hat = holder_norm(problem.p, 1, alpha);
    return b;
}

double residual(const SturmLiouvilleProblem& problem, const SampledFunction& u)
{
    require_same_grid(problem.p, u);
    const Grid& g = problem.grid();
    const double inv_h2 = 1.0 / (g.spacing * g.spacing);
    double r = 0.0;
    for (int i = 1; i + 1 < g.n; ++i) {
        const double flux = (0.5 * (problem.p[i] + problem.p[i + 1]) * (u[i + 1] - u[i])
                             - 0.5 * (problem.p[i - 1] + problem.p[i]) * (u[i] - u[i - 1])) * inv_h2;
        r = std::max(r, std::abs(flux + problem.q[i] * u[i] - problem.rhs[i]));
    }
    return r;
}

double fd_residual(const SturmLiouvilleProblem& problem, const SampledFunction& u)
{
    require_same_grid(problem.p, u);
    double r = 0.0;
    for (int i = 1; i + 1 < u.size(); ++i) {
        const double lhs = problem.p.d1()[i] * u.d1()[i] + problem.p[i] * u.d2()[i] + problem.q[i] * u[i];
        r = std::max(r, std::abs(lhs - problem.rhs[i]));
    }
    return r;
}

} // namespace rotsym
