#include "rotsym/willmore_bvp.hpp"

#include "rotsym/errors.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>

namespace rotsym {

namespace {

// Interior unknowns interleaved as (f_1, H_1, f_2, H_2, ...); the ring
// values sit in the first and last slot of f and H.
struct State {
    std::vector<double> f, H;
};

struct Discretization {
    double h;      // ring distance
    double r;      // ring radius
    double delta;  // H at the rings
    int n;
    double k;      // 2 alpha / beta
    CurvatureVariant variant;

    double d() const { return h / (n - 1); }
};

struct Local {
    double f, fp, fpp, H, Hp, Hpp;
};

Local local(const State& s, int i, double d)
{
    return {s.f[i],
            (s.f[i + 1] - s.f[i - 1]) / (2.0 * d),
            (s.f[i + 1] - 2.0 * s.f[i] + s.f[i - 1]) / (d * d),
            s.H[i],
            (s.H[i + 1] - s.H[i - 1]) / (2.0 * d),
            (s.H[i + 1] - 2.0 * s.H[i] + s.H[i - 1]) / (d * d)};
}

double weight(double w2, CurvatureVariant v) { return v == CurvatureVariant::Reduced ? 1.0 : 1.0 / w2; }

void residuals(const Discretization& D, const State& s, Eigen::VectorXd& F)
{
    const int m = D.n - 2;
    F.resize(2 * m);
    const double d = D.d();
    for (int i = 1; i <= m; ++i) {
        const Local q = local(s, i, d);
        const double w2 = 1.0 + q.fp * q.fp, w = std::sqrt(w2);
        const double g = weight(w2, D.variant);
        F[2 * (i - 1)] = q.fpp - 2.0 * q.H * w2 * w - w2 / q.f;
        F[2 * (i - 1) + 1] = q.Hpp + q.fp * (1.0 / q.f - q.fpp / w2) * q.Hp + 2.0 * q.H * q.H * q.H * w2
                             + 2.0 * q.fpp / q.f * g * q.H - D.k * w2 * q.H;
    }
}

void jacobian(const Discretization& D, const State& s, Eigen::SparseMatrix<double>& J)
{
    const int m = D.n - 2;
    const double d = D.d();
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(12 * 2 * m);
    for (int i = 1; i <= m; ++i) {
        const Local q = local(s, i, d);
        const double w2 = 1.0 + q.fp * q.fp, w = std::sqrt(w2);
        const double g = weight(w2, D.variant);
        const double dg = D.variant == CurvatureVariant::Reduced ? 0.0 : -2.0 * q.fp / (w2 * w2);
        const double B = 1.0 / q.f - q.fpp / w2;

        // partials of the two equations in (f, f', f'', H, H', H'')
        const double e1[6] = {w2 / (q.f * q.f), -6.0 * q.H * w * q.fp - 2.0 * q.fp / q.f, 1.0, -2.0 * w2 * w, 0.0, 0.0};
        const double e2[6] = {
            -q.fp * q.Hp / (q.f * q.f) - 2.0 * q.fpp * g * q.H / (q.f * q.f),
            B * q.Hp + q.fp * (2.0 * q.fp * q.fpp / (w2 * w2)) * q.Hp + 4.0 * q.H * q.H * q.H * q.fp
                + 2.0 * q.fpp * q.H / q.f * dg - 2.0 * D.k * q.fp * q.H,
            -q.fp * q.Hp / w2 + 2.0 * g * q.H / q.f,
            6.0 * q.H * q.H * w2 + 2.0 * q.fpp * g / q.f - D.k * w2,
            q.fp * B,
            1.0};
        for (int eq = 0; eq < 2; ++eq) {
            const double* e = eq == 0 ? e1 : e2;
            const int row = 2 * (i - 1) + eq;
            for (int var = 0; var < 2; ++var) {
                const double v0 = e[3 * var], v1 = e[3 * var + 1], v2 = e[3 * var + 2];
                const double left = -v1 / (2.0 * d) + v2 / (d * d);
                const double mid = v0 - 2.0 * v2 / (d * d);
                const double right = v1 / (2.0 * d) + v2 / (d * d);
                if (i > 1) t.emplace_back(row, 2 * (i - 2) + var, left);
                t.emplace_back(row, 2 * (i - 1) + var, mid);
                if (i < m) t.emplace_back(row, 2 * i + var, right);
            }
        }
    }
    J.resize(2 * m, 2 * m);
    J.setFromTriplets(t.begin(), t.end());
}

void set_boundary(const Discretization& D, State& s)
{
    s.f.front() = s.f.back() = D.r;
    s.H.front() = s.H.back() = D.delta;
}

struct NewtonOutcome {
    bool converged = false;
    int steps = 0;
    double residual = 0.0;
    bool hit_zero = false;
};

NewtonOutcome newton(const Discretization& D, State& s, const WillmoreConfig& cfg)
{
    set_boundary(D, s);
    const int m = D.n - 2;
    Eigen::VectorXd F;
    Eigen::SparseMatrix<double> J;
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    NewtonOutcome out;
    residuals(D, s, F);
    for (int it = 0; it <= cfg.max_newton; ++it) {
        out.residual = F.lpNorm<Eigen::Infinity>();
        out.steps = it;
        if (!std::isfinite(out.residual)) return out;
        if (out.residual < cfg.residual_tol) {
            out.converged = true;
            return out;
        }
        if (it == cfg.max_newton) return out;
        jacobian(D, s, J);
        lu.compute(J);
        if (lu.info() != Eigen::Success) return out;
        const Eigen::VectorXd step = lu.solve(F);
        const double norm0 = F.norm();
        double lambda = 1.0;
        bool accepted = false;
        for (int k = 0; k <= cfg.max_halvings; ++k, lambda *= 0.5) {
            State trial = s;
            bool positive = true;
            for (int i = 1; i <= m; ++i) {
                trial.f[i] -= lambda * step[2 * (i - 1)];
                trial.H[i] -= lambda * step[2 * (i - 1) + 1];
                if (!(trial.f[i] > 0.0)) positive = false;
            }
            if (!positive) {
                out.hit_zero = true;
                continue;
            }
            Eigen::VectorXd Ft;
            residuals(D, trial, Ft);
            if (std::isfinite(Ft.norm()) && Ft.norm() < norm0) {
                s = std::move(trial);
                F = std::move(Ft);
                accepted = true;
                out.hit_zero = false;
                break;
            }
        }
        if (!accepted) return out;
    }
    return out;
}

WillmoreSolution package(const Discretization& D, const State& s, const ModelParams& params, int steps,
                         bool from_catenoid)
{
    const Grid g = uniform_grid(-0.5 * D.h, 0.5 * D.h, D.n);
    MeridianSurface surf(SampledFunction(g, s.f), SampledFunction(g, s.H), params, D.variant);
    WillmoreSolution sol{surf, 0.0, 0.0, steps, from_catenoid};
    sol.mc_residual = mc_ode_residual(surf.f, surf.H);
    sol.willmore_residual = willmore_ode_residual(surf);
    return sol;
}

std::optional<State> catenoid_seed(double r, double h, int n)
{
    std::vector<FittedCatenary> branches;
    try {
        branches = fit(RingBoundary{r, h});
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NoSolution) throw;
        return std::nullopt;
    }
    const Grid g = uniform_grid(-0.5 * h, 0.5 * h, n);
    State s{std::vector<double>(n), std::vector<double>(n, 0.0)};
    for (int i = 0; i < n; ++i) s.f[i] = branches[0].curve.value(g.node(i));
    return s;
}

[[noreturn]] void no_convergence(const std::string& stage, double h, const NewtonOutcome& o)
{
    std::ostringstream os;
    os << stage << " at h = " << h << ": residual " << o.residual << " after " << o.steps << " Newton steps";
    if (o.hit_zero) fail(ErrorKind::NonPositiveProfile, os.str() + " (profile touched zero)");
    fail(ErrorKind::NoConvergence, os.str());
}

void validate(double r, const ModelParams& params, const WillmoreConfig& cfg)
{
    if (params.beta == 0.0) fail(ErrorKind::BetaZero, "beta must be nonzero");
    if (!(r > 0.0) || !std::isfinite(r)) fail(ErrorKind::InvalidArgument, "ring radius must be positive");
    if (cfg.grid_n < 5) fail(ErrorKind::InvalidArgument, "grid too coarse");
    if (!(cfg.residual_tol > 0.0)) fail(ErrorKind::InvalidArgument, "residual tolerance must be positive");
}

// Walks (h, delta) with a secant predictor on the profile values, which are
// stored per node so a change of h just rescales the abscissae.
class Path {
public:
    Path(const Discretization& base, State start, const WillmoreConfig& cfg)
        : D_(base), cur_(std::move(start)), cfg_(cfg)
    {
    }

    double height() const { return D_.h; }
    double delta() const { return D_.delta; }
    const State& state() const { return cur_; }
    const Discretization& disc() const { return D_; }

    // move to (h, delta), subdividing on failure
    NewtonOutcome move_to(double h, double delta, const std::string& stage)
    {
        const double r = D_.r;
        double step = cfg_.step_ratio * r;
        NewtonOutcome last;
        while (std::abs(D_.h - h) > 1e-14 * r || std::abs(D_.delta - delta) > 0.0) {
            const double dist = std::abs(h - D_.h);
            double next_h = h;
            double next_delta = delta;
            if (dist > step) {
                next_h = D_.h + (h > D_.h ? step : -step);
                next_delta = D_.delta;
            }
            Discretization trial_D = D_;
            trial_D.h = next_h;
            trial_D.delta = next_delta;
            State guess = predict(next_h);
            last = newton(trial_D, guess, cfg_);
            if (last.converged) {
                prev_ = cur_;
                prev_h_ = D_.h;
                D_ = trial_D;
                cur_ = std::move(guess);
                if (last.steps <= 4) step = std::min(1.5 * step, cfg_.max_step_ratio * r);
            } else {
                step *= 0.5;
                if (step < cfg_.min_step_ratio * r) no_convergence(stage, next_h, last);
                if (dist <= step * 2.0 && next_delta != D_.delta) {
                    // the delta jump itself failed: split it
                    const double mid = 0.5 * (D_.delta + delta);
                    NewtonOutcome o = move_to(D_.h, mid, stage);
                    if (!o.converged) no_convergence(stage, D_.h, o);
                }
            }
        }
        last.converged = true;
        return last;
    }

private:
    State predict(double h) const
    {
        if (!prev_ || prev_h_ == D_.h) return cur_;
        const double t = (h - D_.h) / (D_.h - prev_h_);
        State s = cur_;
        for (std::size_t i = 0; i < s.f.size(); ++i) {
            s.f[i] += t * (cur_.f[i] - prev_->f[i]);
            s.H[i] += t * (cur_.H[i] - prev_->H[i]);
            if (!(s.f[i] > 0.0)) return cur_;
        }
        return s;
    }

    Discretization D_;
    State cur_;
    std::optional<State> prev_;
    double prev_h_ = 0.0;
    WillmoreConfig cfg_;
};

} // namespace

std::vector<WillmoreSolution> solve_willmore_family(double r, const std::vector<double>& heights,
                                                    const ModelParams& params, const WillmoreConfig& cfg)
{
    validate(r, params, cfg);
    const double k = 2.0 * params.alpha / params.beta;
    std::vector<std::optional<WillmoreSolution>> out(heights.size());

    std::vector<std::size_t> past_fold;
    for (std::size_t j = 0; j < heights.size(); ++j) {
        const double h = heights[j];
        if (!(h > 0.0) || !std::isfinite(h)) fail(ErrorKind::InvalidArgument, "ring distance must be positive");
        if (auto seed = catenoid_seed(r, h, cfg.grid_n)) {
            const Discretization D{h, r, 0.0, cfg.grid_n, k, cfg.variant};
            const NewtonOutcome o = newton(D, *seed, cfg);
            if (!o.converged) no_convergence("catenoid seed", h, o);
            out[j] = package(D, *seed, params, o.steps, true);
        } else {
            past_fold.push_back(j);
        }
    }

    if (!past_fold.empty()) {
        const double h0 = r;
        auto seed = catenoid_seed(r, h0, cfg.grid_n);
        const Discretization D0{h0, r, 0.0, cfg.grid_n, k, cfg.variant};
        Path path(D0, *seed, cfg);
        NewtonOutcome o = path.move_to(h0, cfg.imperfection, "imperfection ramp");
        o = path.move_to(cfg.release_ratio * r, cfg.imperfection, "imperfect continuation");
        o = path.move_to(cfg.release_ratio * r, 0.0, "imperfection release");

        // descend first to the heights below the release point, then climb
        std::vector<std::size_t> below, above;
        for (std::size_t j : past_fold) (heights[j] < path.height() ? below : above).push_back(j);
        std::sort(below.begin(), below.end(), [&](auto a, auto b) { return heights[a] > heights[b]; });
        std::sort(above.begin(), above.end(), [&](auto a, auto b) { return heights[a] < heights[b]; });
        const State release = path.state();
        const Discretization release_D = path.disc();
        for (std::size_t j : below) {
            path.move_to(heights[j], 0.0, "continuation");
            out[j] = package(path.disc(), path.state(), params, 0, false);
        }
        Path up(release_D, release, cfg);
        for (std::size_t j : above) {
            up.move_to(heights[j], 0.0, "continuation");
            out[j] = package(up.disc(), up.state(), params, 0, false);
        }
    }

    std::vector<WillmoreSolution> result;
    result.reserve(out.size());
    for (auto& s : out) result.push_back(std::move(*s));
    return result;
}

WillmoreSolution solve_willmore_bvp(const RingBoundary& rings, const ModelParams& params, const WillmoreConfig& cfg)
{
    return solve_willmore_family(rings.r, {rings.h}, params, cfg).front();
}

} // namespace rotsym
