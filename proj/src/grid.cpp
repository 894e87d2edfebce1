#include "rotsym/grid.hpp"

#include "rotsym/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rotsym {

namespace {

void check_finite(const std::vector<double>& v, const char* what)
{
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i])) {
            std::ostringstream os;
            os << what << " has a non-finite entry at node " << i;
            fail(ErrorKind::NonFiniteValue, os.str());
        }
    }
}

void check_length(const Grid& g, const std::vector<double>& v, const char* what)
{
    if (static_cast<int>(v.size()) != g.n) {
        std::ostringstream os;
        os << what << " has " << v.size() << " entries, grid has " << g.n;
        fail(ErrorKind::GridMismatch, os.str());
    }
}

} // namespace

std::vector<double> Grid::nodes() const
{
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = node(i);
    return x;
}

bool Grid::same_as(const Grid& other) const
{
    return a == other.a && b == other.b && n == other.n;
}

Grid uniform_grid(double a, double b, int n)
{
    if (!std::isfinite(a) || !std::isfinite(b))
        fail(ErrorKind::DegenerateInterval, "interval endpoints must be finite");
    if (!(b > a))
        fail(ErrorKind::DegenerateInterval, "need b > a");
    if (n < 3)
        fail(ErrorKind::DegenerateInterval, "need at least 3 nodes");
    Grid g;
    g.a = a;
    g.b = b;
    g.n = n;
    g.spacing = (b - a) / (n - 1);
    return g;
}

std::vector<double> fd_first(const std::vector<double>& v, double dx)
{
    const std::size_t n = v.size();
    std::vector<double> d(n);
    const double inv = 1.0 / (2.0 * dx);
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (v[i + 1] - v[i - 1]) * inv;
    d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) * inv;
    d[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) * inv;
    return d;
}

std::vector<double> fd_second(const std::vector<double>& v, double dx)
{
    const std::size_t n = v.size();
    std::vector<double> d(n);
    const double inv = 1.0 / (dx * dx);
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (v[i + 1] - 2.0 * v[i] + v[i - 1]) * inv;
    if (n >= 4) {
        d[0] = (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) * inv;
        d[n - 1] = (2.0 * v[n - 1] - 5.0 * v[n - 2] + 4.0 * v[n - 3] - v[n - 4]) * inv;
    } else {
        // three nodes: only the one-sided first-order stencil fits
        d[0] = d[1];
        d[n - 1] = d[1];
    }
    return d;
}

SampledFunction::SampledFunction(const Grid& grid, std::vector<double> values)
    : SampledFunction(grid, std::move(values), std::nullopt, std::nullopt)
{
}

SampledFunction::SampledFunction(const Grid& grid, std::vector<double> values,
                                 std::vector<double> d1, std::vector<double> d2)
    : SampledFunction(grid, std::move(values), std::optional<std::vector<double>>(std::move(d1)),
                      std::optional<std::vector<double>>(std::move(d2)))
{
}

SampledFunction::SampledFunction(const Grid& grid, std::vector<double> values,
                                 std::optional<std::vector<double>> d1,
                                 std::optional<std::vector<double>> d2)
    : grid_(grid), values_(std::move(values))
{
    check_length(grid_, values_, "values");
    check_finite(values_, "values");
    if (d1) {
        check_length(grid_, *d1, "first derivative");
        check_finite(*d1, "first derivative");
        d1_ = std::move(*d1);
        analytic_d1_ = true;
    } else {
        d1_ = fd_first(values_, grid_.spacing);
    }
    if (d2) {
        check_length(grid_, *d2, "second derivative");
        check_finite(*d2, "second derivative");
        d2_ = std::move(*d2);
        analytic_d2_ = true;
    } else {
        d2_ = fd_second(values_, grid_.spacing);
    }
}

SampledFunction SampledFunction::zeros(const Grid& grid)
{
    return constant(grid, 0.0);
}

SampledFunction SampledFunction::constant(const Grid& grid, double value)
{
    std::vector<double> z(grid.n, 0.0);
    return SampledFunction(grid, std::vector<double>(grid.n, value), z, z);
}

SampledFunction SampledFunction::sample(const Grid& grid, const std::function<double(double)>& f)
{
    std::vector<double> v(grid.n);
    for (int i = 0; i < grid.n; ++i) v[i] = f(grid.node(i));
    return SampledFunction(grid, std::move(v));
}

SampledFunction SampledFunction::sample(const Grid& grid, const std::function<double(double)>& f,
                                        const std::function<double(double)>& df,
                                        const std::function<double(double)>& d2f)
{
    std::vector<double> v(grid.n), d1(grid.n), d2(grid.n);
    for (int i = 0; i < grid.n; ++i) {
        const double x = grid.node(i);
        v[i] = f(x);
        d1[i] = df(x);
        d2[i] = d2f(x);
    }
    return SampledFunction(grid, std::move(v), std::move(d1), std::move(d2));
}

const std::vector<double>& SampledFunction::derivative(int order) const
{
    switch (order) {
    case 0: return values_;
    case 1: return d1_;
    case 2: return d2_;
    default: break;
    }
    fail(ErrorKind::MissingDerivative, "only derivatives of order 0, 1, 2 are carried");
}

double SampledFunction::min() const { return *std::min_element(values_.begin(), values_.end()); }
double SampledFunction::max() const { return *std::max_element(values_.begin(), values_.end()); }

double SampledFunction::max_abs() const
{
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

SampledFunction SampledFunction::with_fd_derivatives() const
{
    return SampledFunction(grid_, values_);
}

void require_same_grid(const SampledFunction& u, const SampledFunction& v)
{
    if (!u.grid().same_as(v.grid()))
        fail(ErrorKind::GridMismatch, "samples live on different grids");
}

namespace {

template <class Op>
SampledFunction combine(const SampledFunction& u, const SampledFunction& v, Op op)
{
    require_same_grid(u, v);
    const int n = u.size();
    std::vector<double> w(n), w1(n), w2(n);
    for (int i = 0; i < n; ++i) {
        w[i] = op(u[i], v[i]);
        w1[i] = op(u.d1()[i], v.d1()[i]);
        w2[i] = op(u.d2()[i], v.d2()[i]);
    }
    return SampledFunction(u.grid(), std::move(w), std::move(w1), std::move(w2));
}

} // namespace

SampledFunction operator+(const SampledFunction& u, const SampledFunction& v)
{
    return combine(u, v, [](double x, double y) { return x + y; });
}

SampledFunction operator-(const SampledFunction& u, const SampledFunction& v)
{
    return combine(u, v, [](double x, double y) { return x - y; });
}

SampledFunction operator*(double c, const SampledFunction& u)
{
    const int n = u.size();
    std::vector<double> w(n), w1(n), w2(n);
    for (int i = 0; i < n; ++i) {
        w[i] = c * u[i];
        w1[i] = c * u.d1()[i];
        w2[i] = c * u.d2()[i];
    }
    return SampledFunction(u.grid(), std::move(w), std::move(w1), std::move(w2));
}

SampledFunction multiply(const SampledFunction& u, const SampledFunction& v)
{
    require_same_grid(u, v);
    const int n = u.size();
    std::vector<double> w(n), w1(n), w2(n);
    const auto& u1 = u.d1();
    const auto& u2 = u.d2();
    const auto& v1 = v.d1();
    const auto& v2 = v.d2();
    for (int i = 0; i < n; ++i) {
        w[i] = u[i] * v[i];
        w1[i] = u1[i] * v[i] + u[i] * v1[i];
        w2[i] = u2[i] * v[i] + 2.0 * u1[i] * v1[i] + u[i] * v2[i];
    }
    return SampledFunction(u.grid(), std::move(w), std::move(w1), std::move(w2));
}

SampledFunction fd_derivative(const SampledFunction& u, int order)
{
    if (order != 1 && order != 2)
        fail(ErrorKind::InvalidArgument, "fd_derivative handles order 1 or 2");
    const double dx = u.grid().spacing;
    auto d = order == 1 ? fd_first(u.values(), dx) : fd_second(u.values(), dx);
    return SampledFunction(u.grid(), std::move(d));
}

double ck_norm(const SampledFunction& u, int k)
{
    if (k < 0 || k > 2) fail(ErrorKind::MissingDerivative, "C^k norm only for k = 0, 1, 2");
    double total = 0.0;
    for (int j = 0; j <= k; ++j) {
        double m = 0.0;
        for (double v : u.derivative(j)) m = std::max(m, std::abs(v));
        total += m;
    }
    return total;
}

double holder_seminorm_values(const std::vector<double>& v, double spacing, double alpha)
{
    if (!(alpha > 0.0 && alpha < 1.0))
        fail(ErrorKind::InvalidExponent, "Hoelder exponent must lie in (0, 1)");
    const int n = static_cast<int>(v.size());
    double best = 0.0;
    // for a fixed index gap the denominator is constant, so take the max
    // difference first and divide once
    for (int gap = 1; gap < n; ++gap) {
        double m = 0.0;
        for (int i = 0; i + gap < n; ++i) m = std::max(m, std::abs(v[i + gap] - v[i]));
        if (m > 0.0) best = std::max(best, m / std::pow(gap * spacing, alpha));
    }
    return best;
}

double holder_seminorm(const SampledFunction& u, int k, double alpha)
{
    if (!(alpha > 0.0 && alpha < 1.0))
        fail(ErrorKind::InvalidExponent, "Hoelder exponent must lie in (0, 1)");
    return holder_seminorm_values(u.derivative(k), u.grid().spacing, alpha);
}

double holder_norm(const SampledFunction& u, int k, double alpha)
{
    const double semi = holder_seminorm(u, k, alpha);
    return ck_norm(u, k) + semi;
}

NormReport norm_report(const SampledFunction& u, const std::vector<double>& alphas)
{
    NormReport r;
    r.c0 = ck_norm(u, 0);
    r.c1 = ck_norm(u, 1);
    r.c2 = ck_norm(u, 2);
    const double ck[3] = {r.c0, r.c1, r.c2};
    for (double alpha : alphas) {
        for (int k = 0; k <= 2; ++k) {
            const double s = holder_seminorm(u, k, alpha);
            r.holder_semis[{k, alpha}] = s;
            r.holder_norms[{k, alpha}] = ck[k] + s;
        }
    }
    return r;
}

double integrate_values(const std::vector<double>& v, double h)
{
    const int n = static_cast<int>(v.size());
    if (n < 2) return 0.0;
    if (n == 2) return 0.5 * h * (v[0] + v[1]);
    const int intervals = n - 1;
    int simpson_end = n - 1;
    double tail = 0.0;
    if (intervals % 2 == 1) {
        if (intervals == 1) return 0.5 * h * (v[0] + v[1]);
        // 3/8 rule over the last three intervals
        simpson_end = n - 4;
        tail = 3.0 * h / 8.0 * (v[n - 4] + 3.0 * v[n - 3] + 3.0 * v[n - 2] + v[n - 1]);
    }
    double s = 0.0;
    if (simpson_end > 0) {
        s = v[0] + v[simpson_end];
        for (int i = 1; i < simpson_end; ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * v[i];
        s *= h / 3.0;
    }
    return s + tail;
}

double integrate(const SampledFunction& u)
{
    return integrate_values(u.values(), u.grid().spacing);
}

} // namespace rotsym
