#pragma once

#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace rotsym {

struct Grid {
    double a = 0.0;
    double b = 1.0;
    int n = 3;
    double spacing = 0.5;

    // last node returns b itself so endpoint values are exact
    double node(int i) const { return i == n - 1 ? b : a + i * spacing; }
    double length() const { return b - a; }
    std::vector<double> nodes() const;
    bool same_as(const Grid& other) const;
};

Grid uniform_grid(double a, double b, int n);

/// Values on a grid together with first and second derivatives. The
/// derivatives are either supplied (analytic) or formed by finite
/// differences at construction; the object never changes afterwards.
class SampledFunction {
public:
    SampledFunction(const Grid& grid, std::vector<double> values);
    SampledFunction(const Grid& grid, std::vector<double> values,
                    std::vector<double> d1, std::vector<double> d2);
    SampledFunction(const Grid& grid, std::vector<double> values,
                    std::optional<std::vector<double>> d1,
                    std::optional<std::vector<double>> d2);

    static SampledFunction zeros(const Grid& grid);
    static SampledFunction constant(const Grid& grid, double value);
    // samples f only, derivatives by finite differences
    static SampledFunction sample(const Grid& grid, const std::function<double(double)>& f);
    // samples f, f', f'' from closed forms
    static SampledFunction sample(const Grid& grid, const std::function<double(double)>& f,
                                  const std::function<double(double)>& df,
                                  const std::function<double(double)>& d2f);

    const Grid& grid() const { return grid_; }
    int size() const { return grid_.n; }
    double operator[](int i) const { return values_[i]; }
    const std::vector<double>& values() const { return values_; }
    const std::vector<double>& d1() const { return d1_; }
    const std::vector<double>& d2() const { return d2_; }
    // order 0, 1 or 2; anything else is MissingDerivative
    const std::vector<double>& derivative(int order) const;
    bool analytic_d1() const { return analytic_d1_; }
    bool analytic_d2() const { return analytic_d2_; }

    double min() const;
    double max() const;
    double max_abs() const;

    // same values, derivatives recomputed by finite differences
    SampledFunction with_fd_derivatives() const;

private:
    Grid grid_;
    std::vector<double> values_;
    std::vector<double> d1_;
    std::vector<double> d2_;
    bool analytic_d1_ = false;
    bool analytic_d2_ = false;
};

// Arithmetic carries derivatives along (product rule for multiply).
SampledFunction operator+(const SampledFunction& u, const SampledFunction& v);
SampledFunction operator-(const SampledFunction& u, const SampledFunction& v);
SampledFunction operator*(double c, const SampledFunction& u);
SampledFunction multiply(const SampledFunction& u, const SampledFunction& v);

// raw stencils, exposed for callers that work on plain vectors
std::vector<double> fd_first(const std::vector<double>& v, double dx);
std::vector<double> fd_second(const std::vector<double>& v, double dx);

SampledFunction fd_derivative(const SampledFunction& u, int order);

double ck_norm(const SampledFunction& u, int k);
double holder_seminorm(const SampledFunction& u, int k, double alpha);
double holder_norm(const SampledFunction& u, int k, double alpha);

// plain-vector version used by the norms above
double holder_seminorm_values(const std::vector<double>& v, double spacing, double alpha);

struct NormReport {
    double c0 = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    std::map<std::pair<int, double>, double> holder_semis;
    std::map<std::pair<int, double>, double> holder_norms;
};

NormReport norm_report(const SampledFunction& u, const std::vector<double>& alphas);

// composite Simpson; a 3/8 panel closes grids with an odd number of intervals
double integrate(const SampledFunction& u);
double integrate_values(const std::vector<double>& v, double spacing);

void require_same_grid(const SampledFunction& u, const SampledFunction& v);

} // namespace rotsym
