#pragma once
// Independent reference computations for the tests. Nothing here calls into
// the library; values are closed forms, brute force, or published tables.

#include <array>
#include <cmath>
#include <utility>
#include <vector>

namespace oracle {

// every pair, no gap trick, pow per pair
inline double holder_semi(const std::vector<double>& x, const std::vector<double>& v, double alpha)
{
    double best = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            best = std::max(best, std::abs(v[i] - v[j]) / std::pow(std::abs(x[i] - x[j]), alpha));
    return best;
}

inline double sup(const std::vector<double>& v)
{
    double m = 0.0;
    for (double a : v) m = std::max(m, std::abs(a));
    return m;
}

// root of t tanh t = 1 by Newton
inline double tanh_root()
{
    double t = 1.2;
    for (int i = 0; i < 60; ++i) {
        const double g = t * std::tanh(t) - 1.0;
        const double dg = std::tanh(t) + t / (std::cosh(t) * std::cosh(t));
        t -= g / dg;
    }
    return t;
}

// largest h/r with a catenary through both rings: 2 t / cosh t at the root
inline double critical_ratio()
{
    const double t = tanh_root();
    return 2.0 * t / std::cosh(t);
}

// scale parameters c with c cosh(h / (2c)) = r, in the variable s = h/(2c):
// r s / cosh s = h/2, bisected on either side of the tanh root
inline std::pair<double, double> catenary_scales(double r, double h)
{
    const double ts = tanh_root();
    auto g = [&](double s) { return h / 2.0 * std::cosh(s) / s - r; };
    auto bisect = [&](double lo, double hi) {
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            if ((g(lo) > 0) == (g(mid) > 0)) lo = mid; else hi = mid;
        }
        return 0.5 * (lo + hi);
    };
    const double s_outer = bisect(1e-9, ts);
    const double s_inner = bisect(ts, 60.0);
    return {h / (2.0 * s_outer), h / (2.0 * s_inner)};
}

// symmetric catenoid area between the rings, by the textbook formula
inline double catenoid_area(double c, double h)
{
    return M_PI * c * (h + c * std::sinh(h / c));
}

// published catenoid table at r = 1.5088795: (h/r, area)
inline const std::array<std::pair<double, double>, 19>& catenoid_rows()
{
    static const std::array<std::pair<double, double>, 19> rows{{
        {0.0663, 0.9053}, {0.1325, 1.8881}, {0.1988, 2.8292}, {0.2651, 3.7667},
        {0.3314, 4.7001}, {0.3976, 5.6285}, {0.4639, 6.5506}, {0.5302, 7.4656},
        {0.5965, 8.3723}, {0.6627, 9.2694}, {0.7290, 10.1558}, {0.7953, 11.0302},
        {0.8616, 11.8810}, {0.9278, 12.7189}, {0.9941, 13.5347}, {1.0604, 14.3377},
        {1.1267, 15.0976}, {1.1929, 15.8227}, {1.2592, 16.5026},
    }};
    return rows;
}
constexpr double catenoid_radius = 1.5088795;
constexpr double breakdown_ratio = 1.3256;
constexpr double breakdown_area = 14.3250;

struct WillmoreRow {
    double h, area, energy;
};
// published Willmore table, r = 1
inline const std::vector<WillmoreRow>& willmore_rows()
{
    static const std::vector<WillmoreRow> rows{
        {1.0, 5.98, 0.00}, {1.1, 6.50, 0.00}, {1.2, 6.98, 0.00}, {1.3, 7.42, 0.00},
        {1.4, 7.77, 0.02}, {1.5, 8.13, 0.10}, {1.6, 8.49, 0.22}, {1.7, 8.87, 0.38},
        {1.8, 9.27, 0.56}, {1.9, 9.68, 0.77}, {2.0, 10.11, 0.98}, {2.5, 12.54, 2.13},
        {3.0, 15.50, 3.23}, {4.0, 23.21, 5.02}, {10.0, 145.22, 9.71},
    };
    return rows;
}

// Constant ledger for p = 1, q = 0 on an interval of length 1, alpha = 1/2,
// mu = 1/4, evaluated by hand:
//   c4 = c2 + 1/2, c5 = 1 + 2/mu, c6 = 1/2, c7 = 1 + 0, c10 = 1 + c4,
//   c11 = c5, c12 = c6, c13 = (2 + 5/4)/2 c7 + c10, c14 = 9 + c11, c15 = c12
inline const std::array<double, 15>& identity_ledger()
{
    static const std::array<double, 15> c{0.0, 1.0, 0.0, 1.5, 9.0, 0.5, 1.0, 0.0,
                                          0.0, 2.5, 9.0, 0.5, 4.125, 18.0, 0.5};
    return c;
}
constexpr double identity_C1 = 4.125 / 0.875;
constexpr double identity_C2 = 18.0 / 0.875;

} // namespace oracle
