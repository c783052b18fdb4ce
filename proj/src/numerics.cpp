#include "plasmon/numerics.hpp"
#include "plasmon/errors.hpp"

#include <cmath>

namespace plasmon {

std::vector<double> linear_grid(double lo, double hi, std::size_t points) {
    if (points < 2) throw InvalidInput("grid needs at least 2 points");
    if (!(hi > lo)) throw InvalidInput("grid upper bound must exceed lower bound");
    std::vector<double> g(points);
    const double h = (hi - lo) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) g[i] = lo + h * static_cast<double>(i);
    g.back() = hi;
    return g;
}

std::vector<double> log_grid(double lo, double hi, std::size_t points) {
    if (!(lo > 0.0)) throw InvalidInput("log grid requires positive lower bound");
    if (points < 2) throw InvalidInput("grid needs at least 2 points");
    if (!(hi > lo)) throw InvalidInput("grid upper bound must exceed lower bound");
    std::vector<double> g(points);
    const double llo = std::log(lo), lhi = std::log(hi);
    const double h = (lhi - llo) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) g[i] = std::exp(llo + h * static_cast<double>(i));
    g.front() = lo;
    g.back() = hi;
    return g;
}

std::vector<double> simpson_weights(std::size_t n, double h) {
    if (n < 2) throw InvalidInput("quadrature needs at least 2 samples");
    std::vector<double> w(n, 0.0);
    if (n == 2) {
        w[0] = w[1] = h / 2.0;
        return w;
    }
    // largest odd m <= n covered by Simpson panels
    const std::size_t m = (n % 2 == 1) ? n : n - 1;
    w[0] = h / 3.0;
    for (std::size_t i = 1; i + 1 < m; ++i) w[i] = (i % 2 == 1 ? 4.0 : 2.0) * h / 3.0;
    w[m - 1] = h / 3.0;
    if (n % 2 == 0) { // trapezoid patch on the last interval
        w[n - 2] += h / 2.0;
        w[n - 1] += h / 2.0;
    }
    return w;
}

double simpson(const std::vector<double>& f, double h) {
    const auto w = simpson_weights(f.size(), h);
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += w[i] * f[i];
    return s;
}

cplx simpson(const std::vector<cplx>& f, double h) {
    const auto w = simpson_weights(f.size(), h);
    cplx s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += w[i] * f[i];
    return s;
}

double golden_minimize(const std::function<double(double)>& f, double a, double b,
                       double tol) {
    if (!(b > a)) throw InvalidInput("golden_minimize: empty bracket");
    if (!(tol > 0.0)) throw InvalidInput("golden_minimize: tolerance must be positive");
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1; f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2; f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
    }
    return (a + b) / 2.0;
}

} // namespace plasmon
