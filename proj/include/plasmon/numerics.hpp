#ifndef PLASMON_NUMERICS_HPP
#define PLASMON_NUMERICS_HPP

#include <complex>
#include <functional>
#include <vector>

namespace plasmon {

using cplx = std::complex<double>;

inline double abs2(cplx z) { return std::norm(z); }

// Uniform grid with `points` samples on [lo, hi], endpoints included.
std::vector<double> linear_grid(double lo, double hi, std::size_t points);

// Log-spaced grid on [lo, hi], lo > 0.
std::vector<double> log_grid(double lo, double hi, std::size_t points);

// Composite Simpson weights for a uniform grid of odd size n and spacing h.
// The trailing interval of an even-sized grid is handled by a trapezoid patch.
std::vector<double> simpson_weights(std::size_t n, double h);

// Integrate samples f on a uniform grid with spacing h by composite Simpson.
double simpson(const std::vector<double>& f, double h);
cplx simpson(const std::vector<cplx>& f, double h);

// Golden-section minimization of f on [a, b] to absolute tolerance tol in x.
// Assumes f is unimodal on the bracket; returns the abscissa of the minimum.
double golden_minimize(const std::function<double(double)>& f, double a, double b,
                       double tol);

} // namespace plasmon

#endif
