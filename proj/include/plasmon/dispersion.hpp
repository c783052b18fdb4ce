#pragma once

#include "plasmon/numerics.hpp"

#include <vector>

namespace plasmon {

// Effective dispersion of a finite chain, extracted from the transmission
// phase over the effective length x = (n+1)d.
struct DispersionCurve {
    std::vector<double> omegas;  // rad/s, strictly increasing
    std::vector<double> k_real;  // rad/m, branch-unwrapped
    int branch_index = 0;        // m in k = (arg T -/+ pi + 2 m pi)/x
    std::vector<double> v_group; // m/s, filled by group_velocity
    int n = 0;
    double spacing = 0.0; // d, m
    double omega_0 = 0.0; // anchor frequency used for branch selection
};

struct Resonance {
    double omega; // rad/s
    double k;     // rad/m
};

// phases are arg T on the same grid as omegas; sign_choice = +1 applies the
// -pi offset, -1 the +pi offset. The branch integer m is picked so that
// k(omega_0) lands in (0, pi/d].
DispersionCurve effective_wavenumber(const std::vector<double>& omegas,
                                     const std::vector<double>& phases, int n,
                                     double d, int sign_choice, double omega_0);

// omega_rj = omega_0 + 2 g cos(k_j d), k_j = j pi / ((n+1) d), j = 1..n.
std::vector<Resonance> resonance_frequencies(int n, double omega_0, double g,
                                             double d);

// omega(k) = omega_0 + 2 g cos(k d).
double infinite_chain_dispersion(double omega_0, double g, double d, double k);

// v_G = (dk/domega)^-1 by central differences (one-sided at the ends).
// Flat-k samples yield +infinity.
std::vector<double> group_velocity(const DispersionCurve& curve);

// v_G(omega) / v_G(omega_0); an all-flat curve scales to 1.
std::vector<double> scaled_group_velocity(const DispersionCurve& curve);

// Largest half-width dw such that |v~_G - 1| <= tolerance for every sample
// with |omega - omega_0| <= dw. Returns 0 if the sample nearest omega_0
// already violates the bound.
double linear_dispersion_bandwidth(const DispersionCurve& curve,
                                   double tolerance);

} // namespace plasmon
