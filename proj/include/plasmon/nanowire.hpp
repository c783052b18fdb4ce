#pragma once

#include "plasmon/materials.hpp"
#include "plasmon/numerics.hpp"

#include <vector>

namespace plasmon {

enum class BesselKind { I, K };

// Modified Bessel functions of order 0 and 1 for complex argument on the
// principal branch. Power series up to |z| = 12 (evaluated in extended
// precision to absorb the cancellation in K), asymptotic expansion beyond;
// |z| <= 700 to stay clear of overflow.
cplx modified_bessel(int order, BesselKind kind, cplx z);

struct WireGeometry {
    double radius = 0.0; // tip-region radius, m
    double eps_d = 1.0;  // surrounding dielectric
};

void validate(const WireGeometry& geom);

// Left side of the bound-mode condition for the fundamental TM mode:
// (eps_m/k_m) I1(x_m)/I0(x_m) + (eps_d/k_d) K1(x_d)/K0(x_d), with
// k_{m,d} = sqrt(n^2 - eps_{m,d}) and x = k0 k R.
cplx wire_mode_residual(const WireGeometry& geom, const PermittivityModel& metal,
                        double omega, cplx n_eff,
                        const PhysicalConstants& constants = {});

// Complex secant iteration for the effective index n_eff (k = n_eff w / c).
// The returned root satisfies |residual| <= 1e-9; a root drifting to
// Re n_eff <= sqrt(eps_d) is rejected as not bound.
cplx wire_effective_index(const WireGeometry& geom, const PermittivityModel& metal,
                          double omega, cplx initial_guess,
                          const PhysicalConstants& constants = {});

// Warm-started continuation along an increasing frequency grid. The first
// point seeds from initial_guess (default just above the light line); each
// subsequent point reuses the previous root. Callers wanting independent
// per-point solves can call wire_effective_index directly with their own
// guesses.
std::vector<cplx> wire_dispersion_sweep(const WireGeometry& geom,
                                        const PermittivityModel& metal,
                                        const std::vector<double>& omega_grid,
                                        cplx initial_guess = cplx(0.0, 0.0),
                                        const PhysicalConstants& constants = {});

// k = (w/c) sqrt(eps_m eps_d / (eps_m + eps_d)), principal branch, Re k > 0.
cplx flat_interface_spp(const PermittivityModel& metal, double eps_d, double omega,
                        const PhysicalConstants& constants = {});

// k = sqrt(eps_d) w / c.
double photon_line(double omega, double eps_d,
                   const PhysicalConstants& constants = {});

} // namespace plasmon
