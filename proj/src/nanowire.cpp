#include "plasmon/nanowire.hpp"
#include "plasmon/errors.hpp"

#include <cmath>

namespace plasmon {

void validate(const WireGeometry& geom) {
    if (!(geom.radius > 0.0)) throw InvalidInput("wire geometry: radius must be positive");
    if (!(geom.eps_d > 0.0))
        throw InvalidInput("wire geometry: dielectric constant must be positive");
}

cplx wire_mode_residual(const WireGeometry& geom, const PermittivityModel& metal,
                        double omega, cplx n_eff,
                        const PhysicalConstants& constants) {
    validate(geom);
    if (!(omega > 0.0)) throw InvalidInput("wire mode: omega must be positive");
    const cplx eps_m = permittivity(metal, omega);
    const double k0 = omega / constants.c;
    const cplx km = std::sqrt(n_eff * n_eff - eps_m);
    const cplx kd = std::sqrt(n_eff * n_eff - geom.eps_d);
    const cplx xm = k0 * km * geom.radius;
    const cplx xd = k0 * kd * geom.radius;
    const cplx i0 = modified_bessel(0, BesselKind::I, xm);
    const cplx i1 = modified_bessel(1, BesselKind::I, xm);
    const cplx q0 = modified_bessel(0, BesselKind::K, xd);
    const cplx q1 = modified_bessel(1, BesselKind::K, xd);
    return (eps_m / km) * (i1 / i0) + (geom.eps_d / kd) * (q1 / q0);
}

cplx wire_effective_index(const WireGeometry& geom, const PermittivityModel& metal,
                          double omega, cplx initial_guess,
                          const PhysicalConstants& constants) {
    validate(geom);
    const double light_line = std::sqrt(geom.eps_d);
    if (!(initial_guess.real() > light_line))
        throw InvalidInput("wire mode: initial guess must start above the light line");

    auto f = [&](cplx n) { return wire_mode_residual(geom, metal, omega, n, constants); };

    cplx x0 = initial_guess;
    cplx x1 = initial_guess * (1.0 + 1e-4);
    cplx f0 = f(x0);
    cplx f1 = f(x1);
    for (int it = 0; it < 200; ++it) {
        if (std::abs(f1) <= 1e-9) {
            if (x1.real() <= light_line)
                throw NumericalFailure("wire mode: mode not bound (root left the "
                                       "region Re n_eff > sqrt(eps_d))");
            return x1;
        }
        const cplx denom = f1 - f0;
        if (std::abs(denom) == 0.0)
            throw NumericalFailure("wire mode: secant iteration stalled");
        cplx step = f1 * (x1 - x0) / denom;
        // keep the iterate from leaping across the branch structure
        const double cap = 0.5 * std::abs(x1) + 0.1;
        if (std::abs(step) > cap) step *= cap / std::abs(step);
        x0 = x1;
        f0 = f1;
        x1 = x1 - step;
        f1 = f(x1);
    }
    throw NumericalFailure("wire mode: no convergence within 200 iterations");
}

std::vector<cplx> wire_dispersion_sweep(const WireGeometry& geom,
                                        const PermittivityModel& metal,
                                        const std::vector<double>& omega_grid,
                                        cplx initial_guess,
                                        const PhysicalConstants& constants) {
    validate(geom);
    if (omega_grid.empty()) throw InvalidInput("wire sweep: empty frequency grid");
    for (std::size_t i = 1; i < omega_grid.size(); ++i)
        if (!(omega_grid[i] > omega_grid[i - 1]))
            throw InvalidInput("wire sweep: frequency grid must be strictly increasing");
    if (initial_guess == cplx(0.0, 0.0))
        initial_guess = cplx(1.05 * std::sqrt(geom.eps_d), 0.0);

    std::vector<cplx> out(omega_grid.size());
    cplx guess = initial_guess;
    for (std::size_t i = 0; i < omega_grid.size(); ++i) {
        out[i] = wire_effective_index(geom, metal, omega_grid[i], guess, constants);
        guess = out[i];
    }
    return out;
}

cplx flat_interface_spp(const PermittivityModel& metal, double eps_d, double omega,
                        const PhysicalConstants& constants) {
    if (!(eps_d > 0.0)) throw InvalidInput("flat spp: dielectric constant must be positive");
    if (!(omega > 0.0)) throw InvalidInput("flat spp: omega must be positive");
    const cplx eps_m = permittivity(metal, omega);
    const cplx denom = eps_m + eps_d;
    if (std::abs(denom) <= 1e-12 * (std::abs(eps_m) + eps_d))
        throw NumericalFailure("flat spp: surface-plasmon-resonance pole (eps_m = -eps_d)");
    cplx k = (omega / constants.c) * std::sqrt(eps_m * eps_d / denom);
    if (k.real() < 0.0 || (k.real() == 0.0 && k.imag() < 0.0)) k = -k;
    return k;
}

double photon_line(double omega, double eps_d, const PhysicalConstants& constants) {
    if (omega < 0.0) throw InvalidInput("photon line: omega must be >= 0");
    if (!(eps_d > 0.0))
        throw InvalidInput("photon line: dielectric constant must be positive");
    return std::sqrt(eps_d) * omega / constants.c;
}

} // namespace plasmon
