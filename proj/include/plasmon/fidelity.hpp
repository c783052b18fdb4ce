#pragma once

#include "plasmon/numerics.hpp"
#include "plasmon/scattering.hpp"

#include <vector>

namespace plasmon {

// xi(omega) = (2 pi sigma^2)^(-1/4) exp(-(center-omega)^2 / 4 sigma^2)
struct GaussianWavepacket {
    double center = 0.0; // rad/s
    double sigma = 0.0;  // rad/s
};

// a|0> + b|1 photon in the packet>
struct QubitState {
    cplx a{1.0, 0.0};
    cplx b{0.0, 0.0};
};

// Drain-side reduced state of the qubit encoding: vacuum weight, the
// <0|rho|1_w> row, and the dense one-particle kernel over the grid.
struct OutputQubitDensity {
    std::vector<double> omega_grid;
    double p_vac = 1.0;
    std::vector<cplx> coherence;
    std::vector<std::vector<cplx>> one_particle_block;
};

void validate(const GaussianWavepacket& wp);
void validate(const QubitState& q);

cplx gaussian_amplitude(const GaussianWavepacket& wp, double omega);

// Uniform grid spanning center +/- half_width_sigmas * sigma.
std::vector<double> packet_grid(const GaussianWavepacket& wp,
                                std::size_t points = 2001,
                                double half_width_sigmas = 8.0);

// Time samples of the packet delayed by delta_t, via quadrature of
// xi(omega) e^{i omega delta_t}. t_grid must span delta_t +/- 8/sigma.
std::vector<cplx> delayed_wavepacket(const GaussianWavepacket& wp,
                                     double delta_t,
                                     const std::vector<double>& t_grid);

OutputQubitDensity output_density_matrix(const QubitState& qubit,
                                         const GaussianWavepacket& wp,
                                         const std::vector<double>& omega_grid,
                                         const std::vector<cplx>& T);

// F = |a|^4 + |a|^2|b|^2 Int |xi|^2 (1 - |T|^2 + 2|T|) + |b|^4 (Int |xi|^2 |T|)^2
double qubit_fidelity(const QubitState& qubit, const GaussianWavepacket& wp,
                      const std::vector<double>& omega_grid,
                      const std::vector<double>& absT);

// Bloch-sphere average: 1/3 + (1/6) Int |xi|^2 (1 - |T|^2 + 2|T|)
//                           + (1/3) (Int |xi|^2 |T|)^2
double average_fidelity(const GaussianWavepacket& wp,
                        const std::vector<double>& omega_grid,
                        const std::vector<double>& absT);

// (Int |xi|^2 |T|)^2
double single_photon_fidelity(const GaussianWavepacket& wp,
                              const std::vector<double>& omega_grid,
                              const std::vector<double>& absT);

// exp(-Int |alpha|^2 (|T| - 1)^2)
double coherent_fidelity(const std::vector<double>& omega_grid,
                         const std::vector<cplx>& alpha,
                         const std::vector<double>& absT);

// Int |xi|^2 |T|^2
double mean_output_flux(const GaussianWavepacket& wp,
                        const std::vector<double>& omega_grid,
                        const std::vector<double>& absT);
double mean_output_flux(const std::vector<double>& omega_grid,
                        const std::vector<cplx>& profile,
                        const std::vector<double>& absT);

// Average fidelity over a (sigma, g_in) grid for a uniform chain with
// g_out = g_in; cells evaluate independently and may run in parallel.
struct FidelityMap {
    std::vector<double> sigmas; // rad/s
    std::vector<double> g_ins;  // rad/s
    std::vector<std::vector<double>> value; // [sigma index][g_in index]
};

FidelityMap average_fidelity_map(int n, double omega_0, double g_np,
                                 double gamma,
                                 const std::vector<double>& sigmas,
                                 const std::vector<double>& g_ins,
                                 std::size_t quad_points = 2001);

// Level-set segments of a map, via marching squares with linear
// interpolation along cell edges; empty result means the level is not
// crossed anywhere.
struct ContourSegment {
    double sigma_a, g_in_a;
    double sigma_b, g_in_b;
};

std::vector<ContourSegment> threshold_contour(const FidelityMap& map,
                                              double level);

} // namespace plasmon
