#ifndef PLASMON_SCATTERING_HPP
#define PLASMON_SCATTERING_HPP

#include "plasmon/numerics.hpp"

#include <vector>

namespace plasmon {

// One chain instance: n particles with local frequencies omega_i,
// nearest-neighbour couplings g_{i,i+1}, end couplings to the source and
// drain guides, and per-particle damping rates.
struct ChainConfig {
    int n = 0;
    std::vector<double> local_freqs; // rad/s, size n
    std::vector<double> couplings;   // rad/s, signed, size n-1
    double g_in = 0.0;               // rad/s, >= 0
    double g_out = 0.0;              // rad/s, >= 0
    std::vector<double> damping;     // rad/s, >= 0, size n
    double spacing = 0.0;            // m
};

ChainConfig uniform_chain(int n, double omega_0, double g_np, double g_in,
                          double g_out, double gamma, double spacing = 75e-9);

void validate(const ChainConfig& config);

// Amplitude coefficients at one frequency for both drive directions.
// Flux balance |r|^2 + |t|^2 + sum_i |s_i|^2 = 1 holds per direction.
struct ScatteringCoefficients {
    double omega = 0.0;
    cplx r_s, t_s; // source-side drive
    cplx r_d, t_d; // drain-side drive
    std::vector<cplx> s_loss_s, s_loss_d; // per-particle loss amplitudes
};

// Frequency-domain steady state of the driven damped chain.
// The internal linear system is tridiagonal:
//   [i(w - w_i) - Gamma_i/2 - (g_in/2 if first) - (g_out/2 if last)] a_i
//   - i g_{i,i-1} a_{i-1} - i g_{i,i+1} a_{i+1} = -sqrt(g_port) (drive)
// and the guide amplitudes follow from the port boundary conditions.
ScatteringCoefficients solve_scattering(const ChainConfig& config, double omega);

// Transcribed closed-form transmission for short uniform chains with
// g_out = g_in; gamma = 0 selects the undamped family. Supported n: 1,2,3,5,7.
cplx closed_form_transmission(int n, double g_np, double g_in, double gamma,
                              double omega, double omega_0);

struct SpectrumPoint {
    double omega;
    double T2;         // |t|^2
    double argT;       // principal arg t
    double R2;         // |r|^2
    double loss_total; // sum_i |s_i|^2
};

std::vector<SpectrumPoint> transmission_spectrum(const ChainConfig& config,
                                                 const std::vector<double>& omega_grid);

struct MeanFieldTrajectory {
    std::vector<double> times;
    std::vector<std::vector<cplx>> amplitudes; // amplitudes[k][i] at times[k]
};

// Classical closed-chain check: d alpha_i/dt = -i w_i alpha_i - i sum_j g alpha_j,
// integrated with a fixed-step classical 4th-order scheme. Requires a closed,
// undamped chain (g_in = g_out = 0, all damping 0) and dt <= 0.01 / max w_i.
MeanFieldTrajectory classical_mean_field_evolution(const ChainConfig& config,
                                                   const std::vector<cplx>& initial,
                                                   double t_final, double dt,
                                                   std::size_t record_stride = 1);

} // namespace plasmon

#endif
