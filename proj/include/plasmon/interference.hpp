#pragma once

#include "plasmon/fidelity.hpp"
#include "plasmon/numerics.hpp"

#include <vector>

namespace plasmon {

// Joint spectral amplitude psi(omega_s, omega_d) of the two-plasmon input,
// either a product of Gaussians or an explicit table on a common grid.
struct JointAmplitude {
    enum class Kind { product, grid };
    Kind kind = Kind::product;

    // product form
    GaussianWavepacket source;
    GaussianWavepacket drain;

    // grid form: table[i][j] = psi(omega[i], omega[j])
    std::vector<double> omega;
    std::vector<std::vector<cplx>> table;

    static JointAmplitude product(const GaussianWavepacket& s,
                                  const GaussianWavepacket& d);
    static JointAmplitude grid(std::vector<double> omega,
                               std::vector<std::vector<cplx>> table);
};

// I = Int Int psi(ws, wd) psi*(wd, ws); real in [-1, 1].
double overlap_integral(const JointAmplitude& psi);

struct TwoPlasmonProbabilities {
    double p20 = 0.0, p02 = 0.0, p11 = 0.0;
    double p10 = 0.0, p01 = 0.0, p00 = 0.0;
    double P0 = 0.0, P1 = 0.0, P2 = 0.0; // survival: none / one / two plasmons
};

// Narrowband (flat-coefficient) probabilities for the symmetric chain,
// R_s = R_d = R and T_s = T_d = T.
TwoPlasmonProbabilities joint_probabilities_flat(cplx R, cplx T, double I);

// Full frequency-dependent probabilities by 2D composite Simpson over the
// coefficient curves sampled on omega_grid.
TwoPlasmonProbabilities joint_probabilities_exact(const JointAmplitude& psi,
                                                  const std::vector<double>& omega_grid,
                                                  const std::vector<cplx>& R_s,
                                                  const std::vector<cplx>& T_s,
                                                  const std::vector<cplx>& R_d,
                                                  const std::vector<cplx>& T_d);

struct MinimizeResult {
    double g_opt = 0.0;
    TwoPlasmonProbabilities probs;
    cplx R, T;   // chain coefficients at the optimum
    bool endpoint_warning = false;
};

// Minimizes P1(g_in) for a uniform chain with g_out = g_in driven at omega,
// two indistinguishable plasmons (I = 1). Golden-section refinement after a
// 64-point pre-scan; an endpoint minimum sets endpoint_warning instead of
// refining.
MinimizeResult minimize_one_plasmon_loss(int n, double omega_0, double g_np,
                                         double gamma, double omega,
                                         double g_lo, double g_hi);

struct LossSweepPoint {
    double gamma = 0.0;
    double g_opt = 0.0;
    double P0 = 0.0, P1 = 0.0, P2 = 0.0;
    double R2 = 0.0, T2 = 0.0;
    bool endpoint_warning = false;
};

// Per-damping minimization of P1 over the same g_in bracket.
std::vector<LossSweepPoint> loss_sweep(int n, double omega_0, double g_np,
                                       const std::vector<double>& gamma_grid,
                                       double omega, double g_lo, double g_hi);

} // namespace plasmon
