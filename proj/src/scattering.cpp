#include "plasmon/scattering.hpp"
#include "plasmon/errors.hpp"

#include <algorithm>
#include <cmath>

namespace plasmon {

ChainConfig uniform_chain(int n, double omega_0, double g_np, double g_in,
                          double g_out, double gamma, double spacing) {
    ChainConfig c;
    c.n = n;
    c.local_freqs.assign(static_cast<std::size_t>(std::max(n, 0)), omega_0);
    c.couplings.assign(n > 1 ? static_cast<std::size_t>(n - 1) : 0, g_np);
    c.g_in = g_in;
    c.g_out = g_out;
    c.damping.assign(static_cast<std::size_t>(std::max(n, 0)), gamma);
    c.spacing = spacing;
    validate(c);
    return c;
}

void validate(const ChainConfig& config) {
    if (config.n < 1) throw InvalidInput("chain: n must be a positive integer");
    const auto n = static_cast<std::size_t>(config.n);
    if (config.local_freqs.size() != n)
        throw InvalidInput("chain: local_freqs must have n entries");
    if (config.couplings.size() != n - 1)
        throw InvalidInput("chain: couplings must have n-1 entries");
    if (config.damping.size() != n)
        throw InvalidInput("chain: damping must have n entries");
    for (double w : config.local_freqs)
        if (!(w > 0.0)) throw InvalidInput("chain: local frequencies must be positive");
    for (double g : config.damping)
        if (g < 0.0) throw InvalidInput("chain: damping rates must be >= 0");
    if (config.g_in < 0.0 || config.g_out < 0.0)
        throw InvalidInput("chain: port couplings must be >= 0");
}

namespace {

// Thomas elimination for the complex tridiagonal system; the diagonal is
// dominant whenever any damping or port coupling is present, so no pivoting.
// Returns false on a vanishing pivot (degenerate lossless closed chain at an
// exact eigenfrequency), letting the caller fall back to pivoted elimination.
bool solve_tridiagonal(std::vector<cplx> diag, const std::vector<cplx>& off,
                       std::vector<cplx>& rhs) {
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        if (std::abs(diag[i - 1]) < 1e-300) return false;
        const cplx m = off[i - 1] / diag[i - 1];
        diag[i] -= m * off[i - 1];
        rhs[i] -= m * rhs[i - 1];
    }
    if (std::abs(diag[n - 1]) < 1e-300) return false;
    rhs[n - 1] /= diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
        rhs[i] = (rhs[i] - off[i] * rhs[i + 1]) / diag[i];
    return true;
}

// Dense LU with partial pivoting; only used when Thomas elimination hits a
// vanishing pivot. n stays small, so O(n^3) is irrelevant here.
void solve_dense(const std::vector<cplx>& diag, const std::vector<cplx>& off,
                 std::vector<cplx>& rhs) {
    const std::size_t n = diag.size();
    std::vector<std::vector<cplx>> a(n, std::vector<cplx>(n, cplx(0.0)));
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        a[i][i] = diag[i];
        scale = std::max(scale, std::abs(diag[i]));
        if (i + 1 < n) {
            a[i][i + 1] = off[i];
            a[i + 1][i] = off[i];
            scale = std::max(scale, std::abs(off[i]));
        }
    }
    if (scale == 0.0) throw NumericalFailure("scattering: zero system matrix");
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) < 1e-14 * scale)
            throw NumericalFailure(
                "scattering: singular system (lossless closed chain driven at an "
                "eigenfrequency)");
        if (piv != col) {
            std::swap(a[piv], a[col]);
            std::swap(rhs[piv], rhs[col]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const cplx m = a[r][col] / a[col][col];
            if (m == cplx(0.0)) continue;
            for (std::size_t c = col; c < n; ++c) a[r][c] -= m * a[col][c];
            rhs[r] -= m * rhs[col];
        }
    }
    for (std::size_t i = n; i-- > 0;) {
        cplx s = rhs[i];
        for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * rhs[c];
        rhs[i] = s / a[i][i];
    }
}

void solve_system(const std::vector<cplx>& diag, const std::vector<cplx>& off,
                  std::vector<cplx>& rhs) {
    std::vector<cplx> r = rhs;
    if (solve_tridiagonal(diag, off, r)) {
        rhs = std::move(r);
        return;
    }
    solve_dense(diag, off, rhs);
}

} // namespace

ScatteringCoefficients solve_scattering(const ChainConfig& config, double omega) {
    validate(config);
    if (!(omega > 0.0)) throw InvalidInput("solve_scattering: omega must be positive");
    const auto n = static_cast<std::size_t>(config.n);

    std::vector<cplx> diag(n), off(n > 1 ? n - 1 : 0);
    for (std::size_t i = 0; i < n; ++i) {
        double re = -0.5 * config.damping[i];
        if (i == 0) re -= 0.5 * config.g_in;
        if (i == n - 1) re -= 0.5 * config.g_out;
        diag[i] = cplx(re, omega - config.local_freqs[i]);
    }
    for (std::size_t i = 0; i + 1 < n; ++i) off[i] = cplx(0.0, -config.couplings[i]);

    const double rin = std::sqrt(config.g_in);
    const double rout = std::sqrt(config.g_out);

    std::vector<cplx> as(n, cplx(0.0)), ad(n, cplx(0.0));
    as[0] = -rin;
    ad[n - 1] = -rout;
    solve_system(diag, off, as);
    solve_system(diag, off, ad);

    ScatteringCoefficients out;
    out.omega = omega;
    out.r_s = rin * as[0] - 1.0;
    out.t_s = rout * as[n - 1];
    out.t_d = rin * ad[0];
    out.r_d = rout * ad[n - 1] - 1.0;
    out.s_loss_s.resize(n);
    out.s_loss_d.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double rg = std::sqrt(config.damping[i]);
        out.s_loss_s[i] = rg * as[i];
        out.s_loss_d[i] = rg * ad[i];
    }
    return out;
}

namespace {

// Undamped uniform-chain transmissions, g_out = g_in, dw = w - w0.
cplx undamped_closed_form(int n, double g, double gin, double dw) {
    const cplx i(0.0, 1.0);
    const double g2 = g * g;
    const double g4 = g2 * g2;
    const double g6 = g4 * g2;
    switch (n) {
    case 1:
        return gin / (gin - i * dw);
    case 2: {
        const cplx q = gin - 2.0 * i * dw;
        return -4.0 * i * g * gin / (4.0 * g2 + q * q);
    }
    case 3:
        return -4.0 * g2 * gin /
               ((gin - 2.0 * i * dw) * (4.0 * g2 - dw * (i * gin + 2.0 * dw)));
    case 5:
        return 4.0 * g4 * gin /
               ((2.0 * g2 * (gin - 3.0 * i * dw) - (gin - 2.0 * i * dw) * dw * dw) *
                (2.0 * g2 - dw * (i * gin + 2.0 * dw)));
    case 7:
        return -4.0 * g6 * gin /
               ((g2 * (gin - 4.0 * i * dw) - (gin - 2.0 * i * dw) * dw * dw) *
                (4.0 * g4 + dw * dw * dw * (i * gin + 2.0 * dw) -
                 g2 * dw * (3.0 * i * gin + 8.0 * dw)));
    default:
        break;
    }
    throw InvalidInput("closed_form_transmission: unsupported n");
}

// Damped versions; D = Gamma - 2i dw absorbs the loss into the detuning.
cplx damped_closed_form(int n, double g, double gin, double gamma, double dw) {
    const cplx i(0.0, 1.0);
    const cplx D = gamma - 2.0 * i * dw;
    const double g2 = g * g;
    const double g4 = g2 * g2;
    const double g6 = g4 * g2;
    switch (n) {
    case 1:
        return 2.0 * gin / (2.0 * gin + D);
    case 2:
        return -4.0 * i * g * gin / (4.0 * g2 + (gin + D) * (gin + D));
    case 3:
        return -8.0 * g2 * gin / ((gin + D) * (8.0 * g2 + D * (gin + D)));
    case 5:
        return 32.0 * g4 * gin /
               ((4.0 * g2 + D * (gin + D)) *
                (4.0 * g2 * (2.0 * gin + 3.0 * D) + D * D * (gin + D)));
    case 7:
        return -128.0 * g6 * gin /
               ((4.0 * g2 * (gin + 2.0 * D) + D * D * (gin + D)) *
                (32.0 * g4 + 4.0 * g2 * (3.0 * gin + 4.0 * D) * D +
                 D * D * D * (gin + D)));
    default:
        break;
    }
    throw InvalidInput("closed_form_transmission: unsupported n");
}

} // namespace

cplx closed_form_transmission(int n, double g_np, double g_in, double gamma,
                              double omega, double omega_0) {
    if (n != 1 && n != 2 && n != 3 && n != 5 && n != 7)
        throw InvalidInput("closed_form_transmission: supported n are 1, 2, 3, 5, 7");
    if (!(g_in > 0.0)) throw InvalidInput("closed_form_transmission: g_in must be positive");
    if (gamma < 0.0) throw InvalidInput("closed_form_transmission: gamma must be >= 0");
    const double dw = omega - omega_0;
    if (gamma == 0.0) return undamped_closed_form(n, g_np, g_in, dw);
    return damped_closed_form(n, g_np, g_in, gamma, dw);
}

std::vector<SpectrumPoint> transmission_spectrum(const ChainConfig& config,
                                                 const std::vector<double>& omega_grid) {
    validate(config);
    if (omega_grid.empty())
        throw InvalidInput("transmission_spectrum: omega grid is empty");
    for (std::size_t i = 1; i < omega_grid.size(); ++i)
        if (!(omega_grid[i] > omega_grid[i - 1]))
            throw InvalidInput("transmission_spectrum: grid must be strictly increasing");
    std::vector<SpectrumPoint> out(omega_grid.size());
    for (std::size_t i = 0; i < omega_grid.size(); ++i) {
        const auto c = solve_scattering(config, omega_grid[i]);
        double loss = 0.0;
        for (const cplx& s : c.s_loss_s) loss += abs2(s);
        out[i] = {c.omega, abs2(c.t_s), std::arg(c.t_s), abs2(c.r_s), loss};
    }
    return out;
}

MeanFieldTrajectory classical_mean_field_evolution(const ChainConfig& config,
                                                   const std::vector<cplx>& initial,
                                                   double t_final, double dt,
                                                   std::size_t record_stride) {
    validate(config);
    const auto n = static_cast<std::size_t>(config.n);
    if (initial.size() != n)
        throw InvalidInput("mean_field: initial amplitudes must have n entries");
    if (config.g_in != 0.0 || config.g_out != 0.0)
        throw InvalidInput("mean_field: closed-chain check requires g_in = g_out = 0");
    for (double gma : config.damping)
        if (gma != 0.0)
            throw InvalidInput("mean_field: closed-chain check requires zero damping");
    double wmax = 0.0;
    for (double w : config.local_freqs) wmax = std::max(wmax, w);
    if (!(dt > 0.0) || dt > 0.01 / wmax)
        throw InvalidInput("mean_field: dt must satisfy dt <= 0.01 / max(omega_i)");
    if (!(t_final > 0.0)) throw InvalidInput("mean_field: t_final must be positive");
    if (record_stride == 0) record_stride = 1;

    const cplx i(0.0, 1.0);
    auto deriv = [&](const std::vector<cplx>& a, std::vector<cplx>& da) {
        for (std::size_t k = 0; k < n; ++k) {
            cplx s = config.local_freqs[k] * a[k];
            if (k > 0) s += config.couplings[k - 1] * a[k - 1];
            if (k + 1 < n) s += config.couplings[k] * a[k + 1];
            da[k] = -i * s;
        }
    };

    const auto steps = static_cast<std::size_t>(std::ceil(t_final / dt - 1e-12));
    MeanFieldTrajectory traj;
    traj.times.reserve(steps / record_stride + 2);
    traj.amplitudes.reserve(steps / record_stride + 2);
    std::vector<cplx> a = initial, k1(n), k2(n), k3(n), k4(n), tmp(n);
    traj.times.push_back(0.0);
    traj.amplitudes.push_back(a);
    for (std::size_t s = 1; s <= steps; ++s) {
        deriv(a, k1);
        for (std::size_t j = 0; j < n; ++j) tmp[j] = a[j] + 0.5 * dt * k1[j];
        deriv(tmp, k2);
        for (std::size_t j = 0; j < n; ++j) tmp[j] = a[j] + 0.5 * dt * k2[j];
        deriv(tmp, k3);
        for (std::size_t j = 0; j < n; ++j) tmp[j] = a[j] + dt * k3[j];
        deriv(tmp, k4);
        for (std::size_t j = 0; j < n; ++j)
            a[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        if (s % record_stride == 0 || s == steps) {
            traj.times.push_back(dt * static_cast<double>(s));
            traj.amplitudes.push_back(a);
        }
    }
    return traj;
}

} // namespace plasmon
