#include "plasmon/dispersion.hpp"
#include "plasmon/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace plasmon {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Map a phase difference into (-pi, pi].
double principal(double delta) {
    double d = std::remainder(delta, 2.0 * kPi);
    if (d <= -kPi) d += 2.0 * kPi;
    return d;
}

std::size_t nearest_index(const std::vector<double>& omegas, double omega_0) {
    std::size_t best = 0;
    double dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        const double d = std::abs(omegas[i] - omega_0);
        if (d < dist) {
            dist = d;
            best = i;
        }
    }
    return best;
}

} // namespace

DispersionCurve effective_wavenumber(const std::vector<double>& omegas,
                                     const std::vector<double>& phases, int n,
                                     double d, int sign_choice, double omega_0) {
    if (n < 1) throw InvalidInput("effective_wavenumber: n must be >= 1");
    if (!(d > 0.0)) throw InvalidInput("effective_wavenumber: spacing must be positive");
    if (sign_choice != 1 && sign_choice != -1)
        throw InvalidInput("effective_wavenumber: sign_choice must be +1 or -1");
    if (omegas.size() < 2 || phases.size() != omegas.size())
        throw InvalidInput("effective_wavenumber: need matching grids with >= 2 points");
    for (std::size_t i = 1; i < omegas.size(); ++i)
        if (!(omegas[i] > omegas[i - 1]))
            throw InvalidInput("effective_wavenumber: frequency grid must be strictly increasing");
    if (omega_0 < omegas.front() || omega_0 > omegas.back())
        throw InvalidInput("effective_wavenumber: anchor frequency outside the grid");

    const double x = (n + 1) * d;

    std::vector<double> unwrapped(phases.size());
    unwrapped[0] = phases[0];
    for (std::size_t i = 1; i < phases.size(); ++i) {
        const double step = principal(phases[i] - phases[i - 1]);
        if (std::abs(step) >= kPi * (1.0 - 1e-9))
            throw InvalidInput(
                "effective_wavenumber: grid too coarse to unwrap the phase "
                "(adjacent step >= pi)");
        unwrapped[i] = unwrapped[i - 1] + step;
    }

    DispersionCurve curve;
    curve.omegas = omegas;
    curve.n = n;
    curve.spacing = d;
    curve.omega_0 = omega_0;
    curve.k_real.resize(phases.size());

    const double offset = (sign_choice == 1) ? -kPi : kPi;
    const std::size_t i0 = nearest_index(omegas, omega_0);
    const double k_raw0 = (unwrapped[i0] + offset) / x;
    // Center the branch so k(omega_0) sits at pi/(2d), the midpoint of the
    // (0, pi/d] window; the 2pi/x ladder makes this choice unique.
    const double m = std::round((kPi / (2.0 * d) - k_raw0) * x / (2.0 * kPi));
    curve.branch_index = static_cast<int>(m);
    for (std::size_t i = 0; i < phases.size(); ++i)
        curve.k_real[i] = (unwrapped[i] + offset + 2.0 * kPi * m) / x;
    return curve;
}

std::vector<Resonance> resonance_frequencies(int n, double omega_0, double g,
                                             double d) {
    if (n < 1) throw InvalidInput("resonance_frequencies: n must be >= 1");
    if (!(d > 0.0)) throw InvalidInput("resonance_frequencies: spacing must be positive");
    std::vector<Resonance> out(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) {
        const double k = j * kPi / ((n + 1) * d);
        out[static_cast<std::size_t>(j - 1)] = {infinite_chain_dispersion(omega_0, g, d, k), k};
    }
    return out;
}

double infinite_chain_dispersion(double omega_0, double g, double d, double k) {
    return omega_0 + 2.0 * g * std::cos(k * d);
}

std::vector<double> group_velocity(const DispersionCurve& curve) {
    const std::size_t n = curve.omegas.size();
    if (n < 2 || curve.k_real.size() != n)
        throw InvalidInput("group_velocity: curve needs >= 2 matched samples");
    std::vector<double> v(n);
    const double inf = std::numeric_limits<double>::infinity();
    auto slope_to_v = [inf](double dk, double dw) {
        return dk == 0.0 ? inf : dw / dk;
    };
    v[0] = slope_to_v(curve.k_real[1] - curve.k_real[0],
                      curve.omegas[1] - curve.omegas[0]);
    for (std::size_t i = 1; i + 1 < n; ++i)
        v[i] = slope_to_v(curve.k_real[i + 1] - curve.k_real[i - 1],
                          curve.omegas[i + 1] - curve.omegas[i - 1]);
    v[n - 1] = slope_to_v(curve.k_real[n - 1] - curve.k_real[n - 2],
                          curve.omegas[n - 1] - curve.omegas[n - 2]);
    return v;
}

std::vector<double> scaled_group_velocity(const DispersionCurve& curve) {
    std::vector<double> v =
        curve.v_group.size() == curve.omegas.size() ? curve.v_group : group_velocity(curve);
    const double v0 = v[nearest_index(curve.omegas, curve.omega_0)];
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (std::isinf(v0))
            out[i] = std::isinf(v[i]) ? 1.0 : 0.0;
        else
            out[i] = v[i] / v0;
    }
    return out;
}

double linear_dispersion_bandwidth(const DispersionCurve& curve,
                                   double tolerance) {
    if (tolerance < 0.0)
        throw InvalidInput("linear_dispersion_bandwidth: tolerance must be >= 0");
    const std::vector<double> vt = scaled_group_velocity(curve);
    double nearest_fail = std::numeric_limits<double>::infinity();
    double widest_ok = 0.0;
    for (std::size_t i = 0; i < vt.size(); ++i) {
        const double dist = std::abs(curve.omegas[i] - curve.omega_0);
        if (std::abs(vt[i] - 1.0) <= tolerance)
            widest_ok = std::max(widest_ok, dist);
        else
            nearest_fail = std::min(nearest_fail, dist);
    }
    if (!(widest_ok < nearest_fail)) {
        // shrink to the widest satisfying distance strictly inside the failure
        widest_ok = 0.0;
        for (std::size_t i = 0; i < vt.size(); ++i) {
            const double dist = std::abs(curve.omegas[i] - curve.omega_0);
            if (dist < nearest_fail && std::abs(vt[i] - 1.0) <= tolerance)
                widest_ok = std::max(widest_ok, dist);
        }
    }
    return widest_ok;
}

} // namespace plasmon
