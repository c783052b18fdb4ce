#include "plasmon/fidelity.hpp"
#include "plasmon/errors.hpp"
#include "plasmon/threading.hpp"

#include <algorithm>
#include <cmath>

namespace plasmon {

namespace {

constexpr double kPi = 3.14159265358979323846;

// All quadratures below use composite Simpson on a uniform grid; the packet
// grids span +/- 8 sigma, which truncates < 1e-14 of the Gaussian mass.
double grid_step(const std::vector<double>& grid, const char* who) {
    if (grid.size() < 3) throw InvalidInput(std::string(who) + ": grid needs >= 3 points");
    const double h = (grid.back() - grid.front()) / static_cast<double>(grid.size() - 1);
    if (!(h > 0.0)) throw InvalidInput(std::string(who) + ": grid must be increasing");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (std::abs(grid[i] - grid[i - 1] - h) > 1e-6 * h)
            throw InvalidInput(std::string(who) + ": grid must be uniform");
    return h;
}

std::vector<double> packet_density(const GaussianWavepacket& wp,
                                   const std::vector<double>& grid, double h,
                                   const char* who) {
    std::vector<double> xi2(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        xi2[i] = abs2(gaussian_amplitude(wp, grid[i]));
    const double norm = simpson(xi2, h);
    if (std::abs(norm - 1.0) > 1e-8)
        throw InvalidInput(std::string(who) +
                           ": wavepacket not normalized on this grid "
                           "(grid too short or too coarse)");
    return xi2;
}

void check_absT(const std::vector<double>& absT, std::size_t n, const char* who) {
    if (absT.size() != n)
        throw InvalidInput(std::string(who) + ": |T| samples must match the grid");
    for (double t : absT)
        if (!(t >= 0.0) || t > 1.0 + 1e-9)
            throw InvalidInput(std::string(who) + ": |T| must lie in [0, 1]");
}

struct Eq12Integrals {
    double j_mixed; // Int |xi|^2 (1 - |T|^2 + 2|T|)
    double j_abs;   // Int |xi|^2 |T|
};

Eq12Integrals fidelity_integrals(const GaussianWavepacket& wp,
                                 const std::vector<double>& grid,
                                 const std::vector<double>& absT,
                                 const char* who) {
    validate(wp);
    const double h = grid_step(grid, who);
    check_absT(absT, grid.size(), who);
    const std::vector<double> xi2 = packet_density(wp, grid, h, who);
    std::vector<double> fm(grid.size()), fa(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = std::min(absT[i], 1.0);
        fm[i] = xi2[i] * (1.0 - t * t + 2.0 * t);
        fa[i] = xi2[i] * t;
    }
    return {simpson(fm, h), simpson(fa, h)};
}

} // namespace

void validate(const GaussianWavepacket& wp) {
    if (!(wp.sigma > 0.0)) throw InvalidInput("wavepacket: sigma must be positive");
    if (!(wp.center > 0.0)) throw InvalidInput("wavepacket: center must be positive");
}

void validate(const QubitState& q) {
    if (std::abs(abs2(q.a) + abs2(q.b) - 1.0) > 1e-12)
        throw InvalidInput("qubit state: |a|^2 + |b|^2 must equal 1");
}

cplx gaussian_amplitude(const GaussianWavepacket& wp, double omega) {
    validate(wp);
    const double d = wp.center - omega;
    return std::pow(2.0 * kPi * wp.sigma * wp.sigma, -0.25) *
           std::exp(-d * d / (4.0 * wp.sigma * wp.sigma));
}

std::vector<double> packet_grid(const GaussianWavepacket& wp, std::size_t points,
                                double half_width_sigmas) {
    validate(wp);
    if (points < 3) throw InvalidInput("packet_grid: need >= 3 points");
    if (!(half_width_sigmas > 0.0))
        throw InvalidInput("packet_grid: half width must be positive");
    return linear_grid(wp.center - half_width_sigmas * wp.sigma,
                       wp.center + half_width_sigmas * wp.sigma, points);
}

std::vector<cplx> delayed_wavepacket(const GaussianWavepacket& wp, double delta_t,
                                     const std::vector<double>& t_grid) {
    validate(wp);
    if (t_grid.empty()) throw InvalidInput("delayed_wavepacket: empty time grid");
    for (std::size_t i = 1; i < t_grid.size(); ++i)
        if (!(t_grid[i] > t_grid[i - 1]))
            throw InvalidInput("delayed_wavepacket: time grid must be increasing");
    const double span = 8.0 / wp.sigma;
    const double slack = 1e-9 / wp.sigma;
    if (t_grid.front() > delta_t - span + slack ||
        t_grid.back() < delta_t + span - slack)
        throw InvalidInput(
            "delayed_wavepacket: time grid too short, must span delta_t +/- 8/sigma");

    const std::size_t nw = 4097;
    const std::vector<double> wgrid = packet_grid(wp, nw, 12.0);
    const double h = wgrid[1] - wgrid[0];
    const std::vector<double> w8 = simpson_weights(nw, h);
    std::vector<cplx> xi(nw);
    for (std::size_t k = 0; k < nw; ++k) xi[k] = gaussian_amplitude(wp, wgrid[k]);

    std::vector<cplx> out(t_grid.size());
    const double norm = 1.0 / std::sqrt(2.0 * kPi);
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        const double tau = t_grid[i] - delta_t;
        cplx acc(0.0);
        for (std::size_t k = 0; k < nw; ++k)
            acc += w8[k] * xi[k] * std::exp(cplx(0.0, -wgrid[k] * tau));
        out[i] = norm * acc;
    }
    return out;
}

OutputQubitDensity output_density_matrix(const QubitState& qubit,
                                         const GaussianWavepacket& wp,
                                         const std::vector<double>& omega_grid,
                                         const std::vector<cplx>& T) {
    validate(qubit);
    validate(wp);
    const double h = grid_step(omega_grid, "output_density_matrix");
    const double cover = 1e-6 * wp.sigma;
    if (omega_grid.front() > wp.center - 8.0 * wp.sigma + cover ||
        omega_grid.back() < wp.center + 8.0 * wp.sigma - cover)
        throw InvalidInput("output_density_matrix: grid must cover center +/- 8 sigma");
    if (T.size() != omega_grid.size())
        throw InvalidInput("output_density_matrix: T samples must match the grid");
    const std::vector<double> xi2 =
        packet_density(wp, omega_grid, h, "output_density_matrix");

    const std::size_t n = omega_grid.size();
    std::vector<cplx> u(n);
    std::vector<double> leak(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t2 = abs2(T[i]);
        if (t2 > 1.0 + 1e-9)
            throw InvalidInput("output_density_matrix: |T| must lie in [0, 1]");
        u[i] = qubit.b * gaussian_amplitude(wp, omega_grid[i]) * T[i];
        leak[i] = xi2[i] * std::max(0.0, 1.0 - t2);
    }
    OutputQubitDensity rho;
    rho.omega_grid = omega_grid;
    rho.p_vac = abs2(qubit.a) + abs2(qubit.b) * simpson(leak, h);
    rho.coherence.resize(n);
    rho.one_particle_block.assign(n, std::vector<cplx>(n));
    for (std::size_t i = 0; i < n; ++i) {
        rho.coherence[i] = qubit.a * std::conj(u[i]);
        for (std::size_t j = 0; j < n; ++j)
            rho.one_particle_block[i][j] = u[i] * std::conj(u[j]);
    }
    return rho;
}

double qubit_fidelity(const QubitState& qubit, const GaussianWavepacket& wp,
                      const std::vector<double>& omega_grid,
                      const std::vector<double>& absT) {
    validate(qubit);
    const Eq12Integrals J = fidelity_integrals(wp, omega_grid, absT, "qubit_fidelity");
    const double a2 = abs2(qubit.a);
    const double b2 = abs2(qubit.b);
    return a2 * a2 + a2 * b2 * J.j_mixed + b2 * b2 * J.j_abs * J.j_abs;
}

double average_fidelity(const GaussianWavepacket& wp,
                        const std::vector<double>& omega_grid,
                        const std::vector<double>& absT) {
    const Eq12Integrals J = fidelity_integrals(wp, omega_grid, absT, "average_fidelity");
    return 1.0 / 3.0 + J.j_mixed / 6.0 + J.j_abs * J.j_abs / 3.0;
}

double single_photon_fidelity(const GaussianWavepacket& wp,
                              const std::vector<double>& omega_grid,
                              const std::vector<double>& absT) {
    const Eq12Integrals J =
        fidelity_integrals(wp, omega_grid, absT, "single_photon_fidelity");
    return J.j_abs * J.j_abs;
}

double coherent_fidelity(const std::vector<double>& omega_grid,
                         const std::vector<cplx>& alpha,
                         const std::vector<double>& absT) {
    const double h = grid_step(omega_grid, "coherent_fidelity");
    if (alpha.size() != omega_grid.size())
        throw InvalidInput("coherent_fidelity: profile must match the grid");
    check_absT(absT, omega_grid.size(), "coherent_fidelity");
    std::vector<double> f(omega_grid.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double d = std::min(absT[i], 1.0) - 1.0;
        f[i] = abs2(alpha[i]) * d * d;
    }
    return std::exp(-simpson(f, h));
}

double mean_output_flux(const GaussianWavepacket& wp,
                        const std::vector<double>& omega_grid,
                        const std::vector<double>& absT) {
    validate(wp);
    const double h = grid_step(omega_grid, "mean_output_flux");
    check_absT(absT, omega_grid.size(), "mean_output_flux");
    const std::vector<double> xi2 = packet_density(wp, omega_grid, h, "mean_output_flux");
    std::vector<double> f(omega_grid.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double t = std::min(absT[i], 1.0);
        f[i] = xi2[i] * t * t;
    }
    return simpson(f, h);
}

double mean_output_flux(const std::vector<double>& omega_grid,
                        const std::vector<cplx>& profile,
                        const std::vector<double>& absT) {
    const double h = grid_step(omega_grid, "mean_output_flux");
    if (profile.size() != omega_grid.size())
        throw InvalidInput("mean_output_flux: profile must match the grid");
    check_absT(absT, omega_grid.size(), "mean_output_flux");
    std::vector<double> f(omega_grid.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double t = std::min(absT[i], 1.0);
        f[i] = abs2(profile[i]) * t * t;
    }
    return simpson(f, h);
}

FidelityMap average_fidelity_map(int n, double omega_0, double g_np, double gamma,
                                 const std::vector<double>& sigmas,
                                 const std::vector<double>& g_ins,
                                 std::size_t quad_points) {
    if (sigmas.empty() || g_ins.empty())
        throw InvalidInput("average_fidelity_map: empty axis");
    for (double s : sigmas)
        if (!(s > 0.0)) throw InvalidInput("average_fidelity_map: sigma must be positive");
    for (double g : g_ins)
        if (!(g > 0.0)) throw InvalidInput("average_fidelity_map: g_in must be positive");
    if (quad_points < 33)
        throw InvalidInput("average_fidelity_map: quadrature grid too small");

    FidelityMap map;
    map.sigmas = sigmas;
    map.g_ins = g_ins;
    map.value.assign(sigmas.size(), std::vector<double>(g_ins.size(), 0.0));

    const std::size_t cells = sigmas.size() * g_ins.size();
    parallel_for(cells, [&](std::size_t cell) {
        const std::size_t is = cell / g_ins.size();
        const std::size_t ig = cell % g_ins.size();
        const GaussianWavepacket wp{omega_0, sigmas[is]};
        const std::vector<double> grid = packet_grid(wp, quad_points);
        const ChainConfig config =
            uniform_chain(n, omega_0, g_np, g_ins[ig], g_ins[ig], gamma);
        std::vector<double> absT(grid.size());
        for (std::size_t k = 0; k < grid.size(); ++k)
            absT[k] = std::abs(solve_scattering(config, grid[k]).t_s);
        map.value[is][ig] = average_fidelity(wp, grid, absT);
    });
    return map;
}

std::vector<ContourSegment> threshold_contour(const FidelityMap& map,
                                              double level) {
    const std::size_t ns = map.sigmas.size();
    const std::size_t ng = map.g_ins.size();
    if (ns < 2 || ng < 2 || map.value.size() != ns)
        throw InvalidInput("threshold_contour: map needs at least a 2x2 grid");
    for (const auto& row : map.value)
        if (row.size() != ng) throw InvalidInput("threshold_contour: ragged map");

    struct Pt {
        double s, g;
    };
    auto cross = [level](double xa, double ya, double va, double xb, double yb,
                         double vb) -> Pt {
        const double t = (level - va) / (vb - va);
        return {xa + t * (xb - xa), ya + t * (yb - ya)};
    };

    std::vector<ContourSegment> segs;
    for (std::size_t i = 0; i + 1 < ns; ++i) {
        for (std::size_t j = 0; j + 1 < ng; ++j) {
            const double s0 = map.sigmas[i], s1 = map.sigmas[i + 1];
            const double g0 = map.g_ins[j], g1 = map.g_ins[j + 1];
            const double va = map.value[i][j];     // (s0, g0)
            const double vb = map.value[i + 1][j]; // (s1, g0)
            const double vc = map.value[i + 1][j + 1];
            const double vd = map.value[i][j + 1];
            const bool aa = va >= level, ab = vb >= level, ac = vc >= level,
                       ad = vd >= level;
            std::vector<Pt> pts;
            if (aa != ab) pts.push_back(cross(s0, g0, va, s1, g0, vb));
            if (ab != ac) pts.push_back(cross(s1, g0, vb, s1, g1, vc));
            if (ac != ad) pts.push_back(cross(s1, g1, vc, s0, g1, vd));
            if (ad != aa) pts.push_back(cross(s0, g1, vd, s0, g0, va));
            if (pts.size() == 2) {
                segs.push_back({pts[0].s, pts[0].g, pts[1].s, pts[1].g});
            } else if (pts.size() == 4) {
                // saddle cell: pair crossings by the cell-center value
                const bool center_above = 0.25 * (va + vb + vc + vd) >= level;
                if (center_above == aa) {
                    segs.push_back({pts[0].s, pts[0].g, pts[1].s, pts[1].g});
                    segs.push_back({pts[2].s, pts[2].g, pts[3].s, pts[3].g});
                } else {
                    segs.push_back({pts[3].s, pts[3].g, pts[0].s, pts[0].g});
                    segs.push_back({pts[1].s, pts[1].g, pts[2].s, pts[2].g});
                }
            }
        }
    }
    return segs;
}

} // namespace plasmon
