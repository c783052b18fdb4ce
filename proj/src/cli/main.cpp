// plasmon-chain: CSV-emitting front end for the chain-transfer library.
//
// Exit codes: 0 success, 1 invalid input or configuration, 2 numerical
// failure. Frequency-like flags are read in units of omega_0 unless --si is
// given; CSV columns are fixed dimensionless ratios either way (docs/cli.md).

#include "plasmon/dispersion.hpp"
#include "plasmon/errors.hpp"
#include "plasmon/fidelity.hpp"
#include "plasmon/interference.hpp"
#include "plasmon/materials.hpp"
#include "plasmon/nanowire.hpp"
#include "plasmon/numerics.hpp"
#include "plasmon/scattering.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace plasmon;

struct GridSpec {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t points = 0;
};

GridSpec parse_grid(const std::string& text, const std::string& flag) {
    GridSpec g;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%zu%c", &g.lo, &g.hi, &g.points, &tail) != 3 ||
        g.points < 2 || !(g.hi > g.lo))
        throw InvalidInput(flag + ": expected min:max:points with max > min and points >= 2");
    return g;
}

std::string render(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%#.12g", v);
    return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot open output file: " + path);
    for (std::size_t i = 0; i < header.size(); ++i)
        out << (i ? "," : "") << header[i];
    out << '\n';
    for (const auto& row : rows) {
        if (row.size() != header.size())
            throw InvalidInput("write_csv: row width does not match header");
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << render(row[i]);
        out << '\n';
    }
    if (!out.good()) throw InvalidInput("failed while writing: " + path);
}

// Frequency-like flag values: omega_0 units by default, rad/s under --si.
struct Units {
    double omega0 = 5e15;
    bool si = false;
    double freq(double x) const { return si ? x : x * omega0; }
};

struct Summary {
    std::size_t rows = 0;
    std::string extra;
};

// ---- materials ------------------------------------------------------------

struct MaterialsArgs {
    std::string preset = "silver";
    double radius_nm = 0.0; // 0 keeps the preset radius
    std::string d_grid = "3:8:101";
    std::string out = "materials.csv";
};

Summary run_materials(const MaterialsArgs& a, const Units& u) {
    const MaterialPreset& preset = material_preset(a.preset);
    MaterialGeometry geom = preset.geometry;
    if (a.radius_nm > 0.0) geom.radius = a.radius_nm * 1e-9;
    const GridSpec spec = parse_grid(a.d_grid, "--d");
    const std::vector<double> dr = linear_grid(spec.lo, spec.hi, spec.points);

    std::vector<std::vector<double>> rows;
    rows.reserve(dr.size());
    for (double x : dr) {
        geom.spacing = x * geom.radius;
        validate(geom, u.omega0, preset.constants);
        const double wI = interaction_frequency(geom, preset.constants);
        rows.push_back({x, wI / u.omega0,
                        coupling_strength(wI, u.omega0, Polarization::transverse) / u.omega0,
                        coupling_strength(wI, u.omega0, Polarization::longitudinal) / u.omega0});
    }
    write_csv(a.out, {"d_over_R", "omega_I_over_omega0", "gT_over_omega0",
                      "gL_over_omega0"},
              rows);
    return {rows.size(), ""};
}

// ---- spectrum ---------------------------------------------------------------

struct SpectrumArgs {
    std::string preset = "silver";
    int n = 3;
    double gnp = -0.1;
    double gin = 0.01;
    double gout = 0.01;
    double gamma = 0.0;
    double spacing_nm = 75.0;
    std::string omega = "0.7:1.3:2001";
    std::string out = "spectrum.csv";
};

Summary run_spectrum(const SpectrumArgs& a, const Units& u) {
    const GridSpec spec = parse_grid(a.omega, "--omega");
    const std::vector<double> grid =
        linear_grid(u.freq(spec.lo), u.freq(spec.hi), spec.points);
    const ChainConfig config =
        uniform_chain(a.n, u.omega0, u.freq(a.gnp), u.freq(a.gin), u.freq(a.gout),
                      u.freq(a.gamma), a.spacing_nm * 1e-9);
    const auto pts = transmission_spectrum(config, grid);
    std::vector<std::vector<double>> rows;
    rows.reserve(pts.size());
    for (const auto& p : pts)
        rows.push_back({p.omega / u.omega0, p.T2, p.argT, p.R2, p.loss_total});
    write_csv(a.out, {"omega_over_omega0", "T2", "argT", "R2", "loss_total"}, rows);
    return {rows.size(), ""};
}

// ---- dispersion -------------------------------------------------------------

struct DispersionArgs {
    int n = 3;
    double gnp = -0.1;
    double gin = 0.01;
    double gout = 0.01;
    double gamma = 0.0;
    double spacing_nm = 75.0;
    int sign = 1;
    double tolerance = 0.05;
    std::string omega = "0.82:1.18:2001";
    std::string out = "dispersion.csv";
};

Summary run_dispersion(const DispersionArgs& a, const Units& u) {
    const GridSpec spec = parse_grid(a.omega, "--omega");
    const std::vector<double> grid =
        linear_grid(u.freq(spec.lo), u.freq(spec.hi), spec.points);
    const double d = a.spacing_nm * 1e-9;
    const ChainConfig config = uniform_chain(a.n, u.omega0, u.freq(a.gnp),
                                             u.freq(a.gin), u.freq(a.gout),
                                             u.freq(a.gamma), d);
    std::vector<double> phases(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        phases[i] = std::arg(solve_scattering(config, grid[i]).t_s);

    DispersionCurve curve =
        effective_wavenumber(grid, phases, a.n, d, a.sign, u.omega0);
    curve.v_group = group_velocity(curve);
    const std::vector<double> vt = scaled_group_velocity(curve);
    const double bw = linear_dispersion_bandwidth(curve, a.tolerance);

    std::vector<std::vector<double>> rows;
    rows.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        rows.push_back({grid[i] / u.omega0, curve.k_real[i] * d, curve.v_group[i],
                        vt[i]});
    write_csv(a.out, {"omega_over_omega0", "kd", "vg_m_per_s", "v_tilde"}, rows);
    char extra[96];
    std::snprintf(extra, sizeof extra, "; linear_bandwidth_over_omega0=%.6g",
                  bw / u.omega0);
    return {rows.size(), extra};
}

// ---- fidelity-map -----------------------------------------------------------

struct FidelityMapArgs {
    int n = 3;
    double gnp = -0.1;
    double gamma = 0.0158;
    std::string sigma = "0.002:0.1:25";
    std::string gin = "0.01:0.4:41";
    std::size_t quad_points = 2001;
    double threshold = 2.0 / 3.0;
    std::string out = "fidelity_map.csv";
    std::string contour_out;
};

Summary run_fidelity_map(const FidelityMapArgs& a, const Units& u) {
    const GridSpec sspec = parse_grid(a.sigma, "--sigma");
    const GridSpec gspec = parse_grid(a.gin, "--gin");
    const std::vector<double> sigmas =
        linear_grid(u.freq(sspec.lo), u.freq(sspec.hi), sspec.points);
    const std::vector<double> gins =
        log_grid(u.freq(gspec.lo), u.freq(gspec.hi), gspec.points);
    const double gnp = u.freq(a.gnp);
    const FidelityMap map =
        average_fidelity_map(a.n, u.omega0, gnp, u.freq(a.gamma), sigmas, gins,
                             a.quad_points);

    std::vector<std::vector<double>> rows;
    rows.reserve(sigmas.size() * gins.size());
    double best = -1.0, best_sigma = 0.0, best_gin = 0.0;
    for (std::size_t i = 0; i < sigmas.size(); ++i) {
        for (std::size_t j = 0; j < gins.size(); ++j) {
            const double f = map.value[i][j];
            rows.push_back({sigmas[i] / u.omega0, gins[j] / std::abs(gnp), f});
            if (f > best) {
                best = f;
                best_sigma = sigmas[i] / u.omega0;
                best_gin = gins[j] / std::abs(gnp);
            }
        }
    }
    write_csv(a.out, {"sigma_over_omega0", "gin_over_abs_gnp", "avg_fidelity"}, rows);

    char extra[160];
    if (!a.contour_out.empty()) {
        const auto segs = threshold_contour(map, a.threshold);
        std::vector<std::vector<double>> crow;
        crow.reserve(segs.size());
        for (const auto& s : segs)
            crow.push_back({s.sigma_a / u.omega0, s.g_in_a / std::abs(gnp),
                            s.sigma_b / u.omega0, s.g_in_b / std::abs(gnp)});
        write_csv(a.contour_out,
                  {"sigma_a_over_omega0", "gin_a_over_abs_gnp",
                   "sigma_b_over_omega0", "gin_b_over_abs_gnp"},
                  crow);
        std::snprintf(extra, sizeof extra,
                      "; max=%.4f at sigma/omega0=%.4g gin/|gnp|=%.4g"
                      "; contour_segments=%zu",
                      best, best_sigma, best_gin, segs.size());
    } else {
        std::snprintf(extra, sizeof extra,
                      "; max=%.4f at sigma/omega0=%.4g gin/|gnp|=%.4g", best,
                      best_sigma, best_gin);
    }
    return {rows.size(), extra};
}

// ---- interference -----------------------------------------------------------

struct InterferenceArgs {
    int n = 3;
    double gnp = -0.1;
    double gamma = 0.0158;
    double domega = 0.0;
    std::string gin = "0.001:0.1:200";
    bool minimize = false;
    std::string out = "interference.csv";
};

Summary run_interference(const InterferenceArgs& a, const Units& u) {
    const GridSpec spec = parse_grid(a.gin, "--gin");
    const std::vector<double> gins =
        linear_grid(u.freq(spec.lo), u.freq(spec.hi), spec.points);
    const double gnp = u.freq(a.gnp);
    const double omega = u.omega0 + u.freq(a.domega);

    std::vector<std::vector<double>> rows;
    rows.reserve(gins.size());
    for (double g : gins) {
        const ChainConfig config =
            uniform_chain(a.n, u.omega0, gnp, g, g, u.freq(a.gamma));
        const ScatteringCoefficients c = solve_scattering(config, omega);
        const TwoPlasmonProbabilities p = joint_probabilities_flat(c.r_s, c.t_s, 1.0);
        rows.push_back({g / std::abs(gnp), p.p20, p.p02, p.p11, p.p10, p.p01,
                        p.p00, p.P0, p.P1, p.P2});
    }
    write_csv(a.out,
              {"gin_over_abs_gnp", "p20", "p02", "p11", "p10", "p01", "p00",
               "P0", "P1", "P2"},
              rows);

    std::string extra;
    if (a.minimize) {
        const MinimizeResult res = minimize_one_plasmon_loss(
            a.n, u.omega0, gnp, u.freq(a.gamma), omega, 1e-3 * std::abs(gnp),
            std::abs(gnp));
        char buf[128];
        std::snprintf(buf, sizeof buf, "; g_opt/g_np=%.4f P1=%.3f%s",
                      res.g_opt / std::abs(gnp), res.probs.P1,
                      res.endpoint_warning ? " (endpoint minimum)" : "");
        extra = buf;
    }
    return {rows.size(), extra};
}

// ---- loss-sweep -------------------------------------------------------------

struct LossSweepArgs {
    int n = 3;
    double gnp = -0.1;
    double domega = 0.0;
    std::string gamma = "0:0.05:26";
    std::string out = "loss_sweep.csv";
};

Summary run_loss_sweep(const LossSweepArgs& a, const Units& u) {
    const GridSpec spec = parse_grid(a.gamma, "--gamma");
    const std::vector<double> gammas =
        linear_grid(u.freq(spec.lo), u.freq(spec.hi), spec.points);
    const double gnp = u.freq(a.gnp);
    const double omega = u.omega0 + u.freq(a.domega);
    const auto sweep = loss_sweep(a.n, u.omega0, gnp, gammas, omega,
                                  1e-3 * std::abs(gnp), std::abs(gnp));
    std::vector<std::vector<double>> rows;
    rows.reserve(sweep.size());
    for (const auto& s : sweep)
        rows.push_back({s.gamma / u.omega0, s.g_opt / std::abs(gnp), s.P0, s.P1,
                        s.P2, s.R2, s.T2, s.endpoint_warning ? 1.0 : 0.0});
    write_csv(a.out,
              {"gamma_over_omega0", "g_opt_over_abs_gnp", "P0", "P1_min", "P2",
               "R2", "T2", "endpoint_warning"},
              rows);
    return {rows.size(), ""};
}

// ---- wire -------------------------------------------------------------------

struct WireArgs {
    std::string preset = "silver";
    double radius_nm = 25.0;
    double eps_d = 1.0;
    std::string omega = "0.3:0.95:131";
    std::string out = "wire.csv";
};

Summary run_wire(const WireArgs& a, const Units& u) {
    const MaterialPreset& preset = material_preset(a.preset);
    const WireGeometry geom{a.radius_nm * 1e-9, a.eps_d};
    const GridSpec spec = parse_grid(a.omega, "--omega");
    const std::vector<double> grid =
        linear_grid(u.freq(spec.lo), u.freq(spec.hi), spec.points);
    const std::vector<cplx> neff = wire_dispersion_sweep(
        geom, preset.permittivity, grid, cplx(0.0, 0.0), preset.constants);

    std::vector<std::vector<double>> rows;
    rows.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double w = grid[i];
        const double k0 = w / preset.constants.c;
        const double kp = photon_line(w, a.eps_d, preset.constants) / k0;
        const cplx kf =
            flat_interface_spp(preset.permittivity, a.eps_d, w, preset.constants) /
            k0;
        rows.push_back({w / u.omega0, kp, kf.real(), kf.imag(), neff[i].real(),
                        neff[i].imag()});
    }
    write_csv(a.out,
              {"omega_over_omega0", "k_photon_over_k0", "k_flat_re_over_k0",
               "k_flat_im_over_k0", "n_wire_re", "n_wire_im"},
              rows);
    return {rows.size(), ""};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"plasmon-chain: nanoparticle-chain energy/state transfer toolkit"};
    app.require_subcommand(0, 1);
    app.set_config("--config", "", "key = value file merged under flags (flags win)");

    Units units;
    app.add_option("--omega0", units.omega0, "unit frequency omega_0 in rad/s")
        ->capture_default_str();
    app.add_flag("--si", units.si,
                 "frequency-like flags are rad/s instead of omega_0 units");

    MaterialsArgs ma;
    auto* materials = app.add_subcommand("materials", "coupling strength vs spacing");
    materials->add_option("--preset", ma.preset, "material preset name")
        ->capture_default_str();
    materials->add_option("--radius-nm", ma.radius_nm,
                          "particle radius in nm (0 keeps the preset value)");
    materials->add_option("--d", ma.d_grid, "spacing grid d/R as min:max:points")
        ->capture_default_str();
    materials->add_option("--out", ma.out, "output CSV path")->capture_default_str();

    SpectrumArgs sa;
    auto* spectrum = app.add_subcommand("spectrum", "transmission spectrum of a chain");
    spectrum->add_option("--preset", sa.preset,
                         "material preset (accepted for convenience; parameters "
                         "below drive the run)");
    spectrum->add_option("--n", sa.n, "number of nanoparticles")->capture_default_str();
    spectrum->add_option("--gnp", sa.gnp, "inter-particle coupling")->capture_default_str();
    spectrum->add_option("--gin", sa.gin, "source coupling")->capture_default_str();
    spectrum->add_option("--gout", sa.gout, "drain coupling")->capture_default_str();
    spectrum->add_option("--gamma", sa.gamma, "per-particle damping")->capture_default_str();
    spectrum->add_option("--spacing-nm", sa.spacing_nm, "lattice spacing in nm")
        ->capture_default_str();
    spectrum->add_option("--omega", sa.omega, "frequency grid min:max:points")
        ->capture_default_str();
    spectrum->add_option("--out", sa.out, "output CSV path")->capture_default_str();

    DispersionArgs da;
    auto* dispersion = app.add_subcommand("dispersion",
                                          "effective wavenumber and group velocity");
    dispersion->add_option("--n", da.n, "number of nanoparticles")->capture_default_str();
    dispersion->add_option("--gnp", da.gnp, "inter-particle coupling")->capture_default_str();
    dispersion->add_option("--gin", da.gin, "source coupling")->capture_default_str();
    dispersion->add_option("--gout", da.gout, "drain coupling")->capture_default_str();
    dispersion->add_option("--gamma", da.gamma, "per-particle damping")->capture_default_str();
    dispersion->add_option("--spacing-nm", da.spacing_nm, "lattice spacing in nm")
        ->capture_default_str();
    dispersion->add_option("--sign", da.sign, "branch sign choice, +1 or -1")
        ->capture_default_str();
    dispersion->add_option("--tolerance", da.tolerance,
                           "linear-dispersion tolerance on scaled v_G")
        ->capture_default_str();
    dispersion->add_option("--omega", da.omega, "frequency grid min:max:points")
        ->capture_default_str();
    dispersion->add_option("--out", da.out, "output CSV path")->capture_default_str();

    FidelityMapArgs fa;
    auto* fmap = app.add_subcommand("fidelity-map",
                                    "average transfer fidelity over (sigma, g_in)");
    fmap->add_option("--n", fa.n, "number of nanoparticles")->capture_default_str();
    fmap->add_option("--gnp", fa.gnp, "inter-particle coupling")->capture_default_str();
    fmap->add_option("--gamma", fa.gamma, "per-particle damping")->capture_default_str();
    fmap->add_option("--sigma", fa.sigma, "packet width grid min:max:points (linear)")
        ->capture_default_str();
    fmap->add_option("--gin", fa.gin, "port coupling grid min:max:points (log)")
        ->capture_default_str();
    fmap->add_option("--quad-points", fa.quad_points, "quadrature points per cell")
        ->capture_default_str();
    fmap->add_option("--threshold", fa.threshold, "contour level")->capture_default_str();
    fmap->add_option("--contour-out", fa.contour_out,
                     "optional CSV path for threshold contour segments");
    fmap->add_option("--out", fa.out, "output CSV path")->capture_default_str();

    InterferenceArgs ia;
    auto* interference = app.add_subcommand("interference",
                                            "two-plasmon joint probabilities vs g_in");
    interference->add_option("--n", ia.n, "number of nanoparticles")->capture_default_str();
    interference->add_option("--gnp", ia.gnp, "inter-particle coupling")
        ->capture_default_str();
    interference->add_option("--gamma", ia.gamma, "per-particle damping")
        ->capture_default_str();
    interference->add_option("--domega", ia.domega, "drive detuning from omega_0")
        ->capture_default_str();
    interference->add_option("--gin", ia.gin, "port coupling grid min:max:points")
        ->capture_default_str();
    interference->add_flag("--minimize", ia.minimize,
                           "also minimize P1 over g_in and report the optimum");
    interference->add_option("--out", ia.out, "output CSV path")->capture_default_str();

    LossSweepArgs la;
    auto* sweep = app.add_subcommand("loss-sweep",
                                     "P1 minimization across a damping grid");
    sweep->add_option("--n", la.n, "number of nanoparticles")->capture_default_str();
    sweep->add_option("--gnp", la.gnp, "inter-particle coupling")->capture_default_str();
    sweep->add_option("--domega", la.domega, "drive detuning from omega_0")
        ->capture_default_str();
    sweep->add_option("--gamma", la.gamma, "damping grid min:max:points")
        ->capture_default_str();
    sweep->add_option("--out", la.out, "output CSV path")->capture_default_str();

    WireArgs wa;
    auto* wire = app.add_subcommand("wire", "nanowire and flat-interface dispersion");
    wire->add_option("--preset", wa.preset, "material preset name")->capture_default_str();
    wire->add_option("--radius-nm", wa.radius_nm, "wire tip radius in nm")
        ->capture_default_str();
    wire->add_option("--epsd", wa.eps_d, "surrounding dielectric constant")
        ->capture_default_str();
    wire->add_option("--omega", wa.omega, "frequency grid min:max:points")
        ->capture_default_str();
    wire->add_option("--out", wa.out, "output CSV path")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    std::string name;
    std::string out;
    Summary summary;
    const auto start = std::chrono::steady_clock::now();
    try {
        if (materials->parsed()) {
            name = "materials";
            out = ma.out;
            summary = run_materials(ma, units);
        } else if (spectrum->parsed()) {
            name = "spectrum";
            out = sa.out;
            summary = run_spectrum(sa, units);
        } else if (dispersion->parsed()) {
            name = "dispersion";
            out = da.out;
            summary = run_dispersion(da, units);
        } else if (fmap->parsed()) {
            name = "fidelity-map";
            out = fa.out;
            summary = run_fidelity_map(fa, units);
        } else if (interference->parsed()) {
            name = "interference";
            out = ia.out;
            summary = run_interference(ia, units);
        } else if (sweep->parsed()) {
            name = "loss-sweep";
            out = la.out;
            summary = run_loss_sweep(la, units);
        } else if (wire->parsed()) {
            name = "wire";
            out = wa.out;
            summary = run_wire(wa, units);
        } else {
            std::cerr << app.help() << std::flush;
            return 1;
        }
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    }
    const std::chrono::duration<double> elapsed =
        std::chrono::steady_clock::now() - start;
    std::printf("%s: wrote %zu rows to %s in %.3f s%s\n", name.c_str(),
                summary.rows, out.c_str(), elapsed.count(), summary.extra.c_str());
    return 0;
}
