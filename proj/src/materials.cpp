#include "plasmon/materials.hpp"
#include "plasmon/errors.hpp"

#include <cmath>
#include <limits>

namespace plasmon {

void validate(const PermittivityModel& model) {
    if (!(model.omega_p > 0.0)) throw InvalidInput("permittivity: omega_p must be positive");
    if (model.gamma_drude < 0.0) throw InvalidInput("permittivity: gamma_drude must be >= 0");
    if (model.imag_offset < 0.0) throw InvalidInput("permittivity: imag_offset must be >= 0");
}

void validate(const MaterialGeometry& geom, double omega_0, const PhysicalConstants& consts) {
    if (!(geom.radius >= 10e-9))
        throw InvalidInput("geometry: radius below 10 nm leaves the point-dipole regime");
    if (!(geom.spacing >= 3.0 * geom.radius))
        throw InvalidInput("geometry: spacing must be at least 3 radii");
    if (!(omega_0 > 0.0)) throw InvalidInput("geometry: omega_0 must be positive");
    if (!(geom.spacing < 2.0 * M_PI * consts.c / omega_0))
        throw InvalidInput("geometry: spacing exceeds the near-field bound 2 pi c / omega_0");
    if (!(geom.rho_el > 0.0) || !(geom.m_eff > 0.0) || !(geom.eps_d > 0.0))
        throw InvalidInput("geometry: rho_el, m_eff and eps_d must be positive");
}

cplx permittivity(const PermittivityModel& model, double omega) {
    if (!(omega > 0.0)) throw InvalidInput("permittivity: omega must be positive");
    const cplx den(omega * omega, omega * model.gamma_drude);
    return cplx(model.eps_inf, model.imag_offset) - model.omega_p * model.omega_p / den;
}

std::vector<cplx> permittivity_curve(const PermittivityModel& model,
                                     const std::vector<double>& omegas) {
    std::vector<cplx> out;
    out.reserve(omegas.size());
    for (double w : omegas) out.push_back(permittivity(model, w));
    return out;
}

double frohlich_frequency(const PermittivityModel& model, double eps_d) {
    validate(model);
    if (!(eps_d > 0.0)) throw InvalidInput("frohlich_frequency: eps_d must be positive");
    const double tol = 1e-9 * eps_d;
    auto f = [&](double w) { return permittivity(model, w).real() + 2.0 * eps_d; };
    double a = 0.1 * model.omega_p, b = model.omega_p;
    double fa = f(a), fb = f(b);
    if (fa * fb > 0.0)
        throw NumericalFailure("frohlich_frequency: no sign change in the search bracket");
    for (int it = 0; it < 500; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (std::abs(fm) <= tol) return m;
        if (fa * fm <= 0.0) {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
        if (b - a <= 2.0 * std::numeric_limits<double>::epsilon() * b) {
            if (std::abs(f(0.5 * (a + b))) <= tol) return 0.5 * (a + b);
            break;
        }
    }
    throw NumericalFailure("frohlich_frequency: bisection did not reach the residual target");
}

double interaction_frequency(const MaterialGeometry& geom, const PhysicalConstants& consts) {
    const double r3 = geom.radius * geom.radius * geom.radius;
    const double d3 = geom.spacing * geom.spacing * geom.spacing;
    const double w2 = consts.e * consts.e * geom.rho_el * r3 /
                      (3.0 * geom.m_eff * consts.eps_0 * geom.eps_d * d3);
    return std::sqrt(w2);
}

double coupling_strength(double omega_I, double omega_0, Polarization pol) {
    if (!(omega_0 > 0.0)) throw InvalidInput("coupling_strength: omega_0 must be positive");
    const double gamma = (pol == Polarization::transverse) ? 1.0 : -2.0;
    return omega_I * omega_I * gamma / (2.0 * omega_0);
}

bool weak_coupling_ok(double g, double omega_0) {
    return std::abs(g) <= 0.1 * omega_0;
}

double damping_rate(double radius, const PhysicalConstants& consts) {
    if (!(radius > 0.0)) throw InvalidInput("damping_rate: radius must be positive");
    return consts.v_F / consts.lambda_B + consts.v_F / radius;
}

namespace {

MaterialPreset make_silver() {
    MaterialPreset p;
    p.name = "silver-palik-fit";
    p.permittivity = {5.0, 1.402e16, 6.25e13, 0.5};
    p.geometry = {5.85e28, 8.7e-31, 1.0, 25e-9, 75e-9, Polarization::longitudinal};
    p.constants = {};
    p.constants.v_F = 1.38e6;
    p.constants.lambda_B = 57e-9;
    p.omega_0 = 5e15;
    return p;
}

} // namespace

const MaterialPreset& material_preset(const std::string& name) {
    static const MaterialPreset silver = make_silver();
    if (name == "silver" || name == "silver-palik-fit") return silver;
    throw InvalidInput("unknown material preset: " + name);
}

std::vector<std::string> preset_names() {
    return {"silver-palik-fit"};
}

} // namespace plasmon
