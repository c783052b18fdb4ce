#ifndef PLASMON_MATERIALS_HPP
#define PLASMON_MATERIALS_HPP

#include "plasmon/numerics.hpp"

#include <string>
#include <vector>

namespace plasmon {

// Drude-type metal dielectric function
//   eps_m(w) = eps_inf - omega_p^2 / (w^2 + i w Gamma) + i * imag_offset
struct PermittivityModel {
    double eps_inf;
    double omega_p;      // rad/s
    double gamma_drude;  // rad/s
    double imag_offset = 0.5;
};

enum class Polarization { transverse, longitudinal };

// Point-dipole chain geometry. Valid in the near-field regime R <~ d/3.
struct MaterialGeometry {
    double rho_el;   // free electron density, m^-3
    double m_eff;    // optical effective electron mass, kg
    double eps_d;    // background permittivity
    double radius;   // particle radius, m
    double spacing;  // center-to-center distance, m
    Polarization polarization = Polarization::transverse;
};

struct PhysicalConstants {
    double e = 1.602176634e-19;      // C
    double eps_0 = 8.8541878128e-12; // F/m
    double c = 2.99792458e8;         // m/s
    double v_F = 1.38e6;             // Fermi velocity, m/s (material input)
    double lambda_B = 57e-9;         // bulk mean free path, m (material input)
};

void validate(const PermittivityModel& model);
// Checks the point-dipole (radius >= 10 nm, spacing >= 3 radius) and
// near-field (spacing < 2 pi c / omega_0) regime bounds.
void validate(const MaterialGeometry& geom, double omega_0,
              const PhysicalConstants& consts = {});

std::vector<cplx> permittivity_curve(const PermittivityModel& model,
                                     const std::vector<double>& omegas);
cplx permittivity(const PermittivityModel& model, double omega);

// Root of Re eps_m(w) + 2 eps_d = 0 by bisection on (0.1 omega_p, omega_p).
double frohlich_frequency(const PermittivityModel& model, double eps_d);

// omega_I = sqrt(e^2 rho_el R^3 / (3 m* eps_0 eps_d d^3))
double interaction_frequency(const MaterialGeometry& geom,
                             const PhysicalConstants& consts = {});

// g = omega_I^2 gamma / (2 omega_0), gamma = +1 transverse, -2 longitudinal.
double coupling_strength(double omega_I, double omega_0, Polarization pol);

// Weak-coupling validity bound |g| <= 0.1 omega_0 (non-fatal, callers warn).
bool weak_coupling_ok(double g, double omega_0);

// Matthiessen damping Gamma = v_F / lambda_B + v_F / R.
double damping_rate(double radius, const PhysicalConstants& consts = {});

struct MaterialPreset {
    std::string name;
    PermittivityModel permittivity;
    MaterialGeometry geometry;
    PhysicalConstants constants;
    double omega_0; // configured particle frequency, rad/s
};

// Named presets; "silver-palik-fit" (alias "silver") is shipped.
const MaterialPreset& material_preset(const std::string& name);
std::vector<std::string> preset_names();

} // namespace plasmon

#endif
