#pragma once

#include "cellident/ocp.hpp"

#include <string>

namespace cellident {

/// Projected areas and thicknesses of negative electrode | separator | positive electrode.
struct CellGeometry {
    double area_neg = 0.0;  // m^2
    double area_pos = 0.0;  // m^2
    double area_sep = 0.0;  // m^2
    double thick_neg = 0.0; // m
    double thick_pos = 0.0; // m
    double thick_sep = 0.0; // m
};

/// kappa(c_e) = c * (q0 + q1*c)^2, S/m with c in mol/m^3. Non-negative by construction.
struct IonicConductivityFit {
    double q0 = 0.0;
    double q1 = 0.0;
    double operator()(double c) const {
        double q = q0 + q1 * c;
        return c * q * q;
    }
};

/// D_e(c) = d0 * (d1 - d2*c), m^2/s, clamped below at d0*floor_frac.
struct ElectrolyteDiffusivityFit {
    double d0 = 0.0;
    double d1 = 1.0;
    double d2 = 0.0;
    double floor_frac = 0.03;
    double operator()(double c) const {
        double m = d1 - d2 * c;
        if (m < floor_frac) m = floor_frac;
        return d0 * m;
    }
};

/// Known material data: fixed by chemistry, not re-identified over life.
struct MaterialConstants {
    double molar_mass_neg = 0.0; // kg/mol
    double molar_mass_pos = 0.0;
    double density_neg = 0.0; // kg/m^3
    double density_pos = 0.0;
    double particle_radius_neg = 0.0; // m
    double particle_radius_pos = 0.0;
    double reaction_rate_neg = 0.0; // A m^2.5 / mol^1.5
    double reaction_rate_pos = 0.0;
    double cs_max_neg = 0.0; // mol/m^3, equals density/molar_mass
    double cs_max_pos = 0.0;
    double film_conductivity_neg = 0.0; // S/m
    double film_conductivity_pos = 0.0;
    double base_solid_diffusivity_neg = 0.0; // m^2/s
    double base_solid_diffusivity_pos = 0.0;
    ElectrolyteDiffusivityFit base_electrolyte_diffusivity;
    IonicConductivityFit base_ionic_conductivity;
    double transference_nominal = 0.0;
    double temperature = 298.15;      // K
    double elyte_conc_nominal = 0.0;  // mol/m^3
    OcpCurve ocp_neg;
    OcpCurve ocp_pos;
};

/// Composition quantities that drift with degradation.
struct CompositionParams {
    double eps_s_neg = 0.0;
    double eps_s_pos = 0.0;
    double eps_e_neg = 0.0;
    double eps_e_sep = 0.0;
    double eps_e_pos = 0.0;
    double film_thickness_neg = 0.0;  // m
    double film_thickness_pos = 0.0;
    double film_resistance_neg = 0.0; // Ohm m^2, delta_f / sigma_f
    double film_resistance_pos = 0.0;
};

/// Transport quantities identified from the dynamic test. Factors scale the
/// base property functions so a scalar is identified instead of a curve.
struct TransportParams {
    double contact_resistance = 0.0; // Ohm m^2 (area-specific)
    double solid_conductivity_neg = 0.0; // S/m
    double solid_conductivity_pos = 0.0;
    double ds_factor_neg = 1.0;
    double ds_factor_pos = 1.0;
    double de_factor = 1.0;
    double kappa_factor = 1.0;
    double transference = 0.0;
};

struct CellParameters {
    CellGeometry geometry;
    MaterialConstants materials;
    CompositionParams composition;
    TransportParams transport;
    /// Occupancy pair fixing the cell's cyclable-lithium balance line.
    double ref_stoich_neg = 0.0;
    double ref_stoich_pos = 0.0;
    /// Approved operating window from the manufacturer.
    double v_min = 0.0;
    double v_max = 0.0;

    /// Throws DomainError on any violated invariant (positivity, volume
    /// fractions, cs_max = density/molar_mass, R_f = delta_f/sigma_f).
    void validate() const;
};

/// The default 2200 mAh NCM811/graphite cell in its fresh state.
CellParameters default_cell();

/// JSON round trip; field names match the struct members.
std::string params_to_json(const CellParameters& p);
CellParameters params_from_json(const std::string& text);
void save_params(const CellParameters& p, const std::string& path);
CellParameters load_params(const std::string& path);

constexpr double kFaraday = 96485.33212;  // C/mol
constexpr double kGasConstant = 8.314462618; // J/(mol K)

} // namespace cellident
