#pragma once

#include <vector>

namespace cellident {

/// Coefficients of the film-growth and porosity-loss empirical models.
struct AgingCoefficients {
    double k_f_pos = 0.0;      // nm of CEI per unit loss of eps_s_pos
    double k_f_neg = 0.0;      // nm of SEI per unit loss of eps_e_neg
    double k_e_neg = 0.0;      // quadratic coefficient of eps_e_neg vs eps_s_neg loss
    double b_e_neg = 0.0;      // linear coefficient
    double sigma_f0_pos = 0.0; // film conductivity, S/m
    double sigma_f0_neg = 0.0;
};

/// One observed degradation state expressed as signed changes from fresh
/// (stage minus fresh, so losses are negative) plus the film thicknesses.
struct AgingObservation {
    double d_eps_s_pos = 0.0;
    double d_eps_s_neg = 0.0;
    double d_eps_e_neg = 0.0;
    double film_thickness_pos_nm = 0.0;
    double film_thickness_neg_nm = 0.0;
};

struct AgingFitDiagnostics {
    std::vector<double> residual_film_pos_nm; // per observation
    std::vector<double> residual_film_neg_nm;
    std::vector<double> residual_eps_e_neg;
};

/// Least squares over >= 3 observations: proportional fits for the film
/// coefficients, quadratic-through-origin fit for the porosity relation.
/// Film conductivities pass through unchanged.
AgingCoefficients fit_aging(const std::vector<AgingObservation>& history, double sigma_f0_pos,
                            double sigma_f0_neg, AgingFitDiagnostics* diag = nullptr);

/// Outputs of the empirical chain for a given composition loss.
struct AgingPrediction {
    double d_eps_e_neg = 0.0;
    double film_thickness_pos_nm = 0.0;
    double film_thickness_neg_nm = 0.0;
    double film_resistance_pos = 0.0; // Ohm m^2
    double film_resistance_neg = 0.0;
};

/// Applies the fitted models to signed active-material losses (must be <= 0).
AgingPrediction apply_aging(const AgingCoefficients& coeffs, double d_eps_s_neg,
                            double d_eps_s_pos);

} // namespace cellident
