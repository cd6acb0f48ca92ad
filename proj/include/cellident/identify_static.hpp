#pragma once

#include "cellident/optimize.hpp"
#include "cellident/params.hpp"
#include "cellident/trace.hpp"

#include <vector>

namespace cellident {

/// Result of the quasi-static identification: initial occupancies (pseudo
/// parameters) and active-material volume fractions.
struct StaticIdentified {
    double stoich_neg_t0 = 0.0;
    double stoich_pos_t0 = 0.0;
    double eps_s_neg = 0.0;
    double eps_s_pos = 0.0;
    double fit_residual = 0.0;     // objective at the optimum, V^2
    bool poor_fit_warning = false; // residual above the per-sample threshold
    SolveOutcome solver;
};

struct StaticIdentifyConfig {
    SolverConfig solver;             // PSO by default
    double bound_lo_frac = 0.8;      // search window around the nominal values
    double bound_hi_frac = 1.2;
    double residual_warn = 1e-4;     // V^2 per sample
};

/// Fits (stoich_neg(t0), stoich_pos(t0), eps_s_neg, eps_s_pos) so the static
/// model reproduces `measured` under `profile`. `nominal` supplies every other
/// parameter and the search-window centers.
StaticIdentified identify_quasi_static(const VoltageTrace& measured,
                                       const CurrentProfile& profile,
                                       const CellParameters& nominal,
                                       const StaticIdentifyConfig& cfg = {});

/// Occupancy limits of the approved voltage window.
struct StoichLimits {
    double stoich_neg_min = 0.0;
    double stoich_neg_max = 0.0;
    double stoich_pos_min = 0.0;
    double stoich_pos_max = 0.0;
    double gamma = 0.0; // positive/negative active-material volume ratio
};

/// Solves the lithium-conservation + voltage-equality system at both window
/// edges by bisection along the conservation line (1e-9 occupancy tolerance).
StoichLimits solve_stoich_limits(const StaticIdentified& static_id, const CellParameters& params,
                                 double v_min, double v_max);

/// Macro characteristics derived from the identified composition.
struct MacroCharacteristics {
    double capacity_mAh = 0.0;
    std::vector<double> soc;  // 201 points, 0..1
    std::vector<double> ocv;  // V at each soc point
    double v_min = 0.0;
    double v_max = 0.0;

    double ocv_at_soc(double s) const; // linear interpolation on the table
};

MacroCharacteristics derive_macro(const StoichLimits& limits, const StaticIdentified& static_id,
                                  const CellParameters& params);

/// SOC of an occupancy pair measured on the negative-electrode window.
double soc_of_stoich(const StoichLimits& limits, double stoich_neg);

} // namespace cellident
