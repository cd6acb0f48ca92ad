#pragma once

#include "cellident/params.hpp"
#include "cellident/trace.hpp"

namespace cellident {

struct StaticStepResult {
    double voltage = 0.0;
    double stoich_neg = 0.0;
    double stoich_pos = 0.0;
};

/// One quasi-static update. Discharge (I > 0) moves lithium from the negative
/// to the positive electrode; the voltage is the OCP difference at the updated
/// occupancies. Throws DepletionError naming the electrode whose updated
/// stoichiometry leaves (0,1).
StaticStepResult static_step(double stoich_neg, double stoich_pos, double current_A, double dt_s,
                             const CellParameters& params);

/// Runs the static model over a profile starting from the given occupancies.
VoltageTrace simulate_static(const CurrentProfile& profile, const CellParameters& params,
                             double stoich_neg0, double stoich_pos0);

/// Open-circuit voltage at an occupancy pair.
double ocv_at(const CellParameters& params, double stoich_neg, double stoich_pos);

} // namespace cellident
