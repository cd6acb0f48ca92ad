#pragma once

#include "cellident/params.hpp"
#include "cellident/state.hpp"
#include "cellident/trace.hpp"

namespace cellident {

/// The dynamic cell model: one representative spherical particle per electrode
/// with Fickian diffusion (finite volume, implicit), a 1-D electrolyte over
/// negative | separator | positive with Bruggeman(1.5)-corrected transport and
/// reaction source, Butler-Volmer kinetics in asinh form, and algebraic ohmic,
/// film, contact, and electrolyte-concentration voltage terms.
///
/// Instances hold scratch buffers; use one instance per thread. Evaluation is
/// pure with respect to (state, current, params): no hidden state survives a
/// step apart from the returned CellState.
class DynamicModel {
public:
    explicit DynamicModel(const CellParameters& params, const Discretization& disc = {});

    /// Advances `state` by dt under the given applied current and returns the
    /// terminal voltage at the end of the step. dt must be in (0, 1] s.
    double step(CellState& state, double current_A, double dt_s);

    /// Terminal voltage of `state` under an applied current, no time advance.
    double voltage(const CellState& state, double current_A) const;

    const CellParameters& params() const { return params_; }
    const Discretization& discretization() const { return disc_; }

private:
    CellParameters params_;
    Discretization disc_;

    // electrode constants
    double a_neg_ = 0.0, a_pos_ = 0.0;   // 3 eps_s / R_r, 1/m
    double dr_neg_ = 0.0, dr_pos_ = 0.0; // shell thickness, m
    double ds_neg_ = 0.0, ds_pos_ = 0.0; // effective solid diffusivity, m^2/s

    // electrolyte grid
    std::vector<double> dx_;        // cell widths
    std::vector<double> eps_;       // porosity per cell
    std::vector<double> brug_;      // eps^1.5 per cell
    std::vector<double> ie_shape_;  // ionic-current shape factor per cell in [0,1]
    std::vector<double> source_;    // reaction source per unit applied current density

    // scratch
    mutable std::vector<double> lower_, diag_, upper_, rhs_, dcoef_;

    void solve_solid(std::vector<double>& c, double diffusivity, double dr, double flux_out,
                     double dt) const;
    void solve_elyte(std::vector<double>& c, double current_density, double dt) const;
    double surface_conc(const std::vector<double>& c, double diffusivity, double dr,
                        double flux_out) const;
};

/// Single step on a value state, per the operation contract.
struct DynamicStepResult {
    double voltage = 0.0;
    CellState state;
};
DynamicStepResult dynamic_step(const CellState& state, double current_A, double dt_s,
                               const CellParameters& params);

/// Runs the dynamic model over a profile; output is sampled exactly at the
/// profile timestamps (internal sub-stepping keeps each step at most 1 s).
/// Step failures are rethrown as SimulationError carrying the timestamp.
VoltageTrace simulate(const CurrentProfile& profile, const CellParameters& params,
                      const CellState& init, const Discretization& disc = {});

} // namespace cellident
