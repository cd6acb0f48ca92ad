#pragma once

#include "cellident/params.hpp"

#include <vector>

namespace cellident {

/// Grid sizes of the dynamic model. Defaults come from a refinement study:
/// doubling either grid moves the 1 C pulse voltage by well under 0.2 mV.
struct Discretization {
    int nr = 10;     // radial shells per electrode particle
    int nx_neg = 10; // electrolyte cells in the negative electrode
    int nx_sep = 5;
    int nx_pos = 10;
    int nx_total() const { return nx_neg + nx_sep + nx_pos; }
};

/// Internal state of the dynamic model: radial solid concentration profiles
/// (cell-averaged, innermost shell first) and the electrolyte concentration
/// over negative | separator | positive cells.
struct CellState {
    std::vector<double> solid_conc_neg; // mol/m^3, size nr
    std::vector<double> solid_conc_pos; // mol/m^3, size nr
    std::vector<double> elyte_conc;     // mol/m^3, size nx_total
    int nx_neg = 0;
    int nx_sep = 0;
    int nx_pos = 0;

    /// Checks non-negativity and the solid saturation bounds.
    void validate(const CellParameters& params) const;
};

/// Uniform state: radial profiles at stoich * cs_max, electrolyte at the
/// nominal concentration. Stoichiometries must lie in (0,1).
CellState init_state(const CellParameters& params, double stoich_neg, double stoich_pos,
                     const Discretization& disc = {});

/// Volume-averaged stoichiometry of one electrode profile.
double mean_stoich(const std::vector<double>& solid_conc, double cs_max);

/// Total solid-phase lithium inventory per electrode, mol.
double solid_inventory_neg(const CellState& s, const CellParameters& p);
double solid_inventory_pos(const CellState& s, const CellParameters& p);

/// Total electrolyte lithium inventory, mol.
double elyte_inventory(const CellState& s, const CellParameters& p);

} // namespace cellident
