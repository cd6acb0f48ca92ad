#include "cellident/state.hpp"

#include "cellident/errors.hpp"

#include <cmath>

namespace cellident {

void CellState::validate(const CellParameters& params) const {
    if (solid_conc_neg.empty() || solid_conc_pos.empty() || elyte_conc.empty())
        throw DomainError("cell state: empty profile");
    if (static_cast<int>(elyte_conc.size()) != nx_neg + nx_sep + nx_pos)
        throw DomainError("cell state: electrolyte grid mismatch");
    for (double c : solid_conc_neg)
        if (!(c >= 0.0) || c > params.materials.cs_max_neg)
            throw DomainError("cell state: negative-electrode concentration out of range");
    for (double c : solid_conc_pos)
        if (!(c >= 0.0) || c > params.materials.cs_max_pos)
            throw DomainError("cell state: positive-electrode concentration out of range");
    for (double c : elyte_conc)
        if (!(c >= 0.0)) throw DomainError("cell state: negative electrolyte concentration");
}

CellState init_state(const CellParameters& params, double stoich_neg, double stoich_pos,
                     const Discretization& disc) {
    if (!(stoich_neg > 0.0 && stoich_neg < 1.0))
        throw DomainError("init_state: negative-electrode stoichiometry outside (0,1)");
    if (!(stoich_pos > 0.0 && stoich_pos < 1.0))
        throw DomainError("init_state: positive-electrode stoichiometry outside (0,1)");
    CellState s;
    s.solid_conc_neg.assign(disc.nr, stoich_neg * params.materials.cs_max_neg);
    s.solid_conc_pos.assign(disc.nr, stoich_pos * params.materials.cs_max_pos);
    s.elyte_conc.assign(disc.nx_total(), params.materials.elyte_conc_nominal);
    s.nx_neg = disc.nx_neg;
    s.nx_sep = disc.nx_sep;
    s.nx_pos = disc.nx_pos;
    return s;
}

namespace {

// Shell weight: shell k of n equal-thickness shells holds ((k+1)^3-k^3)/n^3
// of the particle volume.
double weighted_mean(const std::vector<double>& c) {
    const double n = static_cast<double>(c.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
        double k0 = static_cast<double>(k), k1 = k0 + 1.0;
        acc += c[k] * (k1 * k1 * k1 - k0 * k0 * k0);
    }
    return acc / (n * n * n);
}

} // namespace

double mean_stoich(const std::vector<double>& solid_conc, double cs_max) {
    return weighted_mean(solid_conc) / cs_max;
}

double solid_inventory_neg(const CellState& s, const CellParameters& p) {
    return weighted_mean(s.solid_conc_neg) * p.composition.eps_s_neg * p.geometry.area_neg *
           p.geometry.thick_neg;
}

double solid_inventory_pos(const CellState& s, const CellParameters& p) {
    return weighted_mean(s.solid_conc_pos) * p.composition.eps_s_pos * p.geometry.area_pos *
           p.geometry.thick_pos;
}

double elyte_inventory(const CellState& s, const CellParameters& p) {
    double total = 0.0;
    int i = 0;
    const double dxn = p.geometry.thick_neg / s.nx_neg;
    const double dxs = p.geometry.thick_sep / s.nx_sep;
    const double dxp = p.geometry.thick_pos / s.nx_pos;
    for (int k = 0; k < s.nx_neg; ++k, ++i)
        total += p.composition.eps_e_neg * s.elyte_conc[i] * dxn * p.geometry.area_neg;
    for (int k = 0; k < s.nx_sep; ++k, ++i)
        total += p.composition.eps_e_sep * s.elyte_conc[i] * dxs * p.geometry.area_sep;
    for (int k = 0; k < s.nx_pos; ++k, ++i)
        total += p.composition.eps_e_pos * s.elyte_conc[i] * dxp * p.geometry.area_pos;
    return total;
}

} // namespace cellident
