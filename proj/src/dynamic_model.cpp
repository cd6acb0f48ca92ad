#include "cellident/dynamic_model.hpp"

#include "cellident/errors.hpp"

#include <algorithm>
#include <cmath>

namespace cellident {

namespace {

// Thomas algorithm on the first n entries; overwrites rhs with the solution
// and diag as scratch.
void solve_tridiagonal(std::size_t n, std::vector<double>& lower, std::vector<double>& diag,
                       std::vector<double>& upper, std::vector<double>& rhs) {
    for (std::size_t k = 1; k < n; ++k) {
        double w = lower[k] / diag[k - 1];
        diag[k] -= w * upper[k - 1];
        rhs[k] -= w * rhs[k - 1];
    }
    rhs[n - 1] /= diag[n - 1];
    for (std::size_t k = n - 1; k-- > 0;) rhs[k] = (rhs[k] - upper[k] * rhs[k + 1]) / diag[k];
}

} // namespace

DynamicModel::DynamicModel(const CellParameters& params, const Discretization& disc)
    : params_(params), disc_(disc) {
    const auto& g = params_.geometry;
    const auto& m = params_.materials;
    const auto& c = params_.composition;
    const auto& t = params_.transport;

    a_neg_ = 3.0 * c.eps_s_neg / m.particle_radius_neg;
    a_pos_ = 3.0 * c.eps_s_pos / m.particle_radius_pos;
    dr_neg_ = m.particle_radius_neg / disc_.nr;
    dr_pos_ = m.particle_radius_pos / disc_.nr;
    ds_neg_ = m.base_solid_diffusivity_neg * t.ds_factor_neg;
    ds_pos_ = m.base_solid_diffusivity_pos * t.ds_factor_pos;

    const int n = disc_.nx_total();
    dx_.resize(n);
    eps_.resize(n);
    brug_.resize(n);
    ie_shape_.resize(n);
    source_.resize(n);
    int i = 0;
    const double dxn = g.thick_neg / disc_.nx_neg;
    const double dxs = g.thick_sep / disc_.nx_sep;
    const double dxp = g.thick_pos / disc_.nx_pos;
    for (int k = 0; k < disc_.nx_neg; ++k, ++i) {
        dx_[i] = dxn;
        eps_[i] = c.eps_e_neg;
        // ionic current grows linearly from the collector to the separator
        ie_shape_[i] = (k + 0.5) / disc_.nx_neg;
        source_[i] = 1.0 / (kFaraday * g.thick_neg); // times (1-t+)*i later
    }
    for (int k = 0; k < disc_.nx_sep; ++k, ++i) {
        dx_[i] = dxs;
        eps_[i] = c.eps_e_sep;
        ie_shape_[i] = 1.0;
        source_[i] = 0.0;
    }
    for (int k = 0; k < disc_.nx_pos; ++k, ++i) {
        dx_[i] = dxp;
        eps_[i] = c.eps_e_pos;
        ie_shape_[i] = 1.0 - (k + 0.5) / disc_.nx_pos;
        source_[i] = -1.0 / (kFaraday * g.thick_pos);
    }
    for (int k = 0; k < n; ++k) brug_[k] = eps_[k] * std::sqrt(eps_[k]);

    lower_.resize(std::max(n, disc_.nr));
    diag_.resize(std::max(n, disc_.nr));
    upper_.resize(std::max(n, disc_.nr));
    rhs_.resize(std::max(n, disc_.nr));
    dcoef_.resize(n);
}

void DynamicModel::solve_solid(std::vector<double>& c, double diffusivity, double dr,
                               double flux_out, double dt) const {
    const int n = static_cast<int>(c.size());
    // face area over shell volume, in units of 1/dr:
    //   A_k = 4 pi (k dr)^2,  V_k = (4 pi / 3) dr^3 ((k+1)^3 - k^3)
    lower_.assign(n, 0.0);
    upper_.assign(n, 0.0);
    for (int k = 0; k < n; ++k) {
        double k0 = k, k1 = k + 1.0;
        double vol = (k1 * k1 * k1 - k0 * k0 * k0) / 3.0; // over 4 pi dr^3
        double a_in = k0 * k0;                            // over 4 pi dr^2
        double a_out = k1 * k1;
        double f = dt * diffusivity / (dr * dr * vol);
        if (k > 0) lower_[k] = -f * a_in;
        if (k < n - 1) upper_[k] = -f * a_out;
        diag_[k] = 1.0 - lower_[k] - upper_[k];
        rhs_[k] = c[k];
        if (k == n - 1) rhs_[k] -= dt * flux_out * a_out / (vol * dr);
    }
    solve_tridiagonal(static_cast<std::size_t>(n), lower_, diag_, upper_, rhs_);
    for (int k = 0; k < n; ++k) c[k] = rhs_[k];
}

double DynamicModel::surface_conc(const std::vector<double>& c, double diffusivity, double dr,
                                  double flux_out) const {
    return c.back() - flux_out * dr / (2.0 * diffusivity);
}

void DynamicModel::solve_elyte(std::vector<double>& c, double current_density, double dt) const {
    const int n = static_cast<int>(c.size());
    const auto& m = params_.materials;
    const double de_factor = params_.transport.de_factor;
    const double src_scale = (1.0 - params_.transport.transference) * current_density;

    for (int k = 0; k < n; ++k)
        dcoef_[k] = m.base_electrolyte_diffusivity(c[k]) * de_factor * brug_[k];

    lower_.assign(n, 0.0);
    upper_.assign(n, 0.0);
    for (int k = 0; k < n; ++k) {
        double gl = 0.0, gr = 0.0;
        if (k > 0) gl = 1.0 / (0.5 * dx_[k - 1] / dcoef_[k - 1] + 0.5 * dx_[k] / dcoef_[k]);
        if (k < n - 1) gr = 1.0 / (0.5 * dx_[k] / dcoef_[k] + 0.5 * dx_[k + 1] / dcoef_[k + 1]);
        double cap = eps_[k] * dx_[k] / dt;
        lower_[k] = -gl / cap;
        upper_[k] = -gr / cap;
        diag_[k] = 1.0 + (gl + gr) / cap;
        rhs_[k] = c[k] + dt * src_scale * source_[k] / eps_[k];
    }
    solve_tridiagonal(static_cast<std::size_t>(n), lower_, diag_, upper_, rhs_);
    for (int k = 0; k < n; ++k) c[k] = rhs_[k];
}

double DynamicModel::voltage(const CellState& state, double current_A) const {
    const auto& g = params_.geometry;
    const auto& m = params_.materials;
    const auto& c = params_.composition;
    const auto& t = params_.transport;

    const double i_den = current_A / g.area_neg; // A/m^2 of projected area
    const double j_neg = i_den / (a_neg_ * g.thick_neg);
    const double j_pos = -i_den / (a_pos_ * g.thick_pos);

    const double css_neg = surface_conc(state.solid_conc_neg, ds_neg_, dr_neg_, j_neg / kFaraday);
    const double css_pos = surface_conc(state.solid_conc_pos, ds_pos_, dr_pos_, j_pos / kFaraday);
    if (!(css_neg > 0.0 && css_neg < m.cs_max_neg)) throw SaturationError("negative", css_neg);
    if (!(css_pos > 0.0 && css_pos < m.cs_max_pos)) throw SaturationError("positive", css_pos);

    // region-mean electrolyte concentrations for the kinetics
    double ce_neg = 0.0, ce_pos = 0.0;
    for (int k = 0; k < state.nx_neg; ++k) ce_neg += state.elyte_conc[k];
    ce_neg /= state.nx_neg;
    for (int k = 0; k < state.nx_pos; ++k)
        ce_pos += state.elyte_conc[state.nx_neg + state.nx_sep + k];
    ce_pos /= state.nx_pos;

    const double two_rt_f = 2.0 * kGasConstant * m.temperature / kFaraday;
    const double j0_neg = m.reaction_rate_neg * std::sqrt(ce_neg) * std::sqrt(css_neg) *
                          std::sqrt(m.cs_max_neg - css_neg);
    const double j0_pos = m.reaction_rate_pos * std::sqrt(ce_pos) * std::sqrt(css_pos) *
                          std::sqrt(m.cs_max_pos - css_pos);
    const double eta_neg = two_rt_f * std::asinh(j_neg / (2.0 * j0_neg));
    const double eta_pos = two_rt_f * std::asinh(j_pos / (2.0 * j0_pos));

    // electrolyte ohmic drop: integral of ie(x)/kappa_eff(x) over the stack
    double ohm_e = 0.0;
    for (std::size_t k = 0; k < dx_.size(); ++k) {
        double kappa_eff =
            m.base_ionic_conductivity(state.elyte_conc[k]) * t.kappa_factor * brug_[k];
        ohm_e += ie_shape_[k] * dx_[k] / kappa_eff;
    }
    ohm_e *= -i_den;

    const double conc = two_rt_f * (1.0 - t.transference) *
                        std::log(state.elyte_conc.back() / state.elyte_conc.front());

    double resist = t.contact_resistance + c.film_resistance_pos / (a_pos_ * g.thick_pos) +
                    c.film_resistance_neg / (a_neg_ * g.thick_neg);
    resist += g.thick_neg /
              (2.0 * t.solid_conductivity_neg * c.eps_s_neg * std::sqrt(c.eps_s_neg));
    resist += g.thick_pos /
              (2.0 * t.solid_conductivity_pos * c.eps_s_pos * std::sqrt(c.eps_s_pos));

    return ocp_eval(m.ocp_pos, css_pos / m.cs_max_pos) -
           ocp_eval(m.ocp_neg, css_neg / m.cs_max_neg) + eta_pos - eta_neg + ohm_e + conc -
           i_den * resist;
}

double DynamicModel::step(CellState& state, double current_A, double dt_s) {
    if (!(dt_s > 0.0 && dt_s <= 1.0)) throw DomainError("dynamic_step: dt must be in (0,1] s");

    const double i_den = current_A / params_.geometry.area_neg;
    const double flux_neg = i_den / (a_neg_ * params_.geometry.thick_neg * kFaraday);
    const double flux_pos = -i_den / (a_pos_ * params_.geometry.thick_pos * kFaraday);

    solve_solid(state.solid_conc_neg, ds_neg_, dr_neg_, flux_neg, dt_s);
    solve_solid(state.solid_conc_pos, ds_pos_, dr_pos_, flux_pos, dt_s);
    solve_elyte(state.elyte_conc, i_den, dt_s);
    for (double ce : state.elyte_conc)
        if (!(ce > 0.0)) throw InstabilityError(dt_s);

    return voltage(state, current_A);
}

DynamicStepResult dynamic_step(const CellState& state, double current_A, double dt_s,
                               const CellParameters& params) {
    Discretization disc;
    disc.nr = static_cast<int>(state.solid_conc_neg.size());
    disc.nx_neg = state.nx_neg;
    disc.nx_sep = state.nx_sep;
    disc.nx_pos = state.nx_pos;
    DynamicModel model(params, disc);
    DynamicStepResult out;
    out.state = state;
    out.voltage = model.step(out.state, current_A, dt_s);
    return out;
}

VoltageTrace simulate(const CurrentProfile& profile, const CellParameters& params,
                      const CellState& init, const Discretization& disc) {
    profile.validate();
    DynamicModel model(params, disc);
    CellState state = init;

    VoltageTrace trace;
    trace.time.reserve(profile.size());
    trace.current.reserve(profile.size());
    trace.voltage.reserve(profile.size());

    const int substeps = std::max(1, static_cast<int>(std::ceil(profile.dt / 1.0 - 1e-12)));
    const double dt = profile.dt / substeps;
    for (std::size_t k = 0; k < profile.size(); ++k) {
        const double t_end = profile.dt * static_cast<double>(k + 1);
        double v = 0.0;
        try {
            for (int s = 0; s < substeps; ++s) v = model.step(state, profile.samples[k], dt);
        } catch (const std::exception& e) {
            throw SimulationError(t_end, e.what());
        }
        trace.time.push_back(t_end);
        trace.current.push_back(profile.samples[k]);
        trace.voltage.push_back(v);
    }
    return trace;
}

} // namespace cellident
