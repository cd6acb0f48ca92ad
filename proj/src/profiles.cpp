#include "cellident/profiles.hpp"

#include "cellident/errors.hpp"
#include "cellident/static_model.hpp"

#include <algorithm>
#include <cmath>

namespace cellident {

std::pair<double, double> find_stoich_for_ocv(const CellParameters& params, double target_ocv) {
    const auto& g = params.geometry;
    const auto& m = params.materials;
    const auto& c = params.composition;
    // Moving x lithium out of the negative electrode adds ratio*x occupancy
    // to the positive one.
    const double ratio = (m.cs_max_neg * c.eps_s_neg * g.area_neg * g.thick_neg) /
                         (m.cs_max_pos * c.eps_s_pos * g.area_pos * g.thick_pos);
    auto pos_of = [&](double x) { return params.ref_stoich_pos + (params.ref_stoich_neg - x) * ratio; };

    // domain of x = negative-electrode stoichiometry keeping both in (0,1)
    const double eps = 1e-9;
    double lo = eps, hi = 1.0 - eps;
    // positive occupancy decreases as x rises
    if (pos_of(lo) > 1.0 - eps) lo = params.ref_stoich_neg - (1.0 - eps - params.ref_stoich_pos) / ratio;
    if (pos_of(hi) < eps) hi = params.ref_stoich_neg - (eps - params.ref_stoich_pos) / ratio;

    auto ocv = [&](double x) { return ocv_at(params, x, pos_of(x)); };
    double v_lo = ocv(lo), v_hi = ocv(hi); // OCV increases with x
    if (target_ocv < v_lo || target_ocv > v_hi)
        throw DomainError("find_stoich_for_ocv: target " + std::to_string(target_ocv) +
                          " V outside achievable window [" + std::to_string(v_lo) + ", " +
                          std::to_string(v_hi) + "]");

    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double v = ocv(mid);
        if (std::abs(v - target_ocv) < 1e-7 && (hi - lo) < 1e-12) break;
        if (v < target_ocv)
            lo = mid;
        else
            hi = mid;
    }
    double x = 0.5 * (lo + hi);
    return {x, pos_of(x)};
}

QuasiStaticPlan gen_quasi_static(const CellParameters& params, const QuasiStaticConfig& cfg) {
    if (cfg.samples == 0 || cfg.dt_s <= 0) throw DomainError("quasi-static config invalid");
    auto [sn, sp] = find_stoich_for_ocv(params, cfg.start_ocv);

    QuasiStaticPlan plan;
    plan.stoich_neg0 = sn;
    plan.stoich_pos0 = sp;
    const double amps = cfg.c_rate * cfg.capacity_mAh / 1000.0 * (cfg.discharge ? 1.0 : -1.0);
    plan.profile.dt = cfg.dt_s;
    plan.profile.samples.assign(cfg.samples, amps);
    plan.profile.label = "quasi_static";
    return plan;
}

std::vector<CurrentProfile> gen_pulse_set(const CellParameters& params, const PulseConfig& cfg) {
    (void)params; // start state is resolved by the caller through start_ocv
    if (cfg.sample_hz <= 0) throw DomainError("pulse config: sample rate must be positive");
    const double dt = 1.0 / cfg.sample_hz;
    const double amps = cfg.amplitude_A * (cfg.discharge ? 1.0 : -1.0);
    std::vector<CurrentProfile> out;
    for (double exc : cfg.excitation_s) {
        CurrentProfile p;
        p.dt = dt;
        const auto n_pre = static_cast<std::size_t>(std::lround(cfg.pre_rest_s / dt));
        const auto n_exc = static_cast<std::size_t>(std::lround(exc / dt));
        const auto n_rest = static_cast<std::size_t>(std::lround(cfg.rest_s / dt));
        p.samples.assign(n_pre, 0.0);
        p.samples.insert(p.samples.end(), n_exc, amps);
        p.samples.insert(p.samples.end(), n_rest, 0.0);
        p.label = "pulse_" + std::to_string(static_cast<int>(exc)) + "s";
        out.push_back(std::move(p));
    }
    return out;
}

SegmentedTrace segment_trace(const CurrentProfile& profile, const VoltageTrace& trace,
                             double inst_window_s) {
    profile.validate();
    trace.validate();
    if (trace.size() != profile.size())
        throw DomainError("segment_trace: trace and profile lengths differ");
    if (!(inst_window_s > 0)) throw DomainError("segment_trace: window must be positive");

    // Locate the zero->step and step->zero edges.
    std::vector<std::size_t> edges; // 0-based index of the first sample after an edge
    for (std::size_t i = 0; i + 1 < profile.size(); ++i) {
        bool z0 = profile.samples[i] == 0.0;
        bool z1 = profile.samples[i + 1] == 0.0;
        if (z0 != z1) edges.push_back(i + 1);
    }
    if (edges.size() != 2 || profile.samples[edges[0]] == 0.0)
        throw DomainError("segment_trace: profile must contain exactly one excitation step "
                          "and one release step");

    const auto w = static_cast<std::size_t>(std::lround(inst_window_s / profile.dt));
    const std::size_t onset = edges[0];   // 1-based index of the last zero sample
    const std::size_t release = edges[1]; // 1-based index of the last excitation sample
    SegmentedTrace s;
    s.trace = trace;
    s.cut_n1 = onset + w;
    s.cut_n2 = release;
    s.cut_n3 = release + w;
    s.cut_n = trace.size();
    if (!(0 < s.cut_n1 && s.cut_n1 < s.cut_n2 && s.cut_n2 < s.cut_n3 && s.cut_n3 < s.cut_n))
        throw DomainError("segment_trace: cut points out of order; widen the profile");
    return s;
}

SegmentRef segment_ref(int zeta) {
    if (zeta < 1 || zeta > 12) throw DomainError("segment index must be in [1,12]");
    SegmentRef r;
    r.pulse = (zeta - 1) % 4;
    if (zeta <= 4)
        r.regime = Regime::Instantaneous;
    else if (zeta <= 8)
        r.regime = Regime::Excitation;
    else
        r.regime = Regime::Rest;
    return r;
}

PulseSet make_pulse_set(std::vector<CurrentProfile> profiles, std::vector<VoltageTrace> traces,
                        double inst_window_s) {
    if (profiles.size() != 4 || traces.size() != 4)
        throw DomainError("make_pulse_set: expected four profiles and four traces");
    PulseSet set;
    for (std::size_t i = 0; i < 4; ++i)
        set.segmented.push_back(segment_trace(profiles[i], traces[i], inst_window_s));
    set.profiles = std::move(profiles);
    return set;
}

} // namespace cellident
