#include "cellident/identify_static.hpp"

#include "cellident/errors.hpp"
#include "cellident/objectives.hpp"
#include "cellident/static_model.hpp"

#include <cmath>

namespace cellident {

StaticIdentified identify_quasi_static(const VoltageTrace& measured,
                                       const CurrentProfile& profile,
                                       const CellParameters& nominal,
                                       const StaticIdentifyConfig& cfg) {
    measured.validate();
    profile.validate();
    if (measured.size() != profile.size())
        throw DomainError("identify_quasi_static: trace and profile lengths differ");
    const double capacity_scale = nominal.materials.cs_max_neg * nominal.composition.eps_s_neg *
                                  nominal.geometry.area_neg * nominal.geometry.thick_neg;
    const double c_rate = std::abs(profile.samples.front()) * 3600.0 / (capacity_scale * kFaraday);
    if (c_rate > 0.02 + 1e-12)
        throw DomainError("identify_quasi_static: profile exceeds 0.02 C");

    const std::vector<double> center{nominal.ref_stoich_neg, nominal.ref_stoich_pos,
                                     nominal.composition.eps_s_neg,
                                     nominal.composition.eps_s_pos};
    BoundedProblem prob;
    for (double c : center) {
        prob.lower.push_back(std::max(1e-6, c * cfg.bound_lo_frac));
        prob.upper.push_back(std::min(1.0 - 1e-6, c * cfg.bound_hi_frac));
    }
    prob.objective = [&](const std::vector<double>& x) {
        CellParameters p = nominal;
        p.composition.eps_s_neg = x[2];
        p.composition.eps_s_pos = x[3];
        try {
            VoltageTrace predicted = simulate_static(profile, p, x[0], x[1]);
            return objective_value(measured, predicted);
        } catch (const SimulationError&) {
            return 1e6; // depleted candidates are simply poor fits
        }
    };

    StaticIdentified out;
    out.solver = minimize(prob, cfg.solver);
    out.stoich_neg_t0 = out.solver.best_point[0];
    out.stoich_pos_t0 = out.solver.best_point[1];
    out.eps_s_neg = out.solver.best_point[2];
    out.eps_s_pos = out.solver.best_point[3];
    out.fit_residual = out.solver.best_value;
    out.poor_fit_warning =
        out.fit_residual > cfg.residual_warn * static_cast<double>(measured.size());
    return out;
}

namespace {

struct ConservationLine {
    double ratio_neg_to_pos = 0.0; // occupancy transferred per unit removed from the negative
    double x_lo = 0.0, x_hi = 0.0; // admissible negative-occupancy range
    double anchor_neg = 0.0, anchor_pos = 0.0;
    double pos_of(double x) const { return anchor_pos + (anchor_neg - x) * ratio_neg_to_pos; }
};

ConservationLine build_line(const StaticIdentified& id, const CellParameters& p) {
    ConservationLine line;
    const auto& g = p.geometry;
    const auto& m = p.materials;
    line.ratio_neg_to_pos = (m.cs_max_neg * id.eps_s_neg * g.area_neg * g.thick_neg) /
                            (m.cs_max_pos * id.eps_s_pos * g.area_pos * g.thick_pos);
    line.anchor_neg = id.stoich_neg_t0;
    line.anchor_pos = id.stoich_pos_t0;
    const double eps = 1e-9;
    line.x_lo = eps;
    line.x_hi = 1.0 - eps;
    if (line.pos_of(line.x_lo) > 1.0 - eps)
        line.x_lo = line.anchor_neg - (1.0 - eps - line.anchor_pos) / line.ratio_neg_to_pos;
    if (line.pos_of(line.x_hi) < eps)
        line.x_hi = line.anchor_neg - (eps - line.anchor_pos) / line.ratio_neg_to_pos;
    return line;
}

// OCV along the line rises with the negative occupancy; bisect for the target.
double bisect_line(const ConservationLine& line, const CellParameters& p, double target_v) {
    auto ocv = [&](double x) { return ocv_at(p, x, line.pos_of(x)); };
    double lo = line.x_lo, hi = line.x_hi;
    if (target_v < ocv(lo) || target_v > ocv(hi))
        throw DomainError("solve_stoich_limits: voltage " + std::to_string(target_v) +
                          " V has no root on the conservation line");
    while (hi - lo > 1e-9) {
        double mid = 0.5 * (lo + hi);
        if (ocv(mid) < target_v)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

StoichLimits solve_stoich_limits(const StaticIdentified& static_id, const CellParameters& params,
                                 double v_min, double v_max) {
    if (!(v_min < v_max)) throw DomainError("solve_stoich_limits: v_min must be below v_max");
    ConservationLine line = build_line(static_id, params);

    StoichLimits out;
    const auto& g = params.geometry;
    out.gamma = (static_id.eps_s_pos * g.area_pos * g.thick_pos) /
                (static_id.eps_s_neg * g.area_neg * g.thick_neg);
    // discharge limit: empty negative electrode, full positive
    out.stoich_neg_min = bisect_line(line, params, v_min);
    out.stoich_pos_max = line.pos_of(out.stoich_neg_min);
    // charge limit
    out.stoich_neg_max = bisect_line(line, params, v_max);
    out.stoich_pos_min = line.pos_of(out.stoich_neg_max);
    if (!(out.stoich_neg_min < out.stoich_neg_max) ||
        !(out.stoich_pos_min < out.stoich_pos_max))
        throw DomainError("solve_stoich_limits: window produced inverted limits");
    return out;
}

double MacroCharacteristics::ocv_at_soc(double s) const {
    if (s <= soc.front()) return ocv.front();
    if (s >= soc.back()) return ocv.back();
    auto it = std::upper_bound(soc.begin(), soc.end(), s);
    std::size_t i = static_cast<std::size_t>(it - soc.begin()) - 1;
    double t = (s - soc[i]) / (soc[i + 1] - soc[i]);
    return ocv[i] + t * (ocv[i + 1] - ocv[i]);
}

MacroCharacteristics derive_macro(const StoichLimits& limits, const StaticIdentified& static_id,
                                  const CellParameters& params) {
    MacroCharacteristics mc;
    const auto& g = params.geometry;
    const auto& m = params.materials;
    // charge in coulombs, reported in mAh
    const double coulombs = (limits.stoich_neg_max - limits.stoich_neg_min) * m.cs_max_neg *
                            static_id.eps_s_neg * g.area_neg * g.thick_neg * kFaraday;
    mc.capacity_mAh = coulombs / 3.6;

    const int n = 201;
    mc.soc.resize(n);
    mc.ocv.resize(n);
    for (int i = 0; i < n; ++i) {
        double s = static_cast<double>(i) / (n - 1);
        double xn = limits.stoich_neg_min + s * (limits.stoich_neg_max - limits.stoich_neg_min);
        double xp = limits.stoich_pos_max - s * (limits.stoich_pos_max - limits.stoich_pos_min);
        mc.soc[i] = s;
        mc.ocv[i] = ocv_at(params, xn, xp);
    }
    mc.v_min = mc.ocv.front();
    mc.v_max = mc.ocv.back();
    return mc;
}

double soc_of_stoich(const StoichLimits& limits, double stoich_neg) {
    return (stoich_neg - limits.stoich_neg_min) /
           (limits.stoich_neg_max - limits.stoich_neg_min);
}

} // namespace cellident
