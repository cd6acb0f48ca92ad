#include "cellident/static_model.hpp"

#include "cellident/errors.hpp"

namespace cellident {

double ocv_at(const CellParameters& params, double stoich_neg, double stoich_pos) {
    return ocp_eval(params.materials.ocp_pos, stoich_pos) -
           ocp_eval(params.materials.ocp_neg, stoich_neg);
}

StaticStepResult static_step(double stoich_neg, double stoich_pos, double current_A, double dt_s,
                             const CellParameters& params) {
    if (!(stoich_neg > 0.0 && stoich_neg < 1.0))
        throw DomainError("static_step: negative-electrode stoichiometry outside (0,1)");
    if (!(stoich_pos > 0.0 && stoich_pos < 1.0))
        throw DomainError("static_step: positive-electrode stoichiometry outside (0,1)");
    if (!(dt_s > 0.0)) throw DomainError("static_step: dt must be positive");

    const auto& g = params.geometry;
    const auto& m = params.materials;
    const auto& c = params.composition;
    const double moles = current_A * dt_s / kFaraday;
    const double sn =
        stoich_neg - moles / (m.cs_max_neg * c.eps_s_neg * g.area_neg * g.thick_neg);
    const double sp =
        stoich_pos + moles / (m.cs_max_pos * c.eps_s_pos * g.area_pos * g.thick_pos);
    if (!(sn > 0.0 && sn < 1.0)) throw DepletionError("negative", sn);
    if (!(sp > 0.0 && sp < 1.0)) throw DepletionError("positive", sp);

    return {ocv_at(params, sn, sp), sn, sp};
}

VoltageTrace simulate_static(const CurrentProfile& profile, const CellParameters& params,
                             double stoich_neg0, double stoich_pos0) {
    profile.validate();
    VoltageTrace trace;
    trace.time.reserve(profile.size());
    trace.current.reserve(profile.size());
    trace.voltage.reserve(profile.size());
    double sn = stoich_neg0, sp = stoich_pos0;
    for (std::size_t i = 0; i < profile.size(); ++i) {
        const double t = profile.dt * static_cast<double>(i + 1);
        try {
            auto r = static_step(sn, sp, profile.samples[i], profile.dt, params);
            sn = r.stoich_neg;
            sp = r.stoich_pos;
            trace.time.push_back(t);
            trace.current.push_back(profile.samples[i]);
            trace.voltage.push_back(r.voltage);
        } catch (const std::exception& e) {
            throw SimulationError(t, e.what());
        }
    }
    return trace;
}

} // namespace cellident
