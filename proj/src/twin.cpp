#include "cellident/twin.hpp"

#include "cellident/dynamic_model.hpp"
#include "cellident/errors.hpp"
#include "cellident/static_model.hpp"

#include <cmath>
#include <random>

namespace cellident {

CellParameters DegradationStage::apply(const CellParameters& fresh) const {
    CellParameters p = fresh;
    p.composition.eps_s_neg = eps_s_neg;
    p.composition.eps_s_pos = eps_s_pos;
    p.composition.eps_e_neg = eps_e_neg;
    p.composition.film_resistance_neg = film_resistance_neg;
    p.composition.film_resistance_pos = film_resistance_pos;
    p.composition.film_thickness_neg = film_resistance_neg * p.materials.film_conductivity_neg;
    p.composition.film_thickness_pos = film_resistance_pos * p.materials.film_conductivity_pos;
    p.ref_stoich_neg = stoich_neg_t0;
    p.ref_stoich_pos = stoich_pos_t0;
    p.validate();
    return p;
}

const std::vector<DegradationStage>& default_stages() {
    static const std::vector<DegradationStage> stages = {
        {0, 0.486, 0.536, 0.665, 0.519, 0.2827, 3.34e-4, 1.46e-4},
        {500, 0.482, 0.535, 0.655, 0.516, 0.2762, 19.26e-4, 15.45e-4},
        {1000, 0.480, 0.534, 0.645, 0.515, 0.2720, 29.80e-4, 21.86e-4},
        {1500, 0.478, 0.533, 0.635, 0.514, 0.2686, 38.28e-4, 26.78e-4},
        {2000, 0.477, 0.532, 0.624, 0.513, 0.2656, 45.56e-4, 30.93e-4},
    };
    return stages;
}

const DegradationStage& stage_by_cycles(int cycles) {
    for (const auto& s : default_stages())
        if (s.cycles == cycles) return s;
    throw DomainError("no built-in stage for " + std::to_string(cycles) + " cycles");
}

std::vector<AgingObservation> stage_history(const std::vector<DegradationStage>& stages,
                                            const CellParameters& fresh) {
    if (stages.empty()) throw DomainError("stage_history: empty stage list");
    const DegradationStage& s0 = stages.front();
    std::vector<AgingObservation> out;
    for (const auto& s : stages) {
        AgingObservation o;
        o.d_eps_s_pos = s.eps_s_pos - s0.eps_s_pos;
        o.d_eps_s_neg = s.eps_s_neg - s0.eps_s_neg;
        o.d_eps_e_neg = s.eps_e_neg - s0.eps_e_neg;
        o.film_thickness_pos_nm =
            s.film_resistance_pos * fresh.materials.film_conductivity_pos * 1e9;
        o.film_thickness_neg_nm =
            s.film_resistance_neg * fresh.materials.film_conductivity_neg * 1e9;
        out.push_back(o);
    }
    return out;
}

VoltageTrace add_noise(const VoltageTrace& clean, double sigma_V, std::uint64_t seed) {
    if (sigma_V < 0) throw DomainError("add_noise: sigma must be >= 0");
    VoltageTrace noisy = clean;
    if (sigma_V == 0.0) return noisy;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, sigma_V);
    for (double& v : noisy.voltage) v += gauss(rng);
    return noisy;
}

TwinData generate_twin(const DegradationStage& stage, const CellParameters& fresh,
                       const TwinConfig& cfg) {
    TwinData data;
    data.truth = stage.apply(fresh);

    // Quasi-static test starts at the stage's true occupancy state; the
    // configured start OCV is advisory for planning real tests.
    QuasiStaticConfig qs = cfg.quasi_static;
    data.quasi_static_profile.dt = qs.dt_s;
    data.quasi_static_profile.samples.assign(
        qs.samples, qs.c_rate * qs.capacity_mAh / 1000.0 * (qs.discharge ? 1.0 : -1.0));
    data.quasi_static_profile.label = "quasi_static";
    VoltageTrace clean_static = simulate_static(data.quasi_static_profile, data.truth,
                                                stage.stoich_neg_t0, stage.stoich_pos_t0);
    data.quasi_static = add_noise(clean_static, cfg.noise_sigma_V, cfg.seed);

    data.pulse_profiles = gen_pulse_set(data.truth, cfg.pulses);
    CellState init = init_state(data.truth, stage.stoich_neg_t0, stage.stoich_pos_t0);
    std::uint64_t seed = cfg.seed;
    for (const auto& prof : data.pulse_profiles) {
        VoltageTrace clean = simulate(prof, data.truth, init);
        data.pulses.push_back(add_noise(clean, cfg.noise_sigma_V, ++seed));
    }
    return data;
}

double relative_error(double estimated, double truth) {
    if (truth == 0.0) return std::abs(estimated);
    return std::abs(estimated - truth) / std::abs(truth);
}

double voltage_rmse(const VoltageTrace& measured, const VoltageTrace& predicted) {
    if (measured.size() != predicted.size())
        throw DomainError("voltage_rmse: traces are not aligned");
    double acc = 0.0;
    for (std::size_t i = 0; i < measured.size(); ++i) {
        double r = predicted.voltage[i] - measured.voltage[i];
        acc += r * r;
    }
    return std::sqrt(acc / static_cast<double>(measured.size()));
}

} // namespace cellident
