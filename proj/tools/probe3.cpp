// scratch SSO recovery probe, not part of the deliverable
#include "cellident/dynamic_model.hpp"
#include "cellident/profiles.hpp"
#include "cellident/sensitivity.hpp"
#include "cellident/sso.hpp"
#include "cellident/twin.hpp"

#include <chrono>
#include <cstdio>

using namespace cellident;

int main(int argc, char** argv) {
    std::size_t M = argc > 1 ? std::stoul(argv[1]) : 200;
    std::uint64_t seed = argc > 2 ? std::stoull(argv[2]) : 1;
    bool nuisance = argc > 3 ? std::stoi(argv[3]) != 0 : true;
    double noise = argc > 4 ? std::stod(argv[4]) : 0.0;

    CellParameters fresh = default_cell();
    TwinConfig tc;
    tc.noise_sigma_V = noise;
    tc.seed = seed + 1000;
    TwinData twin = generate_twin(default_stages()[0], fresh, tc);
    PulseSet pulses = make_pulse_set(twin.pulse_profiles, twin.pulses);

    SensitivityConfig sc;
    sc.m = M;
    SensitivityMatrix sm = build_sensitivity_matrix(pulses, default_param_space(), twin.truth, sc);
    ParamSpace space = default_param_space();
    Assignment a = assign(sm, space);
    SsoSchedule sched = build_sso_schedule(sm, a, space);
    for (const auto& st : sched.steps) {
        std::printf("step: %s zeta=%d mode=%d params=", st.kind == StepKind::Joint ? "joint " : "prelim",
                    st.zeta, static_cast<int>(st.mode));
        for (auto& p : st.params) std::printf("%s ", p.c_str());
        std::printf("\n");
    }

    SsoConfig cfg;
    cfg.seed = seed;
    cfg.nuisance_costim = nuisance;
    auto t0 = std::chrono::steady_clock::now();
    IdentificationResult res = sso_identify(pulses, sched, a, space, twin.truth, cfg);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    auto truth = nominal_transport_vector(twin.truth);
    std::printf("\n%-12s %10s %10s %10s %8s\n", "param", "prelim", "final", "truth", "err%");
    for (std::size_t k = 0; k < ParamSpace::kCount; ++k) {
        const auto& n = space.names[k];
        bool dropped = false;
        for (auto& d : res.dropped) dropped |= (d == n);
        double pre = res.preliminary.count(n) ? res.preliminary.at(n) : 0.0 / 0.0;
        double fin = res.identified.at(n);
        std::printf("%-12s %10.5f %10.5f %10.5f %7.2f%%%s\n", n.c_str(), pre, fin, truth[k],
                    100.0 * relative_error(fin, truth[k]), dropped ? "  (dropped)" : "");
    }
    std::printf("evals=%zu sim_steps=%zu wall=%.1f s\n", res.total_evaluations,
                res.total_simulated_steps, secs);

    // post-identification RMSE per pulse
    CellParameters idp = twin.truth;
    double theta[8];
    for (std::size_t k = 0; k < 8; ++k) theta[k] = res.identified.at(space.names[k]);
    apply_transport_vector(idp, theta);
    CellState init = init_state(idp, idp.ref_stoich_neg, idp.ref_stoich_pos);
    for (int i = 0; i < 4; ++i) {
        VoltageTrace pred = simulate(pulses.profiles[i], idp, init);
        std::printf("RMSE pulse %d: %.3f mV\n", i, 1e3 * voltage_rmse(pulses.segmented[i].trace, pred));
    }
    return 0;
}
