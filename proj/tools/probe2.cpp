// scratch sensitivity/assignment probe, not part of the deliverable
#include "cellident/dynamic_model.hpp"
#include "cellident/profiles.hpp"
#include "cellident/sensitivity.hpp"
#include "cellident/twin.hpp"

#include <chrono>
#include <cstdio>

using namespace cellident;

int main(int argc, char** argv) {
    std::size_t M = argc > 1 ? std::stoul(argv[1]) : 200;
    CellParameters fresh = default_cell();
    TwinConfig tc;
    TwinData twin = generate_twin(default_stages()[0], fresh, tc);
    PulseSet pulses = make_pulse_set(twin.pulse_profiles, twin.pulses);

    SensitivityConfig sc;
    sc.m = M;
    auto t0 = std::chrono::steady_clock::now();
    SensitivityMatrix sm = build_sensitivity_matrix(pulses, default_param_space(), twin.truth, sc);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("M=%zu rows=%zu excluded=%zu  %.1f s\n", M, sm.total_rows, sm.excluded_rows, secs);

    ParamSpace space = default_param_space();
    std::printf("%-12s", "param");
    for (int z = 1; z <= 12; ++z) std::printf("  z%-5d", z);
    std::printf("   mI      mE      mR\n");
    for (std::size_t k = 0; k < ParamSpace::kCount; ++k) {
        std::printf("%-12s", space.names[k].c_str());
        for (int z = 0; z < 12; ++z) std::printf(" %6.3f ", sm.s[k][z]);
        std::printf(" %6.3f  %6.3f  %6.3f\n", sm.mean_instantaneous[k], sm.mean_excitation[k],
                    sm.mean_rest[k]);
    }
    Assignment a = assign(sm, space);
    std::printf("Theta_I:");
    for (auto& n : a.set_instant) std::printf(" %s", n.c_str());
    std::printf("\nTheta_T:");
    for (auto& n : a.set_transient) std::printf(" %s", n.c_str());
    std::printf("\ndropped:");
    for (auto& n : a.dropped) std::printf(" %s", n.c_str());
    std::printf("\n");
    return 0;
}
