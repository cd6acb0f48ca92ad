// scratch: inspect the f_I(zeta1) landscape in (R_c, kappa), not a deliverable
#include "cellident/dynamic_model.hpp"
#include "cellident/objectives.hpp"
#include "cellident/profiles.hpp"
#include "cellident/sensitivity.hpp"
#include "cellident/twin.hpp"

#include <cstdio>
#include <random>

using namespace cellident;

int main() {
    CellParameters fresh = default_cell();
    TwinData twin = generate_twin(default_stages()[0], fresh, {});
    PulseSet pulses = make_pulse_set(twin.pulse_profiles, twin.pulses);
    const SegmentedTrace& seg = pulses.segmented[0];
    std::printf("cuts: N1=%zu N2=%zu N3=%zu N=%zu\n", seg.cut_n1, seg.cut_n2, seg.cut_n3,
                seg.cut_n);

    CellState init = init_state(twin.truth, twin.truth.ref_stoich_neg, twin.truth.ref_stoich_pos);

    // other-set params at a fixed arbitrary draw, as a prelim step would see
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(0, 1);
    ParamSpace space = default_param_space();
    auto theta0 = nominal_transport_vector(twin.truth);
    double draw[8];
    for (int k = 0; k < 8; ++k) draw[k] = theta0[k];
    for (int k : {4, 5, 7}) // Ds_pos, De, t_plus random
        draw[k] = space.lower[k] + unit(rng) * (space.upper[k] - space.lower[k]);
    draw[1] = 53.3; draw[2] = 1.6; draw[3] = 0.8; // dropped at empirical
    std::printf("draw: Ds+=%.3f De=%.3f t+=%.3f\n", draw[4], draw[5], draw[7]);

    auto f_I = [&](double rc, double kap) {
        CellParameters p = twin.truth;
        double th[8];
        for (int k = 0; k < 8; ++k) th[k] = draw[k];
        th[0] = rc;
        th[6] = kap;
        apply_transport_vector(p, th);
        VoltageTrace pred = simulate(pulses.profiles[0], p, init);
        return objective_value(seg.trace, pred, seg, ObjectiveMode::Instantaneous);
    };

    std::printf("f(truth)            = %.6e\n", f_I(0.0064, 1.0));
    std::printf("f(found 3.1e-4,.46) = %.6e\n", f_I(3.1e-4, 0.4646));
    std::printf("f(ridge 0.header)\n");
    for (double kap : {0.6, 0.8, 1.0, 1.2, 1.4}) {
        // ridge-compensated R_c: R_c = R_c* + c0*(1/1 - 1/kap) with c0 ~ 1.29e-3
        double rc = 0.0064 + 1.29e-3 * (1.0 - 1.0 / kap);
        std::printf("  kap=%.2f rc=%.5f: f=%.6e\n", kap, rc, f_I(rc, kap));
    }
    // 1-D cut in R_c at kappa=1
    for (double rc : {0.0, 0.002, 0.004, 0.0064, 0.009, 0.012})
        std::printf("  rc=%.4f kap=1: f=%.6e\n", rc, f_I(rc, 1.0));
    return 0;
}
