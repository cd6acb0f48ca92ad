// scratch: along-ridge depth of f_I(zeta4) with transport truth elsewhere
#include "cellident/dynamic_model.hpp"
#include "cellident/objectives.hpp"
#include "cellident/profiles.hpp"
#include "cellident/sensitivity.hpp"
#include "cellident/twin.hpp"

#include <cstdio>

using namespace cellident;

int main() {
    CellParameters fresh = default_cell();
    TwinData twin = generate_twin(default_stages()[0], fresh, {});
    PulseSet pulses = make_pulse_set(twin.pulse_profiles, twin.pulses);
    const SegmentedTrace& seg = pulses.segmented[3]; // 120 s pulse
    CellState init = init_state(twin.truth, twin.truth.ref_stoich_neg, twin.truth.ref_stoich_pos);

    auto theta0 = nominal_transport_vector(twin.truth);
    auto f_I = [&](double rc, double kap) {
        CellParameters p = twin.truth;
        auto th = theta0;
        th[0] = rc;
        th[6] = kap;
        // dropped params at their empirical midpoints, as the SSO would hold them
        th[1] = 53.3; th[2] = 1.6; th[3] = 0.8;
        apply_transport_vector(p, th.data());
        VoltageTrace pred = simulate(pulses.profiles[3], p, init);
        return objective_value(seg.trace, pred, seg, ObjectiveMode::Instantaneous);
    };

    // 1-D scan along kappa, R_c compensated by a 12-point inner minimization
    for (double kap : {0.4, 0.5, 0.657, 0.8, 0.9, 0.95, 1.0, 1.05, 1.1, 1.3}) {
        double best = 1e30, best_rc = 0;
        for (int i = 0; i <= 400; ++i) {
            double rc = 0.002 + i * (0.010 - 0.002) / 400;
            double f = f_I(rc, kap);
            if (f < best) { best = f; best_rc = rc; }
        }
        std::printf("kap=%.3f  best_rc=%.5f  f=%.6e\n", kap, best_rc, best);
    }
    return 0;
}
