// scratch physics probe, not part of the deliverable
#include "cellident/dynamic_model.hpp"
#include "cellident/identify_static.hpp"
#include "cellident/profiles.hpp"
#include "cellident/static_model.hpp"
#include "cellident/twin.hpp"

#include <chrono>
#include <cstdio>

using namespace cellident;

int main() {
    CellParameters p = default_cell();
    std::printf("U-(0.486)=%.4f  U+(0.536)=%.4f  OCV=%.4f\n",
                ocp_eval(p.materials.ocp_neg, 0.486), ocp_eval(p.materials.ocp_pos, 0.536),
                ocv_at(p, 0.486, 0.536));

    // window + capacity via the pipeline
    StaticIdentified id;
    id.stoich_neg_t0 = p.ref_stoich_neg;
    id.stoich_pos_t0 = p.ref_stoich_pos;
    id.eps_s_neg = p.composition.eps_s_neg;
    id.eps_s_pos = p.composition.eps_s_pos;
    auto lim = solve_stoich_limits(id, p, p.v_min, p.v_max);
    auto mac = derive_macro(lim, id, p);
    std::printf("x-: [%.4f, %.4f]  x+: [%.4f, %.4f]\n", lim.stoich_neg_min, lim.stoich_neg_max,
                lim.stoich_pos_min, lim.stoich_pos_max);
    std::printf("C_Q = %.1f mAh   SOC(0.486) = %.3f\n", mac.capacity_mAh,
                soc_of_stoich(lim, 0.486));

    // per-stage capacity
    for (const auto& st : default_stages()) {
        CellParameters sp = st.apply(p);
        StaticIdentified sid;
        sid.stoich_neg_t0 = st.stoich_neg_t0;
        sid.stoich_pos_t0 = st.stoich_pos_t0;
        sid.eps_s_neg = st.eps_s_neg;
        sid.eps_s_pos = st.eps_s_pos;
        auto l2 = solve_stoich_limits(sid, sp, sp.v_min, sp.v_max);
        auto m2 = derive_macro(l2, sid, sp);
        std::printf("stage %4d: C_Q=%.1f mAh OCV0=%.4f\n", st.cycles, m2.capacity_mAh,
                    ocv_at(sp, st.stoich_neg_t0, st.stoich_pos_t0));
    }

    // 1C 120 s pulse, fresh cell, timing
    PulseConfig pc;
    auto profs = gen_pulse_set(p, pc);
    CellState init = init_state(p, p.ref_stoich_neg, p.ref_stoich_pos);
    auto t0 = std::chrono::steady_clock::now();
    VoltageTrace tr = simulate(profs[3], p, init);
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    std::printf("120s pulse sim: %.1f ms for %zu steps\n", ms, tr.size());
    // voltage at key points: pre-pulse, right after onset, end of excitation, end of rest
    auto at = [&](double t) { return tr.voltage[static_cast<std::size_t>(t * 10) - 1]; };
    std::printf("V(5.0)=%.4f V(5.1)=%.4f V(6)=%.4f V(65)=%.4f V(125)=%.4f V(126)=%.4f V(225)=%.4f\n",
                at(5.0), at(5.1), at(6.0), at(65.0), at(125.0), at(126.0), at(225.0));

    // second-difference line check over the excitation tail
    auto secdiff_max = [&](double ta, double tb) {
        double mx = 0;
        for (double t = ta; t + 0.2 <= tb; t += 0.1) {
            std::size_t i = static_cast<std::size_t>(t * 10) - 1;
            double d2 = std::abs(tr.voltage[i + 2] - 2 * tr.voltage[i + 1] + tr.voltage[i]);
            if (d2 > mx) mx = d2;
        }
        return mx;
    };
    std::printf("secdiff first20=%.3e last20=%.3e ratio=%.4f\n", secdiff_max(5.2, 25.0),
                secdiff_max(105.0, 124.8), secdiff_max(105.0, 124.8) / secdiff_max(5.2, 25.0));

    // electrolyte extremes at end of excitation
    CellState s2 = init;
    DynamicModel dm(p);
    for (int k = 0; k < 1250; ++k) dm.step(s2, profs[3].samples[k], 0.1);
    std::printf("c_e ends: neg_cc=%.1f pos_cc=%.1f\n", s2.elyte_conc.front(),
                s2.elyte_conc.back());

    // corner survival: De=0.1, t+=0.2 on the 120 s pulse
    CellParameters corner = p;
    corner.transport.de_factor = 0.1;
    corner.transport.transference = 0.2;
    try {
        VoltageTrace tc = simulate(profs[3], corner, init);
        CellState s3 = init;
        DynamicModel dmc(corner);
        for (int k = 0; k < 1250; ++k) dmc.step(s3, profs[3].samples[k], 0.1);
        std::printf("corner survived; c_e pos_cc=%.1f  V(125)=%.4f\n", s3.elyte_conc.back(),
                    tc.voltage[1249]);
    } catch (const std::exception& e) {
        std::printf("corner FAILED: %s\n", e.what());
    }

    // static vs dynamic at 0.01C (R_c, R_f zeroed)
    CellParameters zero_r = p;
    zero_r.transport.contact_resistance = 0.0;
    zero_r.composition.film_resistance_neg = zero_r.composition.film_resistance_pos = 0.0;
    zero_r.composition.film_thickness_neg = zero_r.composition.film_thickness_pos = 0.0;
    CurrentProfile qs;
    qs.dt = 10.0;
    qs.samples.assign(200, 0.022);
    VoltageTrace dts = simulate(qs, zero_r, init);
    VoltageTrace sts = simulate_static(qs, zero_r, 0.486, 0.536);
    double worst = 0;
    for (std::size_t i = 0; i < dts.size(); ++i)
        worst = std::max(worst, std::abs(dts.voltage[i] - sts.voltage[i]));
    std::printf("0.01C dyn-vs-static worst = %.3f mV\n", worst * 1e3);

    // resolution doubling
    Discretization fine{20, 20, 10, 20};
    CellState initf = init_state(p, 0.486, 0.536, fine);
    VoltageTrace trf = simulate(profs[3], p, initf, fine);
    double dv = 0;
    for (std::size_t i = 0; i < tr.size(); ++i)
        dv = std::max(dv, std::abs(tr.voltage[i] - trf.voltage[i]));
    std::printf("doubling grids: max dV = %.4f mV\n", dv * 1e3);
    return 0;
}
