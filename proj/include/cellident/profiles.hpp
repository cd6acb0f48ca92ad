#pragma once

#include "cellident/params.hpp"
#include "cellident/trace.hpp"

#include <array>
#include <cstddef>
#include <vector>

namespace cellident {

/// Quasi-static test design: constant current at a low C-rate, slow sampling,
/// started from the occupancy pair whose open-circuit voltage hits start_ocv.
struct QuasiStaticConfig {
    double capacity_mAh = 2200.0; // nameplate used to convert C-rate to amps
    double c_rate = 0.01;
    double dt_s = 200.0;
    std::size_t samples = 100;
    double start_ocv = 3.8; // V
    bool discharge = true;
};

struct QuasiStaticPlan {
    CurrentProfile profile;
    double stoich_neg0 = 0.0;
    double stoich_pos0 = 0.0;
};

QuasiStaticPlan gen_quasi_static(const CellParameters& params, const QuasiStaticConfig& cfg = {});

/// Occupancy pair on the cell's lithium-conservation line whose OCV equals
/// `target_ocv` within 1e-6 V (bisection). Throws DomainError when the target
/// lies outside the achievable window.
std::pair<double, double> find_stoich_for_ocv(const CellParameters& params, double target_ocv);

/// Dynamic test design: four CC pulses of increasing excitation duration.
struct PulseConfig {
    double amplitude_A = 2.2; // ~1 C for the default cell
    double pre_rest_s = 5.0;
    double rest_s = 100.0;
    double sample_hz = 10.0;
    std::array<double, 4> excitation_s{15.0, 30.0, 60.0, 120.0};
    bool discharge = true;
    double start_ocv = 3.8; // start SOC is set through the OCV indicator
};

std::vector<CurrentProfile> gen_pulse_set(const CellParameters& params,
                                          const PulseConfig& cfg = {});

/// A pulse response with the four-part cut points. Sample indices are 1-based;
/// the instantaneous union covers [1,N1] and [N2,N3], the excitation transient
/// [N1,N2], the rest transient [N3,N].
struct SegmentedTrace {
    VoltageTrace trace;
    std::size_t cut_n1 = 0;
    std::size_t cut_n2 = 0;
    std::size_t cut_n3 = 0;
    std::size_t cut_n = 0;
};

/// Locates the excitation and release edges of a single-pulse profile and cuts
/// the response. Throws DomainError unless the profile has exactly one
/// excitation step and one release step.
SegmentedTrace segment_trace(const CurrentProfile& profile, const VoltageTrace& trace,
                             double inst_window_s = 1.0);

enum class Regime { Instantaneous, Excitation, Rest };

/// Which pulse and which period a segment index denotes: zeta 1..4 are the
/// instantaneous periods of the four pulses, 5..8 the excitation periods,
/// 9..12 the rest periods.
struct SegmentRef {
    int pulse = 0; // 0..3
    Regime regime = Regime::Instantaneous;
};
SegmentRef segment_ref(int zeta);

/// The four segmented pulse responses plus their generating profiles.
struct PulseSet {
    std::vector<CurrentProfile> profiles;
    std::vector<SegmentedTrace> segmented;
    static constexpr int kSegmentCount = 12;

    void validate() const {
        if (profiles.size() != 4 || segmented.size() != 4)
            throw DomainError("pulse set: expected exactly four pulses");
    }
};

/// Segments four measured pulse responses against their profiles.
PulseSet make_pulse_set(std::vector<CurrentProfile> profiles, std::vector<VoltageTrace> traces,
                        double inst_window_s = 1.0);

} // namespace cellident
