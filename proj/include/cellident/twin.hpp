#pragma once

#include "cellident/aging.hpp"
#include "cellident/params.hpp"
#include "cellident/profiles.hpp"
#include "cellident/trace.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace cellident {

/// Ground-truth parameter overrides of one degradation stage. Transport
/// parameters stay at their fresh nominal values; composition and the initial
/// occupancies drift with cycling.
struct DegradationStage {
    int cycles = 0;
    double stoich_neg_t0 = 0.0;
    double stoich_pos_t0 = 0.0;
    double eps_s_neg = 0.0;
    double eps_s_pos = 0.0;
    double eps_e_neg = 0.0;
    double film_resistance_neg = 0.0; // Ohm m^2
    double film_resistance_pos = 0.0;

    /// Full truth record: base cell with this stage's overrides applied.
    CellParameters apply(const CellParameters& fresh) const;
};

/// The five built-in life stages (0/500/1000/1500/2000 cycles).
const std::vector<DegradationStage>& default_stages();
const DegradationStage& stage_by_cycles(int cycles);

/// Signed stage-minus-fresh history used to fit the aging empirical models.
std::vector<AgingObservation> stage_history(const std::vector<DegradationStage>& stages,
                                            const CellParameters& fresh);

/// Synthetic measurement: simulate with the stage truth and add seeded
/// zero-mean Gaussian noise to the voltage only.
struct TwinData {
    CellParameters truth;
    VoltageTrace quasi_static;          // measured quasi-static response
    CurrentProfile quasi_static_profile;
    std::vector<VoltageTrace> pulses;   // measured pulse responses
    std::vector<CurrentProfile> pulse_profiles;
};

struct TwinConfig {
    double noise_sigma_V = 0.0;
    std::uint64_t seed = 1;
    QuasiStaticConfig quasi_static;
    PulseConfig pulses;
};

TwinData generate_twin(const DegradationStage& stage, const CellParameters& fresh,
                       const TwinConfig& cfg = {});

/// Adds seeded Gaussian noise to a trace's voltage column.
VoltageTrace add_noise(const VoltageTrace& clean, double sigma_V, std::uint64_t seed);

/// Per-parameter relative errors plus voltage RMSE per profile.
struct MetricsReport {
    std::map<std::string, double> relative_error; // |est-true|/|true|
    std::vector<double> rmse_V;                   // one entry per evaluated profile
    std::map<std::string, double> identified;
    std::map<std::string, double> truth;
};

/// Relative error of an estimate against the truth (the error metric the
/// reports call "relative error"; alias: MAE).
double relative_error(double estimated, double truth);

/// RMSE between measured and predicted voltage.
double voltage_rmse(const VoltageTrace& measured, const VoltageTrace& predicted);

} // namespace cellident
