#pragma once

#include "cellident/objectives.hpp"
#include "cellident/optimize.hpp"
#include "cellident/sensitivity.hpp"

#include <map>
#include <string>
#include <vector>

namespace cellident {

enum class StepKind { Preliminary, Joint };

struct SsoStep {
    StepKind kind = StepKind::Preliminary;
    std::vector<std::string> params; // one name for preliminary, the set for joint
    int zeta = 0;                    // segment index 1..12
    ObjectiveMode mode = ObjectiveMode::Instantaneous;
};

/// Ordered identification plan: per set, one preliminary step per member at
/// its most sensitive segment, then one joint refinement at the segment with
/// the smallest sensitivity spread. The instantaneous set runs first.
struct SsoSchedule {
    std::vector<SsoStep> steps;
    void validate(const Assignment& assignment) const;
};

SsoSchedule build_sso_schedule(const SensitivityMatrix& sens, const Assignment& assignment,
                               const ParamSpace& space);

struct SsoConfig {
    SolverConfig prelim_solver{SolverKind::Local, 32, 120, 1e-6, 30};
    SolverConfig joint_solver{SolverKind::Pso, 40, 150, 1e-6, 30};
    bool auto_prelim_solver = true; // switch to PSO when a prelim step is multi-dimensional
    bool polish = true;             // follow each solver with a simplex descent from its best
    double joint_half_width = 0.05; // joint bounds: preliminary * (1 -/+ this)
    std::uint64_t seed = 1;
    int repeat_draws = 1;           // average the step objective over this many draws
    bool nuisance_costim = true;    // co-optimize not-yet-estimated same-set members
    /// Anchor transient objectives on the mean of the first second after the
    /// cut instead of the single cut sample; a lone noisy anchor sample would
    /// otherwise bias a whole window.
    bool robust_anchor = true;
    std::map<std::string, double> empirical; // values for dropped parameters
    bool collect_history = true;
};

struct SsoStepRecord {
    SsoStep step;
    SolverKind solver_used = SolverKind::Local;
    std::map<std::string, double> estimates; // estimates this step produced
    double objective = 0.0;
    std::size_t evaluations = 0;      // objective calls
    std::size_t simulated_steps = 0;  // model work units behind those calls
    double wall_s = 0.0;
    std::vector<double> history;
};

struct IdentificationResult {
    std::map<std::string, double> identified;  // all eight parameters
    std::map<std::string, double> preliminary; // estimates before joint refinement
    std::vector<std::string> dropped;
    std::vector<SsoStepRecord> steps;
    std::size_t total_evaluations = 0;
    std::size_t total_simulated_steps = 0;
    double wall_s = 0.0;
};

/// Midpoint-of-range empirical values for dropped parameters.
std::map<std::string, double> default_empirical(const ParamSpace& space,
                                                const Assignment& assignment);

/// Runs the schedule: preliminary estimates feed joint steps whose bounds are
/// +-5% around them; the transient set holds the identified instantaneous set
/// fixed; dropped parameters stay at their empirical values throughout.
IdentificationResult sso_identify(const PulseSet& pulses, const SsoSchedule& schedule,
                                  const Assignment& assignment, const ParamSpace& space,
                                  const CellParameters& known, const SsoConfig& cfg = {});

} // namespace cellident
