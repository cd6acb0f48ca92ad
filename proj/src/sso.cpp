#include "cellident/sso.hpp"

#include "cellident/dynamic_model.hpp"
#include "cellident/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cmath>
#include <random>

namespace cellident {

namespace {

std::vector<std::size_t> sorted_by_mean(const std::vector<std::string>& names,
                                        const SensitivityMatrix& sens, const ParamSpace& space,
                                        bool instantaneous) {
    std::vector<std::size_t> idx;
    for (const auto& n : names) idx.push_back(space.index_of(n));
    auto score = [&](std::size_t k) {
        if (instantaneous) return sens.mean_instantaneous[k];
        return std::max(sens.mean_excitation[k], sens.mean_rest[k]);
    };
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return score(a) > score(b); });
    return idx;
}

// Monte Carlo noise floor of the index estimates at sampling scale m.
double index_noise(const SensitivityMatrix& sens) {
    return sens.m ? 0.5 / std::sqrt(static_cast<double>(sens.m)) : 0.0;
}

// Within estimator noise of the maximum, the later segment wins: the longer
// pulses carry the same jump content plus more accumulated state, so they are
// never the worse choice.
int argmax_segment(const SensitivityMatrix& sens, std::size_t k, int z_first, int z_last) {
    double peak = sens.s[k][z_first - 1];
    for (int z = z_first; z <= z_last; ++z) peak = std::max(peak, sens.s[k][z - 1]);
    const double eps = index_noise(sens);
    int best = z_first;
    for (int z = z_first; z <= z_last; ++z)
        if (sens.s[k][z - 1] >= peak - eps) best = z;
    return best;
}

int min_spread_segment(const SensitivityMatrix& sens, const std::vector<std::size_t>& members,
                       int z_first, int z_last) {
    auto spread = [&](int z) {
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (std::size_t k : members) {
            lo = std::min(lo, sens.s[k][z - 1]);
            hi = std::max(hi, sens.s[k][z - 1]);
        }
        return hi - lo;
    };
    double least = std::numeric_limits<double>::infinity();
    for (int z = z_first; z <= z_last; ++z) least = std::min(least, spread(z));
    const double eps = index_noise(sens);
    int best = z_first;
    for (int z = z_first; z <= z_last; ++z)
        if (spread(z) <= least + eps) best = z;
    return best;
}

} // namespace

void SsoSchedule::validate(const Assignment& assignment) const {
    std::map<std::string, int> prelim_count, joint_count;
    for (const auto& s : steps)
        for (const auto& p : s.params)
            (s.kind == StepKind::Preliminary ? prelim_count[p] : joint_count[p])++;
    for (const auto& group : {assignment.set_instant, assignment.set_transient})
        for (const auto& p : group) {
            if (prelim_count[p] != 1)
                throw DomainError("schedule: " + p + " must appear in exactly one preliminary step");
            if (joint_count[p] != 1)
                throw DomainError("schedule: " + p + " must appear in exactly one joint step");
        }
    // preliminary steps precede their joint step; one set's block completes
    // before the other set's steps begin
    std::map<std::string, bool> prelim_done;
    auto set_index = [&](const std::string& p) {
        for (const auto& q : assignment.set_instant)
            if (q == p) return 0;
        return 1;
    };
    int joints_seen = 0;
    int current_set = -1;
    for (const auto& s : steps) {
        int set = set_index(s.params.front());
        if (set != current_set) {
            if (current_set != -1 && joints_seen == 0)
                throw DomainError("schedule: set switched before its joint step");
            current_set = set;
            joints_seen = 0;
        }
        if (s.kind == StepKind::Preliminary) {
            if (joints_seen)
                throw DomainError("schedule: preliminary step after its set's joint step");
            prelim_done[s.params.front()] = true;
        } else {
            for (const auto& p : s.params)
                if (!prelim_done[p])
                    throw DomainError("schedule: joint step for " + p + " precedes its preliminary");
            ++joints_seen;
        }
    }
}

SsoSchedule build_sso_schedule(const SensitivityMatrix& sens, const Assignment& assignment,
                               const ParamSpace& space) {
    if (assignment.set_instant.empty() && assignment.set_transient.empty())
        throw DomainError("build_sso_schedule: every parameter was dropped; nothing to identify");
    SsoSchedule sched;

    auto add_set = [&](const std::vector<std::string>& names, int z_first, int z_last) {
        if (names.empty()) return;
        auto order = sorted_by_mean(names, sens, space, z_first == 1);
        for (std::size_t k : order) {
            SsoStep st;
            st.kind = StepKind::Preliminary;
            st.params = {space.names[k]};
            st.zeta = argmax_segment(sens, k, z_first, z_last);
            st.mode = regime_mode(segment_ref(st.zeta).regime);
            sched.steps.push_back(st);
        }
        SsoStep joint;
        joint.kind = StepKind::Joint;
        for (std::size_t k : order) joint.params.push_back(space.names[k]);
        joint.zeta = min_spread_segment(sens, order, z_first, z_last);
        joint.mode = regime_mode(segment_ref(joint.zeta).regime);
        sched.steps.push_back(joint);
    };

    // The transient set runs first: its segments are blind to the contact and
    // conduction parameters (rest periods carry no current, the anchored
    // excitation objective cancels constant ohmic terms), so it identifies
    // cleanly, after which the instantaneous pair sees correct transport
    // states at the release edge.
    add_set(assignment.set_transient, 5, 12);
    add_set(assignment.set_instant, 1, 4);
    sched.validate(assignment);
    return sched;
}

std::map<std::string, double> default_empirical(const ParamSpace& space,
                                                const Assignment& assignment) {
    std::map<std::string, double> out;
    for (const auto& name : assignment.dropped) {
        std::size_t k = space.index_of(name);
        // Accommodation factors have a natural fallback: 1, the shipped base
        // property function unscaled. Scalar conductivities fall back to the
        // midpoint of their sampling range.
        bool factor = name.find("_fac") != std::string::npos;
        out[name] = factor ? 1.0 : 0.5 * (space.lower[k] + space.upper[k]);
    }
    return out;
}

namespace {

// Objective over one segment of one pulse; the simulation is truncated at the
// last sample the mode actually uses.
class StepObjective {
public:
    StepObjective(const PulseSet& pulses, const SsoStep& step, const CellParameters& known)
        : step_(step), known_(known) {
        const SegmentRef ref = segment_ref(step.zeta);
        const SegmentedTrace& seg = pulses.segmented[ref.pulse];
        n1_ = seg.cut_n1;
        n2_ = seg.cut_n2;
        n3_ = seg.cut_n3;
        switch (step.mode) {
        case ObjectiveMode::Instantaneous:
            n_end_ = n3_;
            break;
        case ObjectiveMode::Excitation:
            n_end_ = n2_;
            break;
        default:
            n_end_ = seg.cut_n;
            break;
        }
        profile_ = pulses.profiles[ref.pulse];
        profile_.samples.resize(n_end_);
        measured_ = &seg.trace;
        init_ = init_state(known, known.ref_stoich_neg, known.ref_stoich_pos);
    }

    std::size_t steps_per_eval() const { return n_end_; }

    double operator()(const double* theta) const {
        CellParameters trial = known_;
        apply_transport_vector(trial, theta);
        VoltageTrace pred;
        try {
            pred = simulate(profile_, trial, init_);
        } catch (const SimulationError&) {
            return 1e9; // infeasible corner sample, steer the solver away
        }
        double acc = 0.0;
        auto sq = [&](std::size_t a, std::size_t b) {
            double s = 0.0;
            for (std::size_t i = a; i <= b; ++i) {
                double r = pred.voltage[i - 1] - measured_->voltage[i - 1];
                s += r * r;
            }
            return s;
        };
        switch (step_.mode) {
        case ObjectiveMode::Instantaneous:
            acc = sq(1, n1_) + sq(n2_, n3_);
            break;
        case ObjectiveMode::Excitation: {
            double pa = pred.voltage[n1_ - 1], ma = measured_->voltage[n1_ - 1];
            for (std::size_t i = n1_; i <= n2_; ++i) {
                double r = (pred.voltage[i - 1] - pa) - (measured_->voltage[i - 1] - ma);
                acc += r * r;
            }
            break;
        }
        case ObjectiveMode::Rest: {
            double pa = pred.voltage[n3_ - 1], ma = measured_->voltage[n3_ - 1];
            for (std::size_t i = n3_; i <= n_end_; ++i) {
                double r = (pred.voltage[i - 1] - pa) - (measured_->voltage[i - 1] - ma);
                acc += r * r;
            }
            break;
        }
        default:
            throw DomainError("sso: static mode not used in steps");
        }
        return acc;
    }

private:
    SsoStep step_;
    CellParameters known_;
    CurrentProfile profile_;
    const VoltageTrace* measured_ = nullptr;
    CellState init_;
    std::size_t n1_ = 0, n2_ = 0, n3_ = 0, n_end_ = 0;
};

} // namespace

IdentificationResult sso_identify(const PulseSet& pulses, const SsoSchedule& schedule,
                                  const Assignment& assignment, const ParamSpace& space,
                                  const CellParameters& known, const SsoConfig& cfg) {
    pulses.validate();
    schedule.validate(assignment);
    const auto t_start = std::chrono::steady_clock::now();

    IdentificationResult out;
    out.dropped = assignment.dropped;

    std::map<std::string, double> empirical =
        cfg.empirical.empty() ? default_empirical(space, assignment) : cfg.empirical;
    std::array<bool, ParamSpace::kCount> estimated{};
    std::array<double, ParamSpace::kCount> value{};
    for (std::size_t k = 0; k < ParamSpace::kCount; ++k)
        value[k] = 0.5 * (space.lower[k] + space.upper[k]);
    for (const auto& [name, v] : empirical) {
        std::size_t k = space.index_of(name);
        value[k] = v;
        estimated[k] = true; // fixed, never optimized
    }

    auto set_of = [&](const std::string& name) {
        for (const auto& q : assignment.set_instant)
            if (q == name) return 0;
        for (const auto& q : assignment.set_transient)
            if (q == name) return 1;
        return -1;
    };

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    for (std::size_t step_i = 0; step_i < schedule.steps.size(); ++step_i) {
        const SsoStep& step = schedule.steps[step_i];
        const auto t0 = std::chrono::steady_clock::now();

        std::vector<std::size_t> free_idx;
        std::vector<std::size_t> record_idx;
        for (const auto& name : step.params) {
            std::size_t k = space.index_of(name);
            free_idx.push_back(k);
            record_idx.push_back(k);
        }
        if (cfg.nuisance_costim) {
            // Same-set members ride along as nuisance dimensions in a
            // preliminary step, and every not-yet-estimated parameter rides
            // along in any step; all are warm-started at their current values
            // and only the step targets are recorded (plus refinements of
            // members whose own preliminary step already ran).
            if (step.kind == StepKind::Preliminary) {
                int set = set_of(step.params.front());
                const auto& members =
                    set == 0 ? assignment.set_instant : assignment.set_transient;
                for (const auto& name : members) {
                    std::size_t k = space.index_of(name);
                    if (k != record_idx.front()) free_idx.push_back(k);
                }
            }
            // Parameters with no effect on the step objective stay out: rest
            // periods carry no current at all, and the anchored excitation
            // form cancels the constant contact-resistance drop exactly, so
            // only the conductivity factor reaches an excitation objective
            // from the other set.
            for (std::size_t k = 0; k < ParamSpace::kCount; ++k) {
                bool present = std::find(free_idx.begin(), free_idx.end(), k) != free_idx.end();
                if (present || estimated[k]) continue;
                if (step.mode == ObjectiveMode::Rest) continue;
                if (step.mode == ObjectiveMode::Excitation && space.names[k] == "R_c") continue;
                free_idx.push_back(k);
            }
        }

        // unknown parameters not in this step get seeded uniform draws
        std::vector<std::array<double, ParamSpace::kCount>> draws(
            std::max(1, cfg.repeat_draws));
        for (auto& d : draws) {
            d = value;
            for (std::size_t k = 0; k < ParamSpace::kCount; ++k) {
                bool in_step = std::find(free_idx.begin(), free_idx.end(), k) != free_idx.end();
                if (!estimated[k] && !in_step)
                    d[k] = space.lower[k] + unit(rng) * (space.upper[k] - space.lower[k]);
            }
        }

        StepObjective seg_obj(pulses, step, known);
        BoundedProblem prob;
        for (std::size_t k : free_idx) {
            bool is_member =
                std::find(record_idx.begin(), record_idx.end(), k) != record_idx.end();
            if (step.kind == StepKind::Joint && is_member) {
                double center = value[k];
                double hw = cfg.joint_half_width * std::abs(center);
                if (hw <= 0.0) hw = 1e-4 * (space.upper[k] - space.lower[k]);
                prob.lower.push_back(std::max(space.lower[k], center - hw));
                prob.upper.push_back(std::min(space.upper[k], center + hw));
            } else {
                prob.lower.push_back(space.lower[k]);
                prob.upper.push_back(space.upper[k]);
            }
        }
        prob.objective = [&](const std::vector<double>& x) {
            double acc = 0.0;
            for (const auto& d : draws) {
                std::array<double, ParamSpace::kCount> theta = d;
                for (std::size_t j = 0; j < free_idx.size(); ++j) theta[free_idx[j]] = x[j];
                acc += seg_obj(theta.data());
            }
            return acc / static_cast<double>(draws.size());
        };

        SolverConfig scfg = step.kind == StepKind::Joint ? cfg.joint_solver : cfg.prelim_solver;
        scfg.seed = cfg.seed + 101 * (step_i + 1);
        if (step.kind == StepKind::Preliminary && cfg.auto_prelim_solver && free_idx.size() > 1)
            scfg.kind = SolverKind::Pso;
        scfg.initial.clear();
        for (std::size_t k : free_idx) scfg.initial.push_back(value[k]);

        const std::size_t n_nuisance = free_idx.size() - record_idx.size();
        SolveOutcome sol;
        if (free_idx.size() == 2) {
            // Two coupled parameters form a narrow valley (ohmic pairs are
            // nearly collinear at fixed pulse amplitude); the exact nested
            // search resolves it where population methods stall. The outer
            // coordinate is the step target for preliminaries and the
            // lowest-sensitivity member for joints.
            std::size_t outer = step.kind == StepKind::Preliminary ? 0 : free_idx.size() - 1;
            sol = nested_minimize_2d(prob, outer);
            scfg.kind = SolverKind::Local;
        } else if (n_nuisance == 1 && free_idx.size() > 2) {
            // one weakly coupled rider: golden section over it, the recorded
            // block re-solved at each probe
            sol = nested_minimize(prob, free_idx.size() - 1, scfg.initial);
            scfg.kind = SolverKind::Local;
        } else {
            sol = minimize(prob, scfg);
            if (cfg.polish) {
                // The population step localizes the valley; a simplex descent
                // over the recorded dimensions (nuisances frozen at the swarm
                // best) resolves the shallow floor without plateau wander.
                std::vector<std::size_t> polish_dims;
                for (std::size_t j = 0; j < free_idx.size(); ++j)
                    if (std::find(record_idx.begin(), record_idx.end(), free_idx[j]) !=
                        record_idx.end())
                        polish_dims.push_back(j);
                if (polish_dims.size() == free_idx.size()) {
                    SolverConfig pol;
                    pol.kind = SolverKind::Local;
                    pol.tolerance = 1e-12;
                    pol.max_iterations = 300 * prob.dim();
                    SolveOutcome fine = local_minimize(prob, sol.best_point, pol);
                    sol.evaluations += fine.evaluations;
                    if (fine.best_value < sol.best_value) sol = fine;
                } else {
                    // alternate simplex descents over the recorded block and
                    // the nuisance block; freezing one block at a time keeps
                    // each sub-problem well conditioned
                    std::vector<std::size_t> nuisance_dims;
                    for (std::size_t j = 0; j < free_idx.size(); ++j)
                        if (std::find(polish_dims.begin(), polish_dims.end(), j) ==
                            polish_dims.end())
                            nuisance_dims.push_back(j);
                    std::vector<double> full = sol.best_point;
                    auto polish_block = [&](const std::vector<std::size_t>& dims) {
                        BoundedProblem sub;
                        for (std::size_t j : dims) {
                            sub.lower.push_back(prob.lower[j]);
                            sub.upper.push_back(prob.upper[j]);
                        }
                        sub.objective = [&](const std::vector<double>& y) {
                            std::vector<double> x = full;
                            for (std::size_t j = 0; j < dims.size(); ++j) x[dims[j]] = y[j];
                            return prob.objective(x);
                        };
                        std::vector<double> start;
                        for (std::size_t j : dims) start.push_back(full[j]);
                        SolverConfig pol;
                        pol.kind = SolverKind::Local;
                        pol.tolerance = 1e-12;
                        pol.max_iterations = 250 * sub.dim();
                        SolveOutcome fine = local_minimize(sub, start, pol);
                        sol.evaluations += fine.evaluations;
                        for (std::size_t j = 0; j < dims.size(); ++j)
                            full[dims[j]] = fine.best_point[j];
                        return fine.best_value;
                    };
                    double best = sol.best_value;
                    for (int round = 0; round < 3; ++round) {
                        polish_block(nuisance_dims);
                        best = polish_block(polish_dims);
                    }
                    if (best < sol.best_value) {
                        sol.best_value = best;
                        sol.best_point = full;
                    }
                }
            }
        }

        SsoStepRecord rec;
        rec.step = step;
        rec.solver_used = scfg.kind;
        rec.objective = sol.best_value;
        rec.evaluations = sol.evaluations;
        rec.simulated_steps =
            sol.evaluations * seg_obj.steps_per_eval() * draws.size();
        if (cfg.collect_history) rec.history = sol.history;

        for (std::size_t j = 0; j < free_idx.size(); ++j) {
            std::size_t k = free_idx[j];
            bool recorded =
                std::find(record_idx.begin(), record_idx.end(), k) != record_idx.end();
            if (recorded) {
                value[k] = sol.best_point[j];
                estimated[k] = true;
                rec.estimates[space.names[k]] = value[k];
                if (step.kind == StepKind::Preliminary)
                    out.preliminary[space.names[k]] = value[k];
            } else if (estimated[k]) {
                // nuisance refinement of a member whose preliminary step
                // already ran carries forward; members still awaiting their
                // own step keep nothing from this solve
                value[k] = sol.best_point[j];
                rec.estimates[space.names[k]] = value[k];
                if (step.kind == StepKind::Preliminary)
                    out.preliminary[space.names[k]] = value[k];
            }
        }
        rec.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.total_evaluations += rec.evaluations;
        out.total_simulated_steps += rec.simulated_steps;
        out.steps.push_back(std::move(rec));
    }

    for (std::size_t k = 0; k < ParamSpace::kCount; ++k) out.identified[space.names[k]] = value[k];
    out.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return out;
}

} // namespace cellident
