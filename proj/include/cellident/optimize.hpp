#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cellident {

/// Box-constrained minimization problem; the objective must be finite inside
/// the bounds.
struct BoundedProblem {
    std::vector<double> lower;
    std::vector<double> upper;
    std::function<double(const std::vector<double>&)> objective;

    std::size_t dim() const { return lower.size(); }
    void validate() const;
};

enum class SolverKind { Pso, Ga, Local };

struct SolverConfig {
    SolverKind kind = SolverKind::Pso;
    std::size_t population = 200;    // swarm or GA population size
    std::size_t max_iterations = 0;  // 0 -> 200 * dim
    double tolerance = 1e-6;         // relative best-value improvement threshold
    std::size_t patience = 20;       // stall window, iterations
    std::uint64_t seed = 1;
    std::size_t max_evaluations = 0; // 0 -> no cap

    // PSO: constriction-equivalent standard coefficients.
    double inertia = 0.729;
    double cognitive = 1.49445;
    double social = 1.49445;

    // GA
    std::size_t ga_population = 100;
    double crossover_rate = 0.9;
    double mutation_rate = 0.1;
    std::size_t tournament = 3;

    bool parallel = true; // evaluate fitness concurrently within an iteration

    /// Optional warm start: PSO and GA seed one member here, Local starts here.
    std::vector<double> initial;
};

enum class StopReason { Tolerance, Budget };

struct SolveOutcome {
    std::vector<double> best_point;
    double best_value = 0.0;
    std::size_t evaluations = 0;
    std::size_t iterations = 0;
    StopReason reason = StopReason::Budget;
    std::vector<double> history; // best value after each iteration
};

/// Objective returned a non-finite value inside the bounds.
class EvaluationError : public std::runtime_error {
public:
    EvaluationError(const std::vector<double>& point, const std::string& what)
        : std::runtime_error(what), point_(point) {}
    const std::vector<double>& point() const { return point_; }

private:
    std::vector<double> point_;
};

/// Global-best particle swarm. Bounds are enforced by clamping with velocity
/// zeroing on the clamped dimension; the global-best trajectory never rises.
SolveOutcome pso_minimize(const BoundedProblem& problem, const SolverConfig& cfg);

/// Real-coded GA: tournament selection, blend crossover, Gaussian mutation
/// clipped to bounds, elitism of one.
SolveOutcome ga_minimize(const BoundedProblem& problem, const SolverConfig& cfg);

/// Bounded derivative-free simplex descent from an interior start point.
SolveOutcome local_minimize(const BoundedProblem& problem, const std::vector<double>& start,
                            const SolverConfig& cfg);

/// Exact bi-level search for 2-D problems with a narrow curved valley: golden
/// section over dimension `outer_dim` with the other dimension re-minimized by
/// an inner golden section at every probe. Requires the marginal function to
/// be unimodal over the box. Comparison-based, so it resolves valleys far
/// shallower than any fixed function tolerance.
SolveOutcome nested_minimize_2d(const BoundedProblem& problem, std::size_t outer_dim,
                                std::size_t outer_evals = 60, std::size_t inner_evals = 56);

/// General bi-level search: golden section over `outer_dim`, the remaining
/// dimensions re-minimized at every probe (golden section when one remains,
/// bounded simplex descent from `inner_start` otherwise).
SolveOutcome nested_minimize(const BoundedProblem& problem, std::size_t outer_dim,
                             const std::vector<double>& inner_start,
                             std::size_t outer_evals = 48);

/// Dispatch on cfg.kind; Local starts from the box midpoint.
SolveOutcome minimize(const BoundedProblem& problem, const SolverConfig& cfg);

} // namespace cellident
