#include "cellident/optimize.hpp"

#include "cellident/errors.hpp"
#include "cellident/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace cellident {

void BoundedProblem::validate() const {
    if (lower.empty() || lower.size() != upper.size())
        throw DomainError("bounded problem: bounds missing or mismatched");
    for (std::size_t d = 0; d < lower.size(); ++d)
        if (!(lower[d] < upper[d])) throw DomainError("bounded problem: lower must be < upper");
    if (!objective) throw DomainError("bounded problem: objective missing");
}

namespace {

double checked_eval(const BoundedProblem& p, const std::vector<double>& x) {
    double f = p.objective(x);
    if (!std::isfinite(f))
        throw EvaluationError(x, "objective returned a non-finite value inside bounds");
    return f;
}

void eval_population(const BoundedProblem& p, const std::vector<std::vector<double>>& pts,
                     std::vector<double>& out, bool parallel) {
    out.resize(pts.size());
    if (parallel) {
        parallel_for(pts.size(), [&](std::size_t i) { out[i] = checked_eval(p, pts[i]); });
    } else {
        for (std::size_t i = 0; i < pts.size(); ++i) out[i] = checked_eval(p, pts[i]);
    }
}

// Relative-improvement stall detector over a sliding window.
class StallDetector {
public:
    StallDetector(double tolerance, std::size_t patience)
        : tol_(tolerance), patience_(patience) {}
    bool update(double best) {
        history_.push_back(best);
        if (history_.size() <= patience_) return false;
        double old = history_[history_.size() - 1 - patience_];
        double rel = (old - best) / std::max(std::abs(old), 1e-300);
        return rel < tol_;
    }

private:
    double tol_;
    std::size_t patience_;
    std::vector<double> history_;
};

std::size_t iteration_budget(const SolverConfig& cfg, std::size_t dim) {
    return cfg.max_iterations ? cfg.max_iterations : 200 * dim;
}

} // namespace

SolveOutcome pso_minimize(const BoundedProblem& problem, const SolverConfig& cfg) {
    problem.validate();
    const std::size_t dim = problem.dim();
    const std::size_t n = std::max<std::size_t>(2, cfg.population);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<std::vector<double>> pos(n, std::vector<double>(dim));
    std::vector<std::vector<double>> vel(n, std::vector<double>(dim));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t d = 0; d < dim; ++d) {
            double r = problem.upper[d] - problem.lower[d];
            pos[i][d] = problem.lower[d] + unit(rng) * r;
            vel[i][d] = (unit(rng) - 0.5) * 0.5 * r;
        }
    if (cfg.initial.size() == dim) pos[0] = cfg.initial;

    SolveOutcome out;
    std::vector<double> fitness;
    eval_population(problem, pos, fitness, cfg.parallel);
    out.evaluations = n;

    std::vector<std::vector<double>> pbest = pos;
    std::vector<double> pbest_f = fitness;
    std::size_t g = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (pbest_f[i] < pbest_f[g]) g = i;
    out.best_point = pbest[g];
    out.best_value = pbest_f[g];

    StallDetector stall(cfg.tolerance, cfg.patience);
    const std::size_t iters = iteration_budget(cfg, dim);
    out.reason = StopReason::Budget;
    for (std::size_t it = 0; it < iters; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t d = 0; d < dim; ++d) {
                double r1 = unit(rng), r2 = unit(rng);
                vel[i][d] = cfg.inertia * vel[i][d] +
                            cfg.cognitive * r1 * (pbest[i][d] - pos[i][d]) +
                            cfg.social * r2 * (out.best_point[d] - pos[i][d]);
                pos[i][d] += vel[i][d];
                if (pos[i][d] < problem.lower[d]) {
                    pos[i][d] = problem.lower[d];
                    vel[i][d] = 0.0;
                } else if (pos[i][d] > problem.upper[d]) {
                    pos[i][d] = problem.upper[d];
                    vel[i][d] = 0.0;
                }
            }
        }
        eval_population(problem, pos, fitness, cfg.parallel);
        out.evaluations += n;
        for (std::size_t i = 0; i < n; ++i) {
            if (fitness[i] < pbest_f[i]) {
                pbest_f[i] = fitness[i];
                pbest[i] = pos[i];
            }
            if (pbest_f[i] < out.best_value) {
                out.best_value = pbest_f[i];
                out.best_point = pbest[i];
            }
        }
        out.iterations = it + 1;
        out.history.push_back(out.best_value);
        if (stall.update(out.best_value)) {
            out.reason = StopReason::Tolerance;
            break;
        }
        if (cfg.max_evaluations && out.evaluations + n > cfg.max_evaluations) break;
    }
    return out;
}

SolveOutcome ga_minimize(const BoundedProblem& problem, const SolverConfig& cfg) {
    problem.validate();
    const std::size_t dim = problem.dim();
    const std::size_t n = std::max<std::size_t>(4, cfg.ga_population);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    auto clamp = [&](double x, std::size_t d) {
        return std::min(std::max(x, problem.lower[d]), problem.upper[d]);
    };

    std::vector<std::vector<double>> popn(n, std::vector<double>(dim));
    for (auto& ind : popn)
        for (std::size_t d = 0; d < dim; ++d)
            ind[d] = problem.lower[d] + unit(rng) * (problem.upper[d] - problem.lower[d]);
    if (cfg.initial.size() == dim) popn[0] = cfg.initial;

    SolveOutcome out;
    std::vector<double> fitness;
    eval_population(problem, popn, fitness, cfg.parallel);
    out.evaluations = n;
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (fitness[i] < fitness[best]) best = i;
    out.best_point = popn[best];
    out.best_value = fitness[best];

    auto tournament = [&]() -> std::size_t {
        std::size_t winner = static_cast<std::size_t>(unit(rng) * n) % n;
        for (std::size_t k = 1; k < cfg.tournament; ++k) {
            std::size_t c = static_cast<std::size_t>(unit(rng) * n) % n;
            if (fitness[c] < fitness[winner]) winner = c;
        }
        return winner;
    };

    StallDetector stall(cfg.tolerance, cfg.patience);
    const std::size_t iters = iteration_budget(cfg, dim);
    out.reason = StopReason::Budget;
    std::vector<std::vector<double>> next(n, std::vector<double>(dim));
    for (std::size_t it = 0; it < iters; ++it) {
        next[0] = out.best_point; // elitism of one
        for (std::size_t i = 1; i < n; ++i) {
            const auto& pa = popn[tournament()];
            const auto& pb = popn[tournament()];
            auto& child = next[i];
            if (unit(rng) < cfg.crossover_rate) {
                for (std::size_t d = 0; d < dim; ++d) {
                    double lo = std::min(pa[d], pb[d]), hi = std::max(pa[d], pb[d]);
                    double span = hi - lo;
                    double a = lo - 0.5 * span, b = hi + 0.5 * span; // blend, alpha = 0.5
                    child[d] = clamp(a + unit(rng) * (b - a), d);
                }
            } else {
                child = pa;
            }
            for (std::size_t d = 0; d < dim; ++d)
                if (unit(rng) < cfg.mutation_rate)
                    child[d] = clamp(
                        child[d] + gauss(rng) * 0.1 * (problem.upper[d] - problem.lower[d]), d);
        }
        popn.swap(next);
        eval_population(problem, popn, fitness, cfg.parallel);
        out.evaluations += n;
        for (std::size_t i = 0; i < n; ++i)
            if (fitness[i] < out.best_value) {
                out.best_value = fitness[i];
                out.best_point = popn[i];
            }
        out.iterations = it + 1;
        out.history.push_back(out.best_value);
        if (stall.update(out.best_value)) {
            out.reason = StopReason::Tolerance;
            break;
        }
        if (cfg.max_evaluations && out.evaluations + n > cfg.max_evaluations) break;
    }
    return out;
}

SolveOutcome local_minimize(const BoundedProblem& problem, const std::vector<double>& start,
                            const SolverConfig& cfg) {
    problem.validate();
    const std::size_t dim = problem.dim();
    if (start.size() != dim) throw DomainError("local_minimize: start dimension mismatch");
    for (std::size_t d = 0; d < dim; ++d)
        if (start[d] < problem.lower[d] || start[d] > problem.upper[d])
            throw DomainError("local_minimize: start outside bounds");

    auto clamp_point = [&](std::vector<double>& x) {
        for (std::size_t d = 0; d < dim; ++d)
            x[d] = std::min(std::max(x[d], problem.lower[d]), problem.upper[d]);
    };

    // initial simplex: start plus 5% of range along each axis (folded inward
    // when that would leave the box)
    std::vector<std::vector<double>> simplex(dim + 1, start);
    for (std::size_t d = 0; d < dim; ++d) {
        double h = 0.05 * (problem.upper[d] - problem.lower[d]);
        auto& v = simplex[d + 1];
        v[d] = (v[d] + h <= problem.upper[d]) ? v[d] + h : v[d] - h;
    }

    SolveOutcome out;
    std::vector<double> f(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i) f[i] = checked_eval(problem, simplex[i]);
    out.evaluations = dim + 1;

    const std::size_t max_iters = cfg.max_iterations ? cfg.max_iterations : 400 * dim;
    out.reason = StopReason::Budget;
    std::vector<std::size_t> order(dim + 1);
    std::vector<double> centroid(dim), cand(dim);
    for (std::size_t it = 0; it < max_iters; ++it) {
        for (std::size_t i = 0; i <= dim; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](auto a, auto b) { return f[a] < f[b]; });
        const std::size_t lo = order[0], hi = order[dim], second = order[dim - 1];

        out.best_point = simplex[lo];
        out.best_value = f[lo];
        out.iterations = it + 1;
        out.history.push_back(out.best_value);

        double spread = std::abs(f[hi] - f[lo]);
        double diam = 0.0;
        for (std::size_t d = 0; d < dim; ++d)
            diam = std::max(diam, std::abs(simplex[hi][d] - simplex[lo][d]) /
                                      (problem.upper[d] - problem.lower[d]));
        if (spread <= cfg.tolerance * std::max(std::abs(f[lo]), 1e-300) && diam < 1e-9) {
            out.reason = StopReason::Tolerance;
            break;
        }
        if (cfg.max_evaluations && out.evaluations + 2 > cfg.max_evaluations) break;

        centroid.assign(dim, 0.0);
        for (std::size_t i = 0; i <= dim; ++i)
            if (i != hi)
                for (std::size_t d = 0; d < dim; ++d) centroid[d] += simplex[i][d] / dim;

        auto try_point = [&](double coeff) {
            for (std::size_t d = 0; d < dim; ++d)
                cand[d] = centroid[d] + coeff * (centroid[d] - simplex[hi][d]);
            clamp_point(cand);
            ++out.evaluations;
            return checked_eval(problem, cand);
        };

        double fr = try_point(1.0); // reflection
        if (fr < f[lo]) {
            std::vector<double> refl = cand;
            double fe = try_point(2.0); // expansion
            if (fe < fr) {
                simplex[hi] = cand;
                f[hi] = fe;
            } else {
                simplex[hi] = refl;
                f[hi] = fr;
            }
        } else if (fr < f[second]) {
            simplex[hi] = cand;
            f[hi] = fr;
        } else {
            double fc = try_point(-0.5); // contraction
            if (fc < f[hi]) {
                simplex[hi] = cand;
                f[hi] = fc;
            } else {
                for (std::size_t i = 0; i <= dim; ++i) { // shrink toward best
                    if (i == lo) continue;
                    for (std::size_t d = 0; d < dim; ++d)
                        simplex[i][d] = simplex[lo][d] + 0.5 * (simplex[i][d] - simplex[lo][d]);
                    f[i] = checked_eval(problem, simplex[i]);
                    ++out.evaluations;
                }
            }
        }
    }
    // final ordering may have improved the best
    for (std::size_t i = 0; i <= dim; ++i)
        if (f[i] < out.best_value) {
            out.best_value = f[i];
            out.best_point = simplex[i];
        }
    return out;
}

namespace {

// Golden-section scan returning the minimizer of f over [lo, hi].
template <typename F>
double golden_section(F&& f, double lo, double hi, std::size_t evals, std::size_t& counter) {
    constexpr double phi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - phi * (b - a);
    double x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    counter += 2;
    for (std::size_t i = 2; i < evals; ++i) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        }
        ++counter;
    }
    return f1 < f2 ? x1 : x2;
}

} // namespace

SolveOutcome nested_minimize_2d(const BoundedProblem& problem, std::size_t outer_dim,
                                std::size_t outer_evals, std::size_t inner_evals) {
    problem.validate();
    if (problem.dim() != 2) throw DomainError("nested_minimize_2d: problem must be 2-D");
    if (outer_dim > 1) throw DomainError("nested_minimize_2d: outer_dim must be 0 or 1");
    const std::size_t inner_dim = 1 - outer_dim;

    SolveOutcome out;
    std::vector<double> x(2);
    auto marginal = [&](double v_outer) {
        x[outer_dim] = v_outer;
        auto inner = [&](double v_inner) {
            x[inner_dim] = v_inner;
            return checked_eval(problem, x);
        };
        double best_inner = golden_section(inner, problem.lower[inner_dim],
                                           problem.upper[inner_dim], inner_evals,
                                           out.evaluations);
        x[inner_dim] = best_inner;
        ++out.evaluations;
        return checked_eval(problem, x);
    };
    double best_outer = golden_section(marginal, problem.lower[outer_dim],
                                       problem.upper[outer_dim], outer_evals, out.evaluations);
    out.best_point.resize(2);
    out.best_point[outer_dim] = best_outer;
    x[outer_dim] = best_outer;
    auto inner = [&](double v_inner) {
        x[inner_dim] = v_inner;
        return checked_eval(problem, x);
    };
    out.best_point[inner_dim] = golden_section(inner, problem.lower[inner_dim],
                                               problem.upper[inner_dim], inner_evals,
                                               out.evaluations);
    out.best_value = problem.objective(out.best_point);
    ++out.evaluations;
    out.iterations = outer_evals;
    out.reason = StopReason::Tolerance;
    out.history.push_back(out.best_value);
    return out;
}

SolveOutcome nested_minimize(const BoundedProblem& problem, std::size_t outer_dim,
                             const std::vector<double>& inner_start, std::size_t outer_evals) {
    problem.validate();
    const std::size_t dim = problem.dim();
    if (dim < 2) throw DomainError("nested_minimize: problem must have at least 2 dimensions");
    if (outer_dim >= dim) throw DomainError("nested_minimize: outer_dim out of range");
    if (dim == 2) return nested_minimize_2d(problem, outer_dim, outer_evals);

    std::vector<std::size_t> inner_dims;
    for (std::size_t d = 0; d < dim; ++d)
        if (d != outer_dim) inner_dims.push_back(d);

    SolveOutcome out;
    std::vector<double> best_point(dim);
    double best_value = std::numeric_limits<double>::infinity();

    auto marginal = [&](double v_outer) {
        BoundedProblem sub;
        for (std::size_t d : inner_dims) {
            sub.lower.push_back(problem.lower[d]);
            sub.upper.push_back(problem.upper[d]);
        }
        sub.objective = [&, v_outer](const std::vector<double>& y) {
            std::vector<double> x(dim);
            x[outer_dim] = v_outer;
            for (std::size_t j = 0; j < inner_dims.size(); ++j) x[inner_dims[j]] = y[j];
            return problem.objective(x);
        };
        std::vector<double> start;
        for (std::size_t d : inner_dims)
            start.push_back(std::min(std::max(inner_start[d], problem.lower[d]),
                                     problem.upper[d]));
        SolverConfig inner;
        inner.kind = SolverKind::Local;
        inner.tolerance = 1e-12;
        inner.max_iterations = 200 * sub.dim();
        SolveOutcome fine = local_minimize(sub, start, inner);
        out.evaluations += fine.evaluations;
        if (fine.best_value < best_value) {
            best_value = fine.best_value;
            best_point[outer_dim] = v_outer;
            for (std::size_t j = 0; j < inner_dims.size(); ++j)
                best_point[inner_dims[j]] = fine.best_point[j];
        }
        return fine.best_value;
    };
    std::size_t probes = 0;
    golden_section(marginal, problem.lower[outer_dim], problem.upper[outer_dim], outer_evals,
                   probes);
    out.best_point = best_point;
    out.best_value = best_value;
    out.iterations = outer_evals;
    out.reason = StopReason::Tolerance;
    out.history.push_back(out.best_value);
    return out;
}

SolveOutcome minimize(const BoundedProblem& problem, const SolverConfig& cfg) {
    switch (cfg.kind) {
    case SolverKind::Pso:
        return pso_minimize(problem, cfg);
    case SolverKind::Ga:
        return ga_minimize(problem, cfg);
    case SolverKind::Local: {
        if (cfg.initial.size() == problem.dim()) return local_minimize(problem, cfg.initial, cfg);
        std::vector<double> mid(problem.dim());
        for (std::size_t d = 0; d < problem.dim(); ++d)
            mid[d] = 0.5 * (problem.lower[d] + problem.upper[d]);
        return local_minimize(problem, mid, cfg);
    }
    }
    throw DomainError("minimize: unknown solver kind");
}

} // namespace cellident
