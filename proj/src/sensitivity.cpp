#include "cellident/sensitivity.hpp"

#include "cellident/dynamic_model.hpp"
#include "cellident/errors.hpp"
#include "cellident/objectives.hpp"
#include "cellident/parallel.hpp"
#include "cellident/sobol.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace cellident {

void ParamSpace::validate() const {
    for (std::size_t k = 0; k < kCount; ++k)
        if (!(lower[k] < upper[k]))
            throw DomainError("param space: lower must be < upper for " + names[k]);
}

std::size_t ParamSpace::index_of(const std::string& name) const {
    for (std::size_t k = 0; k < kCount; ++k)
        if (names[k] == name) return k;
    throw DomainError("param space: unknown parameter " + name);
}

ParamSpace default_param_space() {
    ParamSpace s;
    s.lower = {0.0, 6.6, 0.2, 0.1, 0.1, 0.1, 0.1, 0.2};
    s.upper = {0.05, 100.0, 3.0, 1.5, 1.5, 1.5, 1.5, 0.45};
    return s;
}

std::array<double, ParamSpace::kCount> nominal_transport_vector(const CellParameters& p) {
    return {p.transport.contact_resistance, p.transport.solid_conductivity_neg,
            p.transport.solid_conductivity_pos, p.transport.ds_factor_neg,
            p.transport.ds_factor_pos, p.transport.de_factor, p.transport.kappa_factor,
            p.transport.transference};
}

void apply_transport_vector(CellParameters& params, const double* theta) {
    params.transport.contact_resistance = theta[0];
    params.transport.solid_conductivity_neg = theta[1];
    params.transport.solid_conductivity_pos = theta[2];
    params.transport.ds_factor_neg = theta[3];
    params.transport.ds_factor_pos = theta[4];
    params.transport.de_factor = theta[5];
    params.transport.kappa_factor = theta[6];
    params.transport.transference = theta[7];
}

void SampleMatrices::radial_row(std::size_t k, std::size_t j, double* out) const {
    for (std::size_t c = 0; c < p; ++c) out[c] = at(j, c);
    out[k] = at(m + j, k);
}

SampleMatrices build_matrices(const ParamSpace& space, std::size_t m) {
    if (m < 2) throw DomainError("build_matrices: m must be at least 2");
    space.validate();
    constexpr std::size_t p = ParamSpace::kCount;

    // One 2p-dimensional low-discrepancy point yields one row of each half, so
    // the halves are jointly equidistributed and the (j, M+j) pairing used by
    // the radial matrices is well mixed in every coordinate pair.
    std::vector<double> pts = sobol_points(2 * p, m);
    SampleMatrices out;
    out.m = m;
    out.p = p;
    out.xi.resize(2 * m * p);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t c = 0; c < p; ++c) {
            double u_a = pts[j * 2 * p + c];
            double u_b = pts[j * 2 * p + p + c];
            out.xi[j * p + c] = space.lower[c] + u_a * (space.upper[c] - space.lower[c]);
            out.xi[(m + j) * p + c] = space.lower[c] + u_b * (space.upper[c] - space.lower[c]);
        }
    return out;
}

namespace {

struct EstimatorInput {
    std::vector<double> f_base;                // 2M values, NaN = failed
    std::vector<std::vector<double>> f_radial; // [p][M]
};

// Jansen form: numerator_k = (1/2M) sum_j (f_j - f_j^k)^2 over valid pairs,
// denominator = unbiased variance of the valid base values.
std::vector<double> estimate(const EstimatorInput& in, std::size_t m, std::size_t p,
                             std::size_t* excluded_rows = nullptr) {
    double mean = 0.0;
    std::size_t n_valid = 0;
    for (double f : in.f_base)
        if (std::isfinite(f)) {
            mean += f;
            ++n_valid;
        }
    if (n_valid < 2) throw DomainError("total_effect: too few valid objective values");
    mean /= static_cast<double>(n_valid);
    double var = 0.0;
    for (double f : in.f_base)
        if (std::isfinite(f)) var += (f - mean) * (f - mean);
    var /= static_cast<double>(n_valid - 1);
    if (var <= 0.0)
        throw DomainError("total_effect: degenerate objective (zero variance over samples)");

    std::size_t excl = in.f_base.size() - n_valid;
    std::vector<double> s(p, 0.0);
    for (std::size_t k = 0; k < p; ++k) {
        double num = 0.0;
        std::size_t pairs = 0;
        for (std::size_t j = 0; j < m; ++j) {
            double fj = in.f_base[j];
            double fjk = in.f_radial[k][j];
            if (!std::isfinite(fj) || !std::isfinite(fjk)) {
                if (!std::isfinite(fjk) && std::isfinite(fj)) ++excl;
                continue;
            }
            num += (fj - fjk) * (fj - fjk);
            ++pairs;
        }
        if (pairs == 0) throw DomainError("total_effect: no valid pairs for parameter");
        num /= 2.0 * static_cast<double>(pairs);
        s[k] = num / var;
    }
    if (excluded_rows) *excluded_rows = excl;
    return s;
}

} // namespace

std::vector<double> total_effect(const std::function<double(const std::vector<double>&)>& objective,
                                 const SampleMatrices& mats) {
    const std::size_t m = mats.m, p = mats.p;
    EstimatorInput in;
    in.f_base.resize(2 * m);
    in.f_radial.assign(p, std::vector<double>(m));
    std::vector<double> row(p);
    for (std::size_t j = 0; j < 2 * m; ++j) {
        for (std::size_t c = 0; c < p; ++c) row[c] = mats.at(j, c);
        in.f_base[j] = objective(row);
    }
    for (std::size_t k = 0; k < p; ++k)
        for (std::size_t j = 0; j < m; ++j) {
            mats.radial_row(k, j, row.data());
            in.f_radial[k][j] = objective(row);
        }
    return estimate(in, m, p);
}

void SensitivityMatrix::compute_means() {
    for (std::size_t k = 0; k < ParamSpace::kCount; ++k) {
        double mi = 0, me = 0, mr = 0;
        for (int j = 0; j < 4; ++j) {
            mi += s[k][j];
            me += s[k][4 + j];
            mr += s[k][8 + j];
        }
        mean_instantaneous[k] = mi / 4.0;
        mean_excitation[k] = me / 4.0;
        mean_rest[k] = mr / 4.0;
    }
}

double SensitivityMatrix::regime_mean(std::size_t param, Regime regime) const {
    switch (regime) {
    case Regime::Instantaneous:
        return mean_instantaneous[param];
    case Regime::Excitation:
        return mean_excitation[param];
    case Regime::Rest:
        return mean_rest[param];
    }
    throw DomainError("regime_mean: unknown regime");
}

SensitivityMatrix build_sensitivity_matrix(const PulseSet& pulses, const ParamSpace& space,
                                           const CellParameters& known,
                                           const SensitivityConfig& cfg) {
    pulses.validate();
    space.validate();
    constexpr std::size_t p = ParamSpace::kCount;
    const std::size_t m = cfg.m;
    SampleMatrices mats = build_matrices(space, m);

    // initial state shared by all four pulses
    CellState init = init_state(known, known.ref_stoich_neg, known.ref_stoich_pos);

    const std::size_t n_rows = 2 * m + p * m;
    // Objective values for all 12 segments per row; NaN marks failed rows.
    std::vector<std::array<double, 12>> f(n_rows);

    auto row_theta = [&](std::size_t r, double* theta) {
        if (r < 2 * m) {
            for (std::size_t c = 0; c < p; ++c) theta[c] = mats.at(r, c);
        } else {
            std::size_t k = (r - 2 * m) / m;
            std::size_t j = (r - 2 * m) % m;
            mats.radial_row(k, j, theta);
        }
    };

    auto eval_row = [&](std::size_t r) {
        double theta[p];
        row_theta(r, theta);
        CellParameters trial = known;
        apply_transport_vector(trial, theta);
        std::array<double, 12> out{};
        try {
            for (int pulse = 0; pulse < 4; ++pulse) {
                VoltageTrace pred = simulate(pulses.profiles[pulse], trial, init);
                const SegmentedTrace& seg = pulses.segmented[pulse];
                out[pulse] = objective_value(seg.trace, pred, seg, ObjectiveMode::Instantaneous);
                out[4 + pulse] = objective_value(seg.trace, pred, seg, ObjectiveMode::Excitation);
                out[8 + pulse] = objective_value(seg.trace, pred, seg, ObjectiveMode::Rest);
            }
        } catch (const SimulationError&) {
            out.fill(std::nan(""));
        }
        f[r] = out;
    };

    if (cfg.parallel)
        parallel_for(n_rows, eval_row);
    else
        for (std::size_t r = 0; r < n_rows; ++r) eval_row(r);

    SensitivityMatrix sm;
    sm.m = m;
    sm.total_rows = n_rows;
    std::size_t failed = 0;
    for (const auto& row : f)
        if (!std::isfinite(row[0])) ++failed;
    sm.excluded_rows = failed;
    if (static_cast<double>(failed) > cfg.max_exclusion_frac * static_cast<double>(n_rows))
        throw std::runtime_error("build_sensitivity_matrix: " + std::to_string(failed) + " of " +
                                 std::to_string(n_rows) +
                                 " sample rows failed to simulate; results unreliable");

    for (int zeta = 0; zeta < 12; ++zeta) {
        EstimatorInput in;
        in.f_base.resize(2 * m);
        for (std::size_t j = 0; j < 2 * m; ++j) in.f_base[j] = f[j][zeta];
        in.f_radial.assign(p, std::vector<double>(m));
        for (std::size_t k = 0; k < p; ++k)
            for (std::size_t j = 0; j < m; ++j) in.f_radial[k][j] = f[2 * m + k * m + j][zeta];
        std::vector<double> s = estimate(in, m, p);
        for (std::size_t k = 0; k < p; ++k) sm.s[k][zeta] = s[k];
    }
    sm.compute_means();
    return sm;
}

Assignment assign(const SensitivityMatrix& sens, const ParamSpace& space, double threshold) {
    Assignment a;
    a.threshold = threshold;
    for (std::size_t k = 0; k < ParamSpace::kCount; ++k) {
        double peak = 0.0;
        for (int z = 0; z < 12; ++z) peak = std::max(peak, std::max(0.0, sens.s[k][z]));
        if (peak < threshold) {
            a.dropped.push_back(space.names[k]);
            continue;
        }
        double mi = std::max(0.0, sens.mean_instantaneous[k]);
        double me = std::max(0.0, sens.mean_excitation[k]);
        double mr = std::max(0.0, sens.mean_rest[k]);
        if (mi > me && mi > mr)
            a.set_instant.push_back(space.names[k]);
        else
            a.set_transient.push_back(space.names[k]);
    }
    return a;
}

void save_sensitivity_csv(const SensitivityMatrix& sens, const ParamSpace& space,
                          const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError(path, 0, "cannot open file for writing");
    out << "parameter";
    for (int z = 1; z <= 12; ++z) out << ",zeta_" << z;
    out << "\n";
    out.precision(9);
    for (std::size_t k = 0; k < ParamSpace::kCount; ++k) {
        out << space.names[k];
        for (int z = 0; z < 12; ++z) out << "," << sens.s[k][z];
        out << "\n";
    }
}

} // namespace cellident
