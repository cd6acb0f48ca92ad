#pragma once

#include "cellident/params.hpp"
#include "cellident/profiles.hpp"

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace cellident {

/// The eight transport parameters exposed to the dynamic identification, in a
/// fixed order, with sampling bounds.
struct ParamSpace {
    static constexpr std::size_t kCount = 8;
    std::array<std::string, kCount> names{"R_c",        "sigma_s_neg", "sigma_s_pos",
                                          "Ds_neg_fac", "Ds_pos_fac",  "De_fac",
                                          "kappa_fac",  "t_plus"};
    std::array<double, kCount> lower{};
    std::array<double, kCount> upper{};

    void validate() const;
    std::size_t index_of(const std::string& name) const;
};

/// Default sampling ranges, asymmetric around the nominal values in the
/// direction parameters drift as the cell degrades.
ParamSpace default_param_space();

/// Nominal (true fresh-cell) transport vector in ParamSpace order.
std::array<double, ParamSpace::kCount> nominal_transport_vector(const CellParameters& params);

/// Applies a ParamSpace-ordered vector onto a parameter record.
void apply_transport_vector(CellParameters& params, const double* theta);

/// Quasi-Monte Carlo sample block: Xi stacks the two independent M x p halves;
/// the radial matrix Xi^k equals rows 1..M except column k, which is taken
/// from rows M+1..2M.
struct SampleMatrices {
    std::size_t m = 0;
    std::size_t p = 0;
    std::vector<double> xi; // 2M x p, row-major

    double at(std::size_t row, std::size_t col) const { return xi[row * p + col]; }
    /// Row j of Xi^k written into out[0..p)
    void radial_row(std::size_t k, std::size_t j, double* out) const;
};

/// Builds the 2M x 8 sample block from a 16-dimensional Sobol sequence,
/// affinely scaled to the space bounds.
SampleMatrices build_matrices(const ParamSpace& space, std::size_t m);

/// Jansen-style total-effect estimate of each parameter for a scalar
/// objective. Throws DomainError when the objective is constant over the
/// sample (zero variance).
std::vector<double> total_effect(const std::function<double(const std::vector<double>&)>& objective,
                                 const SampleMatrices& mats);

/// 8 x 12 total-effect indices over the pulse segments plus per-regime means.
struct SensitivityMatrix {
    std::array<std::array<double, 12>, ParamSpace::kCount> s{}; // [param][zeta-1]
    std::array<double, ParamSpace::kCount> mean_instantaneous{};
    std::array<double, ParamSpace::kCount> mean_excitation{};
    std::array<double, ParamSpace::kCount> mean_rest{};
    std::size_t m = 0;
    std::size_t excluded_rows = 0;
    std::size_t total_rows = 0;

    void compute_means();
    double regime_mean(std::size_t param, Regime regime) const;
};

struct SensitivityConfig {
    std::size_t m = 1000;
    double inst_window_s = 1.0;
    double max_exclusion_frac = 0.01;
    bool parallel = true;
};

/// Evaluates the twelve segment objectives over the sample block, reusing one
/// simulation of the four pulses per sample row, and assembles the matrix.
/// Failed rows are excluded pairwise and counted; more than
/// max_exclusion_frac of rows failing raises a reliability error.
SensitivityMatrix build_sensitivity_matrix(const PulseSet& pulses, const ParamSpace& space,
                                           const CellParameters& known,
                                           const SensitivityConfig& cfg = {});

/// Partition of the parameters into identification regimes.
struct Assignment {
    std::vector<std::string> set_instant;   // Theta^I
    std::vector<std::string> set_transient; // Theta^T
    std::vector<std::string> dropped;
    double threshold = 0.01;
};

/// Parameters whose maximum (negative-clamped) index over all twelve segments
/// is below `threshold` are dropped; the rest go to Theta^I when the
/// instantaneous regime mean is the largest, otherwise to Theta^T.
Assignment assign(const SensitivityMatrix& sens, const ParamSpace& space,
                  double threshold = 0.01);

/// CSV export: rows are parameters, columns zeta_1..zeta_12.
void save_sensitivity_csv(const SensitivityMatrix& sens, const ParamSpace& space,
                          const std::string& path);

} // namespace cellident
