#pragma once

#include <string>
#include <vector>

namespace cellident {

/// Tabulated equilibrium-potential curve of one electrode, potential vs. Li/Li+
/// as a function of lithium stoichiometry in [0,1]. Interpolation is monotone
/// piecewise cubic, so a monotone node set yields a monotone curve.
class OcpCurve {
public:
    OcpCurve() = default;

    /// Nodes must have strictly increasing stoichiometry and at least 20 entries.
    OcpCurve(std::vector<double> stoich, std::vector<double> potential);

    /// Potential at a stoichiometry in [0,1]; exact at nodes.
    double operator()(double stoich) const;

    /// dU/dx of the interpolant (used by diagnostics, not the models).
    double derivative(double stoich) const;

    std::size_t size() const { return x_.size(); }
    const std::vector<double>& stoichiometries() const { return x_; }
    const std::vector<double>& potentials() const { return y_; }

    /// Two-column CSV (stoichiometry,potential_V) with a header row.
    static OcpCurve load_csv(const std::string& path);
    void save_csv(const std::string& path) const;

private:
    std::vector<double> x_;
    std::vector<double> y_;
    std::vector<double> d_; // node derivatives of the monotone cubic

    std::size_t interval(double x) const;
};

/// Potential of `curve` at `stoich`; throws DomainError outside [0,1].
double ocp_eval(const OcpCurve& curve, double stoich);

/// Built-in half-cell curves for the default cell. Users may override with
/// load_csv; the same tables ship under data/ as CSV.
const OcpCurve& default_ocp_graphite();
const OcpCurve& default_ocp_ncm811();

} // namespace cellident
