#include "cellident/aging.hpp"

#include "cellident/errors.hpp"

#include <cmath>

namespace cellident {

namespace {

// proportional least squares y = k x
double fit_proportional(const std::vector<double>& x, const std::vector<double>& y) {
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += x[i] * y[i];
        sxx += x[i] * x[i];
    }
    if (sxx <= 0.0) throw DomainError("fit_aging: rank-deficient history (constant input)");
    return sxy / sxx;
}

} // namespace

AgingCoefficients fit_aging(const std::vector<AgingObservation>& history, double sigma_f0_pos,
                            double sigma_f0_neg, AgingFitDiagnostics* diag) {
    if (history.size() < 3) throw DomainError("fit_aging: need at least 3 history points");
    AgingCoefficients c;
    c.sigma_f0_pos = sigma_f0_pos;
    c.sigma_f0_neg = sigma_f0_neg;

    std::vector<double> xsp, yfp, xen, yfn, xsn, yen;
    for (const auto& h : history) {
        xsp.push_back(h.d_eps_s_pos);
        yfp.push_back(h.film_thickness_pos_nm);
        xen.push_back(h.d_eps_e_neg);
        yfn.push_back(h.film_thickness_neg_nm);
        xsn.push_back(h.d_eps_s_neg);
        yen.push_back(h.d_eps_e_neg);
    }
    c.k_f_pos = fit_proportional(xsp, yfp);
    c.k_f_neg = fit_proportional(xen, yfn);

    // quadratic through origin: y = k x^2 + b x
    double s4 = 0, s3 = 0, s2 = 0, s2y = 0, s1y = 0;
    for (std::size_t i = 0; i < xsn.size(); ++i) {
        double x = xsn[i], y = yen[i];
        s4 += x * x * x * x;
        s3 += x * x * x;
        s2 += x * x;
        s2y += x * x * y;
        s1y += x * y;
    }
    double det = s4 * s2 - s3 * s3;
    if (std::abs(det) < 1e-30) throw DomainError("fit_aging: rank-deficient porosity history");
    c.k_e_neg = (s2y * s2 - s3 * s1y) / det;
    c.b_e_neg = (s4 * s1y - s3 * s2y) / det;

    if (diag) {
        diag->residual_film_pos_nm.clear();
        diag->residual_film_neg_nm.clear();
        diag->residual_eps_e_neg.clear();
        for (const auto& h : history) {
            diag->residual_film_pos_nm.push_back(h.film_thickness_pos_nm -
                                                 c.k_f_pos * h.d_eps_s_pos);
            diag->residual_film_neg_nm.push_back(h.film_thickness_neg_nm -
                                                 c.k_f_neg * h.d_eps_e_neg);
            diag->residual_eps_e_neg.push_back(
                h.d_eps_e_neg - (c.k_e_neg * h.d_eps_s_neg * h.d_eps_s_neg +
                                 c.b_e_neg * h.d_eps_s_neg));
        }
    }
    return c;
}

AgingPrediction apply_aging(const AgingCoefficients& coeffs, double d_eps_s_neg,
                            double d_eps_s_pos) {
    if (d_eps_s_neg > 0.0 || d_eps_s_pos > 0.0)
        throw DomainError("apply_aging: active material losses must be <= 0");
    AgingPrediction out;
    out.d_eps_e_neg =
        coeffs.k_e_neg * d_eps_s_neg * d_eps_s_neg + coeffs.b_e_neg * d_eps_s_neg;
    out.film_thickness_neg_nm = coeffs.k_f_neg * out.d_eps_e_neg;
    out.film_thickness_pos_nm = coeffs.k_f_pos * d_eps_s_pos;
    out.film_resistance_neg = out.film_thickness_neg_nm * 1e-9 / coeffs.sigma_f0_neg;
    out.film_resistance_pos = out.film_thickness_pos_nm * 1e-9 / coeffs.sigma_f0_pos;
    return out;
}

} // namespace cellident
