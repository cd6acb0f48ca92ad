#include "cellident/ocp.hpp"

#include "cellident/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace cellident {

namespace {

// Fritsch-Carlson slopes: the resulting cubic preserves monotonicity of the data.
std::vector<double> monotone_slopes(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    std::vector<double> h(n - 1), delta(n - 1), d(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x[i + 1] - x[i];
        delta[i] = (y[i + 1] - y[i]) / h[i];
    }
    d[0] = delta[0];
    d[n - 1] = delta[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) {
            d[i] = 0.0;
        } else {
            double w1 = 2.0 * h[i] + h[i - 1];
            double w2 = h[i] + 2.0 * h[i - 1];
            d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    // Clamp endpoint slopes so the first/last pieces cannot overshoot.
    for (std::size_t i : {std::size_t(0), n - 1}) {
        std::size_t k = (i == 0) ? 0 : n - 2;
        if (d[i] * delta[k] <= 0.0)
            d[i] = 0.0;
        else if (std::abs(d[i]) > 3.0 * std::abs(delta[k]))
            d[i] = 3.0 * delta[k];
    }
    return d;
}

} // namespace

OcpCurve::OcpCurve(std::vector<double> stoich, std::vector<double> potential)
    : x_(std::move(stoich)), y_(std::move(potential)) {
    if (x_.size() != y_.size()) throw DomainError("ocp: node vectors differ in length");
    if (x_.size() < 20) throw DomainError("ocp: need at least 20 nodes");
    for (std::size_t i = 0; i + 1 < x_.size(); ++i)
        if (!(x_[i] < x_[i + 1])) throw DomainError("ocp: stoichiometries must strictly increase");
    for (double v : y_)
        if (!std::isfinite(v)) throw DomainError("ocp: non-finite potential");
    d_ = monotone_slopes(x_, y_);
}

std::size_t OcpCurve::interval(double x) const {
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - x_.begin());
    if (i == 0) return 0;
    if (i >= x_.size()) return x_.size() - 2;
    return i - 1;
}

double OcpCurve::operator()(double x) const {
    if (x < x_.front()) x = x_.front();
    if (x > x_.back()) x = x_.back();
    std::size_t i = interval(x);
    double h = x_[i + 1] - x_[i];
    double t = (x - x_[i]) / h;
    double t2 = t * t, t3 = t2 * t;
    double h00 = 2 * t3 - 3 * t2 + 1;
    double h10 = t3 - 2 * t2 + t;
    double h01 = -2 * t3 + 3 * t2;
    double h11 = t3 - t2;
    return h00 * y_[i] + h10 * h * d_[i] + h01 * y_[i + 1] + h11 * h * d_[i + 1];
}

double OcpCurve::derivative(double x) const {
    if (x < x_.front()) x = x_.front();
    if (x > x_.back()) x = x_.back();
    std::size_t i = interval(x);
    double h = x_[i + 1] - x_[i];
    double t = (x - x_[i]) / h;
    double t2 = t * t;
    double g00 = (6 * t2 - 6 * t) / h;
    double g10 = 3 * t2 - 4 * t + 1;
    double g01 = (-6 * t2 + 6 * t) / h;
    double g11 = 3 * t2 - 2 * t;
    return g00 * y_[i] + g10 * d_[i] + g01 * y_[i + 1] + g11 * d_[i + 1];
}

double ocp_eval(const OcpCurve& curve, double stoich) {
    if (!(stoich >= 0.0 && stoich <= 1.0))
        throw DomainError("ocp_eval: stoichiometry " + std::to_string(stoich) + " outside [0,1]");
    return curve(stoich);
}

OcpCurve OcpCurve::load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, 0, "cannot open file");
    std::string line;
    std::size_t lineno = 0;
    std::vector<double> xs, ys;
    while (std::getline(in, line)) {
        ++lineno;
        if (lineno == 1) continue; // header
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string a, b;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b))
            throw ParseError(path, lineno, "expected two comma-separated columns");
        try {
            xs.push_back(std::stod(a));
            ys.push_back(std::stod(b));
        } catch (const std::exception&) {
            throw ParseError(path, lineno, "numeric parse failure");
        }
    }
    try {
        return OcpCurve(std::move(xs), std::move(ys));
    } catch (const DomainError& e) {
        throw ParseError(path, lineno, e.what());
    }
}

void OcpCurve::save_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw ParseError(path, 0, "cannot open file for writing");
    out << "stoichiometry,potential_V\n";
    out.precision(9);
    for (std::size_t i = 0; i < x_.size(); ++i) out << x_[i] << "," << y_[i] << "\n";
}

namespace {

double graphite_fit(double x) {
    return 0.6379 + 0.5416 * std::exp(-305.5309 * x) +
           0.044 * std::tanh(-(x - 0.1958) / 0.1088) -
           0.1978 * std::tanh((x - 1.0571) / 0.0854) -
           0.6875 * std::tanh((x + 0.0117) / 0.0529) -
           0.0175 * std::tanh((x - 0.5692) / 0.0875);
}

double ncm811_fit(double y) {
    return -0.8090 * y + 4.4875 - 0.0428 * std::tanh(18.5138 * (y - 0.5542)) -
           17.7326 * std::tanh(15.7890 * (y - 0.3117)) +
           17.5842 * std::tanh(15.9308 * (y - 0.3120));
}

std::vector<double> node_grid(const std::vector<std::pair<double, double>>& spans,
                              const std::vector<double>& steps) {
    std::vector<double> xs;
    for (std::size_t s = 0; s < spans.size(); ++s) {
        for (double x = spans[s].first; x < spans[s].second - 1e-12; x += steps[s])
            xs.push_back(x);
    }
    xs.push_back(1.0);
    return xs;
}

OcpCurve tabulate(double (*f)(double), const std::vector<double>& xs) {
    std::vector<double> ys(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = f(xs[i]);
    return OcpCurve(xs, ys);
}

} // namespace

const OcpCurve& default_ocp_graphite() {
    // Dense below 0.08 where the exponential knee lives, moderate elsewhere.
    static const OcpCurve curve = tabulate(
        graphite_fit,
        node_grid({{0.0, 0.08}, {0.08, 0.30}, {0.30, 0.70}, {0.70, 1.0}},
                  {0.004, 0.01, 0.005, 0.01}));
    return curve;
}

const OcpCurve& default_ocp_ncm811() {
    // Dense around the 0.31 shoulder and the mid-range feature at 0.55.
    static const OcpCurve curve = tabulate(
        ncm811_fit,
        node_grid({{0.0, 0.25}, {0.25, 0.40}, {0.40, 0.70}, {0.70, 1.0}},
                  {0.01, 0.004, 0.005, 0.01}));
    return curve;
}

} // namespace cellident
