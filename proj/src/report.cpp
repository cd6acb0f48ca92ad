#include "cellident/report.hpp"

#include "cellident/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace cellident {

namespace {

constexpr int kW = 720, kH = 420;
constexpr int kMarginL = 70, kMarginR = 20, kMarginT = 40, kMarginB = 50;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void include(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (!(hi > lo)) {
            lo -= 1.0;
            hi += 1.0;
        } else {
            double m = 0.05 * (hi - lo);
            lo -= m;
            hi += m;
        }
    }
};

std::string fmt(double v) {
    std::ostringstream ss;
    ss.precision(5);
    ss << v;
    return ss.str();
}

} // namespace

void save_line_plot_svg(const std::string& path, const std::string& title,
                        const std::vector<PlotSeries>& series, const std::string& x_label,
                        const std::string& y_label) {
    Range rx, ry;
    for (const auto& s : series) {
        for (double v : s.x) rx.include(v);
        for (double v : s.y) ry.include(v);
    }
    rx.pad();
    ry.pad();

    auto px = [&](double x) {
        return kMarginL + (x - rx.lo) / (rx.hi - rx.lo) * (kW - kMarginL - kMarginR);
    };
    auto py = [&](double y) {
        return kH - kMarginB - (y - ry.lo) / (ry.hi - ry.lo) * (kH - kMarginT - kMarginB);
    };

    std::ofstream out(path);
    if (!out) throw ParseError(path, 0, "cannot open file for writing");
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kW << "' height='" << kH
        << "' font-family='sans-serif' font-size='12'>\n";
    out << "<rect width='100%' height='100%' fill='white'/>\n";
    out << "<text x='" << kW / 2 << "' y='20' text-anchor='middle' font-size='14'>" << title
        << "</text>\n";
    // axes
    out << "<line x1='" << kMarginL << "' y1='" << kH - kMarginB << "' x2='" << kW - kMarginR
        << "' y2='" << kH - kMarginB << "' stroke='black'/>\n";
    out << "<line x1='" << kMarginL << "' y1='" << kMarginT << "' x2='" << kMarginL << "' y2='"
        << kH - kMarginB << "' stroke='black'/>\n";
    for (int i = 0; i <= 4; ++i) {
        double xv = rx.lo + i * (rx.hi - rx.lo) / 4;
        double yv = ry.lo + i * (ry.hi - ry.lo) / 4;
        out << "<text x='" << px(xv) << "' y='" << kH - kMarginB + 18
            << "' text-anchor='middle'>" << fmt(xv) << "</text>\n";
        out << "<text x='" << kMarginL - 8 << "' y='" << py(yv) + 4
            << "' text-anchor='end'>" << fmt(yv) << "</text>\n";
    }
    if (!x_label.empty())
        out << "<text x='" << kW / 2 << "' y='" << kH - 12 << "' text-anchor='middle'>" << x_label
            << "</text>\n";
    if (!y_label.empty())
        out << "<text x='16' y='" << kH / 2 << "' text-anchor='middle' transform='rotate(-90 16 "
            << kH / 2 << ")'>" << y_label << "</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const auto& sr = series[s];
        out << "<polyline fill='none' stroke='" << kPalette[s % 8] << "' stroke-width='1.2' points='";
        for (std::size_t i = 0; i < sr.x.size(); ++i)
            out << px(sr.x[i]) << "," << py(sr.y[i]) << " ";
        out << "'/>\n";
        out << "<text x='" << kW - kMarginR - 10 << "' y='" << kMarginT + 16 * (s + 1)
            << "' text-anchor='end' fill='" << kPalette[s % 8] << "'>" << sr.label << "</text>\n";
    }
    out << "</svg>\n";
}

void save_voltage_fit_svg(const std::string& path, const std::string& title,
                          const VoltageTrace& measured, const VoltageTrace& predicted) {
    save_line_plot_svg(path, title,
                       {{"measured", measured.time, measured.voltage},
                        {"predicted", predicted.time, predicted.voltage}},
                       "time, s", "voltage, V");
}

void save_heatmap_svg(const std::string& path, const SensitivityMatrix& sens,
                      const ParamSpace& space) {
    constexpr int cw = 46, ch = 28, ml = 110, mt = 50;
    const int w = ml + 12 * cw + 20, h = mt + 8 * ch + 20;
    double peak = 1e-12;
    for (const auto& row : sens.s)
        for (double v : row) peak = std::max(peak, v);

    std::ofstream out(path);
    if (!out) throw ParseError(path, 0, "cannot open file for writing");
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << h
        << "' font-family='sans-serif' font-size='11'>\n";
    out << "<rect width='100%' height='100%' fill='white'/>\n";
    out << "<text x='" << w / 2 << "' y='20' text-anchor='middle' font-size='13'>"
        << "Total-effect sensitivity over pulse segments</text>\n";
    for (int z = 0; z < 12; ++z)
        out << "<text x='" << ml + z * cw + cw / 2 << "' y='" << mt - 8
            << "' text-anchor='middle'>z" << z + 1 << "</text>\n";
    for (std::size_t k = 0; k < ParamSpace::kCount; ++k) {
        out << "<text x='" << ml - 6 << "' y='" << mt + k * ch + ch / 2 + 4
            << "' text-anchor='end'>" << space.names[k] << "</text>\n";
        for (int z = 0; z < 12; ++z) {
            double v = std::max(0.0, sens.s[k][z]);
            double t = std::pow(v / peak, 0.5); // emphasize small values
            int r = static_cast<int>(255 - 155 * t);
            int g = static_cast<int>(245 - 200 * t);
            out << "<rect x='" << ml + z * cw << "' y='" << mt + k * ch << "' width='" << cw - 2
                << "' height='" << ch - 2 << "' fill='rgb(" << r << "," << g << ",255)'/>\n";
            std::ostringstream val;
            val.precision(2);
            val << v;
            out << "<text x='" << ml + z * cw + cw / 2 - 1 << "' y='" << mt + k * ch + ch / 2 + 4
                << "' text-anchor='middle'>" << val.str() << "</text>\n";
        }
    }
    out << "</svg>\n";
}

void save_convergence_csv(const std::string& path,
                          const std::vector<std::pair<std::string, std::vector<double>>>& runs) {
    std::ofstream out(path);
    if (!out) throw ParseError(path, 0, "cannot open file for writing");
    out << "iteration";
    std::size_t longest = 0;
    for (const auto& [label, hist] : runs) {
        out << "," << label;
        longest = std::max(longest, hist.size());
    }
    out << "\n";
    out.precision(9);
    for (std::size_t i = 0; i < longest; ++i) {
        out << i + 1;
        for (const auto& [label, hist] : runs) {
            out << ",";
            if (i < hist.size()) out << hist[i];
        }
        out << "\n";
    }
}

} // namespace cellident
