#pragma once

#include "cellident/sensitivity.hpp"
#include "cellident/sso.hpp"
#include "cellident/trace.hpp"

#include <string>
#include <vector>

namespace cellident {

/// Minimal line-plot writer; one polyline per series, shared axes.
struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};
void save_line_plot_svg(const std::string& path, const std::string& title,
                        const std::vector<PlotSeries>& series, const std::string& x_label = "",
                        const std::string& y_label = "");

/// Measured vs predicted voltage on one canvas.
void save_voltage_fit_svg(const std::string& path, const std::string& title,
                          const VoltageTrace& measured, const VoltageTrace& predicted);

/// 8 x 12 sensitivity heatmap, parameters on rows, segments on columns.
void save_heatmap_svg(const std::string& path, const SensitivityMatrix& sens,
                      const ParamSpace& space);

/// Per-iteration best-value telemetry as CSV (one column per labelled run).
void save_convergence_csv(const std::string& path,
                          const std::vector<std::pair<std::string, std::vector<double>>>& runs);

} // namespace cellident
