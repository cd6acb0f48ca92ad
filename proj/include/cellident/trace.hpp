#pragma once

#include "cellident/errors.hpp"

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace cellident {

/// Time-stamped applied current and sampled terminal voltage.
/// Sign convention everywhere: positive current = discharge.
struct VoltageTrace {
    std::vector<double> time;    // s, strictly increasing
    std::vector<double> current; // A
    std::vector<double> voltage; // V

    std::size_t size() const { return time.size(); }

    void validate() const {
        if (time.size() != current.size() || time.size() != voltage.size())
            throw DomainError("voltage trace: column lengths differ");
        for (std::size_t i = 0; i + 1 < time.size(); ++i)
            if (!(time[i] < time[i + 1]))
                throw DomainError("voltage trace: time must strictly increase");
        for (double v : voltage)
            if (!std::isfinite(v)) throw DomainError("voltage trace: non-finite voltage");
    }
};

/// Uniformly sampled applied-current sequence. Sample i is the current held
/// over ((i)*dt, (i+1)*dt]; the matching trace timestamp is (i+1)*dt.
struct CurrentProfile {
    double dt = 0.0;             // s
    std::vector<double> samples; // A
    std::string label;

    std::size_t size() const { return samples.size(); }
    double duration() const { return dt * static_cast<double>(samples.size()); }

    void validate() const {
        if (!(dt > 0.0)) throw DomainError("current profile: dt must be positive");
        if (samples.empty()) throw DomainError("current profile: no samples");
    }
};

} // namespace cellident
