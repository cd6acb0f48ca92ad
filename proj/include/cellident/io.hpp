#pragma once

#include "cellident/trace.hpp"

#include <string>

namespace cellident {

/// CSV with header time_s,current_A,voltage_V. Values are printed at 9
/// significant digits, so save followed by load is exact for such values.
VoltageTrace load_trace(const std::string& path);
void save_trace(const VoltageTrace& trace, const std::string& path);

/// CSV with header time_s,current_A describing an equally spaced profile.
CurrentProfile load_profile(const std::string& path);
void save_profile(const CurrentProfile& profile, const std::string& path);

} // namespace cellident
