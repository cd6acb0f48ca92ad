#pragma once

#include <stdexcept>
#include <string>

namespace cellident {

/// Input violates a documented precondition (out-of-range argument, bad config).
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// An electrode ran out of (or filled up with) lithium during a static update.
class DepletionError : public std::runtime_error {
public:
    DepletionError(const std::string& electrode, double stoich)
        : std::runtime_error("stoichiometry of " + electrode + " electrode left (0,1): " +
                             std::to_string(stoich)),
          electrode_(electrode) {}
    const std::string& electrode() const { return electrode_; }

private:
    std::string electrode_;
};

/// Particle surface concentration hit 0 or the saturation limit.
class SaturationError : public std::runtime_error {
public:
    SaturationError(const std::string& electrode, double surface_conc)
        : std::runtime_error("surface concentration of " + electrode +
                             " electrode saturated: " + std::to_string(surface_conc)),
          electrode_(electrode) {}
    const std::string& electrode() const { return electrode_; }

private:
    std::string electrode_;
};

/// Electrolyte concentration went negative; the step size is part of the message.
class InstabilityError : public std::runtime_error {
public:
    explicit InstabilityError(double dt)
        : std::runtime_error("negative electrolyte concentration (dt=" + std::to_string(dt) +
                             " s); reduce the step or the load") {}
};

/// Simulation failure annotated with the profile timestamp at which it occurred.
class SimulationError : public std::runtime_error {
public:
    SimulationError(double time_s, const std::string& cause)
        : std::runtime_error("simulation failed at t=" + std::to_string(time_s) + " s: " + cause),
          time_s_(time_s) {}
    double time() const { return time_s_; }

private:
    double time_s_ = 0.0;
};

/// Text-format problem while reading a file; carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& path, std::size_t line, const std::string& what)
        : std::runtime_error(path + ":" + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_ = 0;
};

} // namespace cellident
