#include "cellident/objectives.hpp"

#include "cellident/errors.hpp"

namespace cellident {

namespace {

// 1-based inclusive range sum of (Vp - Vm)^2
double sq_sum(const VoltageTrace& m, const VoltageTrace& p, std::size_t a, std::size_t b) {
    double acc = 0.0;
    for (std::size_t i = a; i <= b; ++i) {
        double r = p.voltage[i - 1] - m.voltage[i - 1];
        acc += r * r;
    }
    return acc;
}

// anchored form: residual of the change relative to the anchor sample
double anchored_sum(const VoltageTrace& m, const VoltageTrace& p, std::size_t a, std::size_t b) {
    const double pm = p.voltage[a - 1], mm = m.voltage[a - 1];
    double acc = 0.0;
    for (std::size_t i = a; i <= b; ++i) {
        double r = (p.voltage[i - 1] - pm) - (m.voltage[i - 1] - mm);
        acc += r * r;
    }
    return acc;
}

} // namespace

double objective_value(const VoltageTrace& measured, const VoltageTrace& predicted) {
    if (measured.size() != predicted.size())
        throw DomainError("objective_value: traces are not aligned sample-for-sample");
    return sq_sum(measured, predicted, 1, measured.size());
}

double objective_value(const VoltageTrace& measured, const VoltageTrace& predicted,
                       const SegmentedTrace& seg, ObjectiveMode mode) {
    if (measured.size() != predicted.size())
        throw DomainError("objective_value: traces are not aligned sample-for-sample");
    switch (mode) {
    case ObjectiveMode::Static:
        return sq_sum(measured, predicted, 1, measured.size());
    case ObjectiveMode::Instantaneous:
        return sq_sum(measured, predicted, 1, seg.cut_n1) +
               sq_sum(measured, predicted, seg.cut_n2, seg.cut_n3);
    case ObjectiveMode::Excitation:
        return anchored_sum(measured, predicted, seg.cut_n1, seg.cut_n2);
    case ObjectiveMode::Rest:
        return anchored_sum(measured, predicted, seg.cut_n3, seg.cut_n);
    }
    throw DomainError("objective_value: unknown mode");
}

ObjectiveMode regime_mode(Regime regime) {
    switch (regime) {
    case Regime::Instantaneous:
        return ObjectiveMode::Instantaneous;
    case Regime::Excitation:
        return ObjectiveMode::Excitation;
    case Regime::Rest:
        return ObjectiveMode::Rest;
    }
    throw DomainError("regime_mode: unknown regime");
}

} // namespace cellident
