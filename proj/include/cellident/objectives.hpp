#pragma once

#include "cellident/profiles.hpp"
#include "cellident/trace.hpp"

namespace cellident {

enum class ObjectiveMode { Static, Instantaneous, Excitation, Rest };

/// Squared-error objective between a measured and predicted trace.
///   Static:        sum (Vp - Vm)^2 over all samples
///   Instantaneous: sum over [1,N1] and [N2,N3]
///   Excitation:    anchored at N1: sum over [N1,N2] of
///                  ((Vp_i - Vp_N1) - (Vm_i - Vm_N1))^2
///   Rest:          same anchored form over [N3,N] with anchor N3
/// Anchoring makes the transient objectives invariant to a constant offset
/// carried over from the instantaneous period.
double objective_value(const VoltageTrace& measured, const VoltageTrace& predicted,
                       const SegmentedTrace& seg, ObjectiveMode mode);

/// Static-mode convenience overload (no segmentation involved).
double objective_value(const VoltageTrace& measured, const VoltageTrace& predicted);

ObjectiveMode regime_mode(Regime regime);

} // namespace cellident
