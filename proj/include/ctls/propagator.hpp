#pragma once

#include <array>
#include <numbers>

#include "ctls/coupling.hpp"
#include "ctls/linalg.hpp"
#include "ctls/pulse.hpp"

namespace ctls {

/// H(t)/hbar = sum_{m>n} Omega_nm(t) e^{i Delta_mn t} |n><m| + h.c., rad/s.
Matrix3c interaction_hamiltonian(double t, const CouplingSet& fields);

/// Time-ordered product of exp(-i H(t_mid) dt) over the grid, giving
/// U(t1 <- t0). Second-order accurate in dt.
Matrix3c propagate(const CouplingSet& fields, const TimeGrid& grid);

/// One protocol step: a non-negative envelope plus the signed target area.
/// For steps A and C the envelope drives (1,3) with the sign of the area;
/// for step B it is Omega_0, with Omega_23 = -i Omega_12 = Omega_0/sqrt(2).
struct StepPulse {
    ProtocolStep step = ProtocolStep::A;
    PulseEnvelope envelope = PulseEnvelope::off();
    double target_area = 0.0;
};

inline constexpr double kStepAArea = std::numbers::pi / 4;
inline constexpr double kStepBArea = std::numbers::pi / 2;
inline constexpr double kStepCArea = -std::numbers::pi / 4;

/// Three time-ordered, disjoint steps A, B, C.
class PulseSchedule {
public:
    /// Validates ordering and pulse areas; throws ConfigError.
    explicit PulseSchedule(std::array<StepPulse, 3> steps);

    /// Back-to-back pulses of equal duration (default 100 ns each).
    static PulseSchedule ideal(PulseShape shape = PulseShape::rectangular,
                               double step_duration = 100e-9, double gap = 0.0,
                               double step_c_area = kStepCArea);

    const std::array<StepPulse, 3>& steps() const { return steps_; }
    const StepPulse& step(ProtocolStep s) const { return steps_[static_cast<int>(s)]; }

    /// Drives active during one step, all three transitions present.
    BaseCouplings base_couplings(ProtocolStep s) const;

private:
    std::array<StepPulse, 3> steps_;
};

struct ProtocolResult {
    std::array<Matrix3c, 3> step_unitaries;  // A, B, C
    Matrix3c total;                          // U_C U_B U_A
};

/// Propagates each step on a grid of `steps_per_pulse` intervals with the
/// chirality-signed couplings.
ProtocolResult run_protocol(const PulseSchedule& schedule, Chirality q, int steps_per_pulse);

}  // namespace ctls
