#pragma once

#include <array>
#include <optional>

#include "ctls/linalg.hpp"
#include "ctls/pulse.hpp"

namespace ctls {

enum class Chirality { L, R };

const char* to_string(Chirality q);
Chirality parse_chirality(const char* name);

/// One of the three loop transitions, n < m, 1-based level indices.
enum class Transition { t12, t23, t13 };

inline constexpr std::array<Transition, 3> kTransitions{Transition::t12, Transition::t23,
                                                        Transition::t13};

/// 0-based (lower, upper) level indices of a transition.
std::array<int, 2> levels_of(Transition tr);

/// Drive on one transition. The Rabi frequency is prefactor * envelope(t);
/// a complex prefactor carries the fixed field phase.
struct DriveField {
    Transition transition = Transition::t12;
    Complex prefactor{1.0, 0.0};
    PulseEnvelope envelope = PulseEnvelope::off();
    double detuning = 0.0;         // rad/s, nu_mn - omega_m + omega_n
    double field_frequency = 0.0;  // rad/s, bookkeeping only

    Complex rabi(double t) const { return prefactor * envelope(t); }
};

/// Drives before the chirality sign rule is applied. Every transition must
/// be present (an inactive drive carries PulseEnvelope::off()).
struct BaseCouplings {
    std::array<std::optional<DriveField>, 3> fields;  // indexed like kTransitions

    std::optional<DriveField>& operator[](Transition tr) { return fields[static_cast<int>(tr)]; }
    const std::optional<DriveField>& operator[](Transition tr) const {
        return fields[static_cast<int>(tr)];
    }
};

/// Chirality-resolved drive set on the cyclic three-level system.
struct CouplingSet {
    std::array<DriveField, 3> fields;  // indexed like kTransitions
    Chirality chirality = Chirality::L;

    const DriveField& operator[](Transition tr) const { return fields[static_cast<int>(tr)]; }
    DriveField& operator[](Transition tr) { return fields[static_cast<int>(tr)]; }
};

/// Applies the enantiomer sign rule: the (1,3) amplitude seen by
/// left-handed molecules is the negated base amplitude, while right-handed
/// molecules see the base drives unchanged. Either way the loop phases of
/// the two enantiomers differ by pi. With this assignment the step
/// unitaries below compose to U_L = [[1,0,0],[0,0,-i],[0,-i,0]] and
/// U_R = [[0,1,0],[-1,0,0],[0,0,1]].
CouplingSet signed_couplings(const BaseCouplings& base, Chirality q);

/// arg(Omega_12 Omega_23 Omega_31) in [0, 2pi) at time t, with
/// Omega_31 = conj(Omega_13). Throws DomainError if any amplitude vanishes.
double overall_phase(const CouplingSet& couplings, double t);

enum class ProtocolStep { A, B, C };

/// Closed-form step unitaries in the basis {|1>, |2>, |3>}. Steps A and C
/// drive (1,3) with areas pi/4 and -pi/4 (signed per enantiomer as in
/// signed_couplings); step B is the pi/2 bright-state pulse, identical for
/// both enantiomers.
Matrix3c analytic_step_unitary(ProtocolStep step, Chirality q);

/// U_C U_B U_A.
Matrix3c total_unitary(Chirality q);

/// (i|1> + |3>)/sqrt(2), the state coupled to |2> during step B.
Vector3c bright_state(Chirality q);

}  // namespace ctls
