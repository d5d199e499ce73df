#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "ctls/density.hpp"
#include "ctls/propagator.hpp"
#include "ctls/rotor.hpp"
#include "ctls/thermal.hpp"

namespace ctls {

enum class CtlsMode { ro_vibrational, purely_rotational };

/// How the two subscripts of a written label J_{ab} are read: as (tau, M),
/// or as the prolate/oblate projections (Ka, Kc) with tau = Ka - Kc.
enum class Labeling { tau, ka_kc };

const char* to_string(CtlsMode mode);
const char* to_string(Labeling labeling);
CtlsMode parse_ctls_mode(const std::string& s);
Labeling parse_labeling(const std::string& s);

/// A CTLS level as written: vibrational quantum, J, and the two subscripts.
struct LevelLabel {
    int vib = 0;
    int J = 0;
    int tau = 0;  // first subscript (Ka under ka_kc)
    int M = 0;    // second subscript (Kc under ka_kc)

    bool operator==(const LevelLabel&) const = default;
};

struct Molecule {
    std::string name;
    RotationalConstants constants;
    std::vector<VibrationalMode> modes;  // modes[0] is the CTLS vibration

    bool operator==(const Molecule&) const = default;
};

Molecule propanediol_molecule();

struct CtlsConfig {
    CtlsMode mode = CtlsMode::ro_vibrational;
    Molecule molecule = propanediol_molecule();
    std::array<LevelLabel, 3> levels{};
    Labeling labeling = Labeling::tau;

    /// |1> = |g>|0_00>, |2> = |v2>|1_01>, |3> = |v2>|1_10> with v2 = 1 for
    /// the ro-vibrational loop and 0 for the purely rotational one.
    static CtlsConfig propanediol(CtlsMode mode);

    /// Throws ConfigError on a vibrational pattern inconsistent with `mode`
    /// or on labels that do not name a level.
    void validate() const;

    /// Same rotational labels, vibrational quanta set to the mode's pattern.
    CtlsConfig with_mode(CtlsMode m) const;

    std::array<RoVibLevel, 3> resolve() const;

    bool operator==(const CtlsConfig&) const = default;
};

struct TransferResult {
    OccupationTriple initial;
    OccupationTriple final_L;
    OccupationTriple final_R;
    double epsilon = 0.0;
    Temperatures temps;
};

enum class PropagationMethod { analytic, numeric };

/// Settings for the numeric route of final_states.
struct NumericProtocol {
    PulseSchedule schedule = PulseSchedule::ideal();
    int steps_per_pulse = 64;
};

DensityMatrix3 thermal_initial_state(const OccupationTriple& p);

/// (rho_L, rho_R) after the three-step protocol.
std::pair<DensityMatrix3, DensityMatrix3> final_states(
    const OccupationTriple& p, PropagationMethod method,
    const NumericProtocol& numeric = NumericProtocol{});

/// |p3 - p1| / (p3 + p1). Throws DomainError if p1 = p3 = 0.
double enantiomeric_excess(const OccupationTriple& p);

/// |rho_L(2,2) - rho_R(2,2)| / (rho_L(2,2) + rho_R(2,2)).
double enantiomeric_excess(const DensityMatrix3& rho_l, const DensityMatrix3& rho_r);

/// |1 - 2/(1 + r)| with r the Boltzmann ratio of |1> to |3>, evaluated in
/// log space; returns the exact limit 1 once |log r| exceeds 500.
double enantiomeric_excess(const std::array<RoVibLevel, 3>& levels, const Temperatures& temps);

/// Thermal populations through the protocol to the excess, cross-checking
/// the population and Boltzmann-ratio forms of the excess.
TransferResult run_transfer(const CtlsConfig& config, const Temperatures& temps,
                            PropagationMethod method = PropagationMethod::analytic);

/// Temperature grid, logarithmic or linear, endpoints included.
struct SweepGrid {
    double t_rot_min_k = 1e-3;
    double t_rot_max_k = 300.0;
    int points = 200;
    bool log_scale = true;

    void validate() const;
    std::vector<double> values() const;
    bool operator==(const SweepGrid&) const = default;
};

struct ExcessPoint {
    double t_rot_k;
    double epsilon;
};

struct PopulationPoint {
    double t_rot_k;
    OccupationTriple p;
};

struct YieldPoint {
    double t_rot_k;
    double P1;
    double P2;
    double P3;
    double eta;
};

std::vector<ExcessPoint> excess_sweep(const CtlsConfig& config, const std::vector<double>& t_rot,
                                      double t_vib_k = 300.0);

std::vector<PopulationPoint> population_sweep(const CtlsConfig& config,
                                              const std::vector<double>& t_rot,
                                              double t_vib_k = 300.0);

std::vector<YieldPoint> yield_sweep(const CtlsConfig& config, const std::vector<double>& t_rot,
                                    double t_vib_k = 300.0, double rel_tol = 1e-8);

}  // namespace ctls
