#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "ctls/rotor.hpp"

namespace ctls {

/// Exact SI values.
inline constexpr double kPlanck = 6.62607015e-34;   // J s
inline constexpr double kBoltzmann = 1.380649e-23;  // J / K

/// h / k_B in kelvin per GHz.
inline constexpr double kKelvinPerGhz = kPlanck * 1e9 / kBoltzmann;

/// Hard cap on J when summing the rotational partition function.
inline constexpr int kPartitionJCap = 200;

/// Effective rotational and vibrational temperatures in kelvin. Zero is
/// allowed and handled as the exact low-temperature limit.
struct Temperatures {
    double t_rot_k = 10.0;
    double t_vib_k = 300.0;

    void validate() const;
};

/// Harmonic vibrational ladder v * frequency, v = 0..max_quanta.
struct VibrationalMode {
    std::string name;
    double frequency_thz = 0.0;
    int max_quanta = 5;

    void validate() const;
    bool operator==(const VibrationalMode&) const = default;
};

/// OH stretch of 1,2-propanediol, 100.9500 THz.
VibrationalMode oh_stretch_mode();

/// Product state |v>|J_tau M>. Rotational energy is independent of v.
struct RoVibLevel {
    int vib_quantum = 0;
    double vib_energy_thz = 0.0;
    RotorLevel rot;
    int M = 0;

    double vib_energy_ghz() const { return 1000.0 * vib_energy_thz; }
    double total_energy_ghz() const { return vib_energy_ghz() + rot.energy_ghz; }
};

/// CTLS occupations p1, p2, p3.
struct OccupationTriple {
    double p1 = 1.0;
    double p2 = 0.0;
    double p3 = 0.0;

    /// Throws DomainError unless each p is in [0, 1] and the sum is 1 within 1e-12.
    void validate() const;
    std::array<double, 3> as_array() const { return {p1, p2, p3}; }
};

/// h f / (k_B T) for a level frequency f in GHz. T must be positive.
double boltzmann_exponent(double level_freq_ghz, double t_kelvin);

/// Three-level Boltzmann populations with separate rotational and
/// vibrational temperatures. No M degeneracy: the loop addresses single
/// sublevels.
OccupationTriple ctls_populations(const std::array<RoVibLevel, 3>& levels,
                                  const Temperatures& temps);

/// Degeneracy-weighted rotational partition sum, truncated once a J block
/// and the geometric estimate of the remaining tail fall below
/// rel_tol * (partial sum). Throws NumericalError past kPartitionJCap.
double rotational_partition(const RotationalConstants& constants, double t_rot_k,
                            double rel_tol = 1e-8);

/// Same sum over a precomputed spectrum. Throws NumericalError if the
/// spectrum runs out before convergence.
double rotational_partition(const RotorSpectrum& spectrum, double t_rot_k,
                            double rel_tol = 1e-8);

/// Product over modes of the truncated harmonic ladder sums.
double vibrational_partition(std::span<const VibrationalMode> modes, double t_vib_k);

/// Proportion of one ro-vibrational state relative to the full manifold.
double global_proportion(const RoVibLevel& level, const RotationalConstants& constants,
                         std::span<const VibrationalMode> modes, const Temperatures& temps,
                         double rel_tol = 1e-8);

/// Overload reusing a precomputed spectrum for sweeps.
double global_proportion(const RoVibLevel& level, const RotorSpectrum& spectrum,
                         std::span<const VibrationalMode> modes, const Temperatures& temps,
                         double rel_tol = 1e-8);

/// Pure-enantiomer yield of one pass from a racemic mixture: P_1 / 2.
double yield_eta(double p1);

}  // namespace ctls
