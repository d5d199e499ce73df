#include "ctls/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ctls/error.hpp"

namespace ctls {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_rel_tol(double rel_tol) {
    if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw DomainError("rel_tol must lie in (0, 1)");
}

// log of the Boltzmann factor exp(-E/kT), with the T = 0 limit taken
// relative to the lowest energy among the candidates.
double log_factor(double energy_ghz, double t_kelvin, double lowest_ghz) {
    if (t_kelvin > 0.0) return -boltzmann_exponent(energy_ghz, t_kelvin);
    return energy_ghz == lowest_ghz ? 0.0 : -kInf;
}

double partition_over_blocks(const RotorSpectrum* spectrum, const RotationalConstants& constants,
                             double t_rot_k, double rel_tol) {
    if (!(t_rot_k > 0.0)) throw DomainError("rotational temperature must be positive");
    require_rel_tol(rel_tol);
    const int j_limit = spectrum ? spectrum->j_max() : kPartitionJCap;

    double sum = 0.0;
    double previous = 0.0;
    std::vector<RotorLevel> scratch;
    for (int J = 0; J <= j_limit; ++J) {
        std::span<const RotorLevel> block;
        if (spectrum) {
            block = spectrum->block(J);
        } else {
            scratch = rotor_levels(J, constants);
            block = scratch;
        }
        double contribution = 0.0;
        for (const auto& level : block) {
            contribution += level.degeneracy * std::exp(-boltzmann_exponent(level.energy_ghz, t_rot_k));
        }
        sum += contribution;
        if (J > 0 && contribution < previous) {
            const double ratio = contribution / previous;
            const double tail = contribution / (1.0 - ratio);
            if (tail < rel_tol * sum) return sum;
        }
        previous = contribution;
    }
    if (spectrum && spectrum->j_max() < kPartitionJCap) {
        throw NumericalError("rotational partition sum not converged within precomputed J_max = " +
                             std::to_string(spectrum->j_max()));
    }
    throw NumericalError("rotational partition sum not converged below J = " +
                         std::to_string(kPartitionJCap) + " at T_rot = " + std::to_string(t_rot_k) +
                         " K");
}

}  // namespace

void Temperatures::validate() const {
    if (!(t_rot_k >= 0.0) || !std::isfinite(t_rot_k)) {
        throw DomainError("rotational temperature must be finite and non-negative");
    }
    if (!(t_vib_k >= 0.0) || !std::isfinite(t_vib_k)) {
        throw DomainError("vibrational temperature must be finite and non-negative");
    }
}

void VibrationalMode::validate() const {
    if (!(frequency_thz > 0.0) || !std::isfinite(frequency_thz)) {
        throw DomainError("vibrational mode '" + name + "': frequency must be positive");
    }
    if (max_quanta < 1) {
        throw DomainError("vibrational mode '" + name + "': max_quanta must be >= 1");
    }
}

VibrationalMode oh_stretch_mode() { return {"OH-stretch", 100.9500, 5}; }

void OccupationTriple::validate() const {
    for (double p : as_array()) {
        if (!(p >= 0.0 && p <= 1.0)) throw DomainError("occupation outside [0, 1]");
    }
    if (std::abs(p1 + p2 + p3 - 1.0) > 1e-12) throw DomainError("occupations must sum to 1");
}

double boltzmann_exponent(double level_freq_ghz, double t_kelvin) {
    if (!(t_kelvin > 0.0)) throw DomainError("temperature must be positive");
    return level_freq_ghz * kKelvinPerGhz / t_kelvin;
}

OccupationTriple ctls_populations(const std::array<RoVibLevel, 3>& levels,
                                  const Temperatures& temps) {
    temps.validate();
    double lowest_vib = kInf;
    double lowest_rot = kInf;
    for (const auto& l : levels) {
        lowest_vib = std::min(lowest_vib, l.vib_energy_ghz());
        lowest_rot = std::min(lowest_rot, l.rot.energy_ghz);
    }
    std::array<double, 3> logw{};
    for (std::size_t n = 0; n < 3; ++n) {
        logw[n] = log_factor(levels[n].vib_energy_ghz(), temps.t_vib_k, lowest_vib) +
                  log_factor(levels[n].rot.energy_ghz, temps.t_rot_k, lowest_rot);
    }
    const double peak = *std::max_element(logw.begin(), logw.end());
    std::array<double, 3> w{};
    double z = 0.0;
    for (std::size_t n = 0; n < 3; ++n) {
        w[n] = std::exp(logw[n] - peak);
        z += w[n];
    }
    return {w[0] / z, w[1] / z, w[2] / z};
}

double rotational_partition(const RotationalConstants& constants, double t_rot_k,
                            double rel_tol) {
    return partition_over_blocks(nullptr, constants, t_rot_k, rel_tol);
}

double rotational_partition(const RotorSpectrum& spectrum, double t_rot_k, double rel_tol) {
    return partition_over_blocks(&spectrum, spectrum.constants(), t_rot_k, rel_tol);
}

double vibrational_partition(std::span<const VibrationalMode> modes, double t_vib_k) {
    if (!(t_vib_k >= 0.0)) throw DomainError("vibrational temperature must be non-negative");
    double z = 1.0;
    for (const auto& mode : modes) {
        mode.validate();
        if (t_vib_k == 0.0) continue;  // only v = 0 survives
        const double x = boltzmann_exponent(1000.0 * mode.frequency_thz, t_vib_k);
        double ladder = 0.0;
        for (int v = 0; v <= mode.max_quanta; ++v) ladder += std::exp(-v * x);
        z *= ladder;
    }
    return z;
}

namespace {

double proportion_impl(const RoVibLevel& level, const RotorSpectrum* spectrum,
                       const RotationalConstants& constants,
                       std::span<const VibrationalMode> modes, const Temperatures& temps,
                       double rel_tol) {
    temps.validate();
    require_rel_tol(rel_tol);
    // The rotational and vibrational ground energies are both zero.
    const double vib = std::exp(log_factor(level.vib_energy_ghz(), temps.t_vib_k, 0.0));
    const double rot = std::exp(log_factor(level.rot.energy_ghz, temps.t_rot_k, 0.0));
    const double z_vib = vibrational_partition(modes, temps.t_vib_k);
    double z_rot = 1.0;
    if (temps.t_rot_k > 0.0) {
        z_rot = spectrum ? rotational_partition(*spectrum, temps.t_rot_k, rel_tol)
                         : rotational_partition(constants, temps.t_rot_k, rel_tol);
    }
    return vib * rot / (z_vib * z_rot);
}

}  // namespace

double global_proportion(const RoVibLevel& level, const RotationalConstants& constants,
                         std::span<const VibrationalMode> modes, const Temperatures& temps,
                         double rel_tol) {
    return proportion_impl(level, nullptr, constants, modes, temps, rel_tol);
}

double global_proportion(const RoVibLevel& level, const RotorSpectrum& spectrum,
                         std::span<const VibrationalMode> modes, const Temperatures& temps,
                         double rel_tol) {
    return proportion_impl(level, &spectrum, spectrum.constants(), modes, temps, rel_tol);
}

double yield_eta(double p1) {
    if (!(p1 >= 0.0 && p1 <= 1.0)) throw DomainError("P_1 must lie in [0, 1]");
    return 0.5 * p1;
}

}  // namespace ctls
