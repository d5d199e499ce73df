#include "ctls/transfer.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ctls/error.hpp"

namespace ctls {

namespace {

// Beyond this |log r| the excess equals 1 to double precision.
constexpr double kLogRatioSaturation = 500.0;
constexpr double kExcessCrossCheck = 1e-9;

std::string level_name(int n) { return "ctls.levels[" + std::to_string(n) + "]"; }

std::array<int, 3> vib_pattern(CtlsMode mode) {
    return mode == CtlsMode::ro_vibrational ? std::array<int, 3>{0, 1, 1}
                                            : std::array<int, 3>{0, 0, 0};
}

// tau and M for a label under the chosen reading.
std::pair<int, int> effective_tau_m(const LevelLabel& l, Labeling labeling, int n) {
    if (labeling == Labeling::tau) {
        if (l.tau < -l.J || l.tau > l.J) {
            throw ConfigError(level_name(n) + ".tau must lie in [-J, J]");
        }
        if (l.M < -l.J || l.M > l.J) throw ConfigError(level_name(n) + ".M must lie in [-J, J]");
        return {l.tau, l.M};
    }
    const int ka = l.tau;
    const int kc = l.M;
    if (ka < 0 || kc < 0 || ka > l.J || kc > l.J || (ka + kc != l.J && ka + kc != l.J + 1)) {
        throw ConfigError(level_name(n) + ": (Ka, Kc) = (" + std::to_string(ka) + ", " +
                          std::to_string(kc) + ") is not a valid label for J = " +
                          std::to_string(l.J));
    }
    return {ka - kc, 0};
}

// log of P_1 / P_3 for one degree of freedom; T = 0 gives the signed limit.
double log_ratio_term(double e1, double e3, double t_kelvin) {
    const double gap = e3 - e1;
    if (gap == 0.0) return 0.0;
    if (t_kelvin > 0.0) return boltzmann_exponent(gap, t_kelvin);
    return gap > 0.0 ? std::numeric_limits<double>::infinity()
                     : -std::numeric_limits<double>::infinity();
}

}  // namespace

const char* to_string(CtlsMode mode) {
    return mode == CtlsMode::ro_vibrational ? "ro_vibrational" : "purely_rotational";
}

const char* to_string(Labeling labeling) {
    return labeling == Labeling::tau ? "tau" : "ka_kc";
}

CtlsMode parse_ctls_mode(const std::string& s) {
    if (s == "ro_vibrational") return CtlsMode::ro_vibrational;
    if (s == "purely_rotational") return CtlsMode::purely_rotational;
    throw ConfigError("ctls.mode must be ro_vibrational or purely_rotational, got '" + s + "'");
}

Labeling parse_labeling(const std::string& s) {
    if (s == "tau") return Labeling::tau;
    if (s == "ka_kc") return Labeling::ka_kc;
    throw ConfigError("labeling must be tau or ka_kc, got '" + s + "'");
}

Molecule propanediol_molecule() {
    return {"1,2-propanediol", propanediol_constants(), {oh_stretch_mode()}};
}

CtlsConfig CtlsConfig::propanediol(CtlsMode mode) {
    CtlsConfig c;
    c.mode = mode;
    c.molecule = propanediol_molecule();
    c.levels = {LevelLabel{0, 0, 0, 0}, LevelLabel{0, 1, 0, 1}, LevelLabel{0, 1, 1, 0}};
    c.labeling = Labeling::tau;
    return c.with_mode(mode);
}

CtlsConfig CtlsConfig::with_mode(CtlsMode m) const {
    CtlsConfig c = *this;
    c.mode = m;
    const auto pattern = vib_pattern(m);
    for (int n = 0; n < 3; ++n) c.levels[n].vib = pattern[n];
    return c;
}

void CtlsConfig::validate() const {
    const auto pattern = vib_pattern(mode);
    for (int n = 0; n < 3; ++n) {
        const LevelLabel& l = levels[n];
        if (l.vib != pattern[n]) {
            throw ConfigError(level_name(n) + ".vib must be " + std::to_string(pattern[n]) +
                              " in " + to_string(mode) + " mode");
        }
        if (l.J < 0) throw ConfigError(level_name(n) + ".J must be non-negative");
        effective_tau_m(l, labeling, n);
    }
    if (mode == CtlsMode::ro_vibrational) {
        if (molecule.modes.empty()) {
            throw ConfigError("ro_vibrational mode needs at least one vibrational mode");
        }
    }
    for (const auto& m : molecule.modes) {
        try {
            m.validate();
        } catch (const DomainError& e) {
            throw ConfigError(e.what());
        }
    }
    for (int a = 0; a < 3; ++a) {
        for (int b = a + 1; b < 3; ++b) {
            const auto ta = effective_tau_m(levels[a], labeling, a);
            const auto tb = effective_tau_m(levels[b], labeling, b);
            if (levels[a].vib == levels[b].vib && levels[a].J == levels[b].J && ta == tb) {
                throw ConfigError(level_name(a) + " and " + level_name(b) +
                                  " name the same state");
            }
        }
    }
}

std::array<RoVibLevel, 3> CtlsConfig::resolve() const {
    validate();
    std::array<RoVibLevel, 3> out;
    for (int n = 0; n < 3; ++n) {
        const LevelLabel& l = levels[n];
        const auto [tau, m] = effective_tau_m(l, labeling, n);
        const double vib_thz = l.vib == 0 ? 0.0 : l.vib * molecule.modes.front().frequency_thz;
        const auto rot = rotor_levels(l.J, molecule.constants);
        out[n] = RoVibLevel{l.vib, vib_thz, rot[tau + l.J], m};
    }
    return out;
}

DensityMatrix3 thermal_initial_state(const OccupationTriple& p) {
    return DensityMatrix3::diagonal(p);
}

std::pair<DensityMatrix3, DensityMatrix3> final_states(const OccupationTriple& p,
                                                        PropagationMethod method,
                                                        const NumericProtocol& numeric) {
    const DensityMatrix3 rho0 = thermal_initial_state(p);
    Matrix3c u_l;
    Matrix3c u_r;
    if (method == PropagationMethod::analytic) {
        u_l = total_unitary(Chirality::L);
        u_r = total_unitary(Chirality::R);
    } else {
        u_l = run_protocol(numeric.schedule, Chirality::L, numeric.steps_per_pulse).total;
        u_r = run_protocol(numeric.schedule, Chirality::R, numeric.steps_per_pulse).total;
    }
    return {apply_to_density(u_l, rho0), apply_to_density(u_r, rho0)};
}

double enantiomeric_excess(const OccupationTriple& p) {
    const double sum = p.p1 + p.p3;
    if (!(sum > 0.0)) throw DomainError("enantiomeric excess undefined for p1 = p3 = 0");
    return std::abs(p.p3 - p.p1) / sum;
}

double enantiomeric_excess(const DensityMatrix3& rho_l, const DensityMatrix3& rho_r) {
    const double l = rho_l.population(1);
    const double r = rho_r.population(1);
    if (!(l + r > 0.0)) throw DomainError("enantiomeric excess undefined: state |2> is empty");
    return std::abs(l - r) / (l + r);
}

double enantiomeric_excess(const std::array<RoVibLevel, 3>& levels, const Temperatures& temps) {
    temps.validate();
    const double log_r =
        log_ratio_term(levels[0].vib_energy_ghz(), levels[2].vib_energy_ghz(), temps.t_vib_k) +
        log_ratio_term(levels[0].rot.energy_ghz, levels[2].rot.energy_ghz, temps.t_rot_k);
    if (std::isnan(log_r)) {
        // Competing zero-temperature limits; defer to the limiting populations.
        return enantiomeric_excess(ctls_populations(levels, temps));
    }
    if (std::abs(log_r) > kLogRatioSaturation) return 1.0;
    return std::abs(1.0 - 2.0 / (1.0 + std::exp(log_r)));
}

TransferResult run_transfer(const CtlsConfig& config, const Temperatures& temps,
                            PropagationMethod method) {
    const auto levels = config.resolve();
    TransferResult result;
    result.temps = temps;
    result.initial = ctls_populations(levels, temps);
    const auto [rho_l, rho_r] = final_states(result.initial, method);
    result.final_L = rho_l.populations();
    result.final_R = rho_r.populations();

    const double from_ratio = enantiomeric_excess(levels, temps);
    const double from_populations = enantiomeric_excess(rho_l, rho_r);
    if (std::abs(from_ratio - from_populations) > kExcessCrossCheck) {
        throw NumericalError("enantiomeric excess cross-check failed: " +
                             std::to_string(from_ratio) + " vs " +
                             std::to_string(from_populations));
    }
    result.epsilon = from_ratio;
    return result;
}

void SweepGrid::validate() const {
    if (points < 1) throw ConfigError("sweep.points must be >= 1");
    if (!(t_rot_min_k >= 0.0) || !std::isfinite(t_rot_max_k) || t_rot_max_k < t_rot_min_k) {
        throw ConfigError("sweep range must satisfy 0 <= t_rot_min_k <= t_rot_max_k");
    }
    if (log_scale && !(t_rot_min_k > 0.0)) {
        throw ConfigError("sweep.t_rot_min_k must be positive for a logarithmic grid");
    }
    if (points == 1 && t_rot_min_k != t_rot_max_k) {
        throw ConfigError("a single-point sweep needs t_rot_min_k = t_rot_max_k");
    }
}

std::vector<double> SweepGrid::values() const {
    validate();
    std::vector<double> out(points);
    if (points == 1) {
        out[0] = t_rot_min_k;
        return out;
    }
    for (int i = 0; i < points; ++i) {
        const double f = double(i) / (points - 1);
        out[i] = log_scale ? std::exp(std::log(t_rot_min_k) +
                                      f * (std::log(t_rot_max_k) - std::log(t_rot_min_k)))
                           : t_rot_min_k + f * (t_rot_max_k - t_rot_min_k);
    }
    out.front() = t_rot_min_k;
    out.back() = t_rot_max_k;
    return out;
}

std::vector<ExcessPoint> excess_sweep(const CtlsConfig& config, const std::vector<double>& t_rot,
                                      double t_vib_k) {
    const auto levels = config.resolve();
    std::vector<ExcessPoint> out;
    out.reserve(t_rot.size());
    for (double t : t_rot) {
        const Temperatures temps{t, t_vib_k};
        const double eps = enantiomeric_excess(levels, temps);
        const auto p = ctls_populations(levels, temps);
        if (p.p1 + p.p3 > 0.0 && std::abs(enantiomeric_excess(p) - eps) > kExcessCrossCheck) {
            throw NumericalError("enantiomeric excess cross-check failed at T_rot = " +
                                 std::to_string(t) + " K");
        }
        out.push_back({t, eps});
    }
    return out;
}

std::vector<PopulationPoint> population_sweep(const CtlsConfig& config,
                                              const std::vector<double>& t_rot, double t_vib_k) {
    const auto levels = config.resolve();
    std::vector<PopulationPoint> out;
    out.reserve(t_rot.size());
    for (double t : t_rot) out.push_back({t, ctls_populations(levels, {t, t_vib_k})});
    return out;
}

std::vector<YieldPoint> yield_sweep(const CtlsConfig& config, const std::vector<double>& t_rot,
                                    double t_vib_k, double rel_tol) {
    const auto levels = config.resolve();
    const RotorSpectrum spectrum(config.molecule.constants, kPartitionJCap);
    const auto& modes = config.molecule.modes;
    std::vector<YieldPoint> out;
    out.reserve(t_rot.size());
    for (double t : t_rot) {
        const Temperatures temps{t, t_vib_k};
        std::array<double, 3> p{};
        for (int n = 0; n < 3; ++n) p[n] = global_proportion(levels[n], spectrum, modes, temps, rel_tol);
        out.push_back({t, p[0], p[1], p[2], yield_eta(p[0])});
    }
    return out;
}

}  // namespace ctls
