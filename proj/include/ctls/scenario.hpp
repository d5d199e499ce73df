#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "ctls/thermal.hpp"
#include "ctls/transfer.hpp"

namespace ctls {

/// Scenario file could not be read.
class ScenarioIoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Scenario file is malformed or violates a field constraint. The message
/// names the offending key.
class ScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Molecule, CTLS selection, temperatures and sweep grid for one run.
///
/// On disk this is a flat list of `dotted.key = value` lines; `#` starts a
/// comment line. Recognized keys:
///
///     molecule.name
///     molecule.rotational_constants_ghz.{A,B,C}
///     molecule.vibrational_modes[i].{name,frequency_thz,max_quanta}
///     ctls.mode                      ro_vibrational | purely_rotational
///     ctls.levels[i].{vib,J,tau,M}   i = 0, 1, 2
///     temperatures.{t_rot_k,t_vib_k}
///     sweep.{t_rot_min_k,t_rot_max_k,points,log_scale}
///     labeling                       tau | ka_kc
///
/// Under `labeling = ka_kc` the `tau` and `M` fields hold the two label
/// subscripts read as Ka and Kc.
struct ScenarioFile {
    CtlsConfig config;
    Temperatures temperatures;
    SweepGrid sweep;

    static ScenarioFile propanediol();

    bool operator==(const ScenarioFile& other) const {
        return config == other.config && temperatures.t_rot_k == other.temperatures.t_rot_k &&
               temperatures.t_vib_k == other.temperatures.t_vib_k && sweep == other.sweep;
    }
};

/// Throws ScenarioIoError if the file cannot be read, ScenarioError otherwise.
ScenarioFile parse_scenario(const std::string& path);

ScenarioFile parse_scenario_text(std::string_view text, const std::string& source = "<string>");

/// Canonical text form; parse_scenario_text(dump_scenario(s)) == s.
std::string dump_scenario(const ScenarioFile& scenario);

}  // namespace ctls
