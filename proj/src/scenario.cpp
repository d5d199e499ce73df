#include "ctls/scenario.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "ctls/error.hpp"

namespace ctls {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

struct Entry {
    std::string value;
    int line = 0;
    bool used = false;
};

// Key/value table that tracks which keys were consumed.
class KeyTable {
public:
    KeyTable(std::string_view text, std::string source) : source_(std::move(source)) {
        int line_no = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            const auto end = std::min(text.find('\n', pos), text.size());
            ++line_no;
            const auto line = trim(text.substr(pos, end - pos));
            pos = end + 1;
            if (line.empty() || line.front() == '#') continue;
            const auto eq = line.find('=');
            if (eq == std::string_view::npos) {
                fail(line_no, "expected 'key = value'");
            }
            const std::string key(trim(line.substr(0, eq)));
            const std::string value(trim(line.substr(eq + 1)));
            if (key.empty()) fail(line_no, "empty key");
            if (!entries_.emplace(key, Entry{value, line_no}).second) {
                fail(line_no, "duplicate key '" + key + "'");
            }
        }
    }

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    std::optional<std::string> get(const std::string& key) {
        auto it = entries_.find(key);
        if (it == entries_.end()) return std::nullopt;
        it->second.used = true;
        return it->second.value;
    }

    std::string require(const std::string& key) {
        auto v = get(key);
        if (!v) throw ScenarioError(source_ + ": missing required key '" + key + "'");
        return *v;
    }

    double number(const std::string& key, const std::string& text) const {
        double v = 0.0;
        const auto* first = text.data();
        const auto* last = text.data() + text.size();
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
            field_error(key, "expected a finite number, got '" + text + "'");
        }
        return v;
    }

    int integer(const std::string& key, const std::string& text) const {
        int v = 0;
        const auto* last = text.data() + text.size();
        auto [ptr, ec] = std::from_chars(text.data(), last, v);
        if (ec != std::errc() || ptr != last) {
            field_error(key, "expected an integer, got '" + text + "'");
        }
        return v;
    }

    bool boolean(const std::string& key, const std::string& text) const {
        if (text == "true") return true;
        if (text == "false") return false;
        field_error(key, "expected true or false, got '" + text + "'");
    }

    double positive(const std::string& key) {
        const double v = number(key, require(key));
        if (!(v > 0.0)) field_error(key, "must be positive");
        return v;
    }

    double non_negative(const std::string& key, double fallback) {
        auto text = get(key);
        if (!text) return fallback;
        const double v = number(key, *text);
        if (v < 0.0) field_error(key, "must be non-negative");
        return v;
    }

    /// Count of contiguous indices i for which some key starts with prefix[i].
    int array_length(const std::string& prefix) const {
        int n = 0;
        while (true) {
            const std::string head = prefix + "[" + std::to_string(n) + "].";
            auto it = entries_.lower_bound(head);
            if (it == entries_.end() || it->first.compare(0, head.size(), head) != 0) break;
            ++n;
        }
        return n;
    }

    void reject_unused() const {
        for (const auto& [key, entry] : entries_) {
            if (!entry.used) fail(entry.line, "unknown key '" + key + "'");
        }
    }

    [[noreturn]] void field_error(const std::string& key, const std::string& what) const {
        auto it = entries_.find(key);
        const std::string where = it == entries_.end()
                                      ? source_
                                      : source_ + ":" + std::to_string(it->second.line);
        throw ScenarioError(where + ": " + key + ": " + what);
    }

private:
    [[noreturn]] void fail(int line, const std::string& what) const {
        throw ScenarioError(source_ + ":" + std::to_string(line) + ": " + what);
    }

    std::string source_;
    std::map<std::string, Entry> entries_;
};

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

ScenarioFile ScenarioFile::propanediol() {
    return {CtlsConfig::propanediol(CtlsMode::ro_vibrational), Temperatures{10.0, 300.0},
            SweepGrid{}};
}

ScenarioFile parse_scenario_text(std::string_view text, const std::string& source) {
    KeyTable keys(text, source);
    ScenarioFile s = ScenarioFile::propanediol();

    const std::string name = keys.require("molecule.name");
    if (name.empty()) keys.field_error("molecule.name", "must not be empty");

    const std::string rc = "molecule.rotational_constants_ghz.";
    const double a = keys.positive(rc + "A");
    const double b = keys.positive(rc + "B");
    const double c = keys.positive(rc + "C");
    if (!(a >= b && b >= c)) {
        throw ScenarioError(source + ": molecule.rotational_constants_ghz: ordering rule A >= B >= C violated");
    }

    std::vector<VibrationalMode> modes;
    const int n_modes = keys.array_length("molecule.vibrational_modes");
    for (int i = 0; i < n_modes; ++i) {
        const std::string p = "molecule.vibrational_modes[" + std::to_string(i) + "].";
        VibrationalMode m;
        m.name = keys.get(p + "name").value_or("mode" + std::to_string(i));
        m.frequency_thz = keys.positive(p + "frequency_thz");
        if (auto q = keys.get(p + "max_quanta")) {
            m.max_quanta = keys.integer(p + "max_quanta", *q);
            if (m.max_quanta < 1) keys.field_error(p + "max_quanta", "must be >= 1");
        }
        modes.push_back(m);
    }
    s.config.molecule = Molecule{name, RotationalConstants(a, b, c), modes};

    try {
        s.config.mode = parse_ctls_mode(keys.require("ctls.mode"));
        if (auto l = keys.get("labeling")) s.config.labeling = parse_labeling(*l);
    } catch (const ConfigError& e) {
        throw ScenarioError(source + ": " + e.what());
    }

    if (keys.array_length("ctls.levels") != 3 || keys.has("ctls.levels[3].J")) {
        throw ScenarioError(source + ": ctls.levels must list exactly three levels [0], [1], [2]");
    }
    const std::array<int, 3> default_vib =
        s.config.mode == CtlsMode::ro_vibrational ? std::array<int, 3>{0, 1, 1}
                                                  : std::array<int, 3>{0, 0, 0};
    for (int i = 0; i < 3; ++i) {
        const std::string p = "ctls.levels[" + std::to_string(i) + "].";
        LevelLabel& l = s.config.levels[i];
        l.vib = default_vib[i];
        if (auto v = keys.get(p + "vib")) l.vib = keys.integer(p + "vib", *v);
        l.J = keys.integer(p + "J", keys.require(p + "J"));
        l.tau = keys.integer(p + "tau", keys.require(p + "tau"));
        l.M = keys.integer(p + "M", keys.get(p + "M").value_or("0"));
    }

    s.temperatures.t_rot_k = keys.non_negative("temperatures.t_rot_k", 10.0);
    s.temperatures.t_vib_k = keys.non_negative("temperatures.t_vib_k", 300.0);

    if (auto v = keys.get("sweep.t_rot_min_k")) s.sweep.t_rot_min_k = keys.number("sweep.t_rot_min_k", *v);
    if (auto v = keys.get("sweep.t_rot_max_k")) s.sweep.t_rot_max_k = keys.number("sweep.t_rot_max_k", *v);
    if (auto v = keys.get("sweep.points")) s.sweep.points = keys.integer("sweep.points", *v);
    if (auto v = keys.get("sweep.log_scale")) s.sweep.log_scale = keys.boolean("sweep.log_scale", *v);

    keys.reject_unused();

    try {
        s.config.validate();
        s.sweep.validate();
    } catch (const ConfigError& e) {
        throw ScenarioError(source + ": " + e.what());
    }
    return s;
}

ScenarioFile parse_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ScenarioIoError("cannot open scenario file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw ScenarioIoError("error reading scenario file '" + path + "'");
    return parse_scenario_text(buf.str(), path);
}

std::string dump_scenario(const ScenarioFile& s) {
    std::ostringstream out;
    const auto& mol = s.config.molecule;
    out << "molecule.name = " << mol.name << '\n';
    out << "molecule.rotational_constants_ghz.A = " << format_double(mol.constants.A()) << '\n';
    out << "molecule.rotational_constants_ghz.B = " << format_double(mol.constants.B()) << '\n';
    out << "molecule.rotational_constants_ghz.C = " << format_double(mol.constants.C()) << '\n';
    for (std::size_t i = 0; i < mol.modes.size(); ++i) {
        const std::string p = "molecule.vibrational_modes[" + std::to_string(i) + "].";
        out << p << "name = " << mol.modes[i].name << '\n';
        out << p << "frequency_thz = " << format_double(mol.modes[i].frequency_thz) << '\n';
        out << p << "max_quanta = " << mol.modes[i].max_quanta << '\n';
    }
    out << "ctls.mode = " << to_string(s.config.mode) << '\n';
    for (int i = 0; i < 3; ++i) {
        const std::string p = "ctls.levels[" + std::to_string(i) + "].";
        const auto& l = s.config.levels[i];
        out << p << "vib = " << l.vib << '\n';
        out << p << "J = " << l.J << '\n';
        out << p << "tau = " << l.tau << '\n';
        out << p << "M = " << l.M << '\n';
    }
    out << "temperatures.t_rot_k = " << format_double(s.temperatures.t_rot_k) << '\n';
    out << "temperatures.t_vib_k = " << format_double(s.temperatures.t_vib_k) << '\n';
    out << "sweep.t_rot_min_k = " << format_double(s.sweep.t_rot_min_k) << '\n';
    out << "sweep.t_rot_max_k = " << format_double(s.sweep.t_rot_max_k) << '\n';
    out << "sweep.points = " << s.sweep.points << '\n';
    out << "sweep.log_scale = " << (s.sweep.log_scale ? "true" : "false") << '\n';
    out << "labeling = " << to_string(s.config.labeling) << '\n';
    return out.str();
}

}  // namespace ctls
