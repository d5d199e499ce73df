#include "ctls/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "ctls/error.hpp"
#include "ctls/propagator.hpp"
#include "ctls/report.hpp"
#include "ctls/scenario.hpp"
#include "ctls/transfer.hpp"

namespace ctls::cli {

namespace {

struct Options {
    std::string scenario_path;
    std::string output_path;
    std::string format = "csv";
    std::string labeling;
    bool dump_config = false;

    int jmax = 2;

    std::optional<double> t_rot;
    std::optional<double> t_vib;
    bool sweep = false;

    std::string chirality = "both";
    std::string shape = "rectangular";
    int steps = 256;
    std::optional<double> step_c_area;

    double rel_tol = 1e-8;

    std::string figure;
    std::string plotscript_path;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class OutputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

ScenarioFile load_scenario(const Options& opt) {
    std::string path = opt.scenario_path;
    if (path.empty()) {
        if (const char* env = std::getenv("CTLS_SCENARIO_PATH"); env && *env) path = env;
    }
    ScenarioFile s = path.empty() ? ScenarioFile::propanediol() : parse_scenario(path);
    if (!opt.labeling.empty()) {
        try {
            s.config.labeling = parse_labeling(opt.labeling);
            s.config.validate();
        } catch (const ConfigError& e) {
            throw ScenarioError(e.what());
        }
    }
    return s;
}

Temperatures temperatures(const ScenarioFile& s, const Options& opt) {
    Temperatures t = s.temperatures;
    if (opt.t_rot) t.t_rot_k = *opt.t_rot;
    if (opt.t_vib) t.t_vib_k = *opt.t_vib;
    t.validate();
    return t;
}

Table population_table(const std::vector<PopulationPoint>& points) {
    Table t{"populations", {"t_rot_k", "p1", "p2", "p3"}, {}};
    for (const auto& pt : points) t.add_row({pt.t_rot_k, pt.p.p1, pt.p.p2, pt.p.p3});
    return t;
}

Table yield_table(const std::vector<YieldPoint>& points) {
    Table t{"yield", {"t_rot_k", "P1", "P2", "P3", "eta"}, {}};
    for (const auto& pt : points) t.add_row({pt.t_rot_k, pt.P1, pt.P2, pt.P3, pt.eta});
    return t;
}

Table matrix_table(const std::string& name, const Matrix3c& m) {
    Table t{name, {"row", "col", "re", "im"}, {}};
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            t.add_row({static_cast<long long>(r + 1), static_cast<long long>(c + 1), m(r, c).real(),
                       m(r, c).imag()});
        }
    }
    return t;
}

std::vector<Table> cmd_levels(const ScenarioFile& s, const Options& opt) {
    const RotorSpectrum spectrum(s.config.molecule.constants, opt.jmax);
    Table t{"levels", {"J", "tau", "energy_ghz", "degeneracy"}, {}};
    for (const auto& l : spectrum.levels()) {
        t.add_row({static_cast<long long>(l.J), static_cast<long long>(l.tau), l.energy_ghz,
                   static_cast<long long>(l.degeneracy)});
    }
    return {t};
}

std::vector<Table> cmd_populations(const ScenarioFile& s, const Options& opt) {
    const Temperatures temps = temperatures(s, opt);
    const std::vector<double> grid = opt.sweep ? s.sweep.values() : std::vector<double>{temps.t_rot_k};
    return {population_table(population_sweep(s.config, grid, temps.t_vib_k))};
}

std::vector<Table> cmd_protocol(const Options& opt) {
    std::vector<Chirality> which;
    if (opt.chirality == "both") {
        which = {Chirality::L, Chirality::R};
    } else {
        which = {parse_chirality(opt.chirality.c_str())};
    }
    const PulseSchedule schedule = PulseSchedule::ideal(
        parse_pulse_shape(opt.shape.c_str()), 100e-9, 0.0, opt.step_c_area.value_or(kStepCArea));

    std::vector<Table> tables;
    Table summary{"summary", {"chirality", "defect_max", "unitarity_defect"}, {}};
    for (Chirality q : which) {
        const Matrix3c analytic = total_unitary(q);
        const Matrix3c numeric = run_protocol(schedule, q, opt.steps).total;
        tables.push_back(matrix_table(std::string("analytic_") + to_string(q), analytic));
        tables.push_back(matrix_table(std::string("numeric_") + to_string(q), numeric));
        summary.add_row({std::string(to_string(q)), max_norm_diff(analytic, numeric),
                         unitarity_defect(numeric)});
    }
    tables.push_back(summary);
    return tables;
}

std::vector<Table> cmd_excess(const ScenarioFile& s, const Options& opt) {
    const Temperatures temps = temperatures(s, opt);
    Table t{"excess", {"t_rot_k", "epsilon"}, {}};
    for (const auto& pt : excess_sweep(s.config, s.sweep.values(), temps.t_vib_k)) {
        t.add_row({pt.t_rot_k, pt.epsilon});
    }
    return {t};
}

std::vector<Table> cmd_yield(const ScenarioFile& s, const Options& opt) {
    const Temperatures temps = temperatures(s, opt);
    return {yield_table(yield_sweep(s.config.with_mode(CtlsMode::ro_vibrational),
                                    s.sweep.values(), temps.t_vib_k, opt.rel_tol))};
}

std::vector<Table> cmd_figure(const ScenarioFile& s, const Options& opt) {
    const Temperatures temps = temperatures(s, opt);
    const auto grid = s.sweep.values();
    const CtlsConfig rovib = s.config.with_mode(CtlsMode::ro_vibrational);
    const CtlsConfig rot = s.config.with_mode(CtlsMode::purely_rotational);

    if (opt.figure == "fig2c") return {population_table(population_sweep(rovib, grid, temps.t_vib_k))};
    if (opt.figure == "fig2d") return {population_table(population_sweep(rot, grid, temps.t_vib_k))};
    if (opt.figure == "fig3") {
        const auto a = excess_sweep(rovib, grid, temps.t_vib_k);
        const auto b = excess_sweep(rot, grid, temps.t_vib_k);
        Table t{"fig3", {"t_rot_k", "epsilon_rovib", "epsilon_rot"}, {}};
        for (std::size_t i = 0; i < grid.size(); ++i) t.add_row({grid[i], a[i].epsilon, b[i].epsilon});
        return {t};
    }
    if (opt.figure == "fig4") {
        return {yield_table(yield_sweep(rovib, grid, temps.t_vib_k, opt.rel_tol))};
    }
    throw UsageError("unknown figure '" + opt.figure + "' (expected fig2c, fig2d, fig3 or fig4)");
}

std::string plot_script(const Options& opt, const Table& table) {
    const std::string data = opt.output_path.empty() ? opt.figure + ".csv" : opt.output_path;
    std::ostringstream s;
    s << "# gnuplot script for " << opt.figure << "\n";
    s << "set datafile separator ','\n";
    s << "set key autotitle columnhead\n";
    s << "set logscale x\n";
    s << "set xlabel 'T_rot (K)'\n";
    if (opt.figure == "fig4") s << "set logscale y\n";
    s << "plot ";
    for (std::size_t c = 1; c < table.columns.size(); ++c) {
        s << (c > 1 ? ", \\\n     " : "") << "'" << data << "' using 1:" << c + 1
          << " with lines";
    }
    s << "\n";
    return s.str();
}

void emit(const Options& opt, const std::vector<Table>& tables, std::ostream& out) {
    std::ostringstream buf;
    if (opt.format == "json") {
        write_json(buf, tables);
    } else {
        write_csv(buf, tables);
    }
    if (opt.output_path.empty()) {
        out << buf.str();
        return;
    }
    std::ofstream file(opt.output_path, std::ios::binary);
    if (!file || !(file << buf.str())) {
        throw OutputError("cannot write output file '" + opt.output_path + "'");
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options opt;
    CLI::App app{"Enantiomer-specific state transfer in cyclic three-level systems", "ctls"};
    app.add_option("--scenario", opt.scenario_path,
                   "Scenario file (default: $CTLS_SCENARIO_PATH, else built-in 1,2-propanediol)");
    app.add_option("--output,-o", opt.output_path, "Write records to this file instead of stdout");
    app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--labeling", opt.labeling, "Override the scenario's label reading")
        ->check(CLI::IsMember({"tau", "ka_kc"}));
    app.add_flag("--dump-config", opt.dump_config, "Print the resolved scenario and exit");
    app.require_subcommand(0, 1);

    auto* levels = app.add_subcommand("levels", "Asymmetric-top rotor spectrum");
    levels->add_option("--jmax", opt.jmax, "Highest J")->check(CLI::NonNegativeNumber);

    auto add_temps = [&](CLI::App* sub) {
        sub->add_option("--t-rot", opt.t_rot, "Rotational temperature override, K");
        sub->add_option("--t-vib", opt.t_vib, "Vibrational temperature override, K");
    };
    auto* populations = app.add_subcommand("populations", "Thermal CTLS populations");
    add_temps(populations);
    populations->add_flag("--sweep", opt.sweep, "Evaluate over the scenario's T_rot grid");

    auto* protocol = app.add_subcommand("protocol", "Analytic vs propagated total unitaries");
    protocol->add_option("--chirality", opt.chirality, "L, R or both")
        ->check(CLI::IsMember({"L", "R", "both"}));
    protocol->add_option("--shape", opt.shape, "Pulse envelope shape")
        ->check(CLI::IsMember({"rectangular", "gaussian", "sin_squared"}));
    protocol->add_option("--steps", opt.steps, "Time steps per pulse")->check(CLI::PositiveNumber);
    protocol->add_option("--step-c-area", opt.step_c_area, "Step C pulse area, rad");

    auto* excess = app.add_subcommand("excess", "Enantiomeric excess over the T_rot grid");
    add_temps(excess);
    auto* yield = app.add_subcommand("yield", "Global proportions and yield over the T_rot grid");
    add_temps(yield);
    yield->add_option("--rel-tol", opt.rel_tol, "Partition-sum truncation tolerance");

    auto* figure = app.add_subcommand("figure", "Curve data for one figure");
    figure->add_option("name", opt.figure, "fig2c, fig2d, fig3 or fig4")->required();
    add_temps(figure);
    figure->add_option("--rel-tol", opt.rel_tol, "Partition-sum truncation tolerance");
    figure->add_option("--emit-plotscript", opt.plotscript_path,
                       "Also write a gnuplot script for the emitted data");

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "ctls: " << e.what() << "\n" << "Run with --help for usage.\n";
        return kExitUsage;
    }

    try {
        const ScenarioFile scenario = load_scenario(opt);
        if (opt.dump_config) {
            const std::string text = dump_scenario(scenario);
            if (opt.output_path.empty()) {
                out << text;
            } else {
                std::ofstream file(opt.output_path, std::ios::binary);
                if (!file || !(file << text)) {
                    throw OutputError("cannot write output file '" + opt.output_path + "'");
                }
            }
            return kExitOk;
        }
        if (app.get_subcommands().empty()) {
            err << "ctls: a subcommand is required\n" << "Run with --help for usage.\n";
            return kExitUsage;
        }

        std::vector<Table> tables;
        if (levels->parsed()) tables = cmd_levels(scenario, opt);
        else if (populations->parsed()) tables = cmd_populations(scenario, opt);
        else if (protocol->parsed()) tables = cmd_protocol(opt);
        else if (excess->parsed()) tables = cmd_excess(scenario, opt);
        else if (yield->parsed()) tables = cmd_yield(scenario, opt);
        else if (figure->parsed()) tables = cmd_figure(scenario, opt);
        emit(opt, tables, out);

        if (!opt.plotscript_path.empty()) {
            std::ofstream script(opt.plotscript_path, std::ios::binary);
            if (!script || !(script << plot_script(opt, tables.front()))) {
                throw OutputError("cannot write plot script '" + opt.plotscript_path + "'");
            }
        }
        return kExitOk;
    } catch (const UsageError& e) {
        err << "ctls: " << e.what() << "\n";
        return kExitUsage;
    } catch (const OutputError& e) {
        err << "ctls: " << e.what() << "\n";
        return kExitIo;
    } catch (const ScenarioIoError& e) {
        err << "ctls: " << e.what() << "\n";
        return kExitIo;
    } catch (const ScenarioError& e) {
        err << "ctls: invalid scenario: " << e.what() << "\n";
        return kExitInvalidScenario;
    } catch (const std::exception& e) {
        err << "ctls: " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace ctls::cli
