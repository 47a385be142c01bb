// Command-line front end: simulate / sweep / mems / esd over the coupled
// charge-qubit model, emitting CSV (and optional SVG) with deterministic,
// byte-stable formatting. Data goes to --out or stdout; diagnostics to
// stderr; exit status 0 iff no error.

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cqdyn/cqdyn.hpp"

namespace {

struct RunConfig {
    cqdyn::CircuitParams params;
    std::string initial_state = "00";
    cqdyn::TimeGrid grid;
    std::string axis = "em";
    std::string values_text;
    double dev_tol = cqdyn::tol().mems_dev_tol;
    double zeta_min = cqdyn::tol().mems_zeta_min;
    double zero_tol = cqdyn::tol().esd_zero_tol;
    std::string out_path;
    std::string svg_path;
    std::string config_path;
};

double parse_double_value(const std::string& key, const std::string& text) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(v))
        throw cqdyn::ParseError("config key '" + key + "': bad number '" + text + "'");
    return v;
}

int parse_int_value(const std::string& key, const std::string& text) {
    char* end = nullptr;
    const long v = std::strtol(text.c_str(), &end, 10);
    if (text.empty() || end != text.c_str() + text.size())
        throw cqdyn::ParseError("config key '" + key + "': bad integer '" + text + "'");
    return static_cast<int>(v);
}

// One subcommand's option surface: CLI11 flags plus the same keys accepted
// from a key=value config file, with explicit flags taking precedence.
struct OptionSet {
    CLI::App* cmd;
    std::map<std::string, CLI::Option*> options;
    std::map<std::string, std::function<void(const std::string&)>> setters;

    void add_double(const std::string& name, double& target, const std::string& help) {
        options[name] = cmd->add_option("--" + name, target, help);
        setters[name] = [&target, name](const std::string& v) {
            target = parse_double_value(name, v);
        };
    }

    void add_int(const std::string& name, int& target, const std::string& help) {
        options[name] = cmd->add_option("--" + name, target, help);
        setters[name] = [&target, name](const std::string& v) {
            target = parse_int_value(name, v);
        };
    }

    void add_string(const std::string& name, std::string& target, const std::string& help) {
        options[name] = cmd->add_option("--" + name, target, help);
        setters[name] = [&target](const std::string& v) { target = v; };
    }

    // key=value lines; '#' comments; flags given on the command line win.
    void apply_config_file(const std::string& path) const {
        std::ifstream in(path);
        if (!in) throw cqdyn::IoError("--config: cannot open '" + path + "'");
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            const auto first = line.find_first_not_of(" \t");
            if (first == std::string::npos || line[first] == '#') continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw cqdyn::ParseError("--config: line " + std::to_string(line_no) +
                                        " is not key=value");
            auto trim = [](std::string s) {
                const auto b = s.find_first_not_of(" \t");
                const auto e = s.find_last_not_of(" \t");
                return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
            };
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            const auto setter = setters.find(key);
            if (setter == setters.end())
                throw cqdyn::ParseError("--config: unknown key '" + key + "'");
            if (options.at(key)->count() > 0) continue; // flag overrides file
            setter->second(value);
        }
    }
};

// Shared flags; every subcommand accepts the full set.
OptionSet add_common_options(CLI::App* cmd, RunConfig& cfg) {
    OptionSet set;
    set.cmd = cmd;
    set.add_double("ej1", cfg.params.ej1, "Josephson energy of qubit 1 (ueV)");
    set.add_double("ej2", cfg.params.ej2, "Josephson energy of qubit 2 (ueV)");
    set.add_double("em", cfg.params.em, "Coupling energy (ueV)");
    set.add_double("ec1", cfg.params.ec1, "Charging energy of box 1 (ueV)");
    set.add_double("ec2", cfg.params.ec2, "Charging energy of box 2 (ueV)");
    set.add_double("ng1", cfg.params.ng1, "Gate charge of qubit 1");
    set.add_double("ng2", cfg.params.ng2, "Gate charge of qubit 2");
    set.add_double("gamma", cfg.params.gamma, "Phase decoherence rate (1/time-scale units)");
    set.add_double("time-scale", cfg.params.time_scale,
                   "Energy scale making reported times dimensionless (ueV)");
    set.add_string("initial-state", cfg.initial_state,
                   "Basis label 00/01/10/11 or path to a JSON 4x4 density matrix");
    set.add_double("t-start", cfg.grid.t_start, "Grid start (scaled time)");
    set.add_double("t-end", cfg.grid.t_end, "Grid end (scaled time)");
    set.add_int("points", cfg.grid.n_points, "Number of grid points");
    set.add_double("dev-tol", cfg.dev_tol, "MEMS template deviation tolerance");
    set.add_double("zeta-min", cfg.zeta_min, "Minimum corner coherence for a MEMS event");
    set.add_double("zero-tol", cfg.zero_tol, "Concurrence threshold for ESD intervals");
    set.add_string("out", cfg.out_path, "Output CSV path (default: stdout)");
    set.add_string("svg", cfg.svg_path, "Also write an SVG line chart here");
    cmd->add_option("--config", cfg.config_path,
                    "Read key=value defaults from a file; flags override");
    return set;
}

// Entry [re, im] or plain number.
cqdyn::Complex parse_json_entry(const nlohmann::json& j) {
    if (j.is_number()) return cqdyn::Complex(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return cqdyn::Complex(j[0].get<double>(), j[1].get<double>());
    throw cqdyn::ParseError("--initial-state: matrix entries must be numbers or [re, im] pairs");
}

cqdyn::DensityMatrix load_initial_state(const std::string& spec) {
    if (spec == "00") return cqdyn::DensityMatrix::pure_basis(0);
    if (spec == "01") return cqdyn::DensityMatrix::pure_basis(1);
    if (spec == "10") return cqdyn::DensityMatrix::pure_basis(2);
    if (spec == "11") return cqdyn::DensityMatrix::pure_basis(3);

    std::ifstream in(spec);
    if (!in) throw cqdyn::IoError("--initial-state: cannot open '" + spec + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw cqdyn::ParseError("--initial-state: invalid JSON in '" + spec + "': " + e.what());
    }
    if (!j.is_array() || j.size() != 4)
        throw cqdyn::ParseError("--initial-state: expected a 4x4 JSON array");
    cqdyn::Matrix4 m;
    for (int r = 0; r < 4; ++r) {
        if (!j[static_cast<std::size_t>(r)].is_array() || j[static_cast<std::size_t>(r)].size() != 4)
            throw cqdyn::ParseError("--initial-state: expected a 4x4 JSON array");
        for (int c = 0; c < 4; ++c)
            m(r, c) = parse_json_entry(j[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
    }
    return cqdyn::DensityMatrix(m);
}

std::vector<double> parse_values(const std::string& text) {
    if (text.empty()) throw cqdyn::ParseError("--values: at least one value is required");
    std::vector<double> values;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ',')) {
        if (item.empty()) throw cqdyn::ParseError("--values: empty entry in list");
        char* end = nullptr;
        const double v = std::strtod(item.c_str(), &end);
        if (end != item.c_str() + item.size() || !std::isfinite(v))
            throw cqdyn::ParseError("--values: bad number '" + item + "'");
        values.push_back(v);
    }
    return values;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw cqdyn::IoError("cannot open output file '" + path + "'");
    out << content;
    if (!out) throw cqdyn::IoError("failed writing output file '" + path + "'");
}

// Data to --out or stdout, byte-identical either way.
void emit(const RunConfig& cfg, const std::string& content) {
    if (cfg.out_path.empty())
        std::cout << content;
    else
        write_text_file(cfg.out_path, content);
}

void maybe_write_svg(const RunConfig& cfg, const cqdyn::TimeSeries& series) {
    if (cfg.svg_path.empty()) return;
    std::ostringstream svg;
    cqdyn::write_series_svg(svg, series);
    write_text_file(cfg.svg_path, svg.str());
}

int cmd_simulate(const RunConfig& cfg) {
    const cqdyn::TimeSeries series =
        cqdyn::simulate_series(cfg.params, load_initial_state(cfg.initial_state), cfg.grid);
    std::ostringstream csv;
    cqdyn::write_series_csv(csv, series);
    emit(cfg, csv.str());
    maybe_write_svg(cfg, series);
    return 0;
}

int cmd_sweep(const RunConfig& cfg) {
    const cqdyn::SweepAxis axis = cqdyn::parse_sweep_axis(cfg.axis);
    const std::vector<double> values = parse_values(cfg.values_text);
    const cqdyn::DensityMatrix rho0 = load_initial_state(cfg.initial_state);

    std::vector<cqdyn::SweepSummary> summaries;
    summaries.reserve(values.size());
    for (double v : values) {
        cqdyn::SweepPoint point = cqdyn::summarize_value(cfg.params, axis, v, rho0, cfg.grid,
                                                         cfg.dev_tol, cfg.zeta_min, cfg.zero_tol);
        summaries.push_back(point.summary);
        if (!cfg.out_path.empty()) {
            // Per-value series next to the summary file.
            const std::string stem = cfg.out_path.size() > 4 &&
                                             cfg.out_path.substr(cfg.out_path.size() - 4) == ".csv"
                                         ? cfg.out_path.substr(0, cfg.out_path.size() - 4)
                                         : cfg.out_path;
            std::ostringstream series_csv;
            cqdyn::write_series_csv(series_csv, point.series);
            write_text_file(stem + "_" + cqdyn::to_string(axis) + "_" + cqdyn::format_number(v) +
                                ".csv",
                            series_csv.str());
        }
    }
    std::ostringstream csv;
    cqdyn::write_sweep_csv(csv, summaries);
    emit(cfg, csv.str());
    return 0;
}

int cmd_mems(const RunConfig& cfg) {
    const cqdyn::TimeSeries series =
        cqdyn::simulate_series(cfg.params, load_initial_state(cfg.initial_state), cfg.grid);
    const cqdyn::MemsReport report =
        cqdyn::make_mems_report(cfg.params, series, cfg.dev_tol, cfg.zeta_min);
    std::ostringstream csv;
    cqdyn::write_mems_csv(csv, report);
    emit(cfg, csv.str());
    maybe_write_svg(cfg, series);
    return 0;
}

int cmd_esd(const RunConfig& cfg) {
    const cqdyn::TimeSeries series =
        cqdyn::simulate_series(cfg.params, load_initial_state(cfg.initial_state), cfg.grid);
    const std::vector<cqdyn::EsdInterval> intervals =
        cqdyn::detect_esd_intervals(series, cfg.zero_tol);
    std::ostringstream csv;
    cqdyn::write_esd_csv(csv, intervals);
    emit(cfg, csv.str());
    maybe_write_svg(cfg, series);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two coupled superconducting charge qubits under intrinsic dephasing:\n"
                 "occupation dynamics, concurrence, entangled-mixed-state and\n"
                 "entanglement-sudden-death detection."};
    app.require_subcommand(1);

    RunConfig cfg;
    CLI::App* simulate = app.add_subcommand("simulate", "Time series of populations and measures");
    CLI::App* sweep = app.add_subcommand("sweep", "Summaries across one parameter axis");
    CLI::App* mems = app.add_subcommand("mems", "Predicted vs detected entangled-mixed-state times");
    CLI::App* esd = app.add_subcommand("esd", "Intervals where the concurrence stays at zero");

    std::map<CLI::App*, OptionSet> option_sets;
    for (CLI::App* cmd : {simulate, sweep, mems, esd})
        option_sets.emplace(cmd, add_common_options(cmd, cfg));
    option_sets.at(sweep).add_string("axis", cfg.axis, "Parameter to sweep: ej1, ej2, em, gamma");
    option_sets.at(sweep).add_string("values", cfg.values_text, "Comma-separated axis values");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        CLI::App* active = nullptr;
        for (CLI::App* cmd : {simulate, sweep, mems, esd})
            if (cmd->parsed()) active = cmd;
        if (active == nullptr) {
            std::cerr << "error: no subcommand given\n";
            return 1;
        }
        if (!cfg.config_path.empty()) option_sets.at(active).apply_config_file(cfg.config_path);

        if (active == simulate) return cmd_simulate(cfg);
        if (active == sweep) return cmd_sweep(cfg);
        if (active == mems) return cmd_mems(cfg);
        return cmd_esd(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
