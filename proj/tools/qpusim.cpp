// Command-line front end: program generation, single-program simulation and
// the (n, code level) sweep grid.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qpusim/cpu_model.hpp"
#include "qpusim/gate_model.hpp"
#include "qpusim/grover.hpp"
#include "qpusim/parse.hpp"
#include "qpusim/qec.hpp"
#include "qpusim/sim.hpp"
#include "qpusim/sweep.hpp"

namespace {

std::vector<std::uint32_t> parse_level_list(const std::string& text) {
    std::vector<std::uint32_t> levels;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (item.empty()) throw std::runtime_error("empty entry in level list `" + text + "`");
        std::size_t used = 0;
        unsigned long value = 0;
        try {
            value = std::stoul(item, &used);
        } catch (const std::exception&) {
            throw std::runtime_error("bad level `" + item + "`");
        }
        if (used != item.size() || value > 20) throw std::runtime_error("bad level `" + item + "`");
        levels.push_back(static_cast<std::uint32_t>(value));
    }
    if (levels.empty()) throw std::runtime_error("level list is empty");
    return levels;
}

void write_text_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

int run_grover(std::uint32_t n, std::uint64_t marked, const std::string& emit, bool physical) {
    const qpusim::SearchInstance instance{n, marked};
    qpusim::Program program = qpusim::generate_grover(instance);
    if (physical) program = qpusim::lower_to_physical(program);
    write_text_output(emit, qpusim::render_program(program));
    return 0;
}

int run_simulate(const std::string& program_path, const std::string& models_path,
                 const std::string& event_log_path) {
    std::ifstream in(program_path);
    if (!in) throw std::runtime_error("cannot open program file: " + program_path);
    const qpusim::Program program = qpusim::parse_program(in);
    const auto table = qpusim::load_gate_models_file(models_path);
    qpusim::EventLog log;
    const auto stats = qpusim::run_simulation(program, table, {}, log);
    if (!event_log_path.empty()) {
        std::ofstream log_out(event_log_path);
        if (!log_out) throw std::runtime_error("cannot write " + event_log_path);
        qpusim::write_event_log(log, log_out);
    }
    std::cout << "instructions " << program.instructions.size() << '\n'
              << "events " << stats.event_count << '\n'
              << "total_time_ns " << stats.total_time_ns << '\n'
              << "total_energy_zJ " << stats.total_energy_zJ << '\n';
    for (std::size_t c = 0; c < qpusim::kGateClassCount; ++c) {
        const auto gate_class = static_cast<qpusim::GateClass>(c);
        std::cout << "class_" << qpusim::gate_class_name(gate_class) << ' '
                  << stats.tally.class_count(gate_class) << '\n';
    }
    return 0;
}

int run_sweep_command(std::uint32_t n_min, std::uint32_t n_max, const std::string& levels,
                      const std::string& models_path, const std::string& cpu_path,
                      const std::string& qec_path, const std::string& out_path, bool serial) {
    qpusim::SweepSpec spec;
    spec.n_min = n_min;
    spec.n_max = n_max;
    spec.levels = parse_level_list(levels);
    spec.gate_models = qpusim::load_gate_models_file(models_path);
    spec.cpu_model = qpusim::load_cpu_model_file(cpu_path);
    spec.qec = qpusim::load_qec_config_file(qec_path);
    const auto rows = qpusim::run_sweep(
        spec, serial ? qpusim::ExecutionMode::serial : qpusim::ExecutionMode::parallel);
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    qpusim::write_sweep_csv(rows, out);
    std::cout << "wrote " << out_path << " (" << rows.size() << " rows)\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"QPU node simulator: search-program generation, execution and sweeps"};
    app.require_subcommand(1);

    auto* grover = app.add_subcommand("grover", "generate a search program");
    std::uint32_t n = 0;
    std::uint64_t marked = 0;
    std::string emit;
    bool physical = false;
    grover->add_option("--n", n, "register size in qubits")->required();
    grover->add_option("--marked", marked, "marked element")->required();
    grover->add_option("--emit", emit, "output file (default stdout)");
    grover->add_flag("--physical", physical, "lower to the physical ISA");

    auto* simulate = app.add_subcommand("simulate", "execute a physical program");
    std::string program_path;
    std::string models_path;
    std::string event_log_path;
    simulate->add_option("--program", program_path, "program file")->required();
    simulate->add_option("--gate-models", models_path, "gate model file")->required();
    simulate->add_option("--event-log", event_log_path, "write the event log here");

    auto* sweep = app.add_subcommand("sweep", "run the (n, level) grid");
    std::uint32_t n_min = 0;
    std::uint32_t n_max = 0;
    std::string levels = "0,1,2";
    std::string sweep_models;
    std::string cpu_path;
    std::string qec_path;
    std::string out_path;
    bool serial = false;
    sweep->add_option("--n-min", n_min, "smallest register size")->required();
    sweep->add_option("--n-max", n_max, "largest register size")->required();
    sweep->add_option("--levels", levels, "comma-separated code levels (default 0,1,2)");
    sweep->add_option("--gate-models", sweep_models, "gate model file")->required();
    sweep->add_option("--cpu-model", cpu_path, "processor model file")->required();
    sweep->add_option("--qec", qec_path, "code config file")->required();
    sweep->add_option("--out", out_path, "output CSV path")->required();
    sweep->add_flag("--serial", serial, "compute rows on one thread");

    CLI11_PARSE(app, argc, argv);

    try {
        if (grover->parsed()) return run_grover(n, marked, emit, physical);
        if (simulate->parsed()) return run_simulate(program_path, models_path, event_log_path);
        if (sweep->parsed()) {
            return run_sweep_command(n_min, n_max, levels, sweep_models, cpu_path, qec_path,
                                     out_path, serial);
        }
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }
    return 0;
}
