#include "qpusim/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "qpusim/arith.hpp"
#include "qpusim/grover.hpp"
#include "qpusim/sim.hpp"

namespace qpusim {

void validate_spec(const SweepSpec& spec) {
    if (spec.n_min < 2) throw std::invalid_argument("sweep needs n_min >= 2");
    if (spec.n_min > spec.n_max) throw std::invalid_argument("sweep needs n_min <= n_max");
    if (spec.levels.empty()) throw std::invalid_argument("sweep needs at least one code level");
    validate_config(spec.qec);
}

namespace {

QecConfig config_at_level(const QecConfig& base, std::uint32_t level) {
    QecConfig config = base;
    config.levels = level;
    return config;
}

// QPU-side stats for one cell. Small streams go through the event engine,
// which the closed-form path must match exactly; oversized ones use the
// closed form directly.
SimStats cell_stats(const Program* physical, const GateTally& encoded_tally,
                    std::uint32_t level, const QecConfig& config,
                    const MicrocodeTable& table) {
    if (physical != nullptr) {
        if (level == 0) return run_simulation(*physical, table);
        const auto encoded = lower_qec(*physical, config);
        if (encoded.program) return run_simulation(*encoded.program, table);
        return stats_from_tally(encoded.tally, table);
    }
    return stats_from_tally(encoded_tally, table);
}

}  // namespace

SweepRow compute_row(std::uint32_t n, std::uint32_t level, const SweepSpec& spec) {
    const SearchInstance instance{n, (std::uint64_t{1} << n) - 1};
    const auto logical_shape = grover_logical_shape(instance);
    const auto physical_shape = grover_physical_shape(instance);
    const auto config = config_at_level(spec.qec, level);
    const GateTally encoded_tally = lower_qec_tally(physical_shape.tally, config);

    SweepRow row;
    row.n = n;
    row.database_size = database_size(instance);
    row.qec_levels = level;
    row.logical_gates = logical_shape.tally.total();
    row.physical_gates = encoded_tally.total();
    row.physical_qubits = physical_qubits(physical_shape.capacity, config).total();

    std::optional<Program> physical;
    if (physical_shape.tally.total() <= kMaterializeGateLimit) {
        physical = lower_to_physical(generate_grover(instance));
    }
    const SimStats stats =
        cell_stats(physical ? &*physical : nullptr, encoded_tally, level, config,
                   spec.gate_models);
    row.total_time_ns = stats.total_time_ns;
    row.qpu_energy_zJ = stats.total_energy_zJ;

    CpuModel cpu = spec.cpu_model;
    cpu.include_memory = false;
    row.cpu_energy_nomem_zJ = cpu_search_energy(row.database_size, cpu);
    cpu.include_memory = true;
    row.cpu_energy_mem_zJ = cpu_search_energy(row.database_size, cpu);
    return row;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, ExecutionMode mode) {
    validate_spec(spec);
    struct Cell {
        std::uint32_t n;
        std::uint32_t level;
    };
    std::vector<std::uint32_t> levels = spec.levels;
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    std::vector<Cell> cells;
    for (std::uint32_t n = spec.n_min; n <= spec.n_max; ++n) {
        for (auto level : levels) cells.push_back({n, level});
    }
    std::vector<SweepRow> rows(cells.size());
    std::vector<std::exception_ptr> errors(cells.size());
    const auto body = [&](std::size_t i) {
        try {
            rows[i] = compute_row(cells[i].n, cells[i].level, spec);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };
    if (mode == ExecutionMode::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(cells.size()); ++i) {
            body(static_cast<std::size_t>(i));
        }
    } else {
        for (std::size_t i = 0; i < cells.size(); ++i) body(i);
    }
    // First failing cell in row order wins, independent of thread timing.
    for (const auto& error : errors) {
        if (error) std::rethrow_exception(error);
    }
    return rows;
}

void write_sweep_csv(std::span<const SweepRow> rows, std::ostream& out) {
    out << "n,N,qec_levels,logical_gates,physical_gates,physical_qubits,"
           "total_time_ns,qpu_energy_zJ,cpu_energy_nomem_zJ,cpu_energy_mem_zJ\n";
    for (const auto& row : rows) {
        out << row.n << ',' << row.database_size << ',' << row.qec_levels << ','
            << row.logical_gates << ',' << row.physical_gates << ',' << row.physical_qubits
            << ',' << row.total_time_ns << ',' << row.qpu_energy_zJ << ','
            << row.cpu_energy_nomem_zJ << ',' << row.cpu_energy_mem_zJ << '\n';
    }
}

std::string sweep_csv(std::span<const SweepRow> rows) {
    std::ostringstream out;
    write_sweep_csv(rows, out);
    return out.str();
}

std::uint64_t row_value(const SweepRow& row, SweepColumn column) {
    switch (column) {
        case SweepColumn::logical_gates:
            return row.logical_gates;
        case SweepColumn::physical_gates:
            return row.physical_gates;
        case SweepColumn::physical_qubits:
            return row.physical_qubits;
        case SweepColumn::total_time_ns:
            return row.total_time_ns;
        case SweepColumn::qpu_energy_zJ:
            return row.qpu_energy_zJ;
        case SweepColumn::cpu_energy_nomem_zJ:
            return row.cpu_energy_nomem_zJ;
        case SweepColumn::cpu_energy_mem_zJ:
            return row.cpu_energy_mem_zJ;
    }
    throw std::invalid_argument("unknown sweep column");
}

ScalingFit fit_scaling(std::span<const SweepRow> rows, SweepColumn column) {
    if (rows.size() < 4) {
        throw std::invalid_argument("scaling fit needs at least 4 rows");
    }
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& row : rows) {
        const std::uint64_t value = row_value(row, column);
        if (value == 0) throw std::invalid_argument("scaling fit needs positive values");
        xs.push_back(static_cast<double>(row.n));
        ys.push_back(std::log2(static_cast<double>(value)));
    }
    double x_mean = 0.0;
    double y_mean = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        x_mean += xs[i];
        y_mean += ys[i];
    }
    x_mean /= static_cast<double>(xs.size());
    y_mean /= static_cast<double>(ys.size());
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - x_mean) * (xs[i] - x_mean);
        sxy += (xs[i] - x_mean) * (ys[i] - y_mean);
    }
    if (sxx == 0.0) {
        throw std::invalid_argument("scaling fit needs at least two distinct n");
    }
    ScalingFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = y_mean - fit.slope * x_mean;
    double ss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double err = ys[i] - (fit.intercept + fit.slope * xs[i]);
        ss += err * err;
    }
    fit.rms_residual = std::sqrt(ss / static_cast<double>(xs.size()));
    return fit;
}

}  // namespace qpusim
