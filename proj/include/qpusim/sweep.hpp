#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "qpusim/cpu_model.hpp"
#include "qpusim/gate_model.hpp"
#include "qpusim/qec.hpp"

// Batch harness: one row per (n, code level) pair, comparing search cost on
// the simulated QPU against the brute-force processor baseline. Small cells
// run through the event simulator; large ones fall back to exact closed-form
// tallies. Cells are independent, so the grid can be computed in parallel;
// output order and bytes are identical either way.

namespace qpusim {

struct SweepSpec {
    std::uint32_t n_min = 2;
    std::uint32_t n_max = 2;
    std::vector<std::uint32_t> levels = {0, 1, 2};
    MicrocodeTable gate_models = MicrocodeTable::silicon_default();
    CpuModel cpu_model{};
    QecConfig qec{};  // its `levels` field is replaced per row
};

void validate_spec(const SweepSpec& spec);

struct SweepRow {
    std::uint32_t n = 0;
    std::uint64_t database_size = 0;
    std::uint32_t qec_levels = 0;
    std::uint64_t logical_gates = 0;
    std::uint64_t physical_gates = 0;
    std::uint64_t physical_qubits = 0;
    std::uint64_t total_time_ns = 0;
    std::uint64_t qpu_energy_zJ = 0;
    std::uint64_t cpu_energy_nomem_zJ = 0;
    std::uint64_t cpu_energy_mem_zJ = 0;

    bool operator==(const SweepRow&) const = default;
};

// One grid cell; the marked element is canonically the all-ones pattern.
SweepRow compute_row(std::uint32_t n, std::uint32_t level, const SweepSpec& spec);

enum class ExecutionMode : std::uint8_t { serial, parallel };

// Rows in ascending (n, level) order regardless of mode.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, ExecutionMode mode = ExecutionMode::parallel);

void write_sweep_csv(std::span<const SweepRow> rows, std::ostream& out);
std::string sweep_csv(std::span<const SweepRow> rows);

enum class SweepColumn : std::uint8_t {
    logical_gates,
    physical_gates,
    physical_qubits,
    total_time_ns,
    qpu_energy_zJ,
    cpu_energy_nomem_zJ,
    cpu_energy_mem_zJ,
};

std::uint64_t row_value(const SweepRow& row, SweepColumn column);

struct ScalingFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rms_residual = 0.0;
};

// Least-squares fit of log2(column) against n. Requires at least 4 rows,
// positive column values and at least two distinct n; throws
// std::invalid_argument otherwise.
ScalingFit fit_scaling(std::span<const SweepRow> rows, SweepColumn column);

}  // namespace qpusim
