#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qpusim/gate_model.hpp"
#include "qpusim/isa.hpp"

// Unstructured-search program generator. Builds the logical circuit for a
// single marked element over an n-qubit register and lowers it to the
// physical ISA: phase oracle and diffusion share one multi-controlled core,
// multi-controlled gates decompose to a Toffoli ladder with reusable
// ancillas, and each Toffoli expands to the 15-gate Clifford+T sequence.

namespace qpusim {

struct SearchInstance {
    std::uint32_t qubit_count = 2;  // n >= 2
    std::uint64_t marked = 0;       // in [0, 2^n)
};

// Throws std::invalid_argument unless 2 <= n <= 62 and marked < 2^n.
void validate_instance(const SearchInstance& instance);

std::uint64_t database_size(const SearchInstance& instance);  // 2^n

// max(1, floor(pi/4 * sqrt(N))); N must be a power of two, at least 4.
std::uint64_t grover_iterations(std::uint64_t database_size);

struct GroverPlan {
    SearchInstance instance;
    std::uint64_t iterations = 1;
    std::uint32_t ancilla_count = 0;  // ladder workspace used by the lowering
};

GroverPlan plan_search(const SearchInstance& instance);

// Logical program: INIT all, H all, then per iteration the oracle (X frame on
// the unmarked bits around an H-conjugated multi-controlled X) and the
// diffusion operator, then READ all. Qubit q holds bit (n-1-q) of the search
// pattern; the multi-controlled core targets the last qubit.
Program generate_grover(const SearchInstance& instance);

// The 15-gate Clifford+T realization of TOFFOLI(a, b, target).
std::vector<Instruction> toffoli_sequence(std::uint32_t a, std::uint32_t b,
                                          std::uint32_t target);

// Multi-controlled X as logical TOFFOLIs. k = 1 emits CNOT, k = 2 a single
// TOFFOLI; k >= 3 builds the ladder over k - 2 clean ancillas and uncomputes
// it, 2k - 3 TOFFOLIs in total. Ancillas must be distinct from controls and
// target; they are returned to their prior state.
std::vector<Instruction> decompose_mcx(std::span<const std::uint32_t> controls,
                                       std::uint32_t target,
                                       std::span<const std::uint32_t> ancillas);

// Maps TOFFOLI/MCX/MCZ to physical gates, appending the ancilla block at the
// old register boundary. Physical instructions pass through unchanged.
Program lower_to_physical(const Program& logical);

// Closed-form per-opcode tallies matching generate_grover /
// lower_to_physical exactly, for instances too large to materialize.
struct ProgramShape {
    GateTally tally;
    std::uint32_t capacity = 0;
};

ProgramShape grover_logical_shape(const SearchInstance& instance);
ProgramShape grover_physical_shape(const SearchInstance& instance);

}  // namespace qpusim
