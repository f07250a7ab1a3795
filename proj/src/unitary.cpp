#include "qpusim/unitary.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qpusim {

namespace {

using Mat2 = std::array<Amplitude, 4>;  // row-major {u00, u01, u10, u11}

Mat2 single_qubit_matrix(Opcode op) {
    constexpr double inv_sqrt2 = std::numbers::sqrt2 / 2.0;
    const Amplitude i{0.0, 1.0};
    const Amplitude t_phase = std::polar(1.0, std::numbers::pi / 4.0);
    switch (op) {
        case Opcode::H:
            return {inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2};
        case Opcode::X:
            return {0.0, 1.0, 1.0, 0.0};
        case Opcode::Y:
            return {0.0, -i, i, 0.0};
        case Opcode::Z:
            return {1.0, 0.0, 0.0, -1.0};
        case Opcode::S:
            return {1.0, 0.0, 0.0, i};
        case Opcode::SDG:
            return {1.0, 0.0, 0.0, -i};
        case Opcode::T:
            return {1.0, 0.0, 0.0, t_phase};
        case Opcode::TDG:
            return {1.0, 0.0, 0.0, std::conj(t_phase)};
        default:
            throw std::invalid_argument("not a single-qubit unitary opcode");
    }
}

std::size_t bit_mask(std::uint32_t qubit_count, std::uint32_t qubit) {
    return std::size_t{1} << (qubit_count - 1 - qubit);
}

void apply_single(std::vector<Amplitude>& state, std::size_t mask, const Mat2& u) {
    for (std::size_t idx = 0; idx < state.size(); ++idx) {
        if (idx & mask) continue;
        const Amplitude a0 = state[idx];
        const Amplitude a1 = state[idx | mask];
        state[idx] = u[0] * a0 + u[1] * a1;
        state[idx | mask] = u[2] * a0 + u[3] * a1;
    }
}

}  // namespace

UnitaryMatrix::UnitaryMatrix(std::uint32_t qubit_count)
    : qubit_count_(qubit_count),
      dim_(std::size_t{1} << qubit_count),
      data_(dim_ * dim_, Amplitude{0.0}) {
    if (qubit_count > kMaxUnitaryQubits) {
        throw std::invalid_argument("dense backend limited to " +
                                    std::to_string(kMaxUnitaryQubits) + " qubits");
    }
    for (std::size_t d = 0; d < dim_; ++d) at(d, d) = 1.0;
}

void apply_instruction(std::vector<Amplitude>& state, std::uint32_t qubit_count,
                       const Instruction& instr) {
    switch (instr.opcode) {
        case Opcode::INIT:
        case Opcode::READ:
            throw std::invalid_argument("INIT/READ have no unitary action");
        case Opcode::H:
        case Opcode::X:
        case Opcode::Y:
        case Opcode::Z:
        case Opcode::S:
        case Opcode::SDG:
        case Opcode::T:
        case Opcode::TDG:
            apply_single(state, bit_mask(qubit_count, instr.operands[0]),
                         single_qubit_matrix(instr.opcode));
            return;
        case Opcode::CNOT:
        case Opcode::TOFFOLI:
        case Opcode::MCX: {
            const std::size_t target = bit_mask(qubit_count, instr.operands.back());
            std::size_t control_mask = 0;
            for (std::size_t i = 0; i + 1 < instr.operands.size(); ++i) {
                control_mask |= bit_mask(qubit_count, instr.operands[i]);
            }
            for (std::size_t idx = 0; idx < state.size(); ++idx) {
                if ((idx & control_mask) == control_mask && !(idx & target)) {
                    std::swap(state[idx], state[idx | target]);
                }
            }
            return;
        }
        case Opcode::CZ:
        case Opcode::MCZ: {
            std::size_t mask = 0;
            for (auto q : instr.operands) mask |= bit_mask(qubit_count, q);
            for (std::size_t idx = 0; idx < state.size(); ++idx) {
                if ((idx & mask) == mask) state[idx] = -state[idx];
            }
            return;
        }
    }
    throw std::invalid_argument("unhandled opcode");
}

namespace {

// Splits the program into INIT prefix, gate body, READ suffix; throws if
// INIT/READ appear anywhere else.
std::pair<std::size_t, std::size_t> gate_body(const Program& program) {
    const auto& instrs = program.instructions;
    std::size_t begin = 0;
    while (begin < instrs.size() && instrs[begin].opcode == Opcode::INIT) ++begin;
    std::size_t end = instrs.size();
    while (end > begin && instrs[end - 1].opcode == Opcode::READ) --end;
    for (std::size_t i = begin; i < end; ++i) {
        if (instrs[i].opcode == Opcode::INIT) {
            throw std::invalid_argument("INIT allowed only as a program prefix");
        }
        if (instrs[i].opcode == Opcode::READ) {
            throw std::invalid_argument("READ allowed only as a program suffix");
        }
    }
    return {begin, end};
}

void check_dense_program(const Program& program) {
    if (program.capacity == 0 || program.capacity > kMaxUnitaryQubits) {
        throw std::invalid_argument("dense backend needs 1.." +
                                    std::to_string(kMaxUnitaryQubits) + " qubits, got " +
                                    std::to_string(program.capacity));
    }
    const auto report = validate_program(program);
    if (!report.ok()) {
        const auto& v = report.violations.front();
        throw std::invalid_argument("invalid program at instruction " +
                                    std::to_string(v.instruction_index) + ": " + v.rule);
    }
}

}  // namespace

UnitaryMatrix circuit_unitary(const Program& program) {
    check_dense_program(program);
    const auto [begin, end] = gate_body(program);
    UnitaryMatrix result(program.capacity);
    const std::size_t dim = result.dim();
    std::vector<Amplitude> column(dim);
    for (std::size_t col = 0; col < dim; ++col) {
        std::fill(column.begin(), column.end(), Amplitude{0.0});
        column[col] = 1.0;
        for (std::size_t i = begin; i < end; ++i) {
            apply_instruction(column, program.capacity, program.instructions[i]);
        }
        for (std::size_t row = 0; row < dim; ++row) result.at(row, col) = column[row];
    }
    return result;
}

std::vector<Amplitude> apply_program(const Program& program) {
    check_dense_program(program);
    const auto [begin, end] = gate_body(program);
    std::vector<Amplitude> state(std::size_t{1} << program.capacity, Amplitude{0.0});
    state[0] = 1.0;
    for (std::size_t i = begin; i < end; ++i) {
        apply_instruction(state, program.capacity, program.instructions[i]);
    }
    return state;
}

UnitaryMatrix instruction_unitary(std::uint32_t qubit_count, const Instruction& instr) {
    Program program;
    program.level = ProgramLevel::logical;
    program.capacity = qubit_count;
    program.instructions.push_back(instr);
    return circuit_unitary(program);
}

double max_abs_diff_up_to_phase(const UnitaryMatrix& a, const UnitaryMatrix& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("dimension mismatch in unitary comparison");
    }
    // Phase reference: the largest-magnitude entry of a.
    std::size_t ref_row = 0;
    std::size_t ref_col = 0;
    double best = -1.0;
    for (std::size_t r = 0; r < a.dim(); ++r) {
        for (std::size_t c = 0; c < a.dim(); ++c) {
            if (std::abs(a.at(r, c)) > best) {
                best = std::abs(a.at(r, c));
                ref_row = r;
                ref_col = c;
            }
        }
    }
    Amplitude phase{1.0};
    const Amplitude ref_a = a.at(ref_row, ref_col);
    const Amplitude ref_b = b.at(ref_row, ref_col);
    if (std::abs(ref_a) > 0.0 && std::abs(ref_b) > 0.0) {
        phase = (ref_b / ref_a) / std::abs(ref_b / ref_a);
    }
    double worst = 0.0;
    for (std::size_t r = 0; r < a.dim(); ++r) {
        for (std::size_t c = 0; c < a.dim(); ++c) {
            worst = std::max(worst, std::abs(phase * a.at(r, c) - b.at(r, c)));
        }
    }
    return worst;
}

}  // namespace qpusim
