#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Instruction set and program representation for the QPU node simulator.
// This header carries no engine state; it is the ISA view shared by the
// program generator, the lowering passes, and the event simulator.

namespace qpusim {

enum class Opcode : std::uint8_t {
    INIT,
    READ,
    H,
    X,
    Y,
    Z,
    S,
    SDG,
    T,
    TDG,
    CNOT,
    CZ,
    TOFFOLI,
    MCX,
    MCZ,
};

inline constexpr std::size_t kOpcodeCount = 15;

inline constexpr std::size_t opcode_index(Opcode op) {
    return static_cast<std::size_t>(op);
}

// Fixed operand count, or nullopt for the variable-arity multi-controlled
// gates (at least 2 controls + 1 target).
std::optional<std::uint32_t> opcode_arity(Opcode op);

// INIT, READ, the 1-qubit gates, CNOT and CZ. TOFFOLI/MCX/MCZ exist only at
// the logical level and must be decomposed before simulation.
bool opcode_is_physical(Opcode op);

std::string_view opcode_name(Opcode op);
std::optional<Opcode> opcode_from_name(std::string_view name);

enum class ProgramLevel : std::uint8_t { logical, physical };

std::string_view level_name(ProgramLevel level);
std::optional<ProgramLevel> level_from_name(std::string_view name);

struct Instruction {
    Opcode opcode = Opcode::INIT;
    // Register addresses; for multi-controlled gates the final operand is the
    // target and the rest are controls.
    std::vector<std::uint32_t> operands;

    bool operator==(const Instruction&) const = default;
};

Instruction make_instruction(Opcode op, std::initializer_list<std::uint32_t> operands);

struct Program {
    ProgramLevel level = ProgramLevel::physical;
    std::uint32_t capacity = 0;  // register size in qubits
    std::vector<Instruction> instructions;

    bool operator==(const Program&) const = default;
};

// Rule violated by one instruction, or empty optional if it is well formed at
// the given level and capacity.
std::optional<std::string> instruction_violation(const Instruction& instr,
                                                 std::uint32_t capacity,
                                                 ProgramLevel level);

struct Violation {
    std::size_t instruction_index = 0;
    std::string rule;

    bool operator==(const Violation&) const = default;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
};

// Checks operand distinctness, arity, capacity bounds and the per-level ISA
// restriction. Violations are data, not failures.
ValidationReport validate_program(const Program& program);

}  // namespace qpusim
