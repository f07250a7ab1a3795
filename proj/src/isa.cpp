#include "qpusim/isa.hpp"

#include <algorithm>
#include <array>

namespace qpusim {

namespace {

struct OpcodeInfo {
    std::string_view name;
    std::optional<std::uint32_t> arity;
    bool physical;
};

constexpr std::array<OpcodeInfo, kOpcodeCount> kOpcodeInfo = {{
    {"INIT", 1, true},
    {"READ", 1, true},
    {"H", 1, true},
    {"X", 1, true},
    {"Y", 1, true},
    {"Z", 1, true},
    {"S", 1, true},
    {"SDG", 1, true},
    {"T", 1, true},
    {"TDG", 1, true},
    {"CNOT", 2, true},
    {"CZ", 2, true},
    {"TOFFOLI", 3, false},
    {"MCX", std::nullopt, false},
    {"MCZ", std::nullopt, false},
}};

}  // namespace

std::optional<std::uint32_t> opcode_arity(Opcode op) {
    return kOpcodeInfo[opcode_index(op)].arity;
}

bool opcode_is_physical(Opcode op) {
    return kOpcodeInfo[opcode_index(op)].physical;
}

std::string_view opcode_name(Opcode op) {
    return kOpcodeInfo[opcode_index(op)].name;
}

std::optional<Opcode> opcode_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kOpcodeCount; ++i) {
        if (kOpcodeInfo[i].name == name) return static_cast<Opcode>(i);
    }
    return std::nullopt;
}

std::string_view level_name(ProgramLevel level) {
    return level == ProgramLevel::logical ? "logical" : "physical";
}

std::optional<ProgramLevel> level_from_name(std::string_view name) {
    if (name == "logical") return ProgramLevel::logical;
    if (name == "physical") return ProgramLevel::physical;
    return std::nullopt;
}

Instruction make_instruction(Opcode op, std::initializer_list<std::uint32_t> operands) {
    return Instruction{op, std::vector<std::uint32_t>(operands)};
}

std::optional<std::string> instruction_violation(const Instruction& instr,
                                                 std::uint32_t capacity,
                                                 ProgramLevel level) {
    if (level == ProgramLevel::physical && !opcode_is_physical(instr.opcode)) {
        return std::string("logical-only opcode ") + std::string(opcode_name(instr.opcode)) +
               " in a physical program";
    }
    const auto arity = opcode_arity(instr.opcode);
    if (arity) {
        if (instr.operands.size() != *arity) {
            return std::string(opcode_name(instr.opcode)) + " expects " +
                   std::to_string(*arity) + " operand(s), got " +
                   std::to_string(instr.operands.size());
        }
    } else if (instr.operands.size() < 3) {
        // Multi-controlled gates take at least 2 controls plus a target.
        return std::string(opcode_name(instr.opcode)) + " expects at least 3 operands, got " +
               std::to_string(instr.operands.size());
    }
    for (std::size_t i = 0; i < instr.operands.size(); ++i) {
        if (instr.operands[i] >= capacity) {
            return "operand q" + std::to_string(instr.operands[i]) +
                   " outside register of size " + std::to_string(capacity);
        }
        for (std::size_t j = i + 1; j < instr.operands.size(); ++j) {
            if (instr.operands[i] == instr.operands[j]) {
                return "duplicate operand q" + std::to_string(instr.operands[i]);
            }
        }
    }
    return std::nullopt;
}

ValidationReport validate_program(const Program& program) {
    ValidationReport report;
    for (std::size_t i = 0; i < program.instructions.size(); ++i) {
        if (auto rule = instruction_violation(program.instructions[i], program.capacity,
                                              program.level)) {
            report.violations.push_back({i, std::move(*rule)});
        }
    }
    return report;
}

}  // namespace qpusim
