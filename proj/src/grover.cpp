#include "qpusim/grover.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qpusim/arith.hpp"

namespace qpusim {

void validate_instance(const SearchInstance& instance) {
    if (instance.qubit_count < 2 || instance.qubit_count > 62) {
        throw std::invalid_argument("search register must have 2..62 qubits, got " +
                                    std::to_string(instance.qubit_count));
    }
    if (instance.marked >> instance.qubit_count != 0) {
        throw std::invalid_argument("marked element " + std::to_string(instance.marked) +
                                    " outside a " + std::to_string(instance.qubit_count) +
                                    "-bit database");
    }
}

std::uint64_t database_size(const SearchInstance& instance) {
    validate_instance(instance);
    return std::uint64_t{1} << instance.qubit_count;
}

std::uint64_t grover_iterations(std::uint64_t db_size) {
    if (db_size < 4 || (db_size & (db_size - 1)) != 0) {
        throw std::invalid_argument("database size must be a power of two, at least 4");
    }
    // 80-bit long double carries sqrt exactly enough for db sizes < 2^63.
    const long double raw =
        std::floor(std::numbers::pi_v<long double> / 4.0L * std::sqrt(static_cast<long double>(db_size)));
    const auto iterations = static_cast<std::uint64_t>(raw);
    return iterations == 0 ? 1 : iterations;
}

GroverPlan plan_search(const SearchInstance& instance) {
    validate_instance(instance);
    GroverPlan plan;
    plan.instance = instance;
    plan.iterations = grover_iterations(database_size(instance));
    const std::uint32_t controls = instance.qubit_count - 1;
    plan.ancilla_count = controls >= 3 ? controls - 2 : 0;
    return plan;
}

namespace {

// Bit held by qubit q for an n-bit pattern: qubit 0 is the most significant.
bool pattern_bit(std::uint64_t pattern, std::uint32_t n, std::uint32_t q) {
    return (pattern >> (n - 1 - q)) & 1;
}

void emit_multi_controlled_x(Program& program, std::uint32_t n) {
    const std::uint32_t target = n - 1;
    if (n == 2) {
        program.instructions.push_back(make_instruction(Opcode::CNOT, {0, 1}));
        return;
    }
    if (n == 3) {
        program.instructions.push_back(make_instruction(Opcode::TOFFOLI, {0, 1, 2}));
        return;
    }
    Instruction instr;
    instr.opcode = Opcode::MCX;
    for (std::uint32_t q = 0; q < target; ++q) instr.operands.push_back(q);
    instr.operands.push_back(target);
    program.instructions.push_back(std::move(instr));
}

// Phase flip on the all-ones register state: H-conjugated multi-controlled X
// on the last qubit.
void emit_phase_core(Program& program, std::uint32_t n) {
    const std::uint32_t target = n - 1;
    program.instructions.push_back(make_instruction(Opcode::H, {target}));
    emit_multi_controlled_x(program, n);
    program.instructions.push_back(make_instruction(Opcode::H, {target}));
}

}  // namespace

Program generate_grover(const SearchInstance& instance) {
    const auto plan = plan_search(instance);
    const std::uint32_t n = instance.qubit_count;
    Program program;
    program.level = ProgramLevel::logical;
    program.capacity = n;
    for (std::uint32_t q = 0; q < n; ++q) {
        program.instructions.push_back(make_instruction(Opcode::INIT, {q}));
    }
    for (std::uint32_t q = 0; q < n; ++q) {
        program.instructions.push_back(make_instruction(Opcode::H, {q}));
    }
    for (std::uint64_t it = 0; it < plan.iterations; ++it) {
        // Oracle: X frame selects the marked pattern, core flips its phase.
        for (std::uint32_t q = 0; q < n; ++q) {
            if (!pattern_bit(instance.marked, n, q)) {
                program.instructions.push_back(make_instruction(Opcode::X, {q}));
            }
        }
        emit_phase_core(program, n);
        for (std::uint32_t q = 0; q < n; ++q) {
            if (!pattern_bit(instance.marked, n, q)) {
                program.instructions.push_back(make_instruction(Opcode::X, {q}));
            }
        }
        // Diffusion: inversion about the mean via a phase flip on |0...0>.
        for (std::uint32_t q = 0; q < n; ++q) {
            program.instructions.push_back(make_instruction(Opcode::H, {q}));
        }
        for (std::uint32_t q = 0; q < n; ++q) {
            program.instructions.push_back(make_instruction(Opcode::X, {q}));
        }
        emit_phase_core(program, n);
        for (std::uint32_t q = 0; q < n; ++q) {
            program.instructions.push_back(make_instruction(Opcode::X, {q}));
        }
        for (std::uint32_t q = 0; q < n; ++q) {
            program.instructions.push_back(make_instruction(Opcode::H, {q}));
        }
    }
    for (std::uint32_t q = 0; q < n; ++q) {
        program.instructions.push_back(make_instruction(Opcode::READ, {q}));
    }
    return program;
}

std::vector<Instruction> toffoli_sequence(std::uint32_t a, std::uint32_t b,
                                          std::uint32_t target) {
    return {
        make_instruction(Opcode::H, {target}),
        make_instruction(Opcode::CNOT, {b, target}),
        make_instruction(Opcode::TDG, {target}),
        make_instruction(Opcode::CNOT, {a, target}),
        make_instruction(Opcode::T, {target}),
        make_instruction(Opcode::CNOT, {b, target}),
        make_instruction(Opcode::TDG, {target}),
        make_instruction(Opcode::CNOT, {a, target}),
        make_instruction(Opcode::T, {b}),
        make_instruction(Opcode::T, {target}),
        make_instruction(Opcode::CNOT, {a, b}),
        make_instruction(Opcode::H, {target}),
        make_instruction(Opcode::T, {a}),
        make_instruction(Opcode::TDG, {b}),
        make_instruction(Opcode::CNOT, {a, b}),
    };
}

std::vector<Instruction> decompose_mcx(std::span<const std::uint32_t> controls,
                                       std::uint32_t target,
                                       std::span<const std::uint32_t> ancillas) {
    const std::size_t k = controls.size();
    if (k == 0) throw std::invalid_argument("multi-controlled X needs at least one control");
    if (k == 1) return {make_instruction(Opcode::CNOT, {controls[0], target})};
    if (k == 2) return {make_instruction(Opcode::TOFFOLI, {controls[0], controls[1], target})};
    if (ancillas.size() < k - 2) {
        throw std::invalid_argument("ladder over " + std::to_string(k) + " controls needs " +
                                    std::to_string(k - 2) + " ancillas, got " +
                                    std::to_string(ancillas.size()));
    }
    std::vector<Instruction> ladder;
    ladder.reserve(2 * k - 3);
    // Compute chain: anc[i] accumulates the AND of the first i + 2 controls.
    ladder.push_back(make_instruction(Opcode::TOFFOLI, {controls[0], controls[1], ancillas[0]}));
    for (std::size_t i = 0; i + 3 < k; ++i) {
        ladder.push_back(make_instruction(
            Opcode::TOFFOLI, {controls[i + 2], ancillas[i], ancillas[i + 1]}));
    }
    ladder.push_back(make_instruction(Opcode::TOFFOLI, {controls[k - 1], ancillas[k - 3], target}));
    // Uncompute in reverse so the ancillas end where they started.
    for (std::size_t i = k - 3; i-- > 0;) {
        ladder.push_back(make_instruction(
            Opcode::TOFFOLI, {controls[i + 2], ancillas[i], ancillas[i + 1]}));
    }
    ladder.push_back(make_instruction(Opcode::TOFFOLI, {controls[0], controls[1], ancillas[0]}));
    return ladder;
}

namespace {

std::uint32_t ladder_workspace(const Instruction& instr) {
    if (instr.opcode != Opcode::MCX && instr.opcode != Opcode::MCZ) return 0;
    const auto controls = static_cast<std::uint32_t>(instr.operands.size()) - 1;
    return controls >= 3 ? controls - 2 : 0;
}

void append_toffoli(Program& out, const Instruction& instr) {
    auto seq = toffoli_sequence(instr.operands[0], instr.operands[1], instr.operands[2]);
    out.instructions.insert(out.instructions.end(), seq.begin(), seq.end());
}

void append_mcx(Program& out, std::span<const std::uint32_t> controls, std::uint32_t target,
                std::uint32_t ancilla_base) {
    std::vector<std::uint32_t> ancillas;
    const std::size_t k = controls.size();
    for (std::uint32_t i = 0; k >= 3 && i < k - 2; ++i) ancillas.push_back(ancilla_base + i);
    for (const auto& step : decompose_mcx(controls, target, ancillas)) {
        if (step.opcode == Opcode::TOFFOLI) {
            append_toffoli(out, step);
        } else {
            out.instructions.push_back(step);
        }
    }
}

}  // namespace

Program lower_to_physical(const Program& logical) {
    if (logical.level != ProgramLevel::logical) {
        throw std::invalid_argument("lower_to_physical expects a logical program");
    }
    if (auto report = validate_program(logical); !report.ok()) {
        const auto& v = report.violations.front();
        throw std::invalid_argument("invalid program at instruction " +
                                    std::to_string(v.instruction_index) + ": " + v.rule);
    }
    std::uint32_t workspace = 0;
    for (const auto& instr : logical.instructions) {
        workspace = std::max(workspace, ladder_workspace(instr));
    }
    Program out;
    out.level = ProgramLevel::physical;
    out.capacity = logical.capacity + workspace;
    const std::uint32_t ancilla_base = logical.capacity;
    for (const auto& instr : logical.instructions) {
        switch (instr.opcode) {
            case Opcode::TOFFOLI:
                append_toffoli(out, instr);
                break;
            case Opcode::MCX: {
                std::span<const std::uint32_t> ops(instr.operands);
                append_mcx(out, ops.first(ops.size() - 1), ops.back(), ancilla_base);
                break;
            }
            case Opcode::MCZ: {
                // MCZ = H on the target around the matching multi-controlled X.
                std::span<const std::uint32_t> ops(instr.operands);
                const std::uint32_t target = ops.back();
                out.instructions.push_back(make_instruction(Opcode::H, {target}));
                append_mcx(out, ops.first(ops.size() - 1), target, ancilla_base);
                out.instructions.push_back(make_instruction(Opcode::H, {target}));
                break;
            }
            default:
                out.instructions.push_back(instr);
                break;
        }
    }
    return out;
}

namespace {

// Toffolis behind one multi-controlled X over k = n - 1 controls; zero when
// a bare CNOT suffices.
std::uint64_t core_toffoli_count(std::uint32_t n) {
    if (n == 2) return 0;
    if (n == 3) return 1;
    return 2 * static_cast<std::uint64_t>(n - 1) - 3;
}

}  // namespace

ProgramShape grover_logical_shape(const SearchInstance& instance) {
    const auto plan = plan_search(instance);
    const std::uint32_t n = instance.qubit_count;
    const std::uint64_t r = plan.iterations;
    const std::uint64_t zero_bits =
        n - static_cast<std::uint64_t>(std::popcount(instance.marked));
    ProgramShape shape;
    shape.capacity = n;
    shape.tally.add(Opcode::INIT, n);
    shape.tally.add(Opcode::READ, n);
    // Opening H layer plus per iteration: 2 oracle core H, 2n diffusion
    // H-layers and 2 diffusion core H.
    shape.tally.add(Opcode::H, checked_add(n, checked_mul(r, 2 * std::uint64_t{n} + 4)));
    shape.tally.add(Opcode::X, checked_mul(r, checked_add(2 * zero_bits, 2 * std::uint64_t{n})));
    const Opcode core = n == 2 ? Opcode::CNOT : (n == 3 ? Opcode::TOFFOLI : Opcode::MCX);
    shape.tally.add(core, checked_mul(r, 2));
    return shape;
}

ProgramShape grover_physical_shape(const SearchInstance& instance) {
    const auto plan = plan_search(instance);
    const std::uint32_t n = instance.qubit_count;
    const std::uint64_t r = plan.iterations;
    const std::uint64_t zero_bits =
        n - static_cast<std::uint64_t>(std::popcount(instance.marked));
    const std::uint64_t cores = checked_mul(r, 2);
    const std::uint64_t toffolis = checked_mul(cores, core_toffoli_count(n));
    ProgramShape shape;
    shape.capacity = n + plan.ancilla_count;
    shape.tally.add(Opcode::INIT, n);
    shape.tally.add(Opcode::READ, n);
    shape.tally.add(Opcode::H, checked_add(checked_add(n, checked_mul(r, 2 * std::uint64_t{n} + 4)),
                                           checked_mul(toffolis, 2)));
    shape.tally.add(Opcode::X, checked_mul(r, checked_add(2 * zero_bits, 2 * std::uint64_t{n})));
    shape.tally.add(Opcode::T, checked_mul(toffolis, 4));
    shape.tally.add(Opcode::TDG, checked_mul(toffolis, 3));
    shape.tally.add(Opcode::CNOT, checked_add(checked_mul(toffolis, 6), n == 2 ? cores : 0));
    return shape;
}

}  // namespace qpusim
