#include "qpusim/qec.hpp"

#include <array>
#include <fstream>
#include <istream>
#include <stdexcept>

#include "json.hpp"
#include "qpusim/arith.hpp"

namespace qpusim {

namespace {

// Weight-4 generator supports of the [[7,1,3]] code; the X-type and Z-type
// generators share them.
constexpr std::array<std::array<std::uint32_t, 4>, 3> kStabilizerSupport = {{
    {0, 2, 4, 6},
    {1, 2, 5, 6},
    {3, 4, 5, 6},
}};

std::uint64_t syndrome_pool_size(const QecConfig& config) {
    if (config.policy == EcPolicy::none) return 0;
    return std::max(config.stabilizer_cost.init, config.stabilizer_cost.read);
}

}  // namespace

std::string_view ec_policy_name(EcPolicy policy) {
    return policy == EcPolicy::per_gate ? "per_gate" : "none";
}

std::optional<EcPolicy> ec_policy_from_name(std::string_view name) {
    if (name == "per_gate") return EcPolicy::per_gate;
    if (name == "none") return EcPolicy::none;
    return std::nullopt;
}

void validate_config(const QecConfig& config) {
    if (config.t_cost_multiplier == 0) {
        throw std::invalid_argument("t_cost_multiplier must be at least 1");
    }
}

namespace {

std::uint64_t require_unsigned(const nlohmann::json& node, const std::string& where) {
    if (!node.is_number_unsigned()) {
        throw std::runtime_error("`" + where + "` must be a non-negative integer");
    }
    return node.get<std::uint64_t>();
}

}  // namespace

QecConfig load_qec_config(std::istream& in) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& err) {
        throw std::runtime_error(std::string("code config is not valid JSON: ") + err.what());
    }
    if (!doc.is_object()) throw std::runtime_error("code config must hold a JSON object");
    if (!doc.contains("levels")) throw std::runtime_error("code config needs `levels`");
    QecConfig config;
    for (auto& [key, value] : doc.items()) {
        if (key == "levels") {
            const auto levels = require_unsigned(value, key);
            if (levels > 20) throw std::runtime_error("levels capped at 20");
            config.levels = static_cast<std::uint32_t>(levels);
        } else if (key == "ec_policy") {
            if (!value.is_string()) throw std::runtime_error("`ec_policy` must be a string");
            auto policy = ec_policy_from_name(value.get<std::string>());
            if (!policy) {
                throw std::runtime_error("`ec_policy` must be `per_gate` or `none`");
            }
            config.policy = *policy;
        } else if (key == "stabilizer_cost") {
            if (!value.is_object()) {
                throw std::runtime_error("`stabilizer_cost` must be an object");
            }
            for (auto& [field, amount] : value.items()) {
                const auto count = require_unsigned(amount, "stabilizer_cost." + field);
                if (field == "init") {
                    config.stabilizer_cost.init = count;
                } else if (field == "single_qubit") {
                    config.stabilizer_cost.single_qubit = count;
                } else if (field == "cnot") {
                    config.stabilizer_cost.cnot = count;
                } else if (field == "read") {
                    config.stabilizer_cost.read = count;
                } else {
                    throw std::runtime_error("stabilizer_cost: unknown key `" + field + "`");
                }
            }
        } else if (key == "t_cost_multiplier") {
            config.t_cost_multiplier = require_unsigned(value, key);
        } else {
            throw std::runtime_error("code config: unknown key `" + key + "`");
        }
    }
    validate_config(config);
    return config;
}

QecConfig load_qec_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open code config file: " + path);
    return load_qec_config(in);
}

std::uint64_t QubitFootprint::total() const { return checked_add(data, peak_ancilla); }

QubitFootprint physical_qubits(std::uint64_t register_size, const QecConfig& config) {
    validate_config(config);
    QubitFootprint footprint;
    footprint.data = checked_mul(register_size, checked_pow(kBlockSize, config.levels));
    // One shared pool per concatenation step: a, 7a, ..., 7^(L-1) a, which
    // sums to a * (7^L - 1) / 6.
    const std::uint64_t pool = syndrome_pool_size(config);
    footprint.peak_ancilla =
        checked_mul(pool, (checked_pow(kBlockSize, config.levels) - 1) / (kBlockSize - 1));
    return footprint;
}

GateTally ec_round_cost(const QecConfig& config) {
    validate_config(config);
    GateTally round;
    if (config.policy == EcPolicy::none) return round;
    round.add(Opcode::INIT, checked_mul(kStabilizerCount, config.stabilizer_cost.init));
    round.add(Opcode::H, checked_mul(kStabilizerCount, config.stabilizer_cost.single_qubit));
    round.add(Opcode::CNOT, checked_mul(kStabilizerCount, config.stabilizer_cost.cnot));
    round.add(Opcode::READ, checked_mul(kStabilizerCount, config.stabilizer_cost.read));
    return round;
}

namespace {

// One concatenation step on exact tallies: transversal copies plus one
// syndrome round per operand block of every instruction.
GateTally expand_tally_one_level(const GateTally& tally, const QecConfig& config) {
    GateTally next;
    std::uint64_t rounds = 0;
    for (std::size_t i = 0; i < kOpcodeCount; ++i) {
        const auto op = static_cast<Opcode>(i);
        const std::uint64_t count = tally.count(op);
        if (count == 0) continue;
        if (!opcode_is_physical(op)) {
            throw std::invalid_argument("cannot encode logical-only opcode " +
                                        std::string(opcode_name(op)));
        }
        std::uint64_t copies = checked_mul(count, kBlockSize);
        if (op == Opcode::T || op == Opcode::TDG) {
            copies = checked_mul(copies, config.t_cost_multiplier);
        }
        next.add(op, copies);
        rounds = checked_add(rounds, checked_mul(count, *opcode_arity(op)));
    }
    if (config.policy == EcPolicy::per_gate) {
        next.add_scaled(ec_round_cost(config), rounds);
    }
    return next;
}

struct StreamExpander {
    const QecConfig& config;
    std::uint32_t block_stride;  // capacity of the level being expanded
    Program out;

    std::uint32_t pool_base() const { return block_stride * kBlockSize; }

    void emit_stabilizer(std::uint32_t block_base, std::uint32_t generator) {
        const auto& cost = config.stabilizer_cost;
        const auto& support = kStabilizerSupport[generator % 3];
        const bool x_type = generator < 3;
        const auto pool = static_cast<std::uint32_t>(syndrome_pool_size(config));
        const auto anc = [&](std::uint64_t i) {
            return pool_base() + static_cast<std::uint32_t>(i % std::max<std::uint32_t>(pool, 1));
        };
        for (std::uint64_t i = 0; i < cost.init; ++i) {
            out.instructions.push_back(make_instruction(Opcode::INIT, {anc(i)}));
        }
        for (std::uint64_t i = 0; i < cost.single_qubit; ++i) {
            if (pool == 0) {
                out.instructions.push_back(
                    make_instruction(Opcode::H, {block_base + support[i % 4]}));
            } else {
                out.instructions.push_back(make_instruction(Opcode::H, {anc(i)}));
            }
        }
        // Cat-state preparation chain, verification against the last
        // initialized ancilla, then data coupling; shrinks gracefully when a
        // custom budget leaves too few ancillas for a stage.
        const std::uint64_t cat = cost.init > 0 ? cost.init - 1 : 0;
        std::uint64_t remaining = cost.cnot;
        const std::uint64_t chain = std::min(remaining, cat >= 2 ? cat - 1 : std::uint64_t{0});
        for (std::uint64_t i = 0; i < chain; ++i) {
            out.instructions.push_back(make_instruction(
                Opcode::CNOT, {anc(i), anc(i + 1)}));
        }
        remaining -= chain;
        const std::uint64_t verify =
            std::min(remaining, (cat >= 1 && cost.init >= 2) ? std::uint64_t{2} : std::uint64_t{0});
        for (std::uint64_t i = 0; i < verify; ++i) {
            out.instructions.push_back(make_instruction(
                Opcode::CNOT, {anc(i == 0 ? 0 : cat - 1), anc(cost.init - 1)}));
        }
        remaining -= verify;
        for (std::uint64_t i = 0; i < remaining; ++i) {
            if (pool == 0) {
                out.instructions.push_back(make_instruction(
                    Opcode::CNOT,
                    {block_base + support[i % 3], block_base + support[i % 3 + 1]}));
            } else if (x_type) {
                out.instructions.push_back(make_instruction(
                    Opcode::CNOT, {anc(i), block_base + support[i % 4]}));
            } else {
                out.instructions.push_back(make_instruction(
                    Opcode::CNOT, {block_base + support[i % 4], anc(i)}));
            }
        }
        for (std::uint64_t i = 0; i < cost.read; ++i) {
            out.instructions.push_back(make_instruction(Opcode::READ, {anc(i)}));
        }
    }

    void emit_round(std::uint32_t block) {
        for (std::uint32_t g = 0; g < kStabilizerCount; ++g) {
            emit_stabilizer(block * kBlockSize, g);
        }
    }

    void expand(const Instruction& instr) {
        const std::uint64_t repeats =
            (instr.opcode == Opcode::T || instr.opcode == Opcode::TDG)
                ? config.t_cost_multiplier
                : 1;
        for (std::uint64_t rep = 0; rep < repeats; ++rep) {
            for (std::uint32_t i = 0; i < kBlockSize; ++i) {
                Instruction copy;
                copy.opcode = instr.opcode;
                for (auto q : instr.operands) copy.operands.push_back(q * kBlockSize + i);
                out.instructions.push_back(std::move(copy));
            }
        }
        if (config.policy == EcPolicy::per_gate) {
            for (auto q : instr.operands) emit_round(q);
        }
    }
};

Program expand_program_one_level(const Program& program, const QecConfig& config) {
    StreamExpander expander{config, program.capacity, Program{}};
    expander.out.level = ProgramLevel::physical;
    expander.out.capacity = static_cast<std::uint32_t>(
        checked_add(checked_mul(program.capacity, kBlockSize), syndrome_pool_size(config)));
    for (const auto& instr : program.instructions) expander.expand(instr);
    return std::move(expander.out);
}

}  // namespace

GateTally lower_qec_tally(const GateTally& tally, const QecConfig& config) {
    validate_config(config);
    GateTally current = tally;
    for (std::uint32_t level = 0; level < config.levels; ++level) {
        current = expand_tally_one_level(current, config);
    }
    return current;
}

QecResult lower_qec(const Program& physical, const QecConfig& config) {
    validate_config(config);
    if (physical.level != ProgramLevel::physical) {
        throw std::invalid_argument("encoding expects a physical program");
    }
    if (auto report = validate_program(physical); !report.ok()) {
        const auto& v = report.violations.front();
        throw std::invalid_argument("invalid program at instruction " +
                                    std::to_string(v.instruction_index) + ": " + v.rule);
    }
    QecResult result;
    result.tally = lower_qec_tally(tally_program(physical), config);
    const std::uint64_t data_qubits =
        checked_mul(physical.capacity, checked_pow(kBlockSize, config.levels));
    if (data_qubits <= kMaterializeQubitLimit &&
        result.tally.total() <= kMaterializeGateLimit) {
        Program expanded = physical;
        for (std::uint32_t level = 0; level < config.levels; ++level) {
            expanded = expand_program_one_level(expanded, config);
        }
        result.expanded_capacity = expanded.capacity;
        result.program = std::move(expanded);
    }
    return result;
}

}  // namespace qpusim
