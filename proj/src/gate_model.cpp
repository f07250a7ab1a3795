#include "qpusim/gate_model.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "json.hpp"
#include "qpusim/arith.hpp"

namespace qpusim {

namespace {

constexpr std::array<std::string_view, kGateClassCount> kClassNames = {"INIT", "UNITARY", "READ"};

}  // namespace

GateClass opcode_class(Opcode op) {
    switch (op) {
        case Opcode::INIT:
            return GateClass::INIT;
        case Opcode::READ:
            return GateClass::READ;
        case Opcode::H:
        case Opcode::X:
        case Opcode::Y:
        case Opcode::Z:
        case Opcode::S:
        case Opcode::SDG:
        case Opcode::T:
        case Opcode::TDG:
        case Opcode::CNOT:
        case Opcode::CZ:
            return GateClass::UNITARY;
        case Opcode::TOFFOLI:
        case Opcode::MCX:
        case Opcode::MCZ:
            break;
    }
    throw std::invalid_argument(std::string(opcode_name(op)) +
                                " is logical-only and has no gate class");
}

std::string_view gate_class_name(GateClass c) {
    return kClassNames[gate_class_index(c)];
}

std::optional<GateClass> gate_class_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kGateClassCount; ++i) {
        if (kClassNames[i] == name) return static_cast<GateClass>(i);
    }
    return std::nullopt;
}

MicrocodeTable MicrocodeTable::with_class_models(
    const std::array<GateModel, kGateClassCount>& models) {
    MicrocodeTable table;
    table.class_models_ = models;
    return table;
}

MicrocodeTable MicrocodeTable::silicon_default() {
    return with_class_models({{
        {300000, 100, 5000},  // INIT
        {40, 100, 4},         // UNITARY
        {100000, 100, 5000},  // READ
    }});
}

const GateModel& MicrocodeTable::resolve(Opcode op) const {
    if (!opcode_is_physical(op)) {
        throw std::invalid_argument("no microcode for logical-only opcode " +
                                    std::string(opcode_name(op)));
    }
    const auto& override_entry = overrides_[opcode_index(op)];
    if (override_entry) return *override_entry;
    return class_models_[gate_class_index(opcode_class(op))];
}

const GateModel& MicrocodeTable::class_model(GateClass c) const {
    return class_models_[gate_class_index(c)];
}

void MicrocodeTable::set_class_model(GateClass c, const GateModel& model) {
    class_models_[gate_class_index(c)] = model;
}

void MicrocodeTable::set_override(Opcode op, const GateModel& model) {
    if (!opcode_is_physical(op)) {
        throw std::invalid_argument("cannot override microcode for logical-only opcode " +
                                    std::string(opcode_name(op)));
    }
    overrides_[opcode_index(op)] = model;
}

const std::optional<GateModel>& MicrocodeTable::override_for(Opcode op) const {
    return overrides_[opcode_index(op)];
}

namespace {

GateModel parse_gate_model(const nlohmann::json& node, const std::string& where) {
    if (!node.is_object()) {
        throw std::runtime_error("gate model `" + where + "` must be an object");
    }
    GateModel model;
    for (auto& [key, value] : node.items()) {
        if (!value.is_number_unsigned()) {
            throw std::runtime_error("gate model `" + where + "." + key +
                                     "` must be a non-negative integer");
        }
        if (key == "duration_ns") {
            model.duration_ns = value.get<std::uint64_t>();
        } else if (key == "power_aW") {
            model.power_aW = value.get<std::uint64_t>();
        } else if (key == "energy_zJ") {
            model.energy_zJ = value.get<std::uint64_t>();
        } else {
            throw std::runtime_error("gate model `" + where + "`: unknown key `" + key + "`");
        }
    }
    if (!node.contains("duration_ns") || !node.contains("energy_zJ")) {
        throw std::runtime_error("gate model `" + where +
                                 "` needs duration_ns and energy_zJ");
    }
    if (model.duration_ns == 0) {
        throw std::runtime_error("gate model `" + where + "` has zero duration");
    }
    return model;
}

}  // namespace

MicrocodeTable load_gate_models(std::istream& in) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& err) {
        throw std::runtime_error(std::string("gate model file is not valid JSON: ") + err.what());
    }
    if (!doc.is_object()) throw std::runtime_error("gate model file must hold a JSON object");
    MicrocodeTable table;
    bool seen[kGateClassCount] = {false, false, false};
    for (auto& [key, value] : doc.items()) {
        if (auto c = gate_class_from_name(key)) {
            table.set_class_model(*c, parse_gate_model(value, key));
            seen[gate_class_index(*c)] = true;
        } else if (key == "opcode_overrides") {
            if (!value.is_object()) {
                throw std::runtime_error("opcode_overrides must be an object");
            }
            for (auto& [op_name, op_value] : value.items()) {
                auto op = opcode_from_name(op_name);
                if (!op || !opcode_is_physical(*op)) {
                    throw std::runtime_error("opcode_overrides: unknown physical opcode `" +
                                             op_name + "`");
                }
                table.set_override(*op, parse_gate_model(op_value, op_name));
            }
        } else {
            throw std::runtime_error("gate model file: unknown key `" + key + "`");
        }
    }
    for (std::size_t i = 0; i < kGateClassCount; ++i) {
        if (!seen[i]) {
            throw std::runtime_error(std::string("gate model file: missing class `") +
                                     std::string(kClassNames[i]) + "`");
        }
    }
    return table;
}

MicrocodeTable load_gate_models_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open gate model file: " + path);
    return load_gate_models(in);
}

void save_gate_models(const MicrocodeTable& table, std::ostream& out) {
    nlohmann::json doc = nlohmann::json::object();
    for (std::size_t i = 0; i < kGateClassCount; ++i) {
        const auto& model = table.class_model(static_cast<GateClass>(i));
        doc[std::string(kClassNames[i])] = {
            {"duration_ns", model.duration_ns},
            {"power_aW", model.power_aW},
            {"energy_zJ", model.energy_zJ},
        };
    }
    nlohmann::json overrides = nlohmann::json::object();
    for (std::size_t i = 0; i < kOpcodeCount; ++i) {
        const auto op = static_cast<Opcode>(i);
        if (const auto& entry = table.override_for(op)) {
            overrides[std::string(opcode_name(op))] = {
                {"duration_ns", entry->duration_ns},
                {"power_aW", entry->power_aW},
                {"energy_zJ", entry->energy_zJ},
            };
        }
    }
    if (!overrides.empty()) doc["opcode_overrides"] = overrides;
    out << doc.dump(2) << '\n';
}

void GateTally::add(Opcode op, std::uint64_t count) {
    auto& slot = counts_[opcode_index(op)];
    slot = checked_add(slot, count);
}

void GateTally::add_scaled(const GateTally& other, std::uint64_t times) {
    for (std::size_t i = 0; i < kOpcodeCount; ++i) {
        counts_[i] = checked_add(counts_[i], checked_mul(other.counts_[i], times));
    }
}

std::uint64_t GateTally::count(Opcode op) const {
    return counts_[opcode_index(op)];
}

std::uint64_t GateTally::class_count(GateClass c) const {
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < kOpcodeCount; ++i) {
        const auto op = static_cast<Opcode>(i);
        if (counts_[i] != 0 && opcode_is_physical(op) && opcode_class(op) == c) {
            sum = checked_add(sum, counts_[i]);
        }
    }
    return sum;
}

std::uint64_t GateTally::total() const {
    std::uint64_t sum = 0;
    for (auto count : counts_) sum = checked_add(sum, count);
    return sum;
}

GateTally tally_program(const Program& program) {
    GateTally tally;
    for (const auto& instr : program.instructions) tally.add(instr.opcode);
    return tally;
}

}  // namespace qpusim
