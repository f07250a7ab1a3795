#include "qpusim/parse.hpp"

#include <cctype>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace qpusim {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::string significant = line;
    if (auto hash = significant.find('#'); hash != std::string::npos) {
        significant.resize(hash);
    }
    std::vector<std::string> tokens;
    std::istringstream stream(significant);
    std::string token;
    while (stream >> token) tokens.push_back(token);
    return tokens;
}

std::optional<std::uint32_t> parse_u32(std::string_view text) {
    if (text.empty() || text.size() > 10) return std::nullopt;
    for (char c : text) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    }
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
    if (value > 0xffffffffULL) return std::nullopt;
    return static_cast<std::uint32_t>(value);
}

std::optional<std::uint32_t> parse_operand(std::string_view token) {
    if (token.size() < 2 || token[0] != 'q') return std::nullopt;
    return parse_u32(token.substr(1));
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

Program parse_program(std::istream& in) {
    Program program;
    bool header_seen = false;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        auto tokens = tokenize(line);
        if (tokens.empty()) continue;
        if (!header_seen) {
            if (tokens.size() != 2) {
                throw ParseError(line_number, "expected header `<level> <capacity>`");
            }
            auto level = level_from_name(tokens[0]);
            if (!level) {
                throw ParseError(line_number, "unknown program level `" + tokens[0] + "`");
            }
            auto capacity = parse_u32(tokens[1]);
            if (!capacity) {
                throw ParseError(line_number, "invalid register capacity `" + tokens[1] + "`");
            }
            program.level = *level;
            program.capacity = *capacity;
            header_seen = true;
            continue;
        }
        auto opcode = opcode_from_name(tokens[0]);
        if (!opcode) {
            throw ParseError(line_number, "unknown opcode `" + tokens[0] + "`");
        }
        Instruction instr;
        instr.opcode = *opcode;
        for (std::size_t i = 1; i < tokens.size(); ++i) {
            auto operand = parse_operand(tokens[i]);
            if (!operand) {
                throw ParseError(line_number, "malformed operand `" + tokens[i] + "`");
            }
            instr.operands.push_back(*operand);
        }
        if (auto rule = instruction_violation(instr, program.capacity, program.level)) {
            throw ParseError(line_number, *rule);
        }
        program.instructions.push_back(std::move(instr));
    }
    if (!header_seen) {
        throw ParseError(line_number == 0 ? 1 : line_number, "missing program header");
    }
    return program;
}

Program parse_program(const std::string& text) {
    std::istringstream stream(text);
    return parse_program(stream);
}

void render_program(const Program& program, std::ostream& out) {
    out << level_name(program.level) << ' ' << program.capacity << '\n';
    for (const auto& instr : program.instructions) {
        out << opcode_name(instr.opcode);
        for (auto operand : instr.operands) out << " q" << operand;
        out << '\n';
    }
}

std::string render_program(const Program& program) {
    std::ostringstream out;
    render_program(program, out);
    return out.str();
}

}  // namespace qpusim
