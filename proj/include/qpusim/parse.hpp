#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "qpusim/isa.hpp"

namespace qpusim {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message);

    // 1-based line number in the input text.
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Text wire format: the first significant line is `<level> <capacity>` with
// level one of `logical` / `physical`, then one instruction per line as
// `OPCODE q<i> q<j> ...`. `#` starts a comment, blank lines are skipped.
// The returned program satisfies every Program invariant; any malformed line
// raises ParseError carrying its line number.
Program parse_program(std::istream& in);
Program parse_program(const std::string& text);

// Canonical form: header line, then one instruction per line with single
// spaces, uppercase opcodes and `q<i>` operands. parse(render(p)) == p.
void render_program(const Program& program, std::ostream& out);
std::string render_program(const Program& program);

}  // namespace qpusim
