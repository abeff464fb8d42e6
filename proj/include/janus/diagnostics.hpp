#pragma once

#include <stdexcept>
#include <string>

namespace janus {

struct SourceLoc {
    int line = 0;
    int col = 0;
};

enum class DiagKind {
    Lexical,
    Syntax,
    UnsupportedConstruct,
    Validation,
};

/// Frontend failure with a precise source position. Rendered by the CLI as
/// `file:line:col: message`.
class ParseError : public std::runtime_error {
public:
    ParseError(DiagKind kind, SourceLoc loc, std::string message)
        : std::runtime_error(message), kind_(kind), loc_(loc) {}

    DiagKind kind() const { return kind_; }
    SourceLoc loc() const { return loc_; }

    std::string render(const std::string& file) const {
        return file + ":" + std::to_string(loc_.line) + ":" + std::to_string(loc_.col) +
               ": " + what();
    }

private:
    DiagKind kind_;
    SourceLoc loc_;
};

} // namespace janus
