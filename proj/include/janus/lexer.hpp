#pragma once

#include "janus/diagnostics.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace janus {

enum class TokKind {
    Ident,
    Number,
    LBrace, RBrace, LParen, RParen, LBracket, RBracket,
    Semi, Comma,
    Assign, PlusEq, MinusEq,
    Plus, Minus, Star,
    EqEq, BangEq, Lt, Le, Gt, Ge,
    AndAnd, OrOr, Bang,
    Arrow, // =>
    Eof,
};

struct Token {
    TokKind kind;
    std::string text;
    std::int64_t number = 0;
    SourceLoc loc;
};

class Lexer {
public:
    explicit Lexer(const std::string& source);
    std::vector<Token> tokenize();

private:
    Token next();
    void skip_trivia();
    char peek(int ahead = 0) const;
    char advance();

    const std::string& src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

} // namespace janus
