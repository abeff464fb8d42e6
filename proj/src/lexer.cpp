#include "janus/lexer.hpp"

#include <cctype>
#include <map>

namespace janus {

namespace {

// Solidity constructs we recognise and reject by name, so that rejection is
// total and the message always names the construct.
const std::map<std::string, std::string> kUnsupportedKeywords = {
    {"for", "for loop"},
    {"while", "while loop"},
    {"do", "do-while loop"},
    {"is", "inheritance"},
    {"interface", "interface declaration"},
    {"library", "library declaration"},
    {"import", "import directive"},
    {"pragma", "pragma directive"},
    {"event", "event declaration"},
    {"emit", "event emission"},
    {"enum", "enum declaration"},
    {"struct", "struct declaration"},
    {"string", "string type"},
    {"bytes", "bytes type"},
    {"assembly", "inline assembly"},
    {"delegatecall", "delegatecall"},
    {"payable", "payable"},
    {"returns", "return values"},
    {"return", "return statement"},
    {"internal", "internal visibility"},
    {"external", "external visibility"},
    {"private", "private visibility"},
    {"new", "contract creation"},
    {"this", "self reference"},
    {"assert", "assert statement"},
};

} // namespace

Lexer::Lexer(const std::string& source) : src_(source) {}

char Lexer::peek(int ahead) const {
    std::size_t i = pos_ + static_cast<std::size_t>(ahead);
    return i < src_.size() ? src_[i] : '\0';
}

char Lexer::advance() {
    char c = src_[pos_++];
    if (c == '\n') {
        ++line_;
        col_ = 1;
    } else {
        ++col_;
    }
    return c;
}

void Lexer::skip_trivia() {
    for (;;) {
        char c = peek();
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance();
        } else if (c == '/' && peek(1) == '/') {
            while (peek() != '\n' && peek() != '\0') advance();
        } else if (c == '/' && peek(1) == '*') {
            SourceLoc start{line_, col_};
            advance();
            advance();
            while (!(peek() == '*' && peek(1) == '/')) {
                if (peek() == '\0')
                    throw ParseError(DiagKind::Lexical, start, "unterminated block comment");
                advance();
            }
            advance();
            advance();
        } else {
            break;
        }
    }
}

Token Lexer::next() {
    skip_trivia();
    SourceLoc loc{line_, col_};
    char c = peek();
    if (c == '\0') return {TokKind::Eof, "", 0, loc};

    if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string text;
        while (std::isdigit(static_cast<unsigned char>(peek()))) text += advance();
        if (std::isalpha(static_cast<unsigned char>(peek())))
            throw ParseError(DiagKind::Lexical, loc, "malformed number literal");
        return {TokKind::Number, text, std::stoll(text), loc};
    }

    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string text;
        while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')
            text += advance();
        // msg.sender / msg.value / block.number are single lexemes
        if ((text == "msg" || text == "block") && peek() == '.') {
            advance();
            std::string member;
            while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')
                member += advance();
            std::string full = text + "." + member;
            if (full == "msg.sender" || full == "msg.value" || full == "block.number")
                return {TokKind::Ident, full, 0, loc};
            throw ParseError(DiagKind::UnsupportedConstruct, loc,
                             "unsupported construct: builtin '" + full + "'");
        }
        if (auto it = kUnsupportedKeywords.find(text); it != kUnsupportedKeywords.end())
            throw ParseError(DiagKind::UnsupportedConstruct, loc,
                             "unsupported construct: " + it->second);
        return {TokKind::Ident, text, 0, loc};
    }

    auto two = [&](char a, char b) { return c == a && peek(1) == b; };
    if (two('=', '=')) { advance(); advance(); return {TokKind::EqEq, "==", 0, loc}; }
    if (two('!', '=')) { advance(); advance(); return {TokKind::BangEq, "!=", 0, loc}; }
    if (two('<', '=')) { advance(); advance(); return {TokKind::Le, "<=", 0, loc}; }
    if (two('>', '=')) { advance(); advance(); return {TokKind::Ge, ">=", 0, loc}; }
    if (two('&', '&')) { advance(); advance(); return {TokKind::AndAnd, "&&", 0, loc}; }
    if (two('|', '|')) { advance(); advance(); return {TokKind::OrOr, "||", 0, loc}; }
    if (two('+', '=')) { advance(); advance(); return {TokKind::PlusEq, "+=", 0, loc}; }
    if (two('-', '=')) { advance(); advance(); return {TokKind::MinusEq, "-=", 0, loc}; }
    if (two('=', '>')) { advance(); advance(); return {TokKind::Arrow, "=>", 0, loc}; }

    advance();
    switch (c) {
    case '{': return {TokKind::LBrace, "{", 0, loc};
    case '}': return {TokKind::RBrace, "}", 0, loc};
    case '(': return {TokKind::LParen, "(", 0, loc};
    case ')': return {TokKind::RParen, ")", 0, loc};
    case '[': return {TokKind::LBracket, "[", 0, loc};
    case ']': return {TokKind::RBracket, "]", 0, loc};
    case ';': return {TokKind::Semi, ";", 0, loc};
    case ',': return {TokKind::Comma, ",", 0, loc};
    case '=': return {TokKind::Assign, "=", 0, loc};
    case '+': return {TokKind::Plus, "+", 0, loc};
    case '-': return {TokKind::Minus, "-", 0, loc};
    case '*': return {TokKind::Star, "*", 0, loc};
    case '<': return {TokKind::Lt, "<", 0, loc};
    case '>': return {TokKind::Gt, ">", 0, loc};
    case '!': return {TokKind::Bang, "!", 0, loc};
    case '/':
        throw ParseError(DiagKind::UnsupportedConstruct, loc,
                         "unsupported construct: division operator");
    case '.':
        throw ParseError(DiagKind::UnsupportedConstruct, loc,
                         "unsupported construct: member access");
    default:
        throw ParseError(DiagKind::Lexical, loc,
                         std::string("unexpected character '") + c + "'");
    }
}

std::vector<Token> Lexer::tokenize() {
    std::vector<Token> out;
    for (;;) {
        Token t = next();
        bool done = t.kind == TokKind::Eof;
        out.push_back(std::move(t));
        if (done) break;
    }
    return out;
}

} // namespace janus
