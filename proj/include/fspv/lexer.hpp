#pragma once

#include <cctype>
#include <string_view>
#include <vector>

#include "fspv/token.hpp"

namespace fspv {

namespace detail {

inline bool is_word_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
inline bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

inline TokenKind keyword_kind(std::string_view word) {
    if (word == "const") return TokenKind::KwConst;
    if (word == "range") return TokenKind::KwRange;
    if (word == "property") return TokenKind::KwProperty;
    if (word == "progress") return TokenKind::KwProgress;
    if (word == "when") return TokenKind::KwWhen;
    if (word == "STOP") return TokenKind::KwStop;
    if (word == "END") return TokenKind::KwEnd;
    if (word == "ERROR") return TokenKind::KwError;
    return TokenKind::EndOfInput;  // not a keyword
}

}  // namespace detail

/// Comments run from `//` (any number of leading slashes) to end of line.
/// `&` and `&&` both yield the AND token; `|` vs `||` stay distinct and the
/// parser decides between choice separator, composition, and boolean OR.
inline std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    int line = 1;
    int column = 1;
    std::size_t i = 0;
    const std::size_t n = text.size();

    auto advance = [&](std::size_t count) {
        for (std::size_t k = 0; k < count; ++k, ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
    };
    auto push = [&](TokenKind kind, std::size_t len) {
        tokens.push_back(Token{kind, std::string(text.substr(i, len)), {line, column}});
        advance(len);
    };

    while (i < n) {
        const char c = text[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        if (c == '/' && i + 1 < n && text[i + 1] == '/') {
            while (i < n && text[i] != '\n') advance(1);
            continue;
        }
        if (detail::is_word_start(c)) {
            std::size_t len = 1;
            while (i + len < n && detail::is_word_char(text[i + len])) ++len;
            std::string_view word = text.substr(i, len);
            TokenKind kw = detail::keyword_kind(word);
            if (kw != TokenKind::EndOfInput) {
                push(kw, len);
            } else if (std::isupper(static_cast<unsigned char>(c))) {
                push(TokenKind::UpperIdentifier, len);
            } else {
                push(TokenKind::Identifier, len);
            }
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t len = 1;
            while (i + len < n && std::isdigit(static_cast<unsigned char>(text[i + len]))) ++len;
            push(TokenKind::Integer, len);
            continue;
        }

        auto two = [&](char second) { return i + 1 < n && text[i + 1] == second; };
        switch (c) {
            case '=':
                if (two('=')) push(TokenKind::EqEq, 2); else push(TokenKind::Assign, 1);
                continue;
            case '.':
                if (two('.')) push(TokenKind::DotDot, 2); else push(TokenKind::Dot, 1);
                continue;
            case ',': push(TokenKind::Comma, 1); continue;
            case '-':
                if (two('>')) push(TokenKind::Arrow, 2); else push(TokenKind::Minus, 1);
                continue;
            case '|':
                if (two('|')) push(TokenKind::PipePipe, 2); else push(TokenKind::Pipe, 1);
                continue;
            case '&':
                if (two('&')) push(TokenKind::And, 2); else push(TokenKind::And, 1);
                continue;
            case '!':
                if (two('=')) push(TokenKind::NotEq, 2); else push(TokenKind::Bang, 1);
                continue;
            case '<':
                if (two('=')) push(TokenKind::LessEq, 2); else push(TokenKind::Less, 1);
                continue;
            case '>':
                if (two('=')) push(TokenKind::GreaterEq, 2); else push(TokenKind::Greater, 1);
                continue;
            case '(': push(TokenKind::LParen, 1); continue;
            case ')': push(TokenKind::RParen, 1); continue;
            case '{': push(TokenKind::LBrace, 1); continue;
            case '}': push(TokenKind::RBrace, 1); continue;
            case '[': push(TokenKind::LBracket, 1); continue;
            case ']': push(TokenKind::RBracket, 1); continue;
            case ':': push(TokenKind::Colon, 1); continue;
            case '/': push(TokenKind::Slash, 1); continue;
            case '+': push(TokenKind::Plus, 1); continue;
            case '*': push(TokenKind::Star, 1); continue;
            case '%': push(TokenKind::Percent, 1); continue;
            default:
                fail(ErrorCode::UnknownCharacter,
                     std::string("unexpected character '") + c + "'", {line, column});
        }
    }
    tokens.push_back(Token{TokenKind::EndOfInput, "", {line, column}});
    return tokens;
}

}  // namespace fspv
