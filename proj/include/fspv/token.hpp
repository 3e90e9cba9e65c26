#pragma once

#include <string>
#include <vector>

#include "fspv/diagnostics.hpp"

namespace fspv {

enum class TokenKind {
    Identifier,       // lowercase-initial word: action labels, variables
    UpperIdentifier,  // uppercase-initial word: process, range, const names
    Integer,
    // keywords
    KwConst,
    KwRange,
    KwProperty,
    KwProgress,
    KwWhen,
    KwStop,
    KwEnd,
    KwError,
    // punctuation
    Assign,      // =
    Dot,         // .
    DotDot,      // ..
    Comma,       // ,
    Arrow,       // ->
    Pipe,        // |
    PipePipe,    // ||
    And,         // & or && (both collapse to one AND token)
    Bang,        // !
    EqEq,        // ==
    NotEq,       // !=
    Less,        // <
    LessEq,      // <=
    Greater,     // >
    GreaterEq,   // >=
    LParen,      // (
    RParen,      // )
    LBrace,      // {
    RBrace,      // }
    LBracket,    // [
    RBracket,    // ]
    Colon,       // :
    Slash,       // /
    Plus,        // +
    Minus,       // -
    Star,        // *
    Percent,     // %
    EndOfInput,
};

struct Token {
    TokenKind kind = TokenKind::EndOfInput;
    std::string text;
    SourcePos pos;

    bool is(TokenKind k) const { return kind == k; }

    friend bool operator==(const Token&, const Token&) = default;
};

inline const char* token_kind_name(TokenKind kind) {
    switch (kind) {
        case TokenKind::Identifier: return "identifier";
        case TokenKind::UpperIdentifier: return "process name";
        case TokenKind::Integer: return "integer";
        case TokenKind::KwConst: return "'const'";
        case TokenKind::KwRange: return "'range'";
        case TokenKind::KwProperty: return "'property'";
        case TokenKind::KwProgress: return "'progress'";
        case TokenKind::KwWhen: return "'when'";
        case TokenKind::KwStop: return "'STOP'";
        case TokenKind::KwEnd: return "'END'";
        case TokenKind::KwError: return "'ERROR'";
        case TokenKind::Assign: return "'='";
        case TokenKind::Dot: return "'.'";
        case TokenKind::DotDot: return "'..'";
        case TokenKind::Comma: return "','";
        case TokenKind::Arrow: return "'->'";
        case TokenKind::Pipe: return "'|'";
        case TokenKind::PipePipe: return "'||'";
        case TokenKind::And: return "'&&'";
        case TokenKind::Bang: return "'!'";
        case TokenKind::EqEq: return "'=='";
        case TokenKind::NotEq: return "'!='";
        case TokenKind::Less: return "'<'";
        case TokenKind::LessEq: return "'<='";
        case TokenKind::Greater: return "'>'";
        case TokenKind::GreaterEq: return "'>='";
        case TokenKind::LParen: return "'('";
        case TokenKind::RParen: return "')'";
        case TokenKind::LBrace: return "'{'";
        case TokenKind::RBrace: return "'}'";
        case TokenKind::LBracket: return "'['";
        case TokenKind::RBracket: return "']'";
        case TokenKind::Colon: return "':'";
        case TokenKind::Slash: return "'/'";
        case TokenKind::Plus: return "'+'";
        case TokenKind::Minus: return "'-'";
        case TokenKind::Star: return "'*'";
        case TokenKind::Percent: return "'%'";
        case TokenKind::EndOfInput: return "end of input";
    }
    return "token";
}

}  // namespace fspv
