#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "miggpt/snippet.hpp"

namespace miggpt {

enum class TokenKind { Ident, Number, Punct, StringLit, CharLit, Comment, Hash };

struct Token {
    TokenKind kind;
    std::string text;
    // True when the line this token came from began inside an unterminated
    // block comment (the token continues a comment from a previous line).
    bool block_continuation = false;
};

/// Lexer state carried across lines of one snippet.
struct LexState {
    bool in_block_comment = false;
};

/// Tokenize one line. Total: malformed input degrades to opaque tokens, and
/// literal/comment interiors never emit brace or paren tokens.
std::vector<Token> tokenize_line(std::string_view line, LexState& state);
std::vector<Token> tokenize_line(std::string_view line);

enum class CfpNodeKind {
    FuncDef,
    FuncCall,
    Ifdef,
    Define,
    Include,
    If,
    Else,
    While,
    For,
    Do,
    Switch,
    Return,
    Comment,
    InlineAsm,
    Declaration,
    Statement,
};

std::string to_string(CfpNodeKind kind);

/// One structural statement of a snippet.
struct CfpNode {
    CfpNodeKind kind = CfpNodeKind::Statement;
    int pos = 0;  // line where the construct starts (1-indexed)
    int end = 0;  // line where its scope closes; pos == end for single-line constructs
    std::string name;     // key identifier (function, macro, header), empty otherwise
    std::string content;  // verbatim text of the head line (trimmed)
    std::vector<std::string> callees;  // call names inside this node's scope
    std::vector<CfpNode> params;       // FuncDef only: sub-CFP of the body statements
};

/// Code Fingerprint: ordered line-anchored structural nodes over a snippet.
struct Cfp {
    std::vector<CfpNode> nodes;
    SourceSnippet source;
    std::vector<std::string> diagnostics;  // non-fatal, e.g. UnbalancedScope

    bool balanced() const { return diagnostics.empty(); }
};

struct FunctionSignature {
    std::string name;
    std::string raw;  // whitespace-collapsed head text of the definition
    int pos = 0;

    bool operator==(const FunctionSignature& o) const {
        return name == o.name && raw == o.raw && pos == o.pos;
    }
};

Cfp generate_cfp(const SourceSnippet& snippet);

std::vector<FunctionSignature> extract_signatures(const Cfp& cfp);

/// (first, last) content of the first and last non-trivial CFP statements.
/// Throws std::runtime_error("EmptyCfp") when no node qualifies.
std::pair<std::string, std::string> extract_anchors(const Cfp& cfp);

/// Union of FuncCall node names and all callees, sorted, deduplicated.
std::vector<std::string> extract_funccalls(const Cfp& cfp);

/// Depth-first flattening of the node tree (FuncDef bodies included), by pos.
std::vector<const CfpNode*> flatten(const Cfp& cfp);

/// Stable JSON dump: array of {kind, pos, end, name, content, callees, params}.
std::string cfp_to_json(const Cfp& cfp, int indent = 2);

}  // namespace miggpt
