#include "miggpt/cfp.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace miggpt {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::string trim(std::string_view s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

// Keywords that may precede '(' without being a call.
const std::set<std::string>& call_keywords() {
    static const std::set<std::string> kw = {
        "if", "else", "for", "while", "do", "switch", "return", "sizeof",
        "case", "default", "goto", "break", "continue", "defined", "typeof",
        "_Alignof", "alignof", "__attribute__", "asm", "__asm", "__asm__",
    };
    return kw;
}

const std::set<std::string>& decl_keywords() {
    static const std::set<std::string> kw = {
        "auto", "bool", "char", "const", "double", "enum", "extern", "float",
        "inline", "int", "long", "register", "short", "signed", "static",
        "struct", "typedef", "union", "unsigned", "void", "volatile",
        "_Bool", "__inline", "__inline__", "u8", "u16", "u32", "u64",
        "s8", "s16", "s32", "s64", "size_t", "ssize_t",
    };
    return kw;
}

}  // namespace

std::vector<Token> tokenize_line(std::string_view line, LexState& state) {
    std::vector<Token> out;
    size_t i = 0;
    const size_t n = line.size();
    const bool started_in_comment = state.in_block_comment;

    if (state.in_block_comment) {
        size_t close = line.find("*/");
        if (close == std::string_view::npos) {
            std::string text = trim(line);
            if (!text.empty()) out.push_back({TokenKind::Comment, text, true});
            else out.push_back({TokenKind::Comment, "", true});
            return out;
        }
        out.push_back({TokenKind::Comment, std::string(line.substr(0, close + 2)), true});
        state.in_block_comment = false;
        i = close + 2;
    }

    while (i < n) {
        char c = line[i];
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            continue;
        }
        if (c == '/' && i + 1 < n && line[i + 1] == '/') {
            out.push_back({TokenKind::Comment, std::string(line.substr(i)), false});
            break;
        }
        if (c == '/' && i + 1 < n && line[i + 1] == '*') {
            size_t close = line.find("*/", i + 2);
            if (close == std::string_view::npos) {
                out.push_back({TokenKind::Comment, std::string(line.substr(i)), false});
                state.in_block_comment = true;
                break;
            }
            out.push_back({TokenKind::Comment, std::string(line.substr(i, close + 2 - i)), false});
            i = close + 2;
            continue;
        }
        if (c == '"' || c == '\'') {
            size_t j = i + 1;
            while (j < n) {
                if (line[j] == '\\' && j + 1 < n) {
                    j += 2;
                    continue;
                }
                if (line[j] == c) {
                    ++j;
                    break;
                }
                ++j;
            }
            out.push_back({c == '"' ? TokenKind::StringLit : TokenKind::CharLit,
                           std::string(line.substr(i, j - i)), false});
            i = j;
            continue;
        }
        if (is_ident_start(c)) {
            size_t j = i + 1;
            while (j < n && is_ident_char(line[j])) ++j;
            out.push_back({TokenKind::Ident, std::string(line.substr(i, j - i)), false});
            i = j;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i + 1;
            while (j < n && (is_ident_char(line[j]) || line[j] == '.')) ++j;
            out.push_back({TokenKind::Number, std::string(line.substr(i, j - i)), false});
            i = j;
            continue;
        }
        if (c == '#') {
            out.push_back({TokenKind::Hash, "#", false});
            ++i;
            continue;
        }
        out.push_back({TokenKind::Punct, std::string(1, c), false});
        ++i;
    }
    if (started_in_comment && !out.empty()) out.front().block_continuation = true;
    return out;
}

std::vector<Token> tokenize_line(std::string_view line) {
    LexState state;
    return tokenize_line(line, state);
}

std::string to_string(CfpNodeKind kind) {
    switch (kind) {
        case CfpNodeKind::FuncDef: return "FuncDef";
        case CfpNodeKind::FuncCall: return "FuncCall";
        case CfpNodeKind::Ifdef: return "Ifdef";
        case CfpNodeKind::Define: return "Define";
        case CfpNodeKind::Include: return "Include";
        case CfpNodeKind::If: return "If";
        case CfpNodeKind::Else: return "Else";
        case CfpNodeKind::While: return "While";
        case CfpNodeKind::For: return "For";
        case CfpNodeKind::Do: return "Do";
        case CfpNodeKind::Switch: return "Switch";
        case CfpNodeKind::Return: return "Return";
        case CfpNodeKind::Comment: return "Comment";
        case CfpNodeKind::InlineAsm: return "InlineAsm";
        case CfpNodeKind::Declaration: return "Declaration";
        case CfpNodeKind::Statement: return "Statement";
    }
    return "Statement";
}

namespace {

struct PTok {
    int line = 0;          // 1-indexed
    bool line_first = false;
    Token tok;
};

class CfpBuilder {
public:
    explicit CfpBuilder(const SourceSnippet& src) : src_(src) {
        LexState state;
        for (int ln = 1; ln <= src.line_count(); ++ln) {
            auto toks = tokenize_line(src.line(ln), state);
            bool first = true;
            line_start_.push_back(stream_.size());
            for (auto& t : toks) {
                stream_.push_back({ln, first, std::move(t)});
                first = false;
            }
        }
        match_conditionals();
    }

    Cfp build() {
        Cfp cfp;
        cfp.source = src_;
        size_t idx = 0;
        cfp.nodes = parse_range(idx, stream_.size(), src_.line_count());
        cfp.diagnostics = diags_;
        return cfp;
    }

private:
    const SourceSnippet& src_;
    std::vector<PTok> stream_;
    std::vector<size_t> line_start_;        // per-line first index into stream_
    std::map<int, int> cond_match_;         // #if-group open line -> #endif line
    std::vector<std::string> diags_;

    void diag(const std::string& msg) { diags_.push_back(msg); }

    bool is_directive_line(size_t ls, std::string* name) const {
        if (ls >= stream_.size()) return false;
        const PTok& p = stream_[ls];
        if (!p.line_first || p.tok.kind != TokenKind::Hash) return false;
        if (ls + 1 < stream_.size() && stream_[ls + 1].line == p.line &&
            stream_[ls + 1].tok.kind == TokenKind::Ident) {
            if (name) *name = stream_[ls + 1].tok.text;
        } else if (name) {
            name->clear();
        }
        return true;
    }

    void match_conditionals() {
        std::vector<int> stack;
        for (int ln = 1; ln <= src_.line_count(); ++ln) {
            std::string name;
            size_t ls = line_start_[static_cast<size_t>(ln - 1)];
            if (ls >= stream_.size() || stream_[ls].line != ln) continue;
            if (!is_directive_line(ls, &name)) continue;
            if (name == "ifdef" || name == "ifndef" || name == "if") {
                stack.push_back(ln);
            } else if (name == "endif") {
                if (stack.empty()) {
                    diag("UnbalancedScope: stray #endif at line " + std::to_string(ln));
                } else {
                    cond_match_[stack.back()] = ln;
                    stack.pop_back();
                }
            }
        }
        for (int open : stack) {
            diag("UnbalancedScope: #if group at line " + std::to_string(open) +
                 " not closed; clamped to snippet end");
        }
    }

    const PTok* next_code(size_t from, size_t endi) const {
        for (size_t j = from; j < endi; ++j) {
            if (stream_[j].tok.kind != TokenKind::Comment) return &stream_[j];
        }
        return nullptr;
    }

    size_t next_code_idx(size_t from, size_t endi) const {
        for (size_t j = from; j < endi; ++j) {
            if (stream_[j].tok.kind != TokenKind::Comment) return j;
        }
        return endi;
    }

    std::vector<std::string> collect_callees(size_t from, size_t to) const {
        std::vector<std::string> out;
        std::set<std::string> seen;
        for (size_t j = from; j < to; ++j) {
            const PTok& p = stream_[j];
            if (p.tok.kind != TokenKind::Ident) continue;
            if (call_keywords().count(p.tok.text)) continue;
            const PTok* nx = next_code(j + 1, to);
            if (nx && nx->tok.kind == TokenKind::Punct && nx->tok.text == "(") {
                if (seen.insert(p.tok.text).second) out.push_back(p.tok.text);
            }
        }
        return out;
    }

    // Trim trailing close-braces that belong to an enclosing scope, keeping
    // everything up to the statement's final ';'.
    static std::string simple_content(std::string text) {
        size_t semi = text.find_last_of(';');
        if (semi == std::string::npos) return text;
        for (size_t k = semi + 1; k < text.size(); ++k) {
            char c = text[k];
            if (c == ' ' || c == '\t' || c == '}') continue;
            return text;
        }
        return trim(text.substr(0, semi + 1));
    }

    std::vector<CfpNode> parse_range(size_t& idx, size_t endi, int region_end_line) {
        std::vector<CfpNode> nodes;
        while (idx < endi) {
            const PTok& t = stream_[idx];
            if (t.tok.kind == TokenKind::Comment) {
                if (!t.line_first) {
                    ++idx;  // trailing comment after code
                    continue;
                }
                CfpNode node;
                node.kind = CfpNodeKind::Comment;
                node.pos = t.line;
                node.end = t.line;
                node.content = trim(src_.line(t.line));
                size_t j = idx + 1;
                while (j < endi && stream_[j].tok.kind == TokenKind::Comment &&
                       stream_[j].tok.block_continuation) {
                    node.end = stream_[j].line;
                    ++j;
                }
                idx = j;
                nodes.push_back(std::move(node));
                continue;
            }
            if (t.tok.kind == TokenKind::Hash && t.line_first) {
                parse_directive(idx, endi, region_end_line, nodes);
                continue;
            }
            parse_statement(idx, endi, region_end_line, nodes);
        }
        return nodes;
    }

    void consume_line(size_t& idx, size_t endi, int line) {
        while (idx < endi && stream_[idx].line == line) ++idx;
    }

    void parse_directive(size_t& idx, size_t endi, int region_end_line,
                         std::vector<CfpNode>& nodes) {
        const PTok& hash = stream_[idx];
        const int line = hash.line;
        std::string name;
        is_directive_line(idx, &name);
        const std::string raw = trim(src_.line(line));

        if (name == "ifdef" || name == "ifndef" || name == "if") {
            CfpNode node;
            node.kind = CfpNodeKind::Ifdef;
            node.pos = line;
            node.content = raw;
            auto it = cond_match_.find(line);
            if (it != cond_match_.end() && it->second <= region_end_line) {
                node.end = it->second;
            } else {
                node.end = region_end_line;
                if (it == cond_match_.end())
                    ;  // already diagnosed in match_conditionals
                else
                    diag("UnbalancedScope: #if group at line " + std::to_string(line) +
                         " straddles enclosing scope");
            }
            // First macro identifier in the condition, skipping "defined".
            for (size_t j = idx + 2; j < endi && stream_[j].line == line; ++j) {
                const Token& tk = stream_[j].tok;
                if (tk.kind == TokenKind::Ident && tk.text != "defined") {
                    node.name = tk.text;
                    break;
                }
            }
            if (node.name.empty()) {
                size_t hp = raw.find_first_of(" \t");
                node.name = hp == std::string::npos ? raw : trim(raw.substr(hp));
            }
            consume_line(idx, endi, line);
            nodes.push_back(std::move(node));
            return;
        }
        if (name == "elif" || name == "else" || name == "endif") {
            consume_line(idx, endi, line);  // covered by the enclosing group node
            return;
        }
        if (name == "include") {
            CfpNode node;
            node.kind = CfpNodeKind::Include;
            node.pos = node.end = line;
            node.content = raw;
            size_t p = raw.find("include");
            std::string rest = p == std::string::npos ? "" : trim(raw.substr(p + 7));
            if (rest.size() >= 2 && (rest.front() == '<' || rest.front() == '"'))
                rest = rest.substr(1, rest.size() - 2);
            node.name = rest;
            consume_line(idx, endi, line);
            nodes.push_back(std::move(node));
            return;
        }
        if (name == "define" || name == "undef") {
            CfpNode node;
            node.kind = name == "define" ? CfpNodeKind::Define : CfpNodeKind::Statement;
            node.pos = line;
            node.content = raw;
            const PTok* id = next_code(idx + 2, endi);
            if (id && id->line == line && id->tok.kind == TokenKind::Ident) node.name = id->tok.text;
            if (node.name.empty() && node.kind == CfpNodeKind::Define) node.name = raw;
            // Backslash continuations extend the macro body.
            int endl = line;
            while (endl <= src_.line_count()) {
                const std::string& text = src_.line(endl);
                size_t last = text.find_last_not_of(" \t\r");
                if (last == std::string::npos || text[last] != '\\') break;
                ++endl;
            }
            if (endl > src_.line_count()) endl = src_.line_count();
            node.end = std::min(endl, region_end_line);
            for (int ln = line; ln <= node.end; ++ln) consume_line(idx, endi, ln);
            nodes.push_back(std::move(node));
            return;
        }
        // #pragma, #error, ...
        CfpNode node;
        node.kind = CfpNodeKind::Statement;
        node.pos = node.end = line;
        node.content = raw;
        consume_line(idx, endi, line);
        nodes.push_back(std::move(node));
    }

    // Locate the defined function name for a head token range [start, open)
    // ending just before '{'. Returns empty when the head is not a definition.
    std::string funcdef_name(size_t start, size_t open) const {
        // Walk back from the token before '{': skip attribute-ish trailers,
        // expect ')' closing the parameter list.
        size_t j = open;
        while (j > start) {
            --j;
            if (stream_[j].tok.kind == TokenKind::Comment) continue;
            break;
        }
        if (stream_[j].tok.kind != TokenKind::Punct || stream_[j].tok.text != ")") return "";
        int depth = 1;
        size_t k = j;
        while (k > start && depth > 0) {
            --k;
            const Token& tk = stream_[k].tok;
            if (tk.kind != TokenKind::Punct) continue;
            if (tk.text == ")") ++depth;
            else if (tk.text == "(") --depth;
        }
        if (depth != 0 || k == start) return "";
        // Identifier immediately before the '('.
        size_t m = k;
        while (m > start) {
            --m;
            if (stream_[m].tok.kind == TokenKind::Comment) continue;
            if (stream_[m].tok.kind == TokenKind::Ident &&
                !call_keywords().count(stream_[m].tok.text) &&
                !decl_keywords().count(stream_[m].tok.text))
                return stream_[m].tok.text;
            return "";
        }
        return "";
    }

    void parse_statement(size_t& idx, size_t endi, int region_end_line,
                         std::vector<CfpNode>& nodes) {
        const size_t start = idx;
        const PTok& first = stream_[start];
        CfpNode node;
        node.pos = first.line;

        // Stray close brace: fragment of a larger scope.
        if (first.tok.kind == TokenKind::Punct && first.tok.text == "}") {
            node.kind = CfpNodeKind::Statement;
            node.end = first.line;
            node.content = trim(src_.line(first.line));
            diag("UnbalancedScope: unmatched '}' at line " + std::to_string(first.line));
            ++idx;
            nodes.push_back(std::move(node));
            return;
        }

        const std::string kw = first.tok.kind == TokenKind::Ident ? first.tok.text : "";

        // Label: `out:` introduces no scope of its own.
        if (first.tok.kind == TokenKind::Ident && !call_keywords().count(kw) &&
            !decl_keywords().count(kw)) {
            const PTok* nx = next_code(start + 1, endi);
            if (nx && nx->tok.kind == TokenKind::Punct && nx->tok.text == ":") {
                node.kind = CfpNodeKind::Statement;
                node.end = first.line;
                node.content = trim(src_.line(first.line));
                idx = next_code_idx(start + 1, endi) + 1;
                nodes.push_back(std::move(node));
                return;
            }
        }

        int paren = 0, brace = 0;
        size_t body_open = SIZE_MAX, body_close = SIZE_MAX, term = SIZE_MAX;
        bool assign_before_brace = false;
        size_t j = start;
        bool hit_stray_close = false;
        while (j < endi) {
            const Token& tk = stream_[j].tok;
            if (tk.kind == TokenKind::Comment) {
                ++j;
                continue;
            }
            if (tk.kind == TokenKind::Punct) {
                const char c = tk.text[0];
                if (c == '(') {
                    ++paren;
                } else if (c == ')') {
                    if (paren > 0) --paren;
                } else if (c == '{') {
                    if (brace == 0 && body_open == SIZE_MAX) body_open = j;
                    ++brace;
                } else if (c == '}') {
                    if (brace == 0) {
                        hit_stray_close = true;
                        break;  // belongs to an enclosing scope
                    }
                    --brace;
                    if (brace == 0 && body_open != SIZE_MAX) {
                        body_close = j;
                        ++j;
                        break;
                    }
                } else if (c == ';' && paren == 0 && brace == 0) {
                    term = j;
                    ++j;
                    break;
                } else if (c == ':' && paren == 0 && brace == 0 &&
                           (kw == "case" || kw == "default")) {
                    term = j;
                    ++j;
                    break;
                } else if (c == '=' && paren == 0 && brace == 0 && body_open == SIZE_MAX) {
                    if (tk.text == "=") assign_before_brace = true;
                }
            }
            ++j;
        }

        size_t stmt_end = j;
        if (body_close != SIZE_MAX) {
            node.end = stream_[body_close].line;
            // do { } while (...); and `} ;` trailers
            size_t nx = next_code_idx(j, endi);
            if (kw == "do" && nx < endi && stream_[nx].tok.kind == TokenKind::Ident &&
                stream_[nx].tok.text == "while") {
                size_t k = nx;
                while (k < endi) {
                    const Token& tk = stream_[k].tok;
                    if (tk.kind == TokenKind::Punct && tk.text == ";") {
                        node.end = stream_[k].line;
                        ++k;
                        break;
                    }
                    ++k;
                }
                j = k;
            } else if (nx < endi && stream_[nx].tok.kind == TokenKind::Punct &&
                       stream_[nx].tok.text == ";") {
                node.end = stream_[nx].line;
                j = nx + 1;
            }
            stmt_end = j;
        } else if (term != SIZE_MAX) {
            node.end = stream_[term].line;
        } else if (hit_stray_close) {
            node.end = j > start ? stream_[j - 1].line : first.line;
            diag("UnbalancedScope: statement at line " + std::to_string(node.pos) +
                 " unterminated before enclosing '}'");
            stmt_end = j;
        } else {
            node.end = region_end_line;
            diag("UnbalancedScope: statement at line " + std::to_string(node.pos) +
                 " runs past snippet end");
            stmt_end = endi;
        }

        // Classification.
        if (kw == "if") node.kind = CfpNodeKind::If;
        else if (kw == "else") node.kind = CfpNodeKind::Else;
        else if (kw == "while") node.kind = CfpNodeKind::While;
        else if (kw == "for") node.kind = CfpNodeKind::For;
        else if (kw == "do") node.kind = CfpNodeKind::Do;
        else if (kw == "switch") node.kind = CfpNodeKind::Switch;
        else if (kw == "return") node.kind = CfpNodeKind::Return;
        else if (kw == "asm" || kw == "__asm" || kw == "__asm__")
            node.kind = CfpNodeKind::InlineAsm;
        else if (body_open != SIZE_MAX) {
            std::string fname = assign_before_brace ? "" : funcdef_name(start, body_open);
            if (!fname.empty()) {
                node.kind = CfpNodeKind::FuncDef;
                node.name = fname;
            } else if (decl_keywords().count(kw)) {
                node.kind = CfpNodeKind::Declaration;
            } else {
                node.kind = CfpNodeKind::Statement;
            }
        } else if (decl_keywords().count(kw)) {
            node.kind = CfpNodeKind::Declaration;
        } else if (first.tok.kind == TokenKind::Ident && !call_keywords().count(kw)) {
            const PTok* nx = next_code(start + 1, stmt_end);
            if (nx && nx->tok.kind == TokenKind::Punct && nx->tok.text == "(") {
                node.kind = CfpNodeKind::FuncCall;
                node.name = kw;
            } else {
                node.kind = CfpNodeKind::Statement;
            }
        } else {
            node.kind = CfpNodeKind::Statement;
        }

        node.content = trim(src_.line(node.pos));
        if (body_open == SIZE_MAX) node.content = simple_content(node.content);

        if (node.kind == CfpNodeKind::FuncDef) {
            size_t body_begin = body_open + 1;
            size_t sub = body_begin;
            int body_region_end =
                body_close != SIZE_MAX ? stream_[body_close].line : region_end_line;
            node.params = parse_range(sub, body_close == SIZE_MAX ? stmt_end : body_close,
                                      body_region_end);
            node.callees =
                collect_callees(body_begin, body_close == SIZE_MAX ? stmt_end : body_close);
        } else if (node.kind != CfpNodeKind::Comment && node.kind != CfpNodeKind::Include &&
                   node.kind != CfpNodeKind::Define && node.kind != CfpNodeKind::Ifdef) {
            node.callees = collect_callees(start, stmt_end);
        }

        idx = stmt_end;
        nodes.push_back(std::move(node));
    }
};

void flatten_into(const std::vector<CfpNode>& nodes, std::vector<const CfpNode*>& out) {
    for (const auto& n : nodes) {
        out.push_back(&n);
        flatten_into(n.params, out);
    }
}

}  // namespace

Cfp generate_cfp(const SourceSnippet& snippet) {
    CfpBuilder builder(snippet);
    return builder.build();
}

std::vector<const CfpNode*> flatten(const Cfp& cfp) {
    std::vector<const CfpNode*> out;
    flatten_into(cfp.nodes, out);
    std::stable_sort(out.begin(), out.end(),
                     [](const CfpNode* a, const CfpNode* b) { return a->pos < b->pos; });
    return out;
}

std::vector<FunctionSignature> extract_signatures(const Cfp& cfp) {
    std::vector<FunctionSignature> sigs;
    for (const CfpNode* node : flatten(cfp)) {
        if (node->kind != CfpNodeKind::FuncDef) continue;
        // Join head lines up to the body-opening brace, collapse whitespace.
        std::string raw;
        for (int ln = node->pos; ln <= node->end && ln <= cfp.source.line_count(); ++ln) {
            const std::string& text = cfp.source.line(ln);
            size_t brace = text.find('{');
            std::string part = brace == std::string::npos ? text : text.substr(0, brace);
            raw += part;
            raw += ' ';
            if (brace != std::string::npos) break;
        }
        std::string collapsed;
        bool in_space = true;
        for (char c : raw) {
            if (c == ' ' || c == '\t' || c == '\r') {
                if (!in_space) collapsed += ' ';
                in_space = true;
            } else {
                collapsed += c;
                in_space = false;
            }
        }
        while (!collapsed.empty() && collapsed.back() == ' ') collapsed.pop_back();
        sigs.push_back({node->name, collapsed, node->pos});
    }
    return sigs;
}

std::pair<std::string, std::string> extract_anchors(const Cfp& cfp) {
    const CfpNode* first = nullptr;
    const CfpNode* last = nullptr;
    for (const CfpNode* node : flatten(cfp)) {
        std::string c = node->content;
        if (c.empty() || c == "}" || c == "};") continue;
        if (!first) first = node;
        if (!last || node->pos >= last->pos) last = node;
    }
    if (!first) throw std::runtime_error("EmptyCfp: no anchor-worthy statement");
    return {first->content, last->content};
}

std::vector<std::string> extract_funccalls(const Cfp& cfp) {
    std::set<std::string> names;
    for (const CfpNode* node : flatten(cfp)) {
        if (node->kind == CfpNodeKind::FuncCall) names.insert(node->name);
        for (const auto& c : node->callees) names.insert(c);
    }
    return {names.begin(), names.end()};
}

namespace {

nlohmann::ordered_json node_to_json(const CfpNode& node) {
    nlohmann::ordered_json j;
    j["kind"] = to_string(node.kind);
    j["pos"] = node.pos;
    j["end"] = node.end;
    j["name"] = node.name;
    j["content"] = node.content;
    j["callees"] = node.callees;
    nlohmann::ordered_json params = nlohmann::ordered_json::array();
    for (const auto& p : node.params) params.push_back(node_to_json(p));
    j["params"] = std::move(params);
    return j;
}

}  // namespace

std::string cfp_to_json(const Cfp& cfp, int indent) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& n : cfp.nodes) arr.push_back(node_to_json(n));
    return arr.dump(indent);
}

}  // namespace miggpt
