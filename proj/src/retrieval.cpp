#include "miggpt/retrieval.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace miggpt {

std::string PromptBundle::render() const {
    std::string out;
    const auto append = [&out](const std::string& section) {
        if (section.empty()) return;
        if (!out.empty()) out += "\n";
        out += section;
        if (out.back() != '\n') out += '\n';
    };
    append(task);
    append(structure);
    append(alignment);
    append(persona);
    append(payload);
    return out;
}

std::string expert_persona_prompt() {
    return "You are an expert Linux kernel engineer. Reply with exactly one fenced code "
           "block (```c ... ```) containing only C source code, with no commentary "
           "before or after it.";
}

std::string build_retrieval_task_prompt() {
    return "Task: the old kernel code snippet below was carried forward into a newer kernel "
           "version. Find the code region in the new kernel file that corresponds to the old "
           "snippet and return it verbatim, preserving every line exactly as it appears in "
           "the new file.";
}

std::string build_structure_prompt(const std::vector<FunctionSignature>& signatures) {
    if (signatures.empty()) {
        return "Structure: the target snippet defines no functions; it is a sequence of "
               "top-level statements, macros, or declarations.";
    }
    std::vector<FunctionSignature> ordered = signatures;
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const FunctionSignature& a, const FunctionSignature& b) {
                         return a.pos < b.pos;
                     });
    std::ostringstream out;
    out << "Structure: the target snippet must contain the definition of exactly "
        << (ordered.size() == 1 ? "this function" : "these functions") << ", in order:";
    for (const auto& sig : ordered) out << "\n  - " << sig.name << "  (signature: " << sig.raw << ")";
    out << "\nDo not return a similarly named function; the names must match exactly.";
    return out.str();
}

std::string build_alignment_prompt(const std::pair<std::string, std::string>& anchors) {
    if (anchors.first == anchors.second) {
        return "Alignment: the target snippet is a single statement corresponding to the "
               "line: `" + anchors.first + "`.";
    }
    return "Alignment: the target snippet begins at the line corresponding to `" +
           anchors.first + "` and ends at the line corresponding to `" + anchors.second +
           "`. Include both boundary lines and everything between them.";
}

std::string build_retrieval_payload(const SourceSnippet& s_old, const SourceSnippet& file_new) {
    std::string out = "Old kernel snippet (s_old):\n```c\n" + s_old.to_text() + "```\n\n";
    out += "New kernel file (file_new):\n```c\n" + file_new.to_text() + "```";
    return out;
}

PromptBundle build_retrieval_prompt(const SourceSnippet& s_old, const SourceSnippet& file_new,
                                    const Cfp& cfp_old) {
    PromptBundle bundle;
    bundle.task = build_retrieval_task_prompt();
    bundle.structure = build_structure_prompt(extract_signatures(cfp_old));
    try {
        bundle.alignment = build_alignment_prompt(extract_anchors(cfp_old));
    } catch (const std::runtime_error&) {
        bundle.alignment.clear();  // EmptyCfp: nothing to align against
    }
    bundle.persona = expert_persona_prompt();
    bundle.payload = build_retrieval_payload(s_old, file_new);
    return bundle;
}

bool verify_contains_signatures(const SourceSnippet& candidate,
                                const std::vector<FunctionSignature>& signatures) {
    if (signatures.empty()) return true;
    Cfp cfp = generate_cfp(candidate);
    std::set<std::string> defined;
    for (const CfpNode* node : flatten(cfp))
        if (node->kind == CfpNodeKind::FuncDef) defined.insert(node->name);
    for (const auto& sig : signatures)
        if (!defined.count(sig.name)) return false;
    return true;
}

RetrievalOutcome supplement_associated_functions(const SourceSnippet& s_tmp, const Cfp& cfp_old,
                                                 const SourceSnippet& file_new) {
    RetrievalOutcome outcome;
    Cfp cfp_tmp = generate_cfp(s_tmp);
    auto f_tmp = extract_funccalls(cfp_tmp);
    auto f_old = extract_funccalls(cfp_old);

    std::set<std::string> old_calls(f_old.begin(), f_old.end());
    std::set<std::string> already_defined;
    for (const CfpNode* node : flatten(cfp_tmp))
        if (node->kind == CfpNodeKind::FuncDef) already_defined.insert(node->name);

    std::set<std::string> wanted;
    for (const auto& name : f_tmp)
        if (!old_calls.count(name) && !already_defined.count(name)) wanted.insert(name);

    Cfp cfp_new = generate_cfp(file_new);
    std::vector<SupplementInfo> supplements;
    for (const CfpNode* node : flatten(cfp_new)) {
        if (node->kind != CfpNodeKind::FuncDef || !wanted.count(node->name)) continue;
        SupplementInfo info;
        info.name = node->name;
        info.pos = node->pos;
        info.end = node->end;
        info.text = file_new.slice(node->pos, node->end).to_text();
        supplements.push_back(std::move(info));
        wanted.erase(node->name);  // first definition wins
    }
    std::sort(supplements.begin(), supplements.end(),
              [](const SupplementInfo& a, const SupplementInfo& b) { return a.pos < b.pos; });

    std::string text = s_tmp.to_text();
    for (const auto& s : supplements) {
        if (!text.empty() && text.back() != '\n') text += '\n';
        text += '\n';
        text += s.text;
    }
    outcome.snippet = SourceSnippet::from_text(text);
    outcome.supplements = std::move(supplements);
    return outcome;
}

RetrievalOutcome retrieve_target(const SourceSnippet& s_old, const SourceSnippet& file_new,
                                 LlmBackend& backend, int m) {
    Cfp cfp_old = generate_cfp(s_old);
    PromptBundle bundle = build_retrieval_prompt(s_old, file_new, cfp_old);
    auto signatures = extract_signatures(cfp_old);

    CompletionRequest request;
    request.rendered_prompt = bundle.render();
    request.persona = bundle.persona;

    SourceSnippet candidate;
    std::string raw;
    bool verified = false;
    int attempts = 0;
    for (int q = 1; q <= m; ++q) {
        raw = backend.complete(request);
        attempts = q;
        candidate = SourceSnippet::from_text(extract_code_block(raw));
        if (verify_contains_signatures(candidate, signatures)) {
            verified = true;
            break;
        }
    }

    // The paper's loop falls through after m tries; the last candidate is
    // still supplemented and returned, flagged unverified.
    RetrievalOutcome outcome = supplement_associated_functions(candidate, cfp_old, file_new);
    outcome.attempts = attempts;
    outcome.verified = verified;
    outcome.raw_response = raw;
    return outcome;
}

std::string RetrievalOutcome::to_json(int indent) const {
    nlohmann::ordered_json j;
    j["snippet"] = snippet.to_text();
    j["attempts"] = attempts;
    j["verified"] = verified;
    nlohmann::ordered_json sup = nlohmann::ordered_json::array();
    for (const auto& s : supplements) {
        sup.push_back({{"name", s.name}, {"pos", s.pos}, {"end", s.end}, {"text", s.text}});
    }
    j["supplements"] = std::move(sup);
    return j.dump(indent);
}

}  // namespace miggpt
