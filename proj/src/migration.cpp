#include "miggpt/migration.hpp"

#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "miggpt/retrieval.hpp"

namespace miggpt {

MigrationRequest MigrationRequest::make(SourceSnippet s_old, SourceSnippet s_old_patched,
                                        SourceSnippet s_new, std::string example_id) {
    MigrationRequest req;
    req.points = pinpoint_migration_locations(generate_cfp(s_old), generate_cfp(s_old_patched));
    req.s_old = std::move(s_old);
    req.s_old_patched = std::move(s_old_patched);
    req.s_new = std::move(s_new);
    req.example_id = std::move(example_id);
    return req;
}

std::string build_migration_task_prompt() {
    return "Task: apply the out-of-tree patch changes (the difference between the old snippet "
           "and its patched version below) to the new kernel snippet, producing the patched "
           "new-kernel snippet. Keep every unrelated line of the new snippet unchanged.";
}

namespace {

std::string spell_count(size_t n) {
    static const char* words[] = {"zero", "one", "two",   "three", "four",
                                  "five", "six", "seven", "eight", "nine"};
    if (n < 10) return words[n];
    return std::to_string(n);
}

void append_lines(std::ostringstream& out, const char* label,
                  const std::vector<std::string>& lines) {
    if (lines.empty()) return;
    out << "\n    " << label << ":";
    for (const auto& l : lines) out << "\n      " << l;
}

}  // namespace

std::string build_location_prompt(const std::vector<MigrationPoint>& points) {
    if (points.empty()) {
        return "Location: the patch requires no modifications; return the new snippet "
               "unchanged.";
    }
    std::ostringstream out;
    out << "Location: the patch makes exactly " << spell_count(points.size())
        << (points.size() == 1 ? " modification" : " modifications") << " to the snippet.";
    for (const auto& p : points) {
        out << "\n  " << (p.index + 1) << ". " << to_string(p.kind);
        out << "\n    after: "
            << (p.anchor_before ? "`" + *p.anchor_before + "`" : "the beginning of the snippet");
        out << "\n    before: "
            << (p.anchor_after ? "`" + *p.anchor_after + "`" : "the end of the snippet");
        append_lines(out, "lines added", p.added);
        append_lines(out, "lines removed", p.removed);
    }
    return out.str();
}

std::string build_migration_payload(const SourceSnippet& s_old, const SourceSnippet& s_old_patched,
                                    const SourceSnippet& s_new) {
    std::string out = "Old kernel snippet (s_old):\n```c\n" + s_old.to_text() + "```\n\n";
    out += "Old snippet with the patch applied (s'_old):\n```c\n" + s_old_patched.to_text() +
           "```\n\n";
    out += "New kernel snippet to patch (s_new):\n```c\n" + s_new.to_text() + "```";
    return out;
}

std::string render_migration_prompt(const MigrationRequest& request) {
    PromptBundle bundle;
    bundle.task = build_migration_task_prompt();
    bundle.structure = build_location_prompt(request.points);
    bundle.persona = expert_persona_prompt();
    bundle.payload = build_migration_payload(request.s_old, request.s_old_patched, request.s_new);
    return bundle.render();
}

MigrationResult migrate(const MigrationRequest& request, LlmBackend& backend) {
    CompletionRequest creq;
    creq.rendered_prompt = render_migration_prompt(request);
    creq.persona = expert_persona_prompt();

    MigrationResult result;
    result.raw_response = backend.complete(creq);
    result.points_used = static_cast<int>(request.points.size());
    std::string code = extract_code_block(result.raw_response);
    if (code.empty()) throw std::runtime_error("EmptyResponse: no code in LLM reply");
    result.snippet = SourceSnippet::from_text(code);
    return result;
}

std::string MigrationResult::to_json(const std::string& example_id, int indent) const {
    nlohmann::ordered_json j;
    j["example_id"] = example_id;
    j["snippet"] = snippet.to_text();
    j["points_used"] = points_used;
    return j.dump(indent);
}

}  // namespace miggpt
