#pragma once

#include <string>
#include <vector>

#include "miggpt/backend.hpp"
#include "miggpt/diff.hpp"
#include "miggpt/snippet.hpp"

namespace miggpt {

struct MigrationRequest {
    SourceSnippet s_old;
    SourceSnippet s_old_patched;
    SourceSnippet s_new;
    std::vector<MigrationPoint> points;
    std::string example_id;

    /// Points derived from the snippets themselves; never hand-edited.
    static MigrationRequest make(SourceSnippet s_old, SourceSnippet s_old_patched,
                                 SourceSnippet s_new, std::string example_id = "");
};

struct MigrationResult {
    SourceSnippet snippet;     // s'_new
    std::string raw_response;  // full LLM reply
    int points_used = 0;

    std::string to_json(const std::string& example_id, int indent = 2) const;
};

std::string build_migration_task_prompt();

std::string build_location_prompt(const std::vector<MigrationPoint>& points);

std::string build_migration_payload(const SourceSnippet& s_old, const SourceSnippet& s_old_patched,
                                    const SourceSnippet& s_new);

std::string render_migration_prompt(const MigrationRequest& request);

/// Exactly one backend query. Throws BackendError on transport failure and
/// std::runtime_error("EmptyResponse") when extraction yields nothing.
MigrationResult migrate(const MigrationRequest& request, LlmBackend& backend);

}  // namespace miggpt
