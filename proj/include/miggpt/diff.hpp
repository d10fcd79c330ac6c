#pragma once

#include <optional>
#include <string>
#include <vector>

#include "miggpt/cfp.hpp"
#include "miggpt/snippet.hpp"

namespace miggpt {

/// A contiguous change region between a base and a derived snippet.
/// Removed lines occupy [old_start, old_start + old_len) in the base; a pure
/// insertion (old_len == 0) sits between base lines old_start-1 and old_start.
struct DiffHunk {
    int old_start = 0;
    int old_len = 0;
    int new_start = 0;
    int new_len = 0;
    std::vector<std::string> removed;
    std::vector<std::string> added;

    bool operator==(const DiffHunk& o) const {
        return old_start == o.old_start && old_len == o.old_len && new_start == o.new_start &&
               new_len == o.new_len && removed == o.removed && added == o.added;
    }
};

enum class MigrationType {
    Type1,
    Type2,
    TrivialNoPatchChange,   // delta empty
    TrivialNoKernelChange,  // delta non-empty, sigma empty
};

std::string to_string(MigrationType type);
std::optional<MigrationType> migration_type_from_string(const std::string& s);

enum class MigrationPointKind { Insertion, Deletion, Replacement };

std::string to_string(MigrationPointKind kind);

/// An insertion/removal site anchored by surrounding unchanged CFP statements.
/// Absent anchors are the BEGIN/END sentinels.
struct MigrationPoint {
    int index = 0;
    MigrationPointKind kind = MigrationPointKind::Replacement;
    std::optional<std::string> anchor_before;  // nullopt = BEGIN
    std::optional<std::string> anchor_after;   // nullopt = END
    std::vector<std::string> added;
    std::vector<std::string> removed;
};

/// Minimal LCS-based line diff; byte-exact line comparison.
std::vector<DiffHunk> line_diff(const SourceSnippet& base, const SourceSnippet& derived);

/// Reconstructs the derived snippet from the base plus hunks.
SourceSnippet apply_hunks(const SourceSnippet& base, const std::vector<DiffHunk>& hunks);

/// True iff the base-side ranges intersect, insertions occupying one boundary line.
bool hunks_overlap(const DiffHunk& delta_hunk, const DiffHunk& sigma_hunk);

MigrationType classify_migration(const std::vector<DiffHunk>& delta,
                                 const std::vector<DiffHunk>& sigma);

/// One point per hunk between the two fingerprinted snippets, anchored by
/// unchanged CFP statement content.
std::vector<MigrationPoint> pinpoint_migration_locations(const Cfp& cfp_old,
                                                         const Cfp& cfp_old_patched);

/// Levenshtein distance over whole lines.
int line_edit_distance(const SourceSnippet& a, const SourceSnippet& b);

std::string migration_points_to_json(const std::vector<MigrationPoint>& points, int indent = 2);

}  // namespace miggpt
