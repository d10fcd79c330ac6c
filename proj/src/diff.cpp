#include "miggpt/diff.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace miggpt {

std::string to_string(MigrationType type) {
    switch (type) {
        case MigrationType::Type1: return "Type1";
        case MigrationType::Type2: return "Type2";
        case MigrationType::TrivialNoPatchChange: return "TrivialNoPatchChange";
        case MigrationType::TrivialNoKernelChange: return "TrivialNoKernelChange";
    }
    return "Type1";
}

std::optional<MigrationType> migration_type_from_string(const std::string& s) {
    if (s == "Type1") return MigrationType::Type1;
    if (s == "Type2") return MigrationType::Type2;
    if (s == "TrivialNoPatchChange") return MigrationType::TrivialNoPatchChange;
    if (s == "TrivialNoKernelChange") return MigrationType::TrivialNoKernelChange;
    return std::nullopt;
}

std::string to_string(MigrationPointKind kind) {
    switch (kind) {
        case MigrationPointKind::Insertion: return "insertion";
        case MigrationPointKind::Deletion: return "deletion";
        case MigrationPointKind::Replacement: return "replacement";
    }
    return "replacement";
}

std::vector<DiffHunk> line_diff(const SourceSnippet& base, const SourceSnippet& derived) {
    const auto& a = base.lines();
    const auto& b = derived.lines();
    const int n = static_cast<int>(a.size());
    const int m = static_cast<int>(b.size());

    // LCS length table.
    std::vector<std::vector<int>> lcs(static_cast<size_t>(n + 1),
                                      std::vector<int>(static_cast<size_t>(m + 1), 0));
    for (int i = n - 1; i >= 0; --i) {
        for (int j = m - 1; j >= 0; --j) {
            if (a[static_cast<size_t>(i)] == b[static_cast<size_t>(j)])
                lcs[i][j] = lcs[i + 1][j + 1] + 1;
            else
                lcs[i][j] = std::max(lcs[i + 1][j], lcs[i][j + 1]);
        }
    }

    std::vector<DiffHunk> hunks;
    int i = 0, j = 0;
    while (i < n || j < m) {
        if (i < n && j < m && a[static_cast<size_t>(i)] == b[static_cast<size_t>(j)]) {
            ++i;
            ++j;
            continue;
        }
        DiffHunk hunk;
        hunk.old_start = i + 1;
        hunk.new_start = j + 1;
        while (i < n || j < m) {
            if (i < n && j < m && a[static_cast<size_t>(i)] == b[static_cast<size_t>(j)]) break;
            // Prefer the branch that preserves the LCS.
            if (i < n && (j >= m || lcs[i + 1][j] >= lcs[i][j + 1])) {
                hunk.removed.push_back(a[static_cast<size_t>(i)]);
                ++i;
            } else {
                hunk.added.push_back(b[static_cast<size_t>(j)]);
                ++j;
            }
        }
        hunk.old_len = static_cast<int>(hunk.removed.size());
        hunk.new_len = static_cast<int>(hunk.added.size());
        hunks.push_back(std::move(hunk));
    }
    return hunks;
}

SourceSnippet apply_hunks(const SourceSnippet& base, const std::vector<DiffHunk>& hunks) {
    std::vector<std::string> out;
    int next = 1;  // next unconsumed base line
    for (const auto& h : hunks) {
        for (; next < h.old_start; ++next) out.push_back(base.line(next));
        for (const auto& add : h.added) out.push_back(add);
        next += h.old_len;
    }
    for (; next <= base.line_count(); ++next) out.push_back(base.line(next));
    return SourceSnippet(std::move(out), base.trailing_newline());
}

bool hunks_overlap(const DiffHunk& delta_hunk, const DiffHunk& sigma_hunk) {
    const auto span = [](const DiffHunk& h) {
        return std::pair<int, int>{h.old_start, h.old_start + std::max(h.old_len, 1)};
    };
    auto [a0, a1] = span(delta_hunk);
    auto [b0, b1] = span(sigma_hunk);
    return a0 < b1 && b0 < a1;
}

MigrationType classify_migration(const std::vector<DiffHunk>& delta,
                                 const std::vector<DiffHunk>& sigma) {
    if (delta.empty()) return MigrationType::TrivialNoPatchChange;
    if (sigma.empty()) return MigrationType::TrivialNoKernelChange;
    for (const auto& d : delta)
        for (const auto& s : sigma)
            if (hunks_overlap(d, s)) return MigrationType::Type2;
    return MigrationType::Type1;
}

std::vector<MigrationPoint> pinpoint_migration_locations(const Cfp& cfp_old,
                                                         const Cfp& cfp_old_patched) {
    const SourceSnippet& s_old = cfp_old.source;
    auto hunks = line_diff(s_old, cfp_old_patched.source);

    // Head lines of CFP statements, usable as anchors.
    struct Head {
        int line;
        const CfpNode* node;
    };
    std::vector<Head> heads;
    for (const CfpNode* node : flatten(cfp_old)) heads.push_back({node->pos, node});

    std::set<int> changed;  // base lines touched by some hunk
    for (const auto& h : hunks)
        for (int ln = h.old_start; ln < h.old_start + h.old_len; ++ln) changed.insert(ln);

    const auto anchor_at = [&](int line) -> std::optional<std::string> {
        const CfpNode* best = nullptr;
        for (const auto& head : heads) {
            if (head.line == line) {
                if (!best || (best->name.empty() && !head.node->name.empty())) best = head.node;
            }
        }
        if (best) return best->content;
        return std::nullopt;
    };

    std::vector<MigrationPoint> points;
    int index = 0;
    for (const auto& h : hunks) {
        MigrationPoint p;
        p.index = index++;
        if (h.removed.empty()) p.kind = MigrationPointKind::Insertion;
        else if (h.added.empty()) p.kind = MigrationPointKind::Deletion;
        else p.kind = MigrationPointKind::Replacement;
        p.added = h.added;
        p.removed = h.removed;

        for (int ln = h.old_start - 1; ln >= 1; --ln) {
            if (changed.count(ln)) continue;
            if (auto a = anchor_at(ln)) {
                p.anchor_before = *a;
                break;
            }
        }
        for (int ln = h.old_start + h.old_len; ln <= s_old.line_count(); ++ln) {
            if (changed.count(ln)) continue;
            if (auto a = anchor_at(ln)) {
                p.anchor_after = *a;
                break;
            }
        }
        points.push_back(std::move(p));
    }
    return points;
}

int line_edit_distance(const SourceSnippet& a, const SourceSnippet& b) {
    const auto& la = a.lines();
    const auto& lb = b.lines();
    const size_t n = la.size(), m = lb.size();
    std::vector<int> prev(m + 1), cur(m + 1);
    for (size_t j = 0; j <= m; ++j) prev[j] = static_cast<int>(j);
    for (size_t i = 1; i <= n; ++i) {
        cur[0] = static_cast<int>(i);
        for (size_t j = 1; j <= m; ++j) {
            int sub = prev[j - 1] + (la[i - 1] == lb[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[m];
}

std::string migration_points_to_json(const std::vector<MigrationPoint>& points, int indent) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& p : points) {
        nlohmann::ordered_json j;
        j["index"] = p.index;
        j["kind"] = to_string(p.kind);
        j["anchor_before"] = p.anchor_before ? nlohmann::ordered_json(*p.anchor_before)
                                             : nlohmann::ordered_json(nullptr);
        j["anchor_after"] = p.anchor_after ? nlohmann::ordered_json(*p.anchor_after)
                                           : nlohmann::ordered_json(nullptr);
        j["added"] = p.added;
        j["removed"] = p.removed;
        arr.push_back(std::move(j));
    }
    return arr.dump(indent);
}

}  // namespace miggpt
