#include "miggpt/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "miggpt/cfp.hpp"

namespace fs = std::filesystem;

namespace miggpt {

std::optional<MigrationType> MigrationExample::classify() const {
    auto delta = line_diff(s_old, s_old_patched);
    if (delta.empty()) return MigrationType::TrivialNoPatchChange;
    if (!truth_s_new) return std::nullopt;
    auto sigma = line_diff(s_old, *truth_s_new);
    return classify_migration(delta, sigma);
}

namespace {

std::string strip_ws(const std::string& s) {
    std::string out;
    for (char c : s)
        if (c != ' ' && c != '\t' && c != '\r') out += c;
    return out;
}

}  // namespace

bool filter_invalid(const DiffHunk& hunk) {
    // Whitespace-only: both sides reduce to the same sequence of stripped lines.
    std::vector<std::string> rem, add;
    for (const auto& l : hunk.removed) rem.push_back(strip_ws(l));
    for (const auto& l : hunk.added) add.push_back(strip_ws(l));
    // Blank-line-only churn.
    const auto all_blank = [](const std::vector<std::string>& v) {
        return std::all_of(v.begin(), v.end(), [](const std::string& s) { return s.empty(); });
    };
    if (all_blank(rem) && all_blank(add)) return false;
    if (rem == add) return false;
    return true;
}

namespace {

std::string sanitize_id(const std::string& rel_path) {
    std::string out;
    for (char c : rel_path) {
        if (std::isalnum(static_cast<unsigned char>(c))) out += c;
        else out += '_';
    }
    return out;
}

// Maps a base line to the corresponding derived line given hunks before it.
int map_to_derived(int base_line, const std::vector<DiffHunk>& hunks) {
    int shift = 0;
    for (const auto& h : hunks) {
        if (h.old_start + h.old_len <= base_line) shift += h.new_len - h.old_len;
    }
    return base_line + shift;
}

}  // namespace

ExtractReport extract_examples(const std::string& repo_old, const std::string& repo_old_patched,
                               const std::string& repo_new, const ExtractOptions& options) {
    ExtractReport report;

    std::vector<std::string> rel_paths;
    for (const auto& entry : fs::recursive_directory_iterator(repo_old)) {
        if (!entry.is_regular_file()) continue;
        auto ext = entry.path().extension().string();
        if (ext != ".c" && ext != ".h") continue;
        rel_paths.push_back(fs::relative(entry.path(), repo_old).generic_string());
    }
    std::sort(rel_paths.begin(), rel_paths.end());

    for (const auto& rel : rel_paths) {
        fs::path old_path = fs::path(repo_old) / rel;
        fs::path patched_path = fs::path(repo_old_patched) / rel;
        if (!fs::exists(patched_path)) {
            report.skipped.push_back(rel + ": missing in patched tree (file deletion)");
            continue;
        }
        SourceSnippet old_file, patched_file;
        try {
            old_file = SourceSnippet::from_file(old_path.string());
            patched_file = SourceSnippet::from_file(patched_path.string());
        } catch (const std::exception& e) {
            report.skipped.push_back(rel + ": IoError: " + e.what());
            continue;
        }

        auto all_hunks = line_diff(old_file, patched_file);
        std::vector<DiffHunk> hunks;
        for (auto& h : all_hunks)
            if (filter_invalid(h)) hunks.push_back(std::move(h));
        if (hunks.empty()) continue;

        fs::path new_path = fs::path(repo_new) / rel;
        if (!fs::exists(new_path)) {
            report.missing_new_files.push_back(rel);
            report.skipped.push_back(rel + ": MissingNewFile");
            continue;
        }
        SourceSnippet new_file = SourceSnippet::from_file(new_path.string());

        // Group hunks that sit within merge_gap lines of each other.
        std::vector<std::vector<DiffHunk>> groups;
        for (auto& h : hunks) {
            if (!groups.empty()) {
                const DiffHunk& prev = groups.back().back();
                if (h.old_start - (prev.old_start + prev.old_len) <= options.merge_gap) {
                    groups.back().push_back(h);
                    continue;
                }
            }
            groups.push_back({h});
        }

        Cfp old_cfp = generate_cfp(old_file);
        int group_index = 0;
        for (const auto& group : groups) {
            int first = group.front().old_start;
            int last = group.back().old_start + std::max(group.back().old_len - 1, 0);

            // Expand to the enclosing function when one contains the group.
            int ctx_first = std::max(1, first - options.context_lines);
            int ctx_last = std::min(old_file.line_count(), last + options.context_lines);
            for (const CfpNode* node : flatten(old_cfp)) {
                if (node->kind == CfpNodeKind::FuncDef && node->pos <= first && node->end >= last) {
                    ctx_first = node->pos;
                    ctx_last = node->end;
                    break;
                }
            }

            MigrationExample ex;
            ex.id = sanitize_id(rel) + "__g" + std::to_string(group_index++);
            ex.project = options.project;
            ex.kernel_old = options.kernel_old;
            ex.kernel_new = options.kernel_new;
            ex.file_path = rel;
            ex.s_old = old_file.slice(ctx_first, ctx_last);
            int d_first = map_to_derived(ctx_first, all_hunks);
            int d_last = map_to_derived(ctx_last + 1, all_hunks) - 1;
            ex.s_old_patched = patched_file.slice(d_first, std::max(d_first, d_last));
            ex.file_new = new_file;
            report.examples.push_back(std::move(ex));
        }
    }
    return report;
}

CorpusManifest build_manifest(const std::vector<MigrationExample>& examples,
                              const std::vector<std::string>& missing_new_files) {
    CorpusManifest m;
    std::set<std::string> projects;
    m.counts = {{"type1", 0},
                {"type2", 0},
                {"trivial_no_patch_change", 0},
                {"trivial_no_kernel_change", 0},
                {"unclassified", 0}};
    for (const auto& ex : examples) {
        projects.insert(ex.project);
        std::string type = ex.mig_type ? to_string(*ex.mig_type) : "Unclassified";
        m.examples.push_back({ex.id, ex.id, type, ex.kernel_old, ex.kernel_new});
        if (!ex.mig_type) m.counts["unclassified"]++;
        else if (*ex.mig_type == MigrationType::Type1) m.counts["type1"]++;
        else if (*ex.mig_type == MigrationType::Type2) m.counts["type2"]++;
        else if (*ex.mig_type == MigrationType::TrivialNoPatchChange)
            m.counts["trivial_no_patch_change"]++;
        else m.counts["trivial_no_kernel_change"]++;
    }
    m.projects.assign(projects.begin(), projects.end());
    m.missing_new_files = missing_new_files;
    return m;
}

namespace {

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

CorpusManifest save_corpus(const std::vector<MigrationExample>& examples, const std::string& path,
                           const std::vector<std::string>& missing_new_files) {
    fs::create_directories(path);
    CorpusManifest manifest = build_manifest(examples, missing_new_files);

    for (const auto& ex : examples) {
        fs::path dir = fs::path(path) / ex.id;
        fs::create_directories(dir);
        write_text(dir / "s_old.c", ex.s_old.to_text());
        write_text(dir / "s_old_patched.c", ex.s_old_patched.to_text());
        write_text(dir / "file_new.c", ex.file_new.to_text());
        if (ex.truth_s_new) write_text(dir / "truth_s_new.c", ex.truth_s_new->to_text());
        if (ex.truth_s_new_patched)
            write_text(dir / "truth_s_new_patched.c", ex.truth_s_new_patched->to_text());
        nlohmann::ordered_json meta;
        meta["id"] = ex.id;
        meta["project"] = ex.project;
        meta["kernel_old"] = ex.kernel_old;
        meta["kernel_new"] = ex.kernel_new;
        meta["file_path"] = ex.file_path;
        meta["mig_type"] = ex.mig_type ? to_string(*ex.mig_type) : "Unclassified";
        write_text(dir / "meta.json", meta.dump(2) + "\n");
    }

    nlohmann::ordered_json j;
    j["version"] = manifest.version;
    j["projects"] = manifest.projects;
    nlohmann::ordered_json exs = nlohmann::ordered_json::array();
    for (const auto& e : manifest.examples) {
        exs.push_back({{"id", e.id},
                       {"path", e.path},
                       {"mig_type", e.mig_type},
                       {"kernel_old", e.kernel_old},
                       {"kernel_new", e.kernel_new}});
    }
    j["examples"] = std::move(exs);
    j["counts"] = manifest.counts;
    j["missing_new_files"] = manifest.missing_new_files;
    write_text(fs::path(path) / "manifest.json", j.dump(2) + "\n");
    return manifest;
}

LoadedCorpus load_corpus(const std::string& path) {
    fs::path root(path);
    fs::path manifest_path = root / "manifest.json";
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_text(manifest_path));
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(manifest_path.string(), "<root>", e.what());
    }

    LoadedCorpus out;
    out.manifest.version = j.value("version", 1);
    if (!j.contains("examples") || !j["examples"].is_array())
        throw SchemaError(manifest_path.string(), "examples", "missing or not an array");
    for (const auto& p : j.value("projects", std::vector<std::string>{}))
        out.manifest.projects.push_back(p);
    if (j.contains("counts"))
        for (auto it = j["counts"].begin(); it != j["counts"].end(); ++it)
            out.manifest.counts[it.key()] = it.value().get<int>();
    for (const auto& m : j.value("missing_new_files", std::vector<std::string>{}))
        out.manifest.missing_new_files.push_back(m);

    for (const auto& entry : j["examples"]) {
        if (!entry.contains("id"))
            throw SchemaError(manifest_path.string(), "examples[].id", "missing");
        CorpusManifest::Entry e;
        e.id = entry["id"].get<std::string>();
        e.path = entry.value("path", e.id);
        e.mig_type = entry.value("mig_type", "Unclassified");
        e.kernel_old = entry.value("kernel_old", "");
        e.kernel_new = entry.value("kernel_new", "");
        out.manifest.examples.push_back(e);

        fs::path dir = root / e.path;
        MigrationExample ex;
        fs::path meta_path = dir / "meta.json";
        nlohmann::json meta;
        try {
            meta = nlohmann::json::parse(read_text(meta_path));
        } catch (const std::exception& err) {
            throw SchemaError(meta_path.string(), "<root>", err.what());
        }
        ex.id = meta.value("id", e.id);
        ex.project = meta.value("project", "");
        ex.kernel_old = meta.value("kernel_old", "");
        ex.kernel_new = meta.value("kernel_new", "");
        ex.file_path = meta.value("file_path", "");
        std::string type = meta.value("mig_type", "Unclassified");
        ex.mig_type = migration_type_from_string(type);

        const auto require = [&dir](const char* name) {
            fs::path p = dir / name;
            if (!fs::exists(p)) throw SchemaError(dir.string(), name, "file missing");
            return SourceSnippet::from_file(p.string());
        };
        ex.s_old = require("s_old.c");
        ex.s_old_patched = require("s_old_patched.c");
        ex.file_new = require("file_new.c");
        if (fs::exists(dir / "truth_s_new.c"))
            ex.truth_s_new = SourceSnippet::from_file((dir / "truth_s_new.c").string());
        if (fs::exists(dir / "truth_s_new_patched.c"))
            ex.truth_s_new_patched =
                SourceSnippet::from_file((dir / "truth_s_new_patched.c").string());
        out.examples.push_back(std::move(ex));
    }
    return out;
}

}  // namespace miggpt
