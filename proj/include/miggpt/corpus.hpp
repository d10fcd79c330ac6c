#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "miggpt/diff.hpp"
#include "miggpt/snippet.hpp"

namespace miggpt {

/// One benchmark quintuple plus provenance. Ground truths are optional: they
/// are curated by hand after extraction.
struct MigrationExample {
    std::string id;
    std::string project;
    std::string kernel_old;
    std::string kernel_new;
    std::string file_path;  // repository-relative
    SourceSnippet s_old;
    SourceSnippet s_old_patched;
    SourceSnippet file_new;
    std::optional<SourceSnippet> truth_s_new;
    std::optional<SourceSnippet> truth_s_new_patched;
    std::optional<MigrationType> mig_type;  // nullopt until classifiable

    /// Classify from the stored snippets; requires truth_s_new for sigma.
    std::optional<MigrationType> classify() const;
};

struct CorpusManifest {
    int version = 1;
    std::vector<std::string> projects;
    struct Entry {
        std::string id;
        std::string path;  // example directory, relative to corpus root
        std::string mig_type;
        std::string kernel_old;
        std::string kernel_new;
    };
    std::vector<Entry> examples;
    std::map<std::string, int> counts;  // type1, type2, trivial_*, unclassified
    std::vector<std::string> missing_new_files;
};

class SchemaError : public std::runtime_error {
public:
    SchemaError(const std::string& file, const std::string& field, const std::string& why)
        : std::runtime_error(file + ": field '" + field + "': " + why) {}
};

/// False iff the hunk is whitespace-only or blank-line-only noise.
bool filter_invalid(const DiffHunk& hunk);

struct ExtractOptions {
    std::string project = "local";
    std::string kernel_old = "old";
    std::string kernel_new = "new";
    int context_lines = 3;   // fallback when no enclosing function exists
    int merge_gap = 2;       // hunks this close merge into one example
};

struct ExtractReport {
    std::vector<MigrationExample> examples;
    std::vector<std::string> skipped;  // path + reason, for the log
    std::vector<std::string> missing_new_files;
};

/// Mines examples from three checked-out trees sharing a layout. Only .c/.h
/// files are considered.
ExtractReport extract_examples(const std::string& repo_old, const std::string& repo_old_patched,
                               const std::string& repo_new, const ExtractOptions& options = {});

CorpusManifest save_corpus(const std::vector<MigrationExample>& examples, const std::string& path,
                           const std::vector<std::string>& missing_new_files = {});

struct LoadedCorpus {
    CorpusManifest manifest;
    std::vector<MigrationExample> examples;
};

LoadedCorpus load_corpus(const std::string& path);

CorpusManifest build_manifest(const std::vector<MigrationExample>& examples,
                              const std::vector<std::string>& missing_new_files = {});

}  // namespace miggpt
