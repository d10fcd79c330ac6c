#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "miggpt/diff.hpp"
#include "miggpt/snippet.hpp"

namespace miggpt {

constexpr double kDefaultSemanticThreshold = 0.9;

/// True iff the texts are byte-equal after deleting every space, tab,
/// carriage return, and line break.
bool best_match(const SourceSnippet& candidate, const SourceSnippet& truth);

struct SemanticComponents {
    double ngram = 0.0;
    double weighted_ngram = 0.0;
    double structure = 0.0;
    double dataflow = 0.0;

    double composite() const {
        return 0.25 * ngram + 0.25 * weighted_ngram + 0.25 * structure + 0.25 * dataflow;
    }
};

SemanticComponents semantic_components(const SourceSnippet& candidate, const SourceSnippet& truth);

/// Composite code-similarity score in [0, 1]; 1 for identical snippets,
/// 0 for an empty candidate against a non-empty truth.
double semantic_score(const SourceSnippet& candidate, const SourceSnippet& truth);

enum class EditBucket { Under3, From3To5, From6To8, NineUp };

std::string to_string(EditBucket bucket);

EditBucket edit_bucket(int distance);

struct ExampleScore {
    std::string example_id;
    bool best = false;
    double semantic = 0.0;
    bool semantic_ok = false;
    int edit_distance = 0;
    EditBucket bucket = EditBucket::Under3;
    int attempts = 0;
    std::optional<MigrationType> mig_type;
    std::optional<bool> human_match;  // imported from a curation file, never computed
};

ExampleScore score_example(const std::string& example_id, const SourceSnippet& candidate,
                           const SourceSnippet& truth, int attempts,
                           double threshold = kDefaultSemanticThreshold);

struct AggregateRow {
    int count = 0;
    double best_rate = 0.0;
    double semantic_rate = 0.0;
    double mean_attempts = 0.0;
    std::map<std::string, int> bucket_histogram;
};

struct AggregateReport {
    AggregateRow overall;
    std::map<std::string, AggregateRow> per_type;  // keyed by MigrationType name

    std::string to_json(int indent = 2) const;
    std::string to_text() const;  // aligned-column, human-readable
    std::string to_csv(const std::vector<ExampleScore>& scores) const;
};

/// Deterministic fold over the scores; throws std::runtime_error("EmptyRun")
/// when scores is empty.
AggregateReport aggregate(const std::vector<ExampleScore>& scores);

}  // namespace miggpt
