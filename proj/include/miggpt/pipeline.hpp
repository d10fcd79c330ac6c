#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "miggpt/backend.hpp"
#include "miggpt/corpus.hpp"
#include "miggpt/metrics.hpp"
#include "miggpt/migration.hpp"
#include "miggpt/retrieval.hpp"

namespace miggpt {

struct RunConfig {
    std::string backend_spec = "scripted:oracle";  // or a BackendConfig file path
    int max_retrieval_queries = 3;                 // the paper's m
    double semantic_threshold = kDefaultSemanticThreshold;
    std::string corpus_path;
    std::string output_dir;
    int parallelism = 1;
    bool one_step = false;

    std::string canonical_json() const;
};

/// Makes a fresh backend for one example. The oracle factory replays the
/// example's ground truths; an HTTP factory returns a shared client.
using BackendFactory = std::function<std::shared_ptr<LlmBackend>(const MigrationExample&)>;

/// Oracle backend: first response is the fenced truth_s_new, second the fenced
/// truth_s_new_patched (one-step mode: just the latter).
std::shared_ptr<LlmBackend> scripted_from_corpus(const MigrationExample& example,
                                                 bool one_step = false);

BackendFactory make_backend_factory(const RunConfig& config);

struct ExampleRunResult {
    std::string example_id;
    std::string status;  // "ok" or the error text
    std::optional<RetrievalOutcome> retrieval;
    std::optional<MigrationResult> migration;
    std::optional<ExampleScore> retrieval_score;
    std::optional<ExampleScore> migration_score;
};

struct RunOutcome {
    std::vector<ExampleRunResult> examples;
    std::optional<AggregateReport> retrieval_report;
    std::optional<AggregateReport> migration_report;
    std::string label;  // "two-step" or "one-step"
    int completed = 0;
};

/// Executes retrieve -> migrate per example (or the one-step baseline),
/// scores against ground truths where present, and (when output_dir is set)
/// writes per-example artifacts, reports, and a replayable run manifest.
RunOutcome run_corpus(const RunConfig& config, const LoadedCorpus& corpus,
                      const BackendFactory& factory);

/// FNV-1a over a string; stable across platforms, used for run manifests.
std::string stable_hash(const std::string& text);

}  // namespace miggpt
