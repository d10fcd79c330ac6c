#include "miggpt/pipeline.hpp"

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace miggpt {

std::string RunConfig::canonical_json() const {
    nlohmann::ordered_json j;
    j["backend_spec"] = backend_spec;
    j["max_retrieval_queries"] = max_retrieval_queries;
    j["semantic_threshold"] = semantic_threshold;
    j["corpus_path"] = corpus_path;
    j["output_dir"] = output_dir;
    j["parallelism"] = parallelism;
    j["one_step"] = one_step;
    return j.dump();
}

std::string stable_hash(const std::string& text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::shared_ptr<LlmBackend> scripted_from_corpus(const MigrationExample& example, bool one_step) {
    std::vector<std::string> responses;
    if (!one_step && example.truth_s_new)
        responses.push_back(fence_code(example.truth_s_new->to_text()));
    if (example.truth_s_new_patched)
        responses.push_back(fence_code(example.truth_s_new_patched->to_text()));
    return std::make_shared<ScriptedBackend>(std::move(responses));
}

BackendFactory make_backend_factory(const RunConfig& config) {
    const std::string& spec = config.backend_spec;
    bool one_step = config.one_step;
    if (spec == "scripted:oracle") {
        return [one_step](const MigrationExample& ex) { return scripted_from_corpus(ex, one_step); };
    }
    if (spec.rfind("scripted:", 0) == 0) {
        // A JSON file holding an array of canned responses, replayed per example.
        std::string path = spec.substr(9);
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot read scripted responses: " + path);
        nlohmann::json j = nlohmann::json::parse(in);
        auto responses = j.get<std::vector<std::string>>();
        return [responses](const MigrationExample&) {
            return std::make_shared<ScriptedBackend>(responses);
        };
    }
    // Anything else is a backend config file; one shared HTTP client.
    auto backend = std::make_shared<HttpBackend>(BackendConfig::from_file(spec));
    return [backend](const MigrationExample&) { return backend; };
}

namespace {

std::string build_one_step_prompt(const MigrationExample& ex) {
    std::string p;
    p += "You are given an out-of-tree patch written against an old Linux kernel "
         "version and the full source file from a newer kernel version. Apply the "
         "same functional change to the newer code in a single step: locate the "
         "code region the patch targets inside the new file and produce the "
         "patched version of that region.\n\n";
    p += expert_persona_prompt();
    p += "\n\n### Old snippet (before the patch)\n```c\n" + ex.s_old.to_text() + "```\n";
    p += "\n### Old snippet (after the patch)\n```c\n" + ex.s_old_patched.to_text() + "```\n";
    p += "\n### New kernel file\n```c\n" + ex.file_new.to_text() + "```\n";
    return p;
}

ExampleRunResult run_one(const MigrationExample& ex, const RunConfig& config,
                         const BackendFactory& factory) {
    ExampleRunResult r;
    r.example_id = ex.id;
    try {
        auto backend = factory(ex);
        if (config.one_step) {
            CompletionRequest req;
            req.rendered_prompt = build_one_step_prompt(ex);
            req.persona = expert_persona_prompt();
            std::string reply = backend->complete(req);
            MigrationResult mig;
            mig.raw_response = reply;
            mig.snippet = SourceSnippet::from_text(extract_code_block(reply));
            mig.points_used = 0;
            if (ex.truth_s_new_patched)
                r.migration_score = score_example(ex.id, mig.snippet, *ex.truth_s_new_patched, 1,
                                                  config.semantic_threshold);
            r.migration = std::move(mig);
        } else {
            RetrievalOutcome ret =
                retrieve_target(ex.s_old, ex.file_new, *backend, config.max_retrieval_queries);
            if (ex.truth_s_new)
                r.retrieval_score = score_example(ex.id, ret.snippet, *ex.truth_s_new, ret.attempts,
                                                  config.semantic_threshold);
            auto request = MigrationRequest::make(ex.s_old, ex.s_old_patched, ret.snippet, ex.id);
            MigrationResult mig = migrate(request, *backend);
            if (ex.truth_s_new_patched)
                r.migration_score = score_example(ex.id, mig.snippet, *ex.truth_s_new_patched,
                                                  ret.attempts + 1, config.semantic_threshold);
            r.retrieval = std::move(ret);
            r.migration = std::move(mig);
        }
        r.status = "ok";
    } catch (const std::exception& e) {
        r.status = e.what();
    }
    // Migration-type bookkeeping carries into the scores for per-type rows.
    auto type = ex.mig_type ? ex.mig_type : ex.classify();
    if (r.retrieval_score) r.retrieval_score->mig_type = type;
    if (r.migration_score) r.migration_score->mig_type = type;
    return r;
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

std::string corpus_hash(const LoadedCorpus& corpus) {
    std::string blob;
    for (const auto& ex : corpus.examples) {
        blob += ex.id;
        blob += '\0';
        blob += ex.s_old.to_text() + ex.s_old_patched.to_text() + ex.file_new.to_text();
        if (ex.truth_s_new) blob += ex.truth_s_new->to_text();
        if (ex.truth_s_new_patched) blob += ex.truth_s_new_patched->to_text();
    }
    return stable_hash(blob);
}

}  // namespace

RunOutcome run_corpus(const RunConfig& config, const LoadedCorpus& corpus,
                      const BackendFactory& factory) {
    RunOutcome out;
    out.label = config.one_step ? "one-step" : "two-step";
    out.examples.resize(corpus.examples.size());

    int workers = std::max(1, config.parallelism);
    workers = std::min<int>(workers, std::max<std::size_t>(corpus.examples.size(), 1));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= corpus.examples.size()) break;
            out.examples[i] = run_one(corpus.examples[i], config, factory);
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    // Deterministic reduction in corpus order, independent of worker timing.
    std::vector<ExampleScore> ret_scores, mig_scores;
    for (const auto& r : out.examples) {
        if (r.status == "ok") out.completed++;
        if (r.retrieval_score) ret_scores.push_back(*r.retrieval_score);
        if (r.migration_score) mig_scores.push_back(*r.migration_score);
    }
    if (!ret_scores.empty()) out.retrieval_report = aggregate(ret_scores);
    if (!mig_scores.empty()) out.migration_report = aggregate(mig_scores);

    if (!config.output_dir.empty()) {
        fs::create_directories(config.output_dir);
        for (std::size_t i = 0; i < out.examples.size(); ++i) {
            const auto& r = out.examples[i];
            fs::path dir = fs::path(config.output_dir) / r.example_id;
            fs::create_directories(dir);
            nlohmann::ordered_json status;
            status["example_id"] = r.example_id;
            status["status"] = r.status;
            write_file(dir / "status.json", status.dump(2) + "\n");
            if (r.retrieval) {
                write_file(dir / "retrieval.json", r.retrieval->to_json() + "\n");
                write_file(dir / "s_new.c", r.retrieval->snippet.to_text());
            }
            if (r.migration) {
                write_file(dir / "migration.json", r.migration->to_json(r.example_id) + "\n");
                write_file(dir / "s_new_patched.c", r.migration->snippet.to_text());
            }
        }
        if (out.retrieval_report) {
            write_file(fs::path(config.output_dir) / "report_retrieval.json",
                       out.retrieval_report->to_json() + "\n");
            write_file(fs::path(config.output_dir) / "scores_retrieval.csv",
                       out.retrieval_report->to_csv(ret_scores));
        }
        if (out.migration_report) {
            write_file(fs::path(config.output_dir) / "report_migration.json",
                       out.migration_report->to_json() + "\n");
            write_file(fs::path(config.output_dir) / "report_migration.txt",
                       out.migration_report->to_text());
            write_file(fs::path(config.output_dir) / "scores_migration.csv",
                       out.migration_report->to_csv(mig_scores));
        }
        nlohmann::ordered_json manifest;
        manifest["label"] = out.label;
        manifest["config"] = nlohmann::ordered_json::parse(config.canonical_json());
        manifest["config_hash"] = stable_hash(config.canonical_json());
        manifest["corpus_hash"] = corpus_hash(corpus);
        manifest["examples_total"] = corpus.examples.size();
        manifest["examples_completed"] = out.completed;
        write_file(fs::path(config.output_dir) / "run_manifest.json", manifest.dump(2) + "\n");
    }
    return out;
}

}  // namespace miggpt
