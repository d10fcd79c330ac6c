#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "miggpt/cfp.hpp"
#include "miggpt/corpus.hpp"
#include "miggpt/diff.hpp"
#include "miggpt/metrics.hpp"
#include "miggpt/migration.hpp"
#include "miggpt/pipeline.hpp"
#include "miggpt/retrieval.hpp"

namespace fs = std::filesystem;
using namespace miggpt;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitDiagnostics = 2;

int cmd_fingerprint(const std::string& input) {
    SourceSnippet snippet = SourceSnippet::from_file(input);
    if (snippet.line_count() == 0 || snippet.to_text().empty())
        throw std::runtime_error(input + ": empty input");
    Cfp cfp = generate_cfp(snippet);
    std::cout << cfp_to_json(cfp) << "\n";
    if (!cfp.balanced()) {
        for (const auto& d : cfp.diagnostics) std::cerr << "diagnostic: " << d << "\n";
        return kExitDiagnostics;
    }
    return kExitOk;
}

int cmd_classify(const std::string& dir) {
    MigrationExample ex;
    ex.s_old = SourceSnippet::from_file((fs::path(dir) / "s_old.c").string());
    ex.s_old_patched = SourceSnippet::from_file((fs::path(dir) / "s_old_patched.c").string());
    if (fs::exists(fs::path(dir) / "truth_s_new.c"))
        ex.truth_s_new = SourceSnippet::from_file((fs::path(dir) / "truth_s_new.c").string());

    auto type = ex.classify();
    auto points = pinpoint_migration_locations(generate_cfp(ex.s_old),
                                               generate_cfp(ex.s_old_patched));
    nlohmann::ordered_json out;
    out["mig_type"] = type ? to_string(*type) : "Deferred";
    out["points"] = nlohmann::ordered_json::parse(migration_points_to_json(points));
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

int cmd_retrieve(const std::string& dir, const std::string& backend_spec, int m,
                 bool prompt_only) {
    auto s_old = SourceSnippet::from_file((fs::path(dir) / "s_old.c").string());
    auto file_new = SourceSnippet::from_file((fs::path(dir) / "file_new.c").string());
    if (prompt_only) {
        std::cout << build_retrieval_prompt(s_old, file_new, generate_cfp(s_old)).render() << "\n";
        return kExitOk;
    }
    RunConfig config;
    config.backend_spec = backend_spec;
    LoadedCorpus one;
    MigrationExample ex;
    ex.id = fs::path(dir).filename().string();
    ex.s_old = s_old;
    ex.file_new = file_new;
    if (fs::exists(fs::path(dir) / "truth_s_new.c"))
        ex.truth_s_new = SourceSnippet::from_file((fs::path(dir) / "truth_s_new.c").string());
    if (fs::exists(fs::path(dir) / "truth_s_new_patched.c"))
        ex.truth_s_new_patched =
            SourceSnippet::from_file((fs::path(dir) / "truth_s_new_patched.c").string());
    auto backend = make_backend_factory(config)(ex);
    RetrievalOutcome out = retrieve_target(s_old, file_new, *backend, m);
    std::cout << out.to_json() << "\n";
    return kExitOk;
}

int cmd_migrate(const std::string& dir, const std::string& s_new_path,
                const std::string& backend_spec, bool prompt_only) {
    auto s_old = SourceSnippet::from_file((fs::path(dir) / "s_old.c").string());
    auto s_old_patched = SourceSnippet::from_file((fs::path(dir) / "s_old_patched.c").string());
    fs::path new_path = s_new_path.empty() ? fs::path(dir) / "truth_s_new.c" : fs::path(s_new_path);
    if (!fs::exists(new_path))
        throw std::runtime_error("no retrieved snippet: " + new_path.string() +
                                 " (pass --s-new or run retrieve first)");
    auto s_new = SourceSnippet::from_file(new_path.string());
    auto request = MigrationRequest::make(std::move(s_old), std::move(s_old_patched),
                                          std::move(s_new), fs::path(dir).filename().string());
    if (prompt_only) {
        std::cout << render_migration_prompt(request) << "\n";
        return kExitOk;
    }
    RunConfig config;
    config.backend_spec = backend_spec;
    config.one_step = true;  // oracle factory then scripts only truth_s_new_patched
    MigrationExample ex;
    ex.id = request.example_id;
    if (fs::exists(fs::path(dir) / "truth_s_new_patched.c"))
        ex.truth_s_new_patched =
            SourceSnippet::from_file((fs::path(dir) / "truth_s_new_patched.c").string());
    auto backend = make_backend_factory(config)(ex);
    MigrationResult result = migrate(request, *backend);
    std::cout << result.to_json(request.example_id) << "\n";
    return kExitOk;
}

int cmd_run(RunConfig config) {
    LoadedCorpus corpus = load_corpus(config.corpus_path);
    RunOutcome outcome = run_corpus(config, corpus, make_backend_factory(config));
    for (const auto& r : outcome.examples)
        if (r.status != "ok") std::cerr << r.example_id << ": " << r.status << "\n";
    if (outcome.migration_report) std::cout << outcome.migration_report->to_text();
    std::cerr << outcome.completed << "/" << outcome.examples.size() << " examples completed ("
              << outcome.label << ")\n";
    return outcome.completed >= 1 ? kExitOk : kExitError;
}

int cmd_ingest(const std::string& repo_old, const std::string& repo_patched,
               const std::string& repo_new, const std::string& out_dir, ExtractOptions options) {
    ExtractReport report = extract_examples(repo_old, repo_patched, repo_new, options);
    for (const auto& s : report.skipped) std::cerr << "skipped: " << s << "\n";
    save_corpus(report.examples, out_dir, report.missing_new_files);
    std::cerr << report.examples.size() << " examples written to " << out_dir << "\n";
    return kExitOk;
}

int cmd_eval(const std::string& corpus_path, const std::string& run_dir, double threshold) {
    LoadedCorpus corpus = load_corpus(corpus_path);
    std::vector<ExampleScore> scores;
    for (const auto& ex : corpus.examples) {
        fs::path candidate = fs::path(run_dir) / ex.id / "s_new_patched.c";
        if (!fs::exists(candidate) || !ex.truth_s_new_patched) continue;
        auto snippet = SourceSnippet::from_file(candidate.string());
        auto score = score_example(ex.id, snippet, *ex.truth_s_new_patched, 0, threshold);
        score.mig_type = ex.mig_type ? ex.mig_type : ex.classify();
        scores.push_back(score);
    }
    if (scores.empty()) throw std::runtime_error("no scorable outputs under " + run_dir);
    AggregateReport report = aggregate(scores);
    std::cout << report.to_text();
    std::ofstream((fs::path(run_dir) / "report_migration.json").string())
        << report.to_json() << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Out-of-tree kernel patch migration pipeline"};
    app.require_subcommand(1);

    std::string input, dir, s_new_path, backend_spec = "scripted:oracle";
    int m = 3;
    bool prompt_only = false;
    RunConfig run_config;
    std::string repo_old, repo_patched, repo_new, out_dir;
    ExtractOptions extract_options;
    std::string eval_corpus, eval_run_dir;
    double eval_threshold = kDefaultSemanticThreshold;

    auto* fingerprint = app.add_subcommand("fingerprint", "Emit the structural fingerprint JSON");
    fingerprint->add_option("input", input, "C source file")->required();

    auto* classify = app.add_subcommand("classify", "Classify an example and list change points");
    classify->add_option("dir", dir, "example directory")->required();

    auto* retrieve = app.add_subcommand("retrieve", "Retrieve the target snippet from file_new");
    retrieve->add_option("dir", dir, "example directory")->required();
    retrieve->add_option("--backend", backend_spec, "scripted:oracle, scripted:<path>, or config file");
    retrieve->add_option("-m,--max-queries", m, "retrieval retry budget")->check(CLI::PositiveNumber);
    retrieve->add_flag("--prompt-only", prompt_only, "print the rendered prompt and exit");

    auto* migrate_cmd = app.add_subcommand("migrate", "Migrate the patch onto a retrieved snippet");
    migrate_cmd->add_option("dir", dir, "example directory")->required();
    migrate_cmd->add_option("--s-new", s_new_path, "retrieved snippet file (default: truth_s_new.c)");
    migrate_cmd->add_option("--backend", backend_spec, "backend spec");
    migrate_cmd->add_flag("--prompt-only", prompt_only, "print the rendered prompt and exit");

    auto* run = app.add_subcommand("run", "Run retrieve+migrate over a corpus");
    run->add_option("--corpus", run_config.corpus_path, "corpus directory")->required();
    run->add_option("--out", run_config.output_dir, "output directory");
    run->add_option("--backend", run_config.backend_spec, "backend spec");
    run->add_option("-m,--max-queries", run_config.max_retrieval_queries, "retrieval retry budget")
        ->check(CLI::PositiveNumber);
    run->add_option("--threshold", run_config.semantic_threshold, "semantic match threshold");
    run->add_option("-j,--parallelism", run_config.parallelism, "worker count")
        ->check(CLI::PositiveNumber);
    run->add_flag("--one-step", run_config.one_step, "single-prompt baseline");

    auto* ingest = app.add_subcommand("ingest", "Mine examples from three source trees");
    ingest->add_option("--old", repo_old, "old tree (pre-patch)")->required();
    ingest->add_option("--patched", repo_patched, "old tree with the patch applied")->required();
    ingest->add_option("--new", repo_new, "new kernel tree")->required();
    ingest->add_option("--out", out_dir, "corpus output directory")->required();
    ingest->add_option("--project", extract_options.project, "project label");
    ingest->add_option("--kernel-old", extract_options.kernel_old, "old kernel version label");
    ingest->add_option("--kernel-new", extract_options.kernel_new, "new kernel version label");
    ingest->add_option("--context", extract_options.context_lines, "context lines fallback");
    ingest->add_option("--merge-gap", extract_options.merge_gap, "hunk merge distance");

    auto* eval = app.add_subcommand("eval", "Re-score existing run outputs against truths");
    eval->add_option("--corpus", eval_corpus, "corpus directory")->required();
    eval->add_option("--run", eval_run_dir, "run output directory")->required();
    eval->add_option("--threshold", eval_threshold, "semantic match threshold");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*fingerprint) return cmd_fingerprint(input);
        if (*classify) return cmd_classify(dir);
        if (*retrieve) return cmd_retrieve(dir, backend_spec, m, prompt_only);
        if (*migrate_cmd) return cmd_migrate(dir, s_new_path, backend_spec, prompt_only);
        if (*run) return cmd_run(run_config);
        if (*ingest) return cmd_ingest(repo_old, repo_patched, repo_new, out_dir, extract_options);
        if (*eval) return cmd_eval(eval_corpus, eval_run_dir, eval_threshold);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
