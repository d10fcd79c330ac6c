#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "miggpt/cfp.hpp"
#include "miggpt/corpus.hpp"
#include "miggpt/diff.hpp"
#include "miggpt/metrics.hpp"
#include "miggpt/migration.hpp"
#include "miggpt/pipeline.hpp"
#include "miggpt/retrieval.hpp"

namespace py = pybind11;
using namespace miggpt;

namespace {

SourceSnippet snip(const std::string& text) { return SourceSnippet::from_text(text); }

py::list hunks_to_py(const std::vector<DiffHunk>& hunks) {
    py::list out;
    for (const auto& h : hunks) {
        py::dict d;
        d["old_start"] = h.old_start;
        d["old_len"] = h.old_len;
        d["new_start"] = h.new_start;
        d["new_len"] = h.new_len;
        d["removed"] = h.removed;
        d["added"] = h.added;
        out.append(d);
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_miggpt, m) {
    m.doc() = "Out-of-tree kernel patch migration pipeline";

    m.def("fingerprint_json", [](const std::string& text, int indent) {
        return cfp_to_json(generate_cfp(snip(text)), indent);
    }, py::arg("text"), py::arg("indent") = 2,
       "Structural fingerprint of a C snippet as a JSON array string.");

    m.def("fingerprint_diagnostics", [](const std::string& text) {
        return generate_cfp(snip(text)).diagnostics;
    }, py::arg("text"));

    m.def("signatures", [](const std::string& text) {
        py::list out;
        for (const auto& s : extract_signatures(generate_cfp(snip(text)))) {
            py::dict d;
            d["name"] = s.name;
            d["raw"] = s.raw;
            d["pos"] = s.pos;
            out.append(d);
        }
        return out;
    }, py::arg("text"));

    m.def("funccalls", [](const std::string& text) {
        return extract_funccalls(generate_cfp(snip(text)));
    }, py::arg("text"));

    m.def("line_diff", [](const std::string& base, const std::string& derived) {
        return hunks_to_py(line_diff(snip(base), snip(derived)));
    }, py::arg("base"), py::arg("derived"));

    m.def("classify", [](const std::string& s_old, const std::string& s_old_patched,
                         const std::optional<std::string>& truth_s_new) {
        MigrationExample ex;
        ex.s_old = snip(s_old);
        ex.s_old_patched = snip(s_old_patched);
        if (truth_s_new) ex.truth_s_new = snip(*truth_s_new);
        auto type = ex.classify();
        return type ? to_string(*type) : std::string("Deferred");
    }, py::arg("s_old"), py::arg("s_old_patched"), py::arg("truth_s_new") = std::nullopt);

    m.def("migration_points_json", [](const std::string& s_old, const std::string& s_old_patched,
                                      int indent) {
        auto points = pinpoint_migration_locations(generate_cfp(snip(s_old)),
                                                   generate_cfp(snip(s_old_patched)));
        return migration_points_to_json(points, indent);
    }, py::arg("s_old"), py::arg("s_old_patched"), py::arg("indent") = 2);

    m.def("best_match", [](const std::string& candidate, const std::string& truth) {
        return best_match(snip(candidate), snip(truth));
    }, py::arg("candidate"), py::arg("truth"));

    m.def("semantic_score", [](const std::string& candidate, const std::string& truth) {
        return semantic_score(snip(candidate), snip(truth));
    }, py::arg("candidate"), py::arg("truth"));

    m.def("line_edit_distance", [](const std::string& a, const std::string& b) {
        return line_edit_distance(snip(a), snip(b));
    }, py::arg("a"), py::arg("b"));

    m.def("retrieval_prompt", [](const std::string& s_old, const std::string& file_new) {
        auto s = snip(s_old);
        return build_retrieval_prompt(s, snip(file_new), generate_cfp(s)).render();
    }, py::arg("s_old"), py::arg("file_new"));

    m.def("retrieve", [](const std::string& s_old, const std::string& file_new,
                         const std::vector<std::string>& responses, int m) {
        ScriptedBackend backend(responses);
        return retrieve_target(snip(s_old), snip(file_new), backend, m).to_json();
    }, py::arg("s_old"), py::arg("file_new"), py::arg("responses"), py::arg("m") = 3,
       "Run the retrieval loop against a scripted response queue; returns JSON.");

    m.def("migration_prompt", [](const std::string& s_old, const std::string& s_old_patched,
                                 const std::string& s_new) {
        return render_migration_prompt(
            MigrationRequest::make(snip(s_old), snip(s_old_patched), snip(s_new)));
    }, py::arg("s_old"), py::arg("s_old_patched"), py::arg("s_new"));

    m.def("migrate", [](const std::string& s_old, const std::string& s_old_patched,
                        const std::string& s_new, const std::string& response) {
        ScriptedBackend backend({response});
        auto req = MigrationRequest::make(snip(s_old), snip(s_old_patched), snip(s_new));
        return migrate(req, backend).to_json("");
    }, py::arg("s_old"), py::arg("s_old_patched"), py::arg("s_new"), py::arg("response"),
       "Apply the migration step against a single scripted response; returns JSON.");

    m.def("run_oracle", [](const std::string& corpus_path, const std::string& output_dir,
                           bool one_step, int parallelism) {
        RunConfig config;
        config.corpus_path = corpus_path;
        config.output_dir = output_dir;
        config.one_step = one_step;
        config.parallelism = parallelism;
        LoadedCorpus corpus = load_corpus(corpus_path);
        RunOutcome out = run_corpus(config, corpus, make_backend_factory(config));
        if (!out.migration_report) throw std::runtime_error("no scorable examples");
        return out.migration_report->to_json();
    }, py::arg("corpus_path"), py::arg("output_dir") = "", py::arg("one_step") = false,
       py::arg("parallelism") = 1,
       "Run the two-step pipeline with the corpus-derived oracle backend; returns the report JSON.");

    m.def("extract_code_block", &extract_code_block, py::arg("response"));
    m.def("fence_code", &fence_code, py::arg("code"));
}
