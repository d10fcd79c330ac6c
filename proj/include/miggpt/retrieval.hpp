#pragma once

#include <string>
#include <vector>

#include "miggpt/backend.hpp"
#include "miggpt/cfp.hpp"
#include "miggpt/snippet.hpp"

namespace miggpt {

/// The composed retrieval prompt, rendered in a fixed section order:
/// task, structure, alignment, persona, payload.
struct PromptBundle {
    std::string task;
    std::string structure;
    std::string alignment;
    std::string persona;
    std::string payload;

    std::string render() const;
};

struct SupplementInfo {
    std::string name;   // associated function name
    int pos = 0;        // first line of its definition in file_new
    int end = 0;
    std::string text;
};

struct RetrievalOutcome {
    SourceSnippet snippet;  // final s_new (candidate plus supplements)
    int attempts = 0;
    bool verified = false;
    std::vector<SupplementInfo> supplements;
    std::string raw_response;  // last LLM reply

    std::string to_json(int indent = 2) const;
};

std::string expert_persona_prompt();

std::string build_structure_prompt(const std::vector<FunctionSignature>& signatures);

std::string build_alignment_prompt(const std::pair<std::string, std::string>& anchors);

std::string build_retrieval_task_prompt();

/// Payload section carrying s_old and file_new verbatim.
std::string build_retrieval_payload(const SourceSnippet& s_old, const SourceSnippet& file_new);

PromptBundle build_retrieval_prompt(const SourceSnippet& s_old, const SourceSnippet& file_new,
                                    const Cfp& cfp_old);

/// True iff every signature name has a FuncDef of the same name in the
/// candidate's own fingerprint. Raw-text match is not required.
bool verify_contains_signatures(const SourceSnippet& candidate,
                                const std::vector<FunctionSignature>& signatures);

/// Appends definitions of functions called by s_tmp but not by s_old, found in
/// file_new. Names already defined inside s_tmp or absent from file_new are
/// skipped.
RetrievalOutcome supplement_associated_functions(const SourceSnippet& s_tmp, const Cfp& cfp_old,
                                                 const SourceSnippet& file_new);

/// Algorithm: query up to m times until the candidate defines the target
/// signatures, then supplement associated functions.
RetrievalOutcome retrieve_target(const SourceSnippet& s_old, const SourceSnippet& file_new,
                                 LlmBackend& backend, int m);

}  // namespace miggpt
