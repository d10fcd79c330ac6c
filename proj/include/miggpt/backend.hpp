#pragma once

#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace miggpt {

struct CompletionRequest {
    std::string rendered_prompt;           // the user-visible prompt text
    std::string persona;                   // system-message content, may be empty
    std::optional<std::string> model_hint;
    std::optional<int> max_output;
    double temperature = 0.0;
};

enum class BackendErrorKind { Transport, Auth, RateLimit, Exhausted };

class BackendError : public std::runtime_error {
public:
    BackendError(BackendErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}
    BackendErrorKind kind() const { return kind_; }

private:
    BackendErrorKind kind_;
};

/// The pluggable completion contract. Instances are shareable across
/// concurrent callers.
class LlmBackend {
public:
    virtual ~LlmBackend() = default;
    virtual std::string complete(const CompletionRequest& request) = 0;
};

/// Deterministic backend replaying a fixed response queue. Pop is atomic;
/// raises Exhausted when the queue empties.
class ScriptedBackend : public LlmBackend {
public:
    explicit ScriptedBackend(std::vector<std::string> responses);

    std::string complete(const CompletionRequest& request) override;

    int calls() const;

private:
    mutable std::mutex mutex_;
    std::deque<std::string> queue_;
    int calls_ = 0;
};

struct BackendConfig {
    std::string endpoint;      // e.g. https://api.example.com/v1/chat/completions
    std::string model;
    std::string credential;    // NAME of the env var holding the API key
    double timeout_seconds = 60.0;
    int max_retries_transport = 2;
    double temperature = 0.0;
    int max_in_flight = 0;     // 0 = unlimited

    static BackendConfig from_file(const std::string& path);  // .json or .toml
};

/// Chat-completion HTTP client: {model, messages[{role, content}]} wire format,
/// exponential backoff on transport failures and rate limits.
class HttpBackend : public LlmBackend {
public:
    explicit HttpBackend(BackendConfig config);
    ~HttpBackend() override;

    std::string complete(const CompletionRequest& request) override;

    const BackendConfig& config() const { return config_; }

private:
    BackendConfig config_;
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Fenced-code extraction from an LLM reply: first fenced block wins; without
/// fences, a leading prose paragraph free of braces/semicolons is stripped.
std::string extract_code_block(const std::string& response);

/// Wraps text in a fenced code block, as the persona prompt requests.
std::string fence_code(const std::string& code);

}  // namespace miggpt
