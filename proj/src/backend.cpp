#include "miggpt/backend.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>

namespace miggpt {

ScriptedBackend::ScriptedBackend(std::vector<std::string> responses) {
    for (auto& r : responses) queue_.push_back(std::move(r));
}

std::string ScriptedBackend::complete(const CompletionRequest&) {
    std::lock_guard<std::mutex> lock(mutex_);
    ++calls_;
    if (queue_.empty())
        throw BackendError(BackendErrorKind::Exhausted, "scripted backend: response queue empty");
    std::string r = std::move(queue_.front());
    queue_.pop_front();
    return r;
}

int ScriptedBackend::calls() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return calls_;
}

namespace {

std::string trim_copy(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// Minimal flat TOML: `key = value` lines, strings quoted, '#' comments.
BackendConfig parse_toml(std::istream& in, const std::string& path) {
    BackendConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        std::string body = hash == std::string::npos ? line : line.substr(0, hash);
        body = trim_copy(body);
        if (body.empty() || body.front() == '[') continue;
        size_t eq = body.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key = value");
        std::string key = trim_copy(body.substr(0, eq));
        std::string value = trim_copy(body.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);
        if (key == "endpoint") cfg.endpoint = value;
        else if (key == "model") cfg.model = value;
        else if (key == "credential") cfg.credential = value;
        else if (key == "timeout") cfg.timeout_seconds = std::stod(value);
        else if (key == "max_retries_transport") cfg.max_retries_transport = std::stoi(value);
        else if (key == "temperature") cfg.temperature = std::stod(value);
        else if (key == "max_in_flight") cfg.max_in_flight = std::stoi(value);
    }
    return cfg;
}

}  // namespace

BackendConfig BackendConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open backend config: " + path);
    std::filesystem::path p(path);
    if (p.extension() == ".toml") return parse_toml(in, path);
    nlohmann::json j;
    in >> j;
    BackendConfig cfg;
    cfg.endpoint = j.value("endpoint", "");
    cfg.model = j.value("model", "");
    cfg.credential = j.value("credential", "");
    cfg.timeout_seconds = j.value("timeout", 60.0);
    cfg.max_retries_transport = j.value("max_retries_transport", 2);
    cfg.temperature = j.value("temperature", 0.0);
    cfg.max_in_flight = j.value("max_in_flight", 0);
    return cfg;
}

struct HttpBackend::Impl {
    std::string base;  // scheme://host[:port]
    std::string path;
};

HttpBackend::HttpBackend(BackendConfig config)
    : config_(std::move(config)), impl_(std::make_unique<Impl>()) {
    const std::string& url = config_.endpoint;
    size_t scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
        throw std::runtime_error("backend endpoint must be a full URL: " + url);
    size_t path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) {
        impl_->base = url;
        impl_->path = "/";
    } else {
        impl_->base = url.substr(0, path_start);
        impl_->path = url.substr(path_start);
    }
}

HttpBackend::~HttpBackend() = default;

std::string HttpBackend::complete(const CompletionRequest& request) {
    nlohmann::json body;
    body["model"] = request.model_hint.value_or(config_.model);
    nlohmann::json messages = nlohmann::json::array();
    if (!request.persona.empty())
        messages.push_back({{"role", "system"}, {"content", request.persona}});
    messages.push_back({{"role", "user"}, {"content", request.rendered_prompt}});
    body["messages"] = std::move(messages);
    body["temperature"] = request.temperature;
    if (request.max_output) body["max_tokens"] = *request.max_output;

    httplib::Headers headers;
    if (!config_.credential.empty()) {
        const char* key = std::getenv(config_.credential.c_str());
        if (!key)
            throw BackendError(BackendErrorKind::Auth,
                               "credential env var not set: " + config_.credential);
        headers.emplace("Authorization", std::string("Bearer ") + key);
    }

    const std::string payload = body.dump();
    std::string last_error;
    for (int attempt = 0; attempt <= config_.max_retries_transport; ++attempt) {
        if (attempt > 0) {
            auto delay = std::chrono::milliseconds(static_cast<long>(250 * std::pow(2, attempt - 1)));
            std::this_thread::sleep_for(delay);
        }
        httplib::Client client(impl_->base);
        client.set_read_timeout(std::chrono::milliseconds(
            static_cast<long>(config_.timeout_seconds * 1000)));
        client.set_connection_timeout(std::chrono::milliseconds(
            static_cast<long>(config_.timeout_seconds * 1000)));
        auto res = client.Post(impl_->path, headers, payload, "application/json");
        if (!res) {
            last_error = "transport failure: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status == 401 || res->status == 403)
            throw BackendError(BackendErrorKind::Auth,
                               "authentication failed (" + std::to_string(res->status) + ")");
        if (res->status == 429) {
            last_error = "rate limited (429)";
            continue;
        }
        if (res->status >= 500) {
            last_error = "server error (" + std::to_string(res->status) + ")";
            continue;
        }
        if (res->status != 200)
            throw BackendError(BackendErrorKind::Transport,
                               "unexpected status " + std::to_string(res->status));
        try {
            auto j = nlohmann::json::parse(res->body);
            if (j.contains("choices"))
                return j["choices"].at(0)["message"]["content"].get<std::string>();
            return res->body;  // stub servers may return the body verbatim
        } catch (const nlohmann::json::exception&) {
            return res->body;
        }
    }
    if (last_error.find("rate limited") != std::string::npos)
        throw BackendError(BackendErrorKind::RateLimit, last_error);
    throw BackendError(BackendErrorKind::Transport, last_error);
}

std::string extract_code_block(const std::string& response) {
    size_t fence = response.find("```");
    if (fence != std::string::npos) {
        size_t body_start = response.find('\n', fence);
        if (body_start != std::string::npos) {
            ++body_start;
            size_t fence_end = response.find("```", body_start);
            std::string code = fence_end == std::string::npos
                                   ? response.substr(body_start)
                                   : response.substr(body_start, fence_end - body_start);
            while (!code.empty() && (code.back() == '\n' || code.back() == '\r')) code.pop_back();
            return code;
        }
    }
    // No fence: drop a leading natural-language paragraph that carries no code.
    size_t para = response.find("\n\n");
    if (para != std::string::npos) {
        std::string head = response.substr(0, para);
        if (head.find('{') == std::string::npos && head.find('}') == std::string::npos &&
            head.find(';') == std::string::npos) {
            return trim_copy(response.substr(para + 2));
        }
    }
    return trim_copy(response);
}

std::string fence_code(const std::string& code) {
    std::string body = code;
    while (!body.empty() && (body.back() == '\n' || body.back() == '\r')) body.pop_back();
    return "```c\n" + body + "\n```\n";
}

}  // namespace miggpt
