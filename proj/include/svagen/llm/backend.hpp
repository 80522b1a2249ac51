// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdlib>
#include <memory>
#include <string>

#include "svagen/common.hpp"
#include "svagen/prompt/engine.hpp"

#include <json.hpp>

namespace svagen::llm {

struct BackendError : Error {
    using Error::Error;
};

enum class BackendKind { Http, Oracle, Replay };

struct BackendDescriptor {
    BackendKind kind = BackendKind::Oracle;
    std::string endpoint;         // http only
    std::string model_name;
    std::string auth_env;         // env var holding the bearer token
    std::string transcript_path;  // replay only
    double temperature = 0.0;
};

class Backend {
public:
    virtual ~Backend() = default;
    virtual std::string submit(const prompt::PromptBundle& bundle) = 0;
    virtual std::string name() const = 0;
};

// One chat-completion round trip per sub-question: the request carries the
// model name, temperature and a single user message; the first choice text is
// the answer. Carry-forward replaces conversational state, so no multi-turn
// memory is kept.
class HttpBackend : public Backend {
public:
    explicit HttpBackend(BackendDescriptor desc) : desc_(std::move(desc)) {
        if (desc_.endpoint.empty()) throw BackendError("http backend needs an endpoint");
    }

    std::string name() const override { return "http"; }

    std::string submit(const prompt::PromptBundle& bundle) override;

private:
    BackendDescriptor desc_;
};

inline nlohmann::json chat_request_body(const BackendDescriptor& desc,
                                        const std::string& prompt_text) {
    return nlohmann::json{
        {"model", desc.model_name},
        {"temperature", desc.temperature},
        {"messages", nlohmann::json::array({nlohmann::json{{"role", "user"},
                                                           {"content", prompt_text}}})},
    };
}

inline std::string parse_chat_response(const std::string& body) {
    nlohmann::json j = nlohmann::json::parse(body, nullptr, false);
    if (j.is_discarded()) throw BackendError("backend returned malformed JSON");
    try {
        const auto& choice = j.at("choices").at(0);
        if (choice.contains("message")) return choice.at("message").at("content").get<std::string>();
        return choice.at("text").get<std::string>();
    } catch (const nlohmann::json::exception&) {
        throw BackendError("backend response lacks choices[0].message.content");
    }
}

}  // namespace svagen::llm

// httplib pulled in here so only gateway users pay for it
#include <httplib.h>

namespace svagen::llm {

inline std::string HttpBackend::submit(const prompt::PromptBundle& bundle) {
    // endpoint: http://host[:port][/path]
    std::string url = desc_.endpoint;
    if (starts_with(url, "https://"))
        throw BackendError("https endpoints are not supported by this build; use http");
    if (!starts_with(url, "http://")) throw BackendError("endpoint must start with http://");
    std::string rest = url.substr(7);
    size_t slash = rest.find('/');
    std::string hostport = slash == std::string::npos ? rest : rest.substr(0, slash);
    std::string path = slash == std::string::npos ? "/" : rest.substr(slash);

    httplib::Headers headers;
    if (!desc_.auth_env.empty()) {
        const char* token = std::getenv(desc_.auth_env.c_str());
        if (!token || !*token)
            throw BackendError("missing credential: environment variable '" + desc_.auth_env +
                               "' is unset");
        headers.emplace("Authorization", std::string("Bearer ") + token);
    }

    httplib::Client client(std::string("http://") + hostport);
    client.set_connection_timeout(10);
    client.set_read_timeout(120);
    auto res = client.Post(path, headers, chat_request_body(desc_, bundle.rendered_text).dump(),
                           "application/json");
    if (!res) throw BackendError("http request failed: " + httplib::to_string(res.error()));
    if (res->status != 200)
        throw BackendError("http status " + std::to_string(res->status) + " from backend");
    return parse_chat_response(res->body);
}

}  // namespace svagen::llm
