// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <fstream>
#include <mutex>
#include <string>
#include <vector>

#include "svagen/llm/backend.hpp"

#include <json.hpp>

namespace svagen::llm {

struct TranscriptEntry {
    std::string fingerprint;  // hash of prompt_text
    std::string prompt_text;
    std::string answer_text;
    std::string timestamp;    // RFC 3339
    bool operator==(const TranscriptEntry&) const = default;
};

struct TranscriptCorrupt : Error {
    int line;
    TranscriptCorrupt(int line_, const std::string& msg)
        : Error("transcript corrupt at line " + std::to_string(line_) + ": " + msg),
          line(line_) {}
};

struct ReplayMiss : Error {
    std::string fingerprint;
    explicit ReplayMiss(const std::string& fp)
        : Error("no transcript entry for prompt fingerprint " + fp), fingerprint(fp) {}
};

inline std::string rfc3339_now() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline nlohmann::json to_json(const TranscriptEntry& e) {
    return nlohmann::json{{"fingerprint", e.fingerprint},
                          {"prompt_text", e.prompt_text},
                          {"answer_text", e.answer_text},
                          {"timestamp", e.timestamp}};
}

// One JSON object per line, append-only.
inline void record_transcript(const std::string& path,
                              const std::vector<TranscriptEntry>& entries, bool append = true) {
    std::ofstream out(path, append ? std::ios::app : std::ios::trunc);
    if (!out) throw Error("cannot open transcript '" + path + "' for writing");
    for (const auto& e : entries) out << to_json(e).dump() << "\n";
}

// Loads and validates: each line must be a JSON object whose fingerprint is
// the hash of its prompt_text. The fingerprint binds the prompt, not the
// answer.
inline std::vector<TranscriptEntry> load_transcript(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open transcript '" + path + "'");
    std::vector<TranscriptEntry> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded()) throw TranscriptCorrupt(lineno, "not a JSON object");
        TranscriptEntry e;
        try {
            e.fingerprint = j.at("fingerprint").get<std::string>();
            e.prompt_text = j.at("prompt_text").get<std::string>();
            e.answer_text = j.at("answer_text").get<std::string>();
            e.timestamp = j.value("timestamp", "");
        } catch (const nlohmann::json::exception& ex) {
            throw TranscriptCorrupt(lineno, ex.what());
        }
        if (e.fingerprint != fingerprint_of(e.prompt_text))
            throw TranscriptCorrupt(lineno, "fingerprint does not match prompt_text");
        out.push_back(std::move(e));
    }
    return out;
}

// Answers prompts from a recorded transcript. Lookup is keyed by fingerprint
// (order-independent across concurrent cells); unmatched prompts fall back to
// the next unconsumed entry in order unless strict.
class ReplayBackend : public Backend {
public:
    explicit ReplayBackend(std::vector<TranscriptEntry> entries, bool strict = false)
        : entries_(std::move(entries)), consumed_(entries_.size(), false), strict_(strict) {}

    static ReplayBackend from_file(const std::string& path, bool strict = false) {
        return ReplayBackend(load_transcript(path), strict);
    }

    std::string name() const override { return "replay"; }

    std::string submit(const prompt::PromptBundle& bundle) override {
        std::lock_guard<std::mutex> lock(mu_);
        for (size_t i = 0; i < entries_.size(); ++i)
            if (!consumed_[i] && entries_[i].fingerprint == bundle.fingerprint) {
                consumed_[i] = true;
                return entries_[i].answer_text;
            }
        if (strict_) throw ReplayMiss(bundle.fingerprint);
        for (size_t i = 0; i < entries_.size(); ++i)
            if (!consumed_[i]) {
                consumed_[i] = true;
                return entries_[i].answer_text;
            }
        throw BackendError("transcript underrun");
    }

private:
    std::vector<TranscriptEntry> entries_;
    std::vector<bool> consumed_;
    bool strict_;
    std::mutex mu_;
};

// Serializes appends to one transcript file; shared by every recording
// wrapper of a run. The file is truncated once, when the recorder is made.
class TranscriptRecorder {
public:
    TranscriptRecorder(std::string path, bool fixed_timestamp)
        : path_(std::move(path)), fixed_timestamp_(fixed_timestamp) {
        std::ofstream reset(path_, std::ios::trunc);
        if (!reset) throw Error("cannot open transcript '" + path_ + "' for writing");
    }

    void append(const std::string& fingerprint, const std::string& prompt_text,
                const std::string& answer_text) {
        TranscriptEntry e{fingerprint, prompt_text, answer_text,
                          fixed_timestamp_ ? "1970-01-01T00:00:00Z" : rfc3339_now()};
        std::lock_guard<std::mutex> lock(mu_);
        record_transcript(path_, {e});
    }

    const std::string& path() const { return path_; }

private:
    std::string path_;
    bool fixed_timestamp_;
    std::mutex mu_;
};

// Wraps another backend and appends every round trip to the shared recorder.
class RecordingBackend : public Backend {
public:
    RecordingBackend(std::shared_ptr<Backend> inner, std::shared_ptr<TranscriptRecorder> recorder)
        : inner_(std::move(inner)), recorder_(std::move(recorder)) {}

    std::string name() const override { return "record(" + inner_->name() + ")"; }

    std::string submit(const prompt::PromptBundle& bundle) override {
        std::string answer = inner_->submit(bundle);
        recorder_->append(bundle.fingerprint, bundle.rendered_text, answer);
        return answer;
    }

private:
    std::shared_ptr<Backend> inner_;
    std::shared_ptr<TranscriptRecorder> recorder_;
};

}  // namespace svagen::llm
