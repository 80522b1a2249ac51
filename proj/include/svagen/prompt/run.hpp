// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "svagen/llm/backend.hpp"
#include "svagen/prompt/engine.hpp"

namespace svagen::prompt {

struct ExtractionExhausted : Error {
    std::string sub_question_id;
    ExtractionExhausted(const std::string& sq_id, int attempts)
        : Error("extraction failed for '" + sq_id + "' after " + std::to_string(attempts) +
                " attempts"),
          sub_question_id(sq_id) {}
};

inline constexpr const char* kCorrectiveSentence =
    "Answer strictly in the `field: value` format shown in the examples.";

// Render, submit, extract. Malformed answers are retried with an appended
// corrective sentence up to max_retries times; backend errors pass through.
inline AnswerRecord run_sub_question(const chain::SubQuestion& sq,
                                     const std::map<std::string, std::string>& bound_facts,
                                     const std::map<std::string, std::string>& carried,
                                     llm::Backend& backend, const PromptConfig& cfg = {}) {
    PromptBundle bundle = render_prompt(sq, bound_facts, carried, cfg);
    int total = 1 + cfg.max_retries;
    for (int attempt = 1; attempt <= total; ++attempt) {
        std::string answer = backend.submit(bundle);
        AnswerRecord rec = extract_info(answer, sq.extract_schema);
        rec.sub_question_id = sq.id;
        rec.attempts = attempt;
        if (rec.status != AnswerRecord::Status::ExtractionFailed) return rec;
        if (attempt < total) {
            bundle.rendered_text += std::string("\n\n") + kCorrectiveSentence;
            bundle.fingerprint = fingerprint_of(bundle.rendered_text);
        }
    }
    throw ExtractionExhausted(sq.id, total);
}

}  // namespace svagen::prompt
