// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "svagen/eval/consistency.hpp"
#include "svagen/eval/score.hpp"

namespace svagen::eval {

// Corpus manifest: one design per line, `path <tab> comma-separated threat ids`.
struct CorpusEntry {
    std::string path;     // resolved against the manifest directory
    std::string name;     // file stem
    std::vector<std::string> threats;
};

inline std::vector<CorpusEntry> load_corpus_manifest(const std::string& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) throw Error("cannot open corpus manifest '" + manifest_path + "'");
    std::filesystem::path base = std::filesystem::path(manifest_path).parent_path();
    std::vector<CorpusEntry> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        size_t tab = line.find('\t');
        if (tab == std::string::npos)
            throw Error(manifest_path + ":" + std::to_string(lineno) +
                        ": expected 'path<TAB>threats'");
        CorpusEntry e;
        std::filesystem::path p = trim(line.substr(0, tab));
        e.path = p.is_absolute() ? p.string() : (base / p).string();
        e.name = p.stem().string();
        e.threats = split_list(line.substr(tab + 1));
        if (e.threats.empty())
            throw Error(manifest_path + ":" + std::to_string(lineno) + ": no threats listed");
        out.push_back(std::move(e));
    }
    return out;
}

struct MatrixCellError {
    std::string design;
    std::string threat;
    std::string message;
};

struct MatrixResult {
    std::vector<ScoreReport> scores;
    std::vector<ConsistencyReport> consistency;
    std::vector<MatrixCellError> failures;
    Diagnostics diagnostics;
};

// One generation run for a (design, threat) cell; run_index distinguishes
// repeats. Returns the emitted file text.
using CellRunner = std::function<std::string(const CorpusEntry&, const std::string& threat,
                                             int run_index)>;

using GoldenProvider =
    std::function<std::vector<chain::AssetInfo>(const CorpusEntry&, const std::string& threat)>;

// Full cross-product over the manifest, respecting per-design threat flags.
// Cell failures are collected, not fatal.
inline MatrixResult run_matrix(const std::vector<CorpusEntry>& corpus,
                               const std::string& backend_name, int repeats,
                               const CellRunner& run_cell, const GoldenProvider& golden) {
    MatrixResult result;
    if (corpus.empty()) {
        result.diagnostics.push_back(
            {Diagnostic::Level::Warning, "corpus", 0, "empty corpus; nothing to evaluate"});
        return result;
    }
    for (const auto& entry : corpus) {
        for (const auto& threat : entry.threats) {
            try {
                std::vector<std::string> outputs;
                for (int run = 0; run < repeats; ++run)
                    outputs.push_back(run_cell(entry, threat, run));
                ScoreReport rep = score(outputs.front(), golden(entry, threat));
                rep.design = entry.name;
                rep.threat = threat;
                rep.backend = backend_name;
                result.scores.push_back(rep);
                if (repeats >= 2) {
                    ConsistencyReport c = classify_consistency(outputs);
                    c.design = entry.name;
                    c.threat = threat;
                    result.consistency.push_back(std::move(c));
                } else {
                    result.diagnostics.push_back({Diagnostic::Level::Info, entry.name, 0,
                                                  "repeats=1; consistency skipped"});
                }
            } catch (const std::exception& e) {
                result.failures.push_back({entry.name, threat, e.what()});
            }
        }
    }
    return result;
}

// ---------------------------------------------------------------------------
// report rendering

inline std::string render_score_table(const MatrixResult& result) {
    std::ostringstream out;
    auto pad = [](const std::string& s, size_t w) {
        return s.size() >= w ? s : s + std::string(w - s.size(), ' ');
    };
    auto num = [](double v) {
        std::ostringstream ss;
        ss << v;
        return ss.str();
    };
    out << pad("design", 18) << pad("threat", 18) << pad("backend", 10)
        << pad("functionality", 14) << pad("syntax", 8) << pad("assets", 8)
        << pad("snippets", 9) << "consistency\n";
    for (const auto& s : result.scores) {
        std::string consistency = "-";
        for (const auto& c : result.consistency)
            if (c.design == s.design && c.threat == s.threat)
                consistency = to_string(c.classification);
        out << pad(s.design, 18) << pad(s.threat, 18) << pad(s.backend, 10)
            << pad(num(s.functionality), 14) << pad(num(s.syntax), 8)
            << pad(std::to_string(s.matched_assets) + "/" + std::to_string(s.expected_assets), 8)
            << pad(std::to_string(s.snippet_count), 9) << consistency << "\n";
    }
    for (const auto& f : result.failures)
        out << pad(f.design, 18) << pad(f.threat, 18) << "FAILED: " << f.message << "\n";
    return out.str();
}

inline std::string render_score_csv(const MatrixResult& result) {
    std::ostringstream out;
    out << "design,threat,backend,functionality,syntax,expected_assets,matched_assets,"
           "snippet_count,consistency\n";
    for (const auto& s : result.scores) {
        std::string consistency;
        for (const auto& c : result.consistency)
            if (c.design == s.design && c.threat == s.threat)
                consistency = to_string(c.classification);
        out << s.design << ',' << s.threat << ',' << s.backend << ',' << s.functionality << ','
            << s.syntax << ',' << s.expected_assets << ',' << s.matched_assets << ','
            << s.snippet_count << ',' << consistency << "\n";
    }
    return out.str();
}

}  // namespace svagen::eval
