// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "svagen/chain/decompose.hpp"
#include "svagen/eval/matrix.hpp"
#include "svagen/llm/oracle.hpp"
#include "svagen/rtl/analyze.hpp"
#include "svagen/llm/transcript.hpp"
#include "svagen/prompt/run.hpp"
#include "svagen/sva/lint.hpp"
#include "svagen/sva/reorganize.hpp"

namespace svagen::pipeline {

struct RunConfig {
    std::string corpus_manifest;
    std::string chains_dir = "chains";
    llm::BackendDescriptor backend;
    std::string output_dir = "out";
    int repeats = 1;
    bool reproducible = false;
    int parallelism = 1;
    bool merge = false;
    std::string record_path;  // nonempty: record every round trip
    prompt::PromptConfig prompt;
    std::vector<std::string> sensitive_patterns = {"key", "secret", "password", "priv"};
};

struct ConfigError : Error {
    using Error::Error;
};

namespace detail {

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// per-design sideband asset list: <design>.assets next to the source
inline std::vector<std::string> sideband_assets(const std::string& design_path) {
    std::filesystem::path p(design_path);
    p.replace_extension(".assets");
    std::vector<std::string> out;
    std::ifstream in(p);
    if (!in) return out;
    std::string line;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (!t.empty() && t[0] != '#') out.push_back(t);
    }
    return out;
}

}  // namespace detail

// Loads, parses and analyzes one corpus design, including its sideband asset
// list.
struct LoadedDesign {
    rtl::DesignModel model;
    chain::DecomposeOptions decompose_opts;
};

inline LoadedDesign load_design(const std::string& path,
                                const std::vector<std::string>& sensitive_patterns,
                                Diagnostics* diags = nullptr) {
    LoadedDesign d;
    std::string source = detail::read_text_file(path);
    d.model = rtl::parse_design(source, std::nullopt, diags, path);
    d.decompose_opts.sensitive_patterns = sensitive_patterns;
    d.decompose_opts.sideband_assets = detail::sideband_assets(path);
    return d;
}

// ---------------------------------------------------------------------------
// one (design, threat) cell of Alg.-style generation: information
// sub-questions in order, per-asset codegen, lint, reorganize

struct CellOutcome {
    bool ok = false;
    bool skipped = false;          // missing design fact / refusal outcome
    std::string message;
    std::string file_text;
    std::vector<sva::SvaSnippet> snippets;
    std::vector<chain::AssetInfo> assets;
    int codegen_invocations = 0;
    Diagnostics diagnostics;
};

inline CellOutcome run_cell(const LoadedDesign& design, const chain::ThreatChain& chain,
                            llm::Backend& backend, const prompt::PromptConfig& prompt_cfg,
                            bool reproducible, const std::string& design_label) {
    CellOutcome outcome;
    const rtl::ModuleInfo& module = design.model.top();
    try {
        chain::BoundChain bound = chain::decompose(design.model, chain, design.decompose_opts);

        const chain::SubQuestion* producer = bound.chain.asset_producer();
        std::map<std::string, std::string> carried;
        prompt::AnswerRecord producer_answer;

        auto absorb = [&](const chain::SubQuestion& sq, const prompt::AnswerRecord& rec,
                          std::map<std::string, std::string>& into) {
            for (const auto& name : sq.carry_forward) {
                auto it = rec.extracted.find(name);
                if (it != rec.extracted.end()) into[name] = it->second;
            }
        };

        for (const auto& sq : bound.chain.sub_questions) {
            if (sq.index > producer->index) break;
            prompt::AnswerRecord rec =
                prompt::run_sub_question(sq, bound.facts, carried, backend, prompt_cfg);
            if (rec.status == prompt::AnswerRecord::Status::InvalidInputDetected) {
                outcome.skipped = true;
                outcome.message = "sub-question '" + sq.id + "' reported no usable input";
                return outcome;
            }
            absorb(sq, rec, carried);
            if (sq.index == producer->index) producer_answer = rec;
        }

        outcome.assets = chain::extract_assets(chain.threat, bound.module,
                                               producer_answer.extracted, carried);

        for (const auto& asset : outcome.assets) {
            std::map<std::string, std::string> local = carried;
            for (const auto& [k, v] : asset.payload) local[k] = v;
            std::string final_code;
            for (const auto& sq : bound.chain.sub_questions) {
                if (sq.index <= producer->index) continue;
                prompt::AnswerRecord rec =
                    prompt::run_sub_question(sq, bound.facts, local, backend, prompt_cfg);
                if (rec.status == prompt::AnswerRecord::Status::InvalidInputDetected) {
                    outcome.skipped = true;
                    outcome.message = "sub-question '" + sq.id + "' reported no usable input for asset '" +
                                      asset.name + "'";
                    return outcome;
                }
                absorb(sq, rec, local);
                if (sq.is_codegen) {
                    ++outcome.codegen_invocations;
                    for (const auto& field : sq.extract_schema)
                        if (field.kind == chain::FieldKind::CodeBlock)
                            final_code = rec.extracted.at(field.name);
                }
            }
            if (final_code.empty()) throw Error("codegen produced no snippet for asset " + asset.name);
            sva::LintResult linted = sva::lint_constants(final_code);
            sva::SvaSnippet snippet = sva::parse_snippet(linted.text);
            snippet.threat_tag = chain.threat;
            snippet.asset_tag = asset.name;
            outcome.snippets.push_back(std::move(snippet));
        }

        sva::ReorganizeOptions opts;
        opts.design_label = design_label;
        opts.threat_label = chain.threat;
        opts.reproducible = reproducible;
        if (!reproducible) opts.timestamp = llm::rfc3339_now();
        sva::SvaFile file =
            sva::reorganize(outcome.snippets, module, opts, &outcome.diagnostics);
        outcome.file_text = file.text;
        outcome.ok = true;
    } catch (const chain::MissingDesignFact& e) {
        outcome.skipped = true;
        outcome.message = e.what();
    } catch (const std::exception& e) {
        outcome.message = e.what();
    }
    return outcome;
}

// ---------------------------------------------------------------------------
// backend construction

class BackendSession {
public:
    BackendSession(const llm::BackendDescriptor& desc, const std::string& record_path,
                   bool reproducible)
        : desc_(desc) {
        if (desc.kind == llm::BackendKind::Replay) {
            if (desc.transcript_path.empty())
                throw ConfigError("replay backend needs --transcript");
            replay_ = std::make_shared<llm::ReplayBackend>(
                llm::load_transcript(desc.transcript_path));
        }
        if (!record_path.empty())
            recorder_ = std::make_shared<llm::TranscriptRecorder>(record_path, reproducible);
    }

    std::shared_ptr<llm::Backend> for_design(const LoadedDesign& design) {
        std::shared_ptr<llm::Backend> backend;
        switch (desc_.kind) {
        case llm::BackendKind::Oracle:
            backend = std::make_shared<llm::OracleBackend>(design.model, design.decompose_opts);
            break;
        case llm::BackendKind::Http: backend = std::make_shared<llm::HttpBackend>(desc_); break;
        case llm::BackendKind::Replay: backend = replay_; break;
        }
        if (recorder_) backend = std::make_shared<llm::RecordingBackend>(backend, recorder_);
        return backend;
    }

    std::string name() const {
        switch (desc_.kind) {
        case llm::BackendKind::Oracle: return "oracle";
        case llm::BackendKind::Http: return "http";
        case llm::BackendKind::Replay: return "replay";
        }
        return "?";
    }

private:
    llm::BackendDescriptor desc_;
    std::shared_ptr<llm::ReplayBackend> replay_;
    std::shared_ptr<llm::TranscriptRecorder> recorder_;
};

// ---------------------------------------------------------------------------
// generate: the outer loop over designs x applicable threats

struct CellReport {
    std::string design;
    std::string threat;
    bool ok = false;
    bool skipped = false;
    std::string message;
    std::string output_path;
    int assets = 0;
    int codegen_invocations = 0;
};

struct GenerateResult {
    std::vector<CellReport> cells;
    int exit_code = 0;
    Diagnostics diagnostics;
};

inline std::map<std::string, chain::ThreatChain> load_all_chains(const RunConfig& cfg,
                                                                 Diagnostics* diags = nullptr) {
    std::map<std::string, chain::ThreatChain> chains;
    for (const auto& t : chain::default_threat_models(cfg.chains_dir)) {
        if (!std::filesystem::exists(t.chain_path)) {
            if (diags)
                diags->push_back({Diagnostic::Level::Warning, t.chain_path, 0,
                                  "chain directory missing; threat disabled"});
            continue;
        }
        chains[t.id] = chain::load_chain(t, cfg.prompt.k);
    }
    return chains;
}

inline GenerateResult generate(const RunConfig& cfg) {
    GenerateResult result;
    auto corpus = eval::load_corpus_manifest(cfg.corpus_manifest);
    auto chains = load_all_chains(cfg, &result.diagnostics);
    for (const auto& entry : corpus)
        if (!std::filesystem::exists(entry.path))
            throw ConfigError("corpus design '" + entry.path + "' does not exist");
    std::filesystem::create_directories(cfg.output_dir);

    BackendSession session(cfg.backend, cfg.record_path, cfg.reproducible);

    struct Cell {
        const eval::CorpusEntry* entry;
        std::string threat;
    };
    std::vector<Cell> cells;
    for (const auto& entry : corpus)
        for (const auto& threat : entry.threats) cells.push_back({&entry, threat});

    // designs parsed once, shared read-only across workers
    std::map<std::string, LoadedDesign> designs;
    for (const auto& entry : corpus)
        if (!designs.count(entry.path))
            designs.emplace(entry.path,
                            load_design(entry.path, cfg.sensitive_patterns, &result.diagnostics));

    std::vector<CellReport> reports(cells.size());
    std::vector<CellOutcome> outcomes(cells.size());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            const Cell& cell = cells[i];
            CellReport& rep = reports[i];
            rep.design = cell.entry->name;
            rep.threat = cell.threat;
            auto chain_it = chains.find(cell.threat);
            if (chain_it == chains.end()) {
                rep.message = "no chain for threat '" + cell.threat + "'";
                continue;
            }
            const LoadedDesign& design = designs.at(cell.entry->path);
            auto backend = session.for_design(design);
            CellOutcome outcome = run_cell(design, chain_it->second, *backend, cfg.prompt,
                                           cfg.reproducible, cell.entry->name);
            rep.ok = outcome.ok;
            rep.skipped = outcome.skipped;
            rep.message = outcome.message;
            rep.assets = static_cast<int>(outcome.assets.size());
            rep.codegen_invocations = outcome.codegen_invocations;
            outcomes[i] = std::move(outcome);
        }
    };
    int jobs = std::max(1, cfg.parallelism);
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    if (cfg.merge) {
        // one merged file per design, matching the single final reorganize of
        // the reference flow
        std::map<std::string, std::vector<sva::SvaSnippet>> merged;
        std::map<std::string, std::vector<std::string>> merged_threats;
        for (size_t i = 0; i < cells.size(); ++i) {
            if (!outcomes[i].ok) continue;
            auto& bucket = merged[cells[i].entry->path];
            bucket.insert(bucket.end(), outcomes[i].snippets.begin(), outcomes[i].snippets.end());
            merged_threats[cells[i].entry->path].push_back(cells[i].threat);
        }
        for (const auto& entry : corpus) {
            auto it = merged.find(entry.path);
            if (it == merged.end()) continue;
            sva::ReorganizeOptions opts;
            opts.design_label = entry.name;
            opts.threat_label = join(merged_threats[entry.path], "+");
            opts.reproducible = cfg.reproducible;
            if (!cfg.reproducible) opts.timestamp = llm::rfc3339_now();
            sva::SvaFile file = sva::reorganize(it->second, designs.at(entry.path).model.top(),
                                                opts, &result.diagnostics);
            std::string path = cfg.output_dir + "/" + entry.name + ".sva.sv";
            std::ofstream out(path, std::ios::binary);
            out << file.text;
            for (size_t i = 0; i < cells.size(); ++i)
                if (cells[i].entry->path == entry.path && outcomes[i].ok)
                    reports[i].output_path = path;
        }
    } else {
        for (size_t i = 0; i < cells.size(); ++i) {
            if (!outcomes[i].ok) continue;
            std::string path = cfg.output_dir + "/" + cells[i].entry->name + "." +
                               cells[i].threat + ".sva.sv";
            std::ofstream out(path, std::ios::binary);
            out << outcomes[i].file_text;
            reports[i].output_path = path;
        }
    }

    result.cells = std::move(reports);
    for (const auto& rep : result.cells)
        if (!rep.ok) result.exit_code = 1;
    return result;
}

// ---------------------------------------------------------------------------
// evaluate: score + consistency matrix over the corpus

struct EvaluateResult {
    eval::MatrixResult matrix;
    std::string table;
    std::string csv;
    int exit_code = 0;
};

inline EvaluateResult evaluate(const RunConfig& cfg) {
    EvaluateResult result;
    auto corpus = eval::load_corpus_manifest(cfg.corpus_manifest);
    Diagnostics diags;
    auto chains = load_all_chains(cfg, &diags);

    std::map<std::string, LoadedDesign> designs;
    for (const auto& entry : corpus)
        if (!designs.count(entry.path))
            designs.emplace(entry.path, load_design(entry.path, cfg.sensitive_patterns, &diags));

    // replay gets one session per run index so each repeat replays the same
    // transcript from the start
    std::map<int, std::shared_ptr<BackendSession>> sessions;
    auto session_for_run = [&](int run) -> BackendSession& {
        auto it = sessions.find(cfg.backend.kind == llm::BackendKind::Replay ? run : 0);
        if (it != sessions.end()) return *it->second;
        int key = cfg.backend.kind == llm::BackendKind::Replay ? run : 0;
        sessions[key] = std::make_shared<BackendSession>(cfg.backend, "", cfg.reproducible);
        return *sessions[key];
    };

    eval::CellRunner run_cell_fn = [&](const eval::CorpusEntry& entry, const std::string& threat,
                                       int run) -> std::string {
        auto chain_it = chains.find(threat);
        if (chain_it == chains.end()) throw Error("no chain for threat '" + threat + "'");
        const LoadedDesign& design = designs.at(entry.path);
        auto backend = session_for_run(run).for_design(design);
        CellOutcome outcome = run_cell(design, chain_it->second, *backend, cfg.prompt,
                                       cfg.reproducible, entry.name);
        if (!outcome.ok) throw Error(outcome.message.empty() ? "cell failed" : outcome.message);
        return outcome.file_text;
    };
    eval::GoldenProvider golden_fn = [&](const eval::CorpusEntry& entry,
                                         const std::string& threat) {
        const LoadedDesign& design = designs.at(entry.path);
        return eval::golden_assets(design.model, threat, design.decompose_opts);
    };

    BackendSession naming(cfg.backend, "", cfg.reproducible);
    result.matrix = eval::run_matrix(corpus, naming.name(), cfg.repeats, run_cell_fn, golden_fn);
    result.matrix.diagnostics.insert(result.matrix.diagnostics.end(), diags.begin(), diags.end());
    result.table = eval::render_score_table(result.matrix);
    result.csv = eval::render_score_csv(result.matrix);
    if (!result.matrix.failures.empty()) result.exit_code = 1;

    if (!cfg.output_dir.empty()) {
        std::filesystem::create_directories(cfg.output_dir);
        std::ofstream csv(cfg.output_dir + "/scores.csv", std::ios::binary);
        csv << result.csv;
        std::ofstream table(cfg.output_dir + "/scores.txt", std::ios::binary);
        table << result.table;
    }
    return result;
}

// ---------------------------------------------------------------------------
// validate: chains + corpus + dry renders, diagnostics only

struct ValidateResult {
    Diagnostics diagnostics;
    int exit_code = 0;
};

inline ValidateResult validate(const RunConfig& cfg) {
    ValidateResult result;
    auto& diags = result.diagnostics;

    std::map<std::string, chain::ThreatChain> chains;
    for (const auto& t : chain::default_threat_models(cfg.chains_dir)) {
        if (!std::filesystem::exists(t.chain_path)) {
            diags.push_back({Diagnostic::Level::Warning, t.chain_path, 0,
                             "chain directory missing; threat disabled"});
            continue;
        }
        try {
            chain::ThreatChain c = chain::parse_chain_dir(t.chain_path, t.id);
            Diagnostics problems = chain::validate_chain(c, cfg.prompt.k);
            diags.insert(diags.end(), problems.begin(), problems.end());
            if (problems.empty()) chains[t.id] = std::move(c);
        } catch (const std::exception& e) {
            diags.push_back({Diagnostic::Level::Error, t.chain_path, 0, e.what()});
        }
    }

    std::vector<eval::CorpusEntry> corpus;
    try {
        corpus = eval::load_corpus_manifest(cfg.corpus_manifest);
    } catch (const std::exception& e) {
        diags.push_back({Diagnostic::Level::Error, cfg.corpus_manifest, 0, e.what()});
    }

    for (const auto& entry : corpus) {
        LoadedDesign design;
        try {
            design = load_design(entry.path, cfg.sensitive_patterns, &diags);
        } catch (const std::exception& e) {
            diags.push_back({Diagnostic::Level::Error, entry.path, 0, e.what()});
            continue;
        }
        for (const auto& threat : entry.threats) {
            auto it = chains.find(threat);
            if (it == chains.end()) {
                diags.push_back({Diagnostic::Level::Error, entry.path, 0,
                                 "manifest names unknown threat '" + threat + "'"});
                continue;
            }
            try {
                chain::BoundChain bound =
                    chain::decompose(design.model, it->second, design.decompose_opts);
                // dry-render every sub-question with synthesized carries
                std::map<std::string, std::string> carried;
                for (const auto& sq : bound.chain.sub_questions) {
                    try {
                        prompt::render_prompt(sq, bound.facts, carried, cfg.prompt);
                    } catch (const prompt::UnresolvedPlaceholder& e) {
                        diags.push_back({Diagnostic::Level::Error, threat + "/" + sq.id, sq.index,
                                         e.what()});
                    }
                    for (const auto& name : sq.carry_forward)
                        carried[name] = "<" + name + ">";
                }
            } catch (const chain::MissingDesignFact& e) {
                diags.push_back({Diagnostic::Level::Info, entry.path, 0,
                                 std::string(e.what()) + " (threat '" + threat +
                                     "' not applicable to this design)"});
            }
        }
    }

    for (const auto& d : diags)
        if (d.level != Diagnostic::Level::Info) result.exit_code = 1;
    return result;
}

}  // namespace svagen::pipeline
