// SPDX-License-Identifier: Apache-2.0
//
// svagen: security-assertion generation for small Verilog designs.
// Subcommands: generate, evaluate, validate, sofi, lint.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "svagen/pipeline/run.hpp"
#include "svagen/sofi/bridge.hpp"

using namespace svagen;

namespace {

void print_diags(const Diagnostics& diags) {
    for (const auto& d : diags) std::cerr << d.str() << "\n";
}

llm::BackendKind parse_backend(const std::string& name) {
    if (name == "http") return llm::BackendKind::Http;
    if (name == "oracle") return llm::BackendKind::Oracle;
    if (name == "replay") return llm::BackendKind::Replay;
    throw pipeline::ConfigError("unknown backend '" + name + "'");
}

int cmd_generate(const pipeline::RunConfig& cfg) {
    auto result = pipeline::generate(cfg);
    print_diags(result.diagnostics);
    for (const auto& cell : result.cells) {
        if (cell.ok) {
            std::cout << cell.design << "." << cell.threat << ": " << cell.assets
                      << " asset(s), " << cell.codegen_invocations << " codegen call(s) -> "
                      << cell.output_path << "\n";
        } else {
            std::cerr << "ERROR " << cell.design << "." << cell.threat << ": "
                      << (cell.skipped ? "skipped: " : "failed: ") << cell.message << "\n";
        }
    }
    return result.exit_code;
}

int cmd_evaluate(const pipeline::RunConfig& cfg) {
    auto result = pipeline::evaluate(cfg);
    print_diags(result.matrix.diagnostics);
    std::cout << result.table;
    if (!cfg.output_dir.empty())
        std::cout << "reports written to " << cfg.output_dir << "/scores.{csv,txt}\n";
    return result.exit_code;
}

int cmd_validate(const pipeline::RunConfig& cfg) {
    auto result = pipeline::validate(cfg);
    print_diags(result.diagnostics);
    std::cout << (result.exit_code == 0 ? "validate: ok\n" : "validate: problems found\n");
    return result.exit_code;
}

int cmd_lint(const std::vector<std::string>& files, bool in_place) {
    int total = 0;
    for (const auto& path : files) {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            std::cerr << "ERROR " << path << ":0: cannot open\n";
            return 2;
        }
        std::ostringstream ss;
        ss << in.rdbuf();
        auto result = sva::lint_constants(ss.str());
        for (const auto& r : result.repairs) {
            std::cerr << path << ": offset " << r.position << ": '" << r.original << "' -> '"
                      << r.fixed << "'\n";
            ++total;
        }
        if (in_place) {
            std::ofstream out(path, std::ios::binary | std::ios::trunc);
            out << result.text;
        } else {
            std::cout << result.text;
        }
    }
    std::cerr << total << " repair(s)\n";
    return 0;
}

int cmd_sofi(const std::string& property, const std::string& key_signal,
             const std::string& ref_signal, const std::string& byte_order,
             std::string clock, int round, const std::string& out_path) {
    sofi::SofiConfig cfg;
    cfg.key_signal = key_signal;
    cfg.ref_signal = ref_signal;
    cfg.round = round;
    cfg.byte_order = byte_order == "lsb" ? sofi::ByteOrder::LsbFirst : sofi::ByteOrder::MsbFirst;
    if (clock.empty()) {
        size_t dot = key_signal.find('.');
        clock = dot == std::string::npos ? "clk" : key_signal.substr(0, dot) + ".clk";
    }
    cfg.clock = clock;

    sofi::SofiProperty prop;
    if (property == "sp3.1" || property == "SP3.1")
        prop = sofi::SofiProperty::SP3_1;
    else if (property == "sp3.2" || property == "SP3.2")
        prop = sofi::SofiProperty::SP3_2;
    else {
        std::cerr << "ERROR -:0: --property must be sp3.1 or sp3.2\n";
        return 2;
    }

    auto snippets = sofi::emit_sofi_assertions(prop, cfg);
    std::string text;
    for (const auto& s : snippets) text += sva::serialize(s) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        out << text;
        std::cout << snippets.size() << " snippet(s) -> " << out_path << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"security SVA generation via threat-model sub-question chains"};
    app.require_subcommand(1);

    pipeline::RunConfig cfg;
    std::string backend_name = "oracle";

    app.add_option("--backend", backend_name, "http|oracle|replay")->capture_default_str();
    app.add_option("--endpoint", cfg.backend.endpoint, "chat-completion endpoint (http)");
    app.add_option("--model", cfg.backend.model_name, "model name for the http backend");
    app.add_option("--auth-env", cfg.backend.auth_env,
                   "environment variable holding the bearer token");
    app.add_option("--temperature", cfg.backend.temperature, "sampling temperature (default 0)");
    app.add_option("--transcript", cfg.backend.transcript_path, "transcript file for replay");
    app.add_option("--chains", cfg.chains_dir, "chain template directory")->capture_default_str();
    app.add_option("--corpus", cfg.corpus_manifest, "corpus manifest file");
    app.add_option("--out", cfg.output_dir, "output directory")->capture_default_str();
    app.add_option("--repeats", cfg.repeats, "repeated runs per cell")->capture_default_str();
    app.add_flag("--reproducible", cfg.reproducible, "suppress timestamps in outputs");
    app.add_option("--jobs", cfg.parallelism, "parallel cell workers")->capture_default_str();
    app.add_flag("--merge", cfg.merge, "merge all threats of a design into one file");
    app.add_option("--record", cfg.record_path, "record every round trip to this transcript");

    auto* gen = app.add_subcommand("generate", "emit assertion files for the corpus");
    auto* eva = app.add_subcommand("evaluate", "score + consistency matrix over the corpus");
    auto* val = app.add_subcommand("validate", "check chains and corpus without a backend");

    auto* lint = app.add_subcommand("lint", "repair trailing-quote constants in files");
    std::vector<std::string> lint_files;
    bool lint_in_place = false;
    lint->add_option("files", lint_files, "files to lint")->required();
    lint->add_flag("--in-place", lint_in_place, "rewrite files instead of printing");

    auto* sofi_cmd = app.add_subcommand("sofi", "emit AES round-key fault-resistance assertions");
    std::string sofi_property, sofi_key, sofi_ref, sofi_order = "msb", sofi_clock, sofi_out;
    int sofi_round = 9;
    sofi_cmd->add_option("--property", sofi_property, "sp3.1|sp3.2")->required();
    sofi_cmd->add_option("--key-signal", sofi_key, "128-bit round-key signal")->required();
    sofi_cmd->add_option("--ref-signal", sofi_ref, "golden reference signal")->required();
    sofi_cmd->add_option("--byte-order", sofi_order, "msb|lsb")->capture_default_str();
    sofi_cmd->add_option("--clock", sofi_clock, "sense clock (default <prefix>.clk)");
    sofi_cmd->add_option("--round", sofi_round, "AES round")->capture_default_str();
    sofi_cmd->add_option("--out", sofi_out, "write snippets to a file");

    CLI11_PARSE(app, argc, argv);

    try {
        cfg.backend.kind = parse_backend(backend_name);
        if (gen->parsed() || eva->parsed() || val->parsed()) {
            if (cfg.corpus_manifest.empty())
                throw pipeline::ConfigError("--corpus <manifest> is required");
        }
        if (gen->parsed()) return cmd_generate(cfg);
        if (eva->parsed()) return cmd_evaluate(cfg);
        if (val->parsed()) return cmd_validate(cfg);
        if (lint->parsed()) return cmd_lint(lint_files, lint_in_place);
        if (sofi_cmd->parsed())
            return cmd_sofi(sofi_property, sofi_key, sofi_ref, sofi_order, sofi_clock,
                            sofi_round, sofi_out);
    } catch (const pipeline::ConfigError& e) {
        std::cerr << "ERROR -:0: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "ERROR -:0: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
