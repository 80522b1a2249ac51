// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "svagen/rtl/design.hpp"
#include "svagen/sva/snippet.hpp"

namespace svagen::sva {

struct UnresolvedSignal : Error {
    std::string signal;
    explicit UnresolvedSignal(const std::string& name)
        : Error("snippet references unknown signal '" + name + "'"), signal(name) {}
};

struct SvaFile {
    std::string checker_module_name;
    std::string target_module;
    std::vector<rtl::PortInfo> port_mirror;
    std::string clock;
    std::string reset;
    std::vector<SvaSnippet> snippets;
    std::string bind_stmt;
    std::string text;
};

struct ReorganizeOptions {
    std::string tool_name = "svagen";
    std::string design_label;   // defaults to the target module name
    std::string threat_label;
    bool reproducible = false;
    std::string timestamp;      // RFC 3339; ignored under reproducible
};

namespace detail {

// dotted identifiers appearing in an expression text
inline std::vector<std::string> dotted_names(std::string_view expr) {
    SvaScanner scanner(expr);
    const auto& toks = scanner.tokens();
    using Kind = SvaToken::Kind;
    std::vector<std::string> out;
    for (size_t i = 0; i + 2 < toks.size(); ++i) {
        if (toks[i].kind == Kind::Word && toks[i + 1].kind == Kind::Punct &&
            toks[i + 1].text == "." && toks[i + 2].kind == Kind::Word)
            out.push_back(toks[i].text + "." + toks[i + 2].text);
    }
    return out;
}

inline void indent_into(std::string& out, std::string_view block, int spaces) {
    std::string pad(static_cast<size_t>(spaces), ' ');
    size_t start = 0;
    while (start <= block.size()) {
        size_t nl = block.find('\n', start);
        std::string_view line =
            nl == std::string_view::npos ? block.substr(start) : block.substr(start, nl - start);
        if (!line.empty()) {
            out += pad;
            out += line;
        }
        out += '\n';
        if (nl == std::string_view::npos) break;
        start = nl + 1;
    }
}

}  // namespace detail

// Assembles parsed snippets into a complete checker file: header comment,
// checker module mirroring the target ports as inputs, snippets sorted by
// (threat, asset, property_name), and a bind statement. Deterministic:
// identical inputs give identical bytes (timestamp suppressed when
// reproducible).
inline SvaFile reorganize(std::vector<SvaSnippet> snippets, const rtl::ModuleInfo& module,
                          const ReorganizeOptions& opts = {}, Diagnostics* diags = nullptr) {
    SvaFile file;
    file.target_module = module.name;
    file.checker_module_name = module.name + "_sva_checker";
    file.port_mirror = module.ports;
    if (module.clock) file.clock = *module.clock;
    if (module.reset) file.reset = module.reset->signal;

    // resolve hierarchical references against the target module
    std::set<std::string> names_seen, labels_seen;
    for (const auto& s : snippets) {
        auto resolve = [&](const std::string& dotted) {
            size_t dot = dotted.find('.');
            std::string prefix = dotted.substr(0, dot);
            std::string base = dotted.substr(dot + 1);
            if (prefix == module.name && !module.has_signal(base))
                throw UnresolvedSignal(base);
        };
        if (s.sense_signal.find('.') != std::string::npos) {
            resolve(s.sense_signal);
        } else if (!module.has_signal(s.sense_signal)) {
            throw UnresolvedSignal(s.sense_signal);
        }
        for (const std::string* expr : {&s.disable_iff, &s.left_part, &s.right_part})
            for (const auto& dotted : detail::dotted_names(*expr)) resolve(dotted);
        if (!names_seen.insert(s.property_name).second)
            throw Error("duplicate property name '" + s.property_name + "'");
        if (!labels_seen.insert(s.assert_label).second)
            throw Error("duplicate assert label '" + s.assert_label + "'");
    }

    std::stable_sort(snippets.begin(), snippets.end(),
                     [](const SvaSnippet& a, const SvaSnippet& b) {
                         if (a.threat_tag != b.threat_tag) return a.threat_tag < b.threat_tag;
                         if (a.asset_tag != b.asset_tag) return a.asset_tag < b.asset_tag;
                         return a.property_name < b.property_name;
                     });
    file.snippets = std::move(snippets);

    if (file.snippets.empty() && diags)
        diags->push_back({Diagnostic::Level::Warning, module.name, 0,
                          "no snippets; emitting an empty checker"});

    std::string& out = file.text;
    out += "// Generated by " + opts.tool_name + "\n";
    out += "// target: " +
           (opts.design_label.empty() ? module.name : opts.design_label);
    if (!opts.threat_label.empty()) out += "  threat: " + opts.threat_label;
    out += "\n";
    if (!opts.reproducible && !opts.timestamp.empty())
        out += "// generated-at: " + opts.timestamp + "\n";
    out += "module " + file.checker_module_name + "(\n";
    for (size_t i = 0; i < file.port_mirror.size(); ++i) {
        const auto& p = file.port_mirror[i];
        out += "  input ";
        if (p.width > 1) out += "[" + std::to_string(p.width - 1) + ":0] ";
        out += p.name;
        out += i + 1 < file.port_mirror.size() ? ",\n" : "\n";
    }
    out += ");\n\n";
    for (const auto& s : file.snippets) {
        detail::indent_into(out, s.source_text.empty() ? serialize(s) : s.source_text, 2);
        out += "\n";
    }
    out += "endmodule\n\n";
    file.bind_stmt = "bind " + file.target_module + " " + file.checker_module_name + " u_" +
                     file.target_module + "_sva (.*);";
    out += file.bind_stmt + "\n";
    return file;
}

}  // namespace svagen::sva
