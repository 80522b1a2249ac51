// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "svagen/common.hpp"

namespace svagen::rtl {

enum class PortDirection { Input, Output, Inout };

struct PortInfo {
    std::string name;
    PortDirection dir = PortDirection::Input;
    int width = 1;
    bool operator==(const PortInfo&) const = default;
};

struct ResetInfo {
    std::string signal;
    bool active_high = true;
    bool asynchronous = false;
    bool operator==(const ResetInfo&) const = default;
};

struct RegInfo {
    std::string name;
    int width = 1;
    bool initialized_on_reset = false;
    std::optional<std::uint64_t> reset_value;
    bool operator==(const RegInfo&) const = default;
};

struct ConstantInfo {
    std::string name;
    int width = 1;
    std::uint64_t value = 0;
    bool operator==(const ConstantInfo&) const = default;
};

struct FsmState {
    std::string label;
    std::uint64_t encoding = 0;
    bool operator==(const FsmState&) const = default;
};

struct FsmTransition {
    std::uint64_t from = 0;
    std::uint64_t to = 0;
    std::string condition;  // expression text; empty = unconditional
    bool operator==(const FsmTransition&) const = default;
};

struct FsmInfo {
    std::string state_register;
    int width = 1;
    std::vector<FsmState> defined_states;
    std::vector<FsmTransition> transitions;
    std::optional<std::uint64_t> reset_state;

    bool has_state(std::uint64_t enc) const {
        for (const auto& s : defined_states)
            if (s.encoding == enc) return true;
        return false;
    }
    std::string label_of(std::uint64_t enc) const {
        for (const auto& s : defined_states)
            if (s.encoding == enc) return s.label;
        return "STATE_" + std::to_string(enc);
    }
};

struct ModuleInfo {
    std::string name;
    std::vector<PortInfo> ports;
    std::optional<std::string> clock;
    std::optional<ResetInfo> reset;
    std::vector<RegInfo> registers;
    std::vector<ConstantInfo> constants;
    std::vector<FsmInfo> fsms;
    std::vector<std::string> wires;

    const PortInfo* find_port(std::string_view n) const {
        for (const auto& p : ports)
            if (p.name == n) return &p;
        return nullptr;
    }
    const RegInfo* find_register(std::string_view n) const {
        for (const auto& r : registers)
            if (r.name == n) return &r;
        return nullptr;
    }
    bool has_signal(std::string_view n) const {
        if (find_port(n) || find_register(n)) return true;
        for (const auto& w : wires)
            if (w == n) return true;
        return false;
    }
};

struct DesignModel {
    std::string source_path;
    std::string source_text;
    std::vector<ModuleInfo> modules;
    std::string top_module;

    const ModuleInfo& top() const {
        for (const auto& m : modules)
            if (m.name == top_module) return m;
        throw Error("top module '" + top_module + "' not in model");
    }
};

struct TopModuleNotFound : Error {
    explicit TopModuleNotFound(const std::string& name)
        : Error("top module '" + name + "' not found") {}
};

struct WidthTooLarge : Error {
    explicit WidthTooLarge(int width)
        : Error("state register width " + std::to_string(width) +
                " exceeds the 16-bit unused-state enumeration cap") {}
};

// All values in [0, 2^width) not present in defined_states, ascending.
inline std::vector<std::uint64_t> unused_states(const FsmInfo& fsm) {
    if (fsm.width > 16) throw WidthTooLarge(fsm.width);
    std::vector<std::uint64_t> out;
    const std::uint64_t space = 1ull << fsm.width;
    for (std::uint64_t v = 0; v < space; ++v)
        if (!fsm.has_state(v)) out.push_back(v);
    return out;
}

// Registers not assigned under any reset branch and lacking a declaration
// initializer.
inline std::vector<RegInfo> uninitialized_registers(const ModuleInfo& m,
                                                    Diagnostics* diags = nullptr) {
    std::vector<RegInfo> out;
    if (!m.reset && diags)
        diags->push_back({Diagnostic::Level::Warning, m.name, 0, "no reset found"});
    for (const auto& r : m.registers)
        if (!r.initialized_on_reset) out.push_back(r);
    return out;
}

}  // namespace svagen::rtl
