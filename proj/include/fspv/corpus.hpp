#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fspv/report_json.hpp"

namespace fspv {

/// One case-study model with its golden expectations. `gating` fixtures carry
/// an expected report and (usually) a byte-exact `.aut` golden; exploratory
/// models only have to parse.
struct Fixture {
    std::string id;
    std::filesystem::path fsp_path;
    std::string target;
    std::string source;  // verbatim | adapted | derived
    std::string notes;
    bool gating = false;
    std::optional<std::filesystem::path> expect_path;
    std::optional<std::filesystem::path> aut_path;
};

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(ErrorCode::Io, "cannot read '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

/// Reads corpus/manifest.json and enumerates the fixtures it lists.
inline std::vector<Fixture> load_corpus(const std::filesystem::path& dir) {
    const json manifest = json::parse(read_file(dir / "manifest.json"));
    std::vector<Fixture> fixtures;
    for (const json& entry : manifest.at("fixtures")) {
        Fixture f;
        f.id = entry.at("id").get<std::string>();
        f.fsp_path = dir / entry.at("file").get<std::string>();
        f.target = entry.value("target", "");
        f.source = entry.at("source").get<std::string>();
        f.notes = entry.value("notes", "");
        f.gating = entry.value("gating", false);
        if (f.gating) {
            f.expect_path = dir / (f.id + ".expect.json");
            if (entry.value("aut_golden", true)) {
                f.aut_path = dir / (f.id + ".aut.golden");
            }
        }
        if (!std::filesystem::exists(f.fsp_path)) {
            fail(ErrorCode::Io, "missing fixture file '" + f.fsp_path.string() + "'");
        }
        if (f.expect_path && !std::filesystem::exists(*f.expect_path)) {
            fail(ErrorCode::Io, "missing golden '" + f.expect_path->string() + "'");
        }
        if (f.aut_path && !std::filesystem::exists(*f.aut_path)) {
            fail(ErrorCode::Io, "missing golden '" + f.aut_path->string() + "'");
        }
        fixtures.push_back(std::move(f));
    }
    return fixtures;
}

struct GoldenDiff {
    bool pass = true;
    std::vector<std::string> diffs;

    void mismatch(const std::string& field, const std::string& golden,
                  const std::string& fresh) {
        pass = false;
        diffs.push_back(field + ": golden " + golden + ", fresh " + fresh);
    }
};

/// Field-by-field comparison of a fresh report against the golden one.
/// stats.elapsed_ms is machine-dependent and ignored.
inline GoldenDiff golden_compare(const Report& golden, const Report& fresh) {
    GoldenDiff diff;
    if (golden.target != fresh.target) diff.mismatch("target", golden.target, fresh.target);
    if (golden.pass() != fresh.pass()) {
        diff.mismatch("result", golden.pass() ? "PASS" : "FAIL",
                      fresh.pass() ? "PASS" : "FAIL");
    }
    if (golden.stats.states != fresh.stats.states) {
        diff.mismatch("stats.states", std::to_string(golden.stats.states),
                      std::to_string(fresh.stats.states));
    }
    if (golden.stats.transitions != fresh.stats.transitions) {
        diff.mismatch("stats.transitions", std::to_string(golden.stats.transitions),
                      std::to_string(fresh.stats.transitions));
    }
    if (golden.stats.alphabet != fresh.stats.alphabet) {
        diff.mismatch("stats.alphabet", std::to_string(golden.stats.alphabet),
                      std::to_string(fresh.stats.alphabet));
    }
    if (golden.terminal_set_count != fresh.terminal_set_count) {
        diff.mismatch("terminalSets", std::to_string(golden.terminal_set_count),
                      std::to_string(fresh.terminal_set_count));
    }
    if (golden.warnings != fresh.warnings) {
        diff.mismatch("warnings", std::to_string(golden.warnings.size()) + " item(s)",
                      std::to_string(fresh.warnings.size()) + " item(s)");
    }

    if (golden.violations.size() != fresh.violations.size()) {
        diff.mismatch("violations.length", std::to_string(golden.violations.size()),
                      std::to_string(fresh.violations.size()));
        return diff;
    }
    for (std::size_t i = 0; i < golden.violations.size(); ++i) {
        const Violation& g = golden.violations[i];
        const Violation& f = fresh.violations[i];
        const std::string at = "violations[" + std::to_string(i) + "]";
        if (g.kind != f.kind) {
            diff.mismatch(at + ".kind", violation_kind_name(g.kind), violation_kind_name(f.kind));
        }
        if (g.subject != f.subject) diff.mismatch(at + ".subject", g.subject, f.subject);
        if (g.terminal_stop != f.terminal_stop) {
            diff.mismatch(at + ".terminal_stop", g.terminal_stop ? "true" : "false",
                          f.terminal_stop ? "true" : "false");
        }
        if (g.trace.size() != f.trace.size()) {
            diff.mismatch(at + ".trace.length", std::to_string(g.trace.size()),
                          std::to_string(f.trace.size()));
        } else {
            for (std::size_t k = 0; k < g.trace.size(); ++k) {
                if (g.trace[k] != f.trace[k]) {
                    diff.mismatch(at + ".trace[" + std::to_string(k) + "]", g.trace[k].text(),
                                  f.trace[k].text());
                }
            }
        }
        const bool g_cycle = g.cycle.has_value();
        const bool f_cycle = f.cycle.has_value();
        if (g_cycle != f_cycle) {
            diff.mismatch(at + ".cycle", g_cycle ? "present" : "null",
                          f_cycle ? "present" : "null");
        } else if (g_cycle) {
            if (g.cycle->size() != f.cycle->size()) {
                diff.mismatch(at + ".cycle.length", std::to_string(g.cycle->size()),
                              std::to_string(f.cycle->size()));
            } else {
                for (std::size_t k = 0; k < g.cycle->size(); ++k) {
                    if ((*g.cycle)[k] != (*f.cycle)[k]) {
                        diff.mismatch(at + ".cycle[" + std::to_string(k) + "]",
                                      (*g.cycle)[k].text(), (*f.cycle)[k].text());
                    }
                }
            }
        }
    }
    return diff;
}

}  // namespace fspv
