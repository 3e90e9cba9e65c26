#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fspv/analysis.hpp"

namespace fspv {

using nlohmann::json;

/// Schema version of the JSON report (docs/report.schema.json).
inline constexpr const char* kReportSchemaVersion = "1";

inline json report_to_json(const Report& report) {
    json violations = json::array();
    for (const Violation& v : report.violations) {
        json item;
        item["kind"] = violation_kind_name(v.kind);
        item["subject"] = v.subject;
        json trace = json::array();
        for (const Label& l : v.trace) trace.push_back(l.text());
        item["trace"] = std::move(trace);
        if (v.cycle) {
            json cycle = json::array();
            for (const Label& l : *v.cycle) cycle.push_back(l.text());
            item["cycle"] = std::move(cycle);
        } else {
            item["cycle"] = nullptr;
        }
        if (v.kind == Violation::Kind::Deadlock) {
            item["terminal_stop"] = v.terminal_stop;
        }
        violations.push_back(std::move(item));
    }

    json out;
    out["schemaVersion"] = kReportSchemaVersion;
    out["target"] = report.target;
    out["result"] = report.pass() ? "PASS" : "FAIL";
    out["stats"] = {{"states", report.stats.states},
                    {"transitions", report.stats.transitions},
                    {"alphabet", report.stats.alphabet},
                    {"elapsed_ms", report.stats.elapsed_ms}};
    out["violations"] = std::move(violations);
    out["warnings"] = report.warnings;
    out["terminalSets"] = report.terminal_set_count;
    return out;
}

inline Report report_from_json(const json& j) {
    Report report;
    report.target = j.at("target").get<std::string>();
    report.stats.states = j.at("stats").at("states").get<int>();
    report.stats.transitions = j.at("stats").at("transitions").get<long>();
    report.stats.alphabet = j.at("stats").at("alphabet").get<int>();
    report.stats.elapsed_ms = j.at("stats").at("elapsed_ms").get<long>();
    report.terminal_set_count = j.value("terminalSets", 0);
    if (j.contains("warnings")) {
        report.warnings = j.at("warnings").get<std::vector<std::string>>();
    }
    for (const json& item : j.at("violations")) {
        Violation v;
        const std::string kind = item.at("kind").get<std::string>();
        if (kind == "safety") {
            v.kind = Violation::Kind::Safety;
        } else if (kind == "deadlock") {
            v.kind = Violation::Kind::Deadlock;
        } else if (kind == "progress") {
            v.kind = Violation::Kind::Progress;
        } else {
            fail(ErrorCode::Io, "unknown violation kind '" + kind + "'");
        }
        v.subject = item.at("subject").get<std::string>();
        for (const json& l : item.at("trace")) {
            v.trace.push_back(Label::from_text(l.get<std::string>()));
        }
        if (item.contains("cycle") && !item.at("cycle").is_null()) {
            std::vector<Label> cycle;
            for (const json& l : item.at("cycle")) {
                cycle.push_back(Label::from_text(l.get<std::string>()));
            }
            v.cycle = std::move(cycle);
        }
        v.terminal_stop = item.value("terminal_stop", false);
        report.violations.push_back(std::move(v));
    }
    const std::string result = j.at("result").get<std::string>();
    if ((result == "PASS") != report.pass()) {
        fail(ErrorCode::Io, "report result field disagrees with its violation list");
    }
    return report;
}

/// Structural validation mirroring docs/report.schema.json; returns one
/// message per violation of the schema.
inline std::vector<std::string> validate_report_json(const json& j) {
    std::vector<std::string> errors;
    auto require = [&](bool ok, const std::string& message) {
        if (!ok) errors.push_back(message);
    };

    require(j.is_object(), "report must be an object");
    if (!j.is_object()) return errors;

    require(j.value("schemaVersion", "") == std::string(kReportSchemaVersion),
            "schemaVersion must be \"1\"");
    require(j.contains("target") && j["target"].is_string(), "target must be a string");
    const std::string result = j.value("result", "");
    require(result == "PASS" || result == "FAIL", "result must be PASS or FAIL");

    if (j.contains("stats") && j["stats"].is_object()) {
        const json& stats = j["stats"];
        for (const char* field : {"states", "transitions", "alphabet", "elapsed_ms"}) {
            require(stats.contains(field) && stats[field].is_number_integer(),
                    std::string("stats.") + field + " must be an integer");
        }
    } else {
        errors.push_back("stats must be an object");
    }

    if (j.contains("violations") && j["violations"].is_array()) {
        std::size_t index = 0;
        for (const json& item : j["violations"]) {
            const std::string at = "violations[" + std::to_string(index++) + "]";
            require(item.is_object(), at + " must be an object");
            if (!item.is_object()) continue;
            const std::string kind = item.value("kind", "");
            require(kind == "safety" || kind == "deadlock" || kind == "progress",
                    at + ".kind must be safety|deadlock|progress");
            require(item.contains("subject") && item["subject"].is_string(),
                    at + ".subject must be a string");
            require(item.contains("trace") && item["trace"].is_array(),
                    at + ".trace must be an array");
            if (item.contains("trace") && item["trace"].is_array()) {
                for (const json& l : item["trace"]) {
                    require(l.is_string(), at + ".trace entries must be strings");
                }
            }
            require(item.contains("cycle") && (item["cycle"].is_null() || item["cycle"].is_array()),
                    at + ".cycle must be an array or null");
        }
    } else {
        errors.push_back("violations must be an array");
    }

    if (j.contains("warnings")) {
        require(j["warnings"].is_array(), "warnings must be an array");
    }
    require((j.value("result", "") == "PASS") ==
                (j.contains("violations") && j["violations"].is_array() &&
                 j["violations"].empty()),
            "result must be PASS exactly when violations is empty");
    return errors;
}

}  // namespace fspv
