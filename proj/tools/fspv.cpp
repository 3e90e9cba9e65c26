// fspv: compile FSP-lite models to labelled transition systems, compose them,
// and check safety / deadlock / progress properties.
//
// exit codes: 0 all checks pass, 1 violations found, 2 parse or semantic
// error, 3 state limit exceeded.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fspv/fspv.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitViolations = 1;
constexpr int kExitError = 2;
constexpr int kExitStateLimit = 3;

std::size_t resolve_limit(std::optional<std::size_t> flag_value) {
    if (flag_value) return *flag_value;
    if (const char* env = std::getenv("FSPV_LIMIT")) {
        char* end = nullptr;
        const unsigned long long parsed = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && parsed > 0) return static_cast<std::size_t>(parsed);
        std::cerr << "warning: ignoring malformed FSPV_LIMIT='" << env << "'\n";
    }
    return fspv::kDefaultStateLimit;
}

std::string pick_target(const fspv::Spec& spec, const std::string& requested,
                        const std::string& input) {
    if (!requested.empty()) return requested;
    if (!spec.composite_defs.empty()) return spec.composite_defs.front().name;
    if (!spec.process_defs.empty()) return spec.process_defs.front().name();
    fspv::fail(fspv::ErrorCode::SyntaxError, "no definitions in '" + input + "'");
}

struct BuiltTarget {
    fspv::Lts lts;
    std::vector<std::string> warnings;
};

BuiltTarget build_target(const fspv::Spec& spec, const std::string& name, std::size_t limit) {
    BuiltTarget out;
    if (spec.find_composite(name)) {
        fspv::CompiledCache cache;
        out.lts = fspv::build_composite(spec, name, cache, limit, &out.warnings);
        return out;
    }
    out.lts = fspv::compile_process(spec, name, limit);
    if (spec.is_property(name)) out.lts = fspv::make_property(out.lts);
    return out;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        fspv::fail(fspv::ErrorCode::Io, "cannot write '" + path + "'");
    }
    file << text;
}

void export_views(const fspv::Lts& lts, const std::string& dot_path,
                  const std::string& aut_path) {
    if (!dot_path.empty()) {
        std::ostringstream out;
        fspv::write_dot(lts, out);
        write_text_file(dot_path, out.str());
    }
    if (!aut_path.empty()) {
        std::ostringstream out;
        fspv::write_aut(lts, out);
        write_text_file(aut_path, out.str());
    }
}

void print_human_report(const fspv::Report& report, std::ostream& out) {
    out << "target: " << report.target << "\n";
    out << "states: " << report.stats.states << "  transitions: " << report.stats.transitions
        << "  alphabet: " << report.stats.alphabet << "  terminal sets: "
        << report.terminal_set_count << "  (" << report.stats.elapsed_ms << " ms)\n";
    for (const std::string& w : report.warnings) {
        out << "warning: " << w << "\n";
    }
    for (const fspv::Violation& v : report.violations) {
        out << "violation: " << fspv::violation_kind_name(v.kind) << " " << v.subject;
        if (v.terminal_stop) out << " (terminal-STOP: every component stopped)";
        out << "\n";
        if (v.trace.empty()) {
            out << "  (empty trace: the initial state is the witness)\n";
        }
        for (std::size_t i = 0; i < v.trace.size(); ++i) {
            out << "  " << (i + 1) << ". " << v.trace[i].text() << "\n";
        }
        if (v.cycle && !v.cycle->empty()) {
            out << "  cycle:\n";
            for (std::size_t i = 0; i < v.cycle->size(); ++i) {
                out << "    " << (i + 1) << ". " << (*v.cycle)[i].text() << "\n";
            }
        } else if (v.cycle) {
            out << "  cycle: (none: terminal state with no moves)\n";
        }
    }
    out << "result: " << (report.pass() ? "PASS" : "FAIL") << "\n";
}

int error_exit_code(const fspv::FspError& error) {
    return error.code() == fspv::ErrorCode::StateLimitExceeded ? kExitStateLimit : kExitError;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"FSP-lite model checker: safety, deadlock and progress analysis"};
    app.require_subcommand(1);

    std::string input;
    std::string target;
    std::optional<std::size_t> limit_flag;
    bool json_output = false;
    std::string dot_path;
    std::string aut_path;
    unsigned seed = 0;
    std::string gaia_out;
    bool bang_as_choice = false;

    auto add_common = [&](CLI::App* cmd, bool with_target) {
        cmd->add_option("input", input, "input file")->required();
        if (with_target) {
            cmd->add_option("--target", target,
                            "definition to build (default: first composite, else first process)");
            cmd->add_option("--limit", limit_flag,
                            "state cap (env FSPV_LIMIT overrides the default of 1048576)");
        }
    };

    CLI::App* check = app.add_subcommand("check", "compile a target and run all checks");
    add_common(check, true);
    check->add_flag("--json", json_output, "emit the report as JSON on stdout");
    check->add_option("--dot", dot_path, "also export Graphviz to this path");
    check->add_option("--aut", aut_path, "also export Aldebaran .aut to this path");

    CLI::App* exp = app.add_subcommand("export", "compile a target and export .dot/.aut");
    add_common(exp, true);
    exp->add_option("--dot", dot_path, "Graphviz output path");
    exp->add_option("--aut", aut_path, "Aldebaran .aut output path");

    CLI::App* explore = app.add_subcommand("explore", "interactively walk a target's states");
    add_common(explore, true);
    explore->add_option("--seed", seed, "seed for 'random N' steps (default 0)");

    CLI::App* gaia = app.add_subcommand(
        "gaia", "translate a role liveness expression (.gaia) into FSP-lite");
    add_common(gaia, false);
    gaia->add_option("--out", gaia_out, "output .fsp path (default: stdout)");
    gaia->add_flag("--gaia-bang-as-choice", bang_as_choice,
                   "read the nonstandard '!' operator as choice '|'");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gaia->parsed()) {
            const std::string text = fspv::read_file(input);
            fspv::GaiaOptions options;
            options.bang_as_choice = bang_as_choice;
            fspv::RoleLiveness role = fspv::parse_liveness(text, options);
            fspv::GaiaTranslation translation = fspv::to_fsp(role);

            std::ostringstream out;
            out << "/// generated from role '" << role.role_name << "'\n";
            out << "/// activity-name mapping:\n";
            for (const auto& [original, canonical] : translation.name_map) {
                out << "///   " << canonical << " <- " << original << "\n";
            }
            out << fspv::format(translation.spec);
            if (gaia_out.empty()) {
                std::cout << out.str();
            } else {
                write_text_file(gaia_out, out.str());
            }
            return kExitPass;
        }

        const std::size_t limit = resolve_limit(limit_flag);
        const std::string text = fspv::read_file(input);
        const fspv::Spec spec = fspv::parse_text(text);
        const std::string target_name = pick_target(spec, target, input);
        BuiltTarget built = build_target(spec, target_name, limit);

        if (exp->parsed()) {
            if (dot_path.empty() && aut_path.empty()) {
                std::cerr << "export: provide --dot and/or --aut\n";
                return kExitError;
            }
            export_views(built.lts, dot_path, aut_path);
            return kExitPass;
        }

        if (explore->parsed()) {
            fspv::ExploreSession session(built.lts, seed);
            session.run(std::cin, std::cout);
            return kExitPass;
        }

        fspv::Report report = fspv::run_all(built.lts, spec, std::move(built.warnings));
        export_views(built.lts, dot_path, aut_path);
        if (json_output) {
            std::cout << fspv::report_to_json(report).dump(2) << "\n";
        } else {
            print_human_report(report, std::cout);
        }
        return report.pass() ? kExitPass : kExitViolations;
    } catch (const fspv::FspError& error) {
        std::cerr << "fspv: " << error.what() << "\n";
        return error_exit_code(error);
    } catch (const std::exception& error) {
        std::cerr << "fspv: " << error.what() << "\n";
        return kExitError;
    }
}
