#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>

#include "CLI11.hpp"
#include "hopfmm/parser.hpp"
#include "hopfmm/workbench.hpp"

using namespace hopfmm;

namespace {

constexpr int kPass = 0, kFail = 1, kError = 2;

void print_record(const CheckRecord& r) {
    std::cout << verdict_name(r.verdict) << "  " << r.name << "  (" << r.cases << " cases, degree " << r.degree << ")";
    if (!r.note.empty()) std::cout << "  " << r.note;
    std::cout << "\n";
    for (const auto& w : r.witnesses) {
        std::cout << "    at";
        for (const auto& i : w.inputs) std::cout << " " << i;
        std::cout << ": " << w.lhs << "  !=  " << w.rhs << "\n";
    }
}

int print_report(const CheckReport& r) {
    for (const auto& rec : r.records) print_record(rec);
    if (r.records.empty()) std::cout << "nothing to check for suite " << r.suite << "\n";
    std::cout << r.suite << ": " << verdict_name(r.verdict()) << "\n";
    return r.verdict() == Verdict::Fail ? kFail : kPass;
}

std::string import_line(const std::string& input) {
    if (std::filesystem::exists(input)) return std::filesystem::canonical(input).string();
    return "builtin:" + input;
}

MomentPtr only_moment(const std::string& input, const std::string& chosen, const Workspace& all) {
    if (!chosen.empty()) return all.moment(chosen);
    Workspace ws = load_file(input);
    if (ws.moments.size() != 1)
        throw Error(ErrorKind::InvalidInput, input + " defines " + std::to_string(ws.moments.size()) +
                                                 " moment maps; choose one with --first/--second");
    return all.moment(ws.moments.begin()->first);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Symbolic checks for Hopf algebras, quantum moment maps and their classical limits"};
    app.require_subcommand(1);
    int code = kPass;

    std::vector<std::string> files;
    int degree = 4;
    std::string json_out;
    bool no_timing = false, parallel = false;

    auto* validate = app.add_subcommand("validate", "Load files and run the mandatory validations");
    validate->add_option("files", files, "Presentation files or builtin names")->required();

    std::string suite;
    auto* check = app.add_subcommand("check", "Run a check suite (or `all`)");
    check->add_option("suite", suite, "Suite name")->required();
    check->add_option("files", files, "Presentation files or builtin names")->required();
    check->add_option("--degree", degree, "Degree bound")->check(CLI::NonNegativeNumber);
    check->add_option("--json", json_out, "Write the report as JSON");
    check->add_flag("--no-timing", no_timing, "Leave timing out of the JSON report");
    check->add_flag("--parallel", parallel, "Run the suites of `all` concurrently");

    std::string expr, algebra;
    auto* reduce = app.add_subcommand("reduce", "Print the normal form of an expression");
    reduce->add_option("files", files, "Presentation files or builtin names")->required();
    reduce->add_option("--expr", expr, "Expression")->required();
    reduce->add_option("--in", algebra, "Algebra to reduce in");

    std::string first_input, second_input, out_path, first_map, second_map;
    auto* fuse_cmd = app.add_subcommand("fuse", "Fuse two moment maps and write the fused presentation");
    fuse_cmd->add_option("a", first_input, "First input")->required();
    fuse_cmd->add_option("b", second_input, "Second input")->required();
    fuse_cmd->add_option("-o,--output", out_path, "Output file")->required();
    fuse_cmd->add_option("--first", first_map, "Moment map of the first input");
    fuse_cmd->add_option("--second", second_map, "Moment map of the second input");
    fuse_cmd->add_option("--degree", degree, "Degree bound of the moment map check")->check(CLI::NonNegativeNumber);

    std::string side = "left";
    auto* hamred = app.add_subcommand("hamred", "Hamiltonian reduction on a slice of normal words");
    hamred->add_option("files", files, "Presentation files or builtin names")->required();
    hamred->add_option("--degree", degree, "Maximal word length of the slice")->check(CLI::NonNegativeNumber);
    hamred->add_option("--moment", first_map, "Moment map to reduce (default: all)");
    hamred->add_option("--side", side, "Ideal side")->check(CLI::IsMember({"left", "right"}));

    auto* limit = app.add_subcommand("limit", "Classical limits over the dual numbers");
    limit->add_option("files", files, "Presentation files or builtin names")->required();
    limit->add_option("--degree", degree, "Degree bound")->check(CLI::NonNegativeNumber);

    std::string builtin_action = "list", builtin_name;
    auto* builtins = app.add_subcommand("builtins", "List or print the builtin presentations");
    builtins->add_option("action", builtin_action, "list or dump")->check(CLI::IsMember({"list", "dump"}));
    builtins->add_option("name", builtin_name, "Builtin to print");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kPass : kError;
    }

    try {
        if (*validate) {
            Workspace ws = load_files(files);
            std::cout << "loaded " << ws.presentations.size() << " algebras, " << ws.hopf.size()
                      << " Hopf structures, " << ws.moments.size() << " moment maps\n";
            std::cout << "validation: " << ws.validation.records.size() << " checks passed\n";
        } else if (*check) {
            Workspace ws = load_files(files);
            CheckReport report(suite);
            if (suite == "all") {
                std::vector<std::future<CheckReport>> jobs;
                for (const auto& s : suite_names())
                    jobs.push_back(std::async(parallel ? std::launch::async : std::launch::deferred,
                                              [&ws, s, degree] { return run_suite(s, ws, degree); }));
                for (size_t i = 0; i < jobs.size(); ++i) report.append(jobs[i].get(), suite_names()[i] + "/");
            } else {
                report = run_suite(suite, ws, degree);
            }
            code = print_report(report);
            if (!json_out.empty()) {
                std::ofstream out(json_out);
                if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + json_out);
                out << report.to_json(!no_timing).dump(2) << "\n";
            }
        } else if (*reduce) {
            Workspace ws = load_files(files);
            std::vector<const Presentation*> candidates;
            if (!algebra.empty()) {
                candidates.push_back(&ws.presentation(algebra));
            } else {
                for (const auto& [name, p] : ws.presentations) {
                    try {
                        parse_expression(expr, *p);
                        candidates.push_back(p.get());
                    } catch (const Error&) {
                    }
                }
                if (candidates.size() != 1) {
                    std::string names;
                    for (const auto* p : candidates) names += " " + p->name();
                    throw Error(ErrorKind::InvalidInput,
                                "the expression parses in " + std::to_string(candidates.size()) +
                                    " algebras; choose one with --in" + (names.empty() ? "" : ":" + names));
                }
            }
            const Presentation& p = *candidates.front();
            Parsed v = parse_expression(expr, p);
            if (auto* e = std::get_if<Element>(&v))
                std::cout << p.format(*e) << "\n";
            else
                std::cout << format_tensor(std::get<TensorElement>(v),
                                           std::vector<const Presentation*>(std::get<TensorElement>(v).arity(), &p))
                          << "\n";
        } else if (*fuse_cmd) {
            std::vector<std::string> inputs{first_input};
            if (import_line(second_input) != import_line(first_input)) inputs.push_back(second_input);
            Workspace ws = load_files(inputs);
            MomentPtr m1 = only_moment(first_input, first_map, ws);
            MomentPtr m2 = only_moment(second_input, second_map, ws);
            MomentPtr fused = fuse(*m1, *m2);
            std::vector<std::string> imports;
            for (const auto& i : inputs) imports.push_back(import_line(i));
            std::ofstream out(out_path);
            if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + out_path);
            out << write_fused(*fused, imports);
            std::cout << "wrote " << fused->name << " into " << fused->target->algebra().name() << " to " << out_path
                      << "\n";
            code = print_report(check_moment_map(*fused, *fused->source->ev, std::min(degree, 3)));
        } else if (*hamred) {
            Workspace ws = load_files(files);
            std::vector<MomentPtr> maps;
            if (!first_map.empty())
                maps.push_back(ws.moment(first_map));
            else
                for (const auto& [n, m] : ws.moments) maps.push_back(m);
            if (maps.empty()) throw Error(ErrorKind::InvalidInput, "no moment maps to reduce");
            for (const auto& m : maps) {
                auto res = hamiltonian_reduce(*m, degree, side == "left" ? ReductionSide::Left : ReductionSide::Right);
                std::cout << m->name << ": degree " << res.degree << ", dimension " << res.dimension() << " (slice "
                          << res.slice_dim << ", ideal " << res.ideal_dim << ")\n";
                for (const auto& b : res.basis) std::cout << "    " << m->target->algebra().format(b) << "\n";
                if (res.partial) std::cout << "    partial: " << res.note << "\n";
            }
        } else if (*limit) {
            Workspace ws = load_files(files);
            if (ws.limits.empty()) throw Error(ErrorKind::InvalidInput, "no [limit] sections");
            code = print_report(run_suite("limit", ws, degree));
        } else if (*builtins) {
            if (builtin_action == "list") {
                for (const auto& n : builtin_names()) std::cout << n << "\n";
            } else {
                if (builtin_name.empty()) throw Error(ErrorKind::InvalidInput, "dump needs a builtin name");
                std::cout << builtin_text(builtin_name);
            }
        }
    } catch (const ValidationError& e) {
        std::cerr << e.what() << "\n";
        for (const auto& r : e.report().records)
            if (r.verdict != Verdict::Pass) print_record(r);
        return kError;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return kError;
    }
    return code;
}
