#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "support.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace hopfmm;
using namespace hopfmm::test;
namespace fs = std::filesystem;

namespace {

struct ScratchDir {
    fs::path path = fs::temp_directory_path() / ("hopfmm-workbench-" + std::to_string(::getpid()));
    ScratchDir() { fs::create_directories(path); }
    ~ScratchDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

fs::path scratch_dir() {
    static const ScratchDir dir;
    return dir.path;
}

fs::path write_file(const std::string& name, const std::string& text) {
    fs::path p = scratch_dir() / name;
    std::ofstream(p) << text;
    return p;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args, const std::string& out_name = "cli.out") {
    std::string cmd = std::string(HOPFMM_CLI) + " " + args + " > " + (scratch_dir() / out_name).string() + " 2>&1";
    int status = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

const char* kBadMoment = R"(
[import]
builtin = classical-sl2-triple

[momentmap bad F U]
f = f
h = h
e = 0
)";

const char* kNonConfluent = R"(
[generators W]
f = 1
h = 1
e = 1

[relations W]
e*f = f*e + h
h*f = f*h - 2*f
e*h = h*e + 2*e
)";

}  // namespace

TEST_CASE("every builtin loads and validates") {
    auto names = builtin_names();
    CHECK(names == std::vector<std::string>{"classical-sl2-triple", "rea-sl2", "uhbar-sl2", "uq-sl2"});
    for (const auto& n : names) {
        CAPTURE(n);
        const Workspace& ws = builtin(n);
        CHECK(ws.validation.passed());
        CHECK_FALSE(ws.validation.records.empty());
        CHECK_FALSE(builtin_text(n).empty());
    }
    CHECK(builtin("rea-sl2").hopf.count("Uq") == 1);
    CHECK(builtin("uhbar-sl2").limits.count("sl2") == 1);
}

TEST_CASE("loader errors carry kinds and lines") {
    auto empty = error_of([] { load_text("# nothing here\n", "empty.hopf"); });
    REQUIRE(empty);
    CHECK(empty->kind() == ErrorKind::SyntaxError);
    CHECK(empty->line() >= 1);

    auto unknown = error_of([] { load_text("[generators X]\nx = 1\n\n[relations X]\nx*y = x\n", "u.hopf"); });
    REQUIRE(unknown);
    CHECK(unknown->kind() == ErrorKind::UnknownGenerator);
    CHECK(unknown->line() == 5);

    auto section = error_of([] { load_text("[bogus]\n", "s.hopf"); });
    REQUIRE(section);
    CHECK(section->kind() == ErrorKind::SyntaxError);
}

TEST_CASE("non-confluent relations are rejected with the critical pair") {
    try {
        load_text(kNonConfluent, "w.hopf");
        FAIL("loaded a non-confluent presentation");
    } catch (const ValidationError& e) {
        CHECK(e.kind() == ErrorKind::ValidationFailed);
        CHECK(std::string(e.what()).find("e*h*f") != std::string::npos);
        CHECK_FALSE(e.report().passed());
    }
}

TEST_CASE("imports: cycles fail and shared imports load once") {
    write_file("cycle_a.hopf", "[import]\nfile = cycle_b.hopf\n");
    fs::path b = write_file("cycle_b.hopf", "[import]\nfile = cycle_a.hopf\n");
    auto err = error_of([&] { load_file(b.string()); });
    REQUIRE(err);
    CHECK(std::string(err->what()).find("cycle") != std::string::npos);
    Workspace both = load_files({"rea-sl2", "uq-sl2"});
    CHECK(both.presentations.count("Uq") == 1);
    CHECK(both.presentations.count("REA") == 1);
}

TEST_CASE("suites run by name") {
    const Workspace& ws = builtin("classical-sl2-triple");
    CHECK(suite_names().size() == 10);
    CHECK(run_suite("hopf", ws, 2).passed());
    CHECK(run_suite("momentmap", ws, 2).passed());
    CHECK(run_suite("hamred", ws, 2).verdict() != Verdict::Fail);
    CHECK(kind_of_error(error_of([&] { run_suite("nonsense", ws, 2); })) == ErrorKind::InvalidInput);
}

TEST_CASE("reports are deterministic without timing") {
    const Workspace& ws = builtin("uq-sl2");
    std::string first = run_suite("coqt", ws, 2).to_json(false).dump();
    std::string second = run_suite("coqt", ws, 2).to_json(false).dump();
    CHECK(first == second);
    CHECK(first.find("seconds") == std::string::npos);
    CHECK(run_suite("coqt", ws, 2).to_json(true).dump().find("seconds") != std::string::npos);
}

TEST_CASE("witnesses in a failing suite replay") {
    Workspace ws = load_text(kBadMoment, "bad.hopf");
    CheckReport r = run_suite("momentmap", ws, 2);
    CHECK(r.verdict() == Verdict::Fail);
    MomentPtr bad = ws.moment("bad");
    const Presentation& f = bad->source->presentation();
    const Presentation& a = bad->target->algebra();
    size_t replayed = 0;
    for (const auto& rec : r.records) {
        if (rec.name.find("moment-map") == std::string::npos) continue;
        for (const auto& w : rec.witnesses) {
            auto [lhs, rhs] = moment_map_sides(*bad, *bad->source->ev, el(f, w.inputs.at(0)), el(a, w.inputs.at(1)));
            CHECK(a.format(lhs) == w.lhs);
            CHECK(a.format(rhs) == w.rhs);
            CHECK(lhs != rhs);
            ++replayed;
        }
    }
    CHECK(replayed > 0);
}

TEST_CASE("fused presentations round-trip through files") {
    const Workspace& ws = builtin("classical-sl2-triple");
    MomentPtr id = ws.moment("id");
    MomentPtr fused = fuse(*id, *id);
    std::string text = write_fused(*fused, {"builtin:classical-sl2-triple"});
    Workspace back = load_text(text, "fused.hopf");
    MomentPtr again = back.moment(fused->name);
    CHECK(again->target->algebra().name() == fused->target->algebra().name());
    CHECK(again->target->algebra().format(again->values[2]) == fused->target->algebra().format(fused->values[2]));
    CHECK(check_moment_map(*again, *again->source->ev, 2).passed());
    CHECK(hamiltonian_reduce(*again, 2).dimension() == 2);
}

TEST_CASE("command line exit codes") {
    CHECK(run_cli("validate classical-sl2-triple") == 0);
    CHECK(read_file(scratch_dir() / "cli.out").find("moment maps") != std::string::npos);
    CHECK(run_cli("check hopf uq-sl2 --degree 2") == 0);

    fs::path bad = write_file("bad_moment.hopf", kBadMoment);
    CHECK(run_cli("check momentmap " + bad.string() + " --degree 2") == 1);
    CHECK(read_file(scratch_dir() / "cli.out").find("at e f") != std::string::npos);

    fs::path broken = write_file("broken.hopf", kNonConfluent);
    CHECK(run_cli("validate " + broken.string()) == 2);
    CHECK(run_cli("validate no-such-builtin") == 2);
    CHECK(run_cli("check nonsense classical-sl2-triple") == 2);
    CHECK(run_cli("check hopf") == 2);

    CHECK(run_cli("reduce classical-sl2-triple --in U --expr \"e*e*f\"") == 0);
    CHECK(read_file(scratch_dir() / "cli.out") == "f*e^2 + 2*h*e - 2*e\n");

    fs::path fused = scratch_dir() / "fused_cli.hopf";
    CHECK(run_cli("fuse classical-sl2-triple classical-sl2-triple --first id --second id -o " + fused.string()) == 0);
    CHECK(run_cli("hamred " + fused.string() + " --moment id*id --degree 2") == 0);
    CHECK(read_file(scratch_dir() / "cli.out").find("dimension 2") != std::string::npos);

    fs::path json_a = scratch_dir() / "a.json", json_b = scratch_dir() / "b.json";
    CHECK(run_cli("check all uq-sl2 --degree 2 --no-timing --json " + json_a.string()) == 0);
    CHECK(run_cli("check all uq-sl2 --degree 2 --no-timing --parallel --json " + json_b.string()) == 0);
    CHECK(read_file(json_a) == read_file(json_b));
}
