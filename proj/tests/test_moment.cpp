#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "support.hpp"

using namespace hopfmm;
using namespace hopfmm::test;

namespace {

const Workspace& classical() { return builtin("classical-sl2-triple"); }
const Workspace& rea() { return builtin("rea-sl2"); }

}  // namespace

TEST_CASE("the adjoint coaction induces the commutator action") {
    const SkewPairing& ev = *classical().pairings.at("ev");
    const ComoduleAlgebra& ad = *classical().coactions.at({"U", "O"});
    const Presentation& u = ad.algebra();
    for (const Word& w : u.normal_words(3))
        for (const char* g : {"e", "f", "h"}) {
            Element x = u.word(w), y = el(u, g);
            CHECK(coact_to_act(ev, ad, y, x) == u.multiply(y, x) - u.multiply(x, y));
        }
}

TEST_CASE("identity of U(sl2) is a moment map") {
    MomentPtr id = classical().moment("id");
    CHECK(id->validate(3).passed());
    CHECK(check_moment_map(*id, *id->source->ev, 3).passed());
    CHECK(check_centrality(*id, 3).passed());
}

TEST_CASE("a zero value breaks the moment law at a replayable witness") {
    MomentPtr id = classical().moment("id");
    MomentPtr bad = with_values(*id, "bad", {"f", "h", "0"});
    CheckReport r = check_moment_map(*bad, *bad->source->ev, 2);
    CHECK_FALSE(r.passed());
    const Witness* w = r.first_witness();
    REQUIRE(w != nullptr);
    REQUIRE(w->inputs.size() == 2);
    CHECK(w->inputs == std::vector<std::string>{"e", "f"});
    const Presentation& f = bad->source->presentation();
    const Presentation& a = bad->target->algebra();
    auto [lhs, rhs] = moment_map_sides(*bad, *bad->source->ev, el(f, w->inputs[0]), el(a, w->inputs[1]));
    CHECK(lhs != rhs);
    CHECK(a.format(lhs) == w->lhs);
    CHECK(a.format(rhs) == w->rhs);
    CHECK(lhs == a.zero());
    CHECK(rhs == el(a, "h"));
}

TEST_CASE("adjoint values of primitive generators") {
    MomentPtr id = classical().moment("id");
    const Presentation& u = id->target->algebra();
    auto slots = std::vector<const Presentation*>{&u, &u};
    CHECK(adjoint_value(*id, el(u, "e")) == tens("e (x) 1 + 1 (x) e", slots));
    CHECK(adjoint_value(*id, el(u, "e*f")) == tens("f*e (x) 1 + h (x) 1 + e (x) f + f (x) e + 1 (x) f*e + 1 (x) h", slots));
    auto all = adjoint_map(*id);
    REQUIRE(all.size() == 3);
    CHECK(all[1] == tens("h (x) 1 + 1 (x) h", slots));
}

TEST_CASE("centrality agrees with the moment law") {
    MomentPtr id = classical().moment("id");
    MomentPtr idh = builtin("uhbar-sl2").moment("idh");
    MomentPtr idrea = rea().moment("id-rea");
    std::vector<MomentPtr> corpus = {
        id,
        idh,
        idrea,
        fuse(*id, *id),
        fuse(*id, *trivial_moment_map(id->source)),
        with_values(*id, "zero-e", {"f", "h", "0"}),
        with_values(*id, "double", {"2*f", "2*h", "2*e"}),
        with_values(*id, "shift", {"f", "h + 1", "e"}),
        with_values(*id, "swap", {"e", "h", "f"}),
        with_values(*id, "negated", {"-f", "-h", "-e"}),
        with_values(*idrea, "scaled-A", {"B", "C", "q*A", "D"}),
    };
    REQUIRE(corpus.size() >= 10);
    int passing = 0, failing = 0;
    for (const auto& m : corpus) {
        CAPTURE(m->name);
        bool law = check_moment_map(*m, *m->source->ev, 2).passed();
        CHECK(check_centrality(*m, 2).passed() == law);
        (law ? passing : failing)++;
    }
    CHECK(passing >= 4);
    CHECK(failing >= 4);
}

TEST_CASE("fusion of primitive moment maps adds the values") {
    MomentPtr id = classical().moment("id");
    MomentPtr twice = fuse(*id, *id);
    const Presentation& a = twice->target->algebra();
    CHECK(twice->name == "id*id");
    CHECK(a.name() == "U*U");
    REQUIRE(twice->values.size() == 3);
    CHECK(twice->values[0] == el(a, "f_1 + f_2"));
    CHECK(twice->values[1] == el(a, "h_1 + h_2"));
    CHECK(twice->values[2] == el(a, "e_1 + e_2"));
    CHECK(el(a, "e_1*f_2") == el(a, "f_2*e_1"));
    CHECK(check_moment_map(*twice, *id->source->ev, 3).passed());
    MomentPtr unit = fuse(*id, *trivial_moment_map(id->source));
    CHECK(unit->values[2] == el(unit->target->algebra(), "e"));
    CHECK(trivial_moment_map(id->source)->name == "counit");
}

TEST_CASE("Hamiltonian reduction of the identity is one-dimensional") {
    MomentPtr id = classical().moment("id");
    for (int n = 0; n <= 3; ++n) {
        CAPTURE(n);
        ReductionResult r = hamiltonian_reduce(*id, n);
        CHECK(r.dimension() == 1);
        CHECK(invariant_dimension(*id, n) == 1);
        REQUIRE_FALSE(r.basis.empty());
        CHECK(r.basis[0] == id->target->algebra().one());
    }
}

TEST_CASE("Hamiltonian reduction of the fused double") {
    MomentPtr id = classical().moment("id");
    MomentPtr twice = fuse(*id, *id);
    const std::vector<size_t> expected = {1, 1, 2};
    for (int n = 0; n <= 2; ++n) {
        CAPTURE(n);
        ReductionResult left = hamiltonian_reduce(*twice, n, ReductionSide::Left);
        ReductionResult right = hamiltonian_reduce(*twice, n, ReductionSide::Right);
        CHECK(left.dimension() == expected[n]);
        CHECK(right.dimension() == left.dimension());
        CHECK(invariant_dimension(*twice, n) == expected[n]);
    }
    ReductionResult r2 = hamiltonian_reduce(*twice, 2);
    REQUIRE(r2.dimension() == 2);
    CHECK(twice->target->algebra().format(r2.basis[1]) == "h_1^2 + 4*f_1*e_1 + 2*h_1");
}

TEST_CASE("Rosso map") {
    const MomentSource& f = *classical().sources.at("F");
    std::vector<Element> images = rosso_map(f);
    const Presentation& u = f.presentation();
    REQUIRE(images.size() == 3);
    CHECK(images[0] == el(u, "f"));
    CHECK(images[2] == el(u, "e"));
    CHECK(check_rosso(f, 3).passed());
    const MomentSource& fq = *rea().sources.at("Fq");
    const Presentation& uq = fq.covector->coacting().algebra();
    const Presentation& reap = fq.presentation();
    CHECK(rosso_apply(fq, el(reap, "A")) == el(uq, "Ki^2"));
    CHECK(rosso_apply(fq, el(reap, "B")) == el(uq, "(q^2 - q^-2)*F"));
    CHECK(check_rosso(fq, 2).passed());
}

TEST_CASE("reflection equation algebra moment map") {
    MomentPtr id = rea().moment("id-rea");
    CHECK(id->validate(2).passed());
    CHECK(check_moment_map(*id, *id->source->ev, 2).passed());
    CHECK(rea().sources.at("Fq")->validate(2).passed());
    MomentPtr bad = with_values(*id, "bad", {"B", "C", "A", "q*D"});
    CHECK_FALSE(check_moment_map(*bad, *bad->source->ev, 2).passed());
}
