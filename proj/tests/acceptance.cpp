// One line per acceptance criterion; exits nonzero when any criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "support.hpp"

using namespace hopfmm;
using namespace hopfmm::test;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
    void require(bool cond, const std::string& what) {
        if (cond) return;
        ok = false;
        detail += (detail.empty() ? "" : "; ") + what;
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fixed(double s) {
    std::ostringstream o;
    o.precision(2);
    o << std::fixed << s << " s";
    return o.str();
}

bool replays(const MomentMap& m, const Witness& w) {
    const Presentation& f = m.source->presentation();
    const Presentation& a = m.target->algebra();
    auto [lhs, rhs] = moment_map_sides(m, *m.source->ev, el(f, w.inputs.at(0)), el(a, w.inputs.at(1)));
    return lhs != rhs && a.format(lhs) == w.lhs && a.format(rhs) == w.rhs;
}

Outcome hopf_validation() {
    Outcome o;
    std::string times;
    for (const auto& name : builtin_names()) {
        auto t0 = std::chrono::steady_clock::now();
        Workspace ws = load_builtin(name);
        for (const auto& [h, hopf] : ws.hopf) {
            o.require(check_bialgebra(*hopf, 4).passed(), name + ": bialgebra " + h);
            o.require(check_antipode(*hopf, 4).passed(), name + ": antipode " + h);
        }
        double s = seconds_since(t0);
        o.require(s < 10, name + " took " + fixed(s));
        times += (times.empty() ? "" : ", ") + name + " " + fixed(s);
    }
    if (o.ok) o.detail = times;
    return o;
}

Outcome coquasitriangularity() {
    Outcome o;
    const Workspace& ws = builtin("uq-sl2");
    o.require(check_coquasitriangular(*ws.pairings.at("r"), 3).passed(), "r on O_q(SL2) fails");
    HopfPtr u = builtin("classical-sl2-triple").hopf.at("U");
    CheckReport flat = check_coquasitriangular(*pairing("eps", u, u, {}), 3);
    o.require(!flat.passed(), "eps (x) eps on U(sl2) passes");
    const CheckRecord* gens = flat.find("braided-commutativity-generators");
    bool has_ef = false;
    if (gens)
        for (const auto& w : gens->witnesses) has_ef = has_ef || w.inputs == std::vector<std::string>{"e", "f"};
    o.require(has_ef, "no witness (e, f)");
    if (o.ok) o.detail = "r passes at degree 3; eps (x) eps fails at (e, f)";
    return o;
}

Outcome moment_map_theorem() {
    Outcome o;
    MomentPtr id = builtin("classical-sl2-triple").moment("id");
    MomentPtr rea = builtin("rea-sl2").moment("id-rea");
    o.require(check_moment_map(*id, *id->source->ev, 3).passed(), "id on U(sl2) fails");
    o.require(check_moment_map(*rea, *rea->source->ev, 3).passed(), "id on the REA fails");
    for (const auto& bad : {with_values(*id, "bad", {"f", "h", "0"}), with_values(*rea, "bad", {"B", "C", "A", "q*D"})}) {
        CheckReport r = check_moment_map(*bad, *bad->source->ev, 3);
        const Witness* w = r.first_witness();
        o.require(!r.passed() && w && replays(*bad, *w), "corruption of " + bad->target->algebra().name() +
                                                              " not caught with a replayable witness");
    }
    if (o.ok) o.detail = "both identities pass at degree 3; corruptions fail and replay";
    return o;
}

Outcome checker_agreement() {
    Outcome o;
    MomentPtr id = builtin("classical-sl2-triple").moment("id");
    MomentPtr idrea = builtin("rea-sl2").moment("id-rea");
    std::vector<MomentPtr> corpus = {
        id,
        builtin("uhbar-sl2").moment("idh"),
        idrea,
        fuse(*id, *id),
        fuse(*fuse(*id, *id), *id),
        fuse(*id, *trivial_moment_map(id->source)),
        with_values(*id, "zero-e", {"f", "h", "0"}),
        with_values(*id, "double", {"2*f", "2*h", "2*e"}),
        with_values(*id, "shift", {"f", "h + 1", "e"}),
        with_values(*id, "swap", {"e", "h", "f"}),
        with_values(*idrea, "scaled-A", {"B", "C", "q*A", "D"}),
        with_values(*idrea, "zero-B", {"0", "C", "A", "D"}),
    };
    int disagreements = 0, passing = 0;
    for (const auto& m : corpus) {
        bool law = check_moment_map(*m, *m->source->ev, 2).passed();
        bool central = check_centrality(*m, 2).passed();
        if (law != central) {
            ++disagreements;
            o.require(false, m->name + " disagrees");
        }
        passing += law;
    }
    o.require(corpus.size() >= 10, "corpus too small");
    if (o.ok)
        o.detail = std::to_string(corpus.size()) + " maps (" + std::to_string(passing) + " valid), " +
                   std::to_string(disagreements) + " disagreements";
    return o;
}

Outcome fusion() {
    Outcome o;
    MomentPtr id = builtin("classical-sl2-triple").moment("id");
    MomentPtr twice = fuse(*id, *id);
    o.require(check_moment_map(*twice, *id->source->ev, 3).passed(), "fused map fails at degree 3");
    const Presentation& a = twice->target->algebra();
    o.require(twice->values == std::vector<Element>{el(a, "f_1 + f_2"), el(a, "h_1 + h_2"), el(a, "e_1 + e_2")},
              "fused values are not x_1 + x_2");
    CheckReport alone = check_moment_map(*id, *id->source->ev, 3);
    CheckReport unit = check_moment_map(*fuse(*id, *trivial_moment_map(id->source)), *id->source->ev, 3);
    bool same = alone.records.size() == unit.records.size();
    for (size_t i = 0; same && i < alone.records.size(); ++i)
        same = alone.records[i].name == unit.records[i].name && alone.records[i].verdict == unit.records[i].verdict &&
               alone.records[i].cases == unit.records[i].cases;
    o.require(same, "fusion with the trivial pair changes the report");
    if (o.ok) o.detail = "fused map passes at degree 3; mu(x) = x_1 + x_2; trivial unit preserves the report";
    return o;
}

Outcome hamiltonian_reduction() {
    Outcome o;
    MomentPtr id = builtin("classical-sl2-triple").moment("id");
    for (int n = 0; n <= 3; ++n) {
        size_t d = hamiltonian_reduce(*id, n).dimension();
        o.require(d == 1 && invariant_dimension(*id, n) == 1, "(F, id) at N = " + std::to_string(n) + " gives " +
                                                                  std::to_string(d));
    }
    MomentPtr twice = fuse(*id, *id);
    const std::vector<size_t> expected = {1, 1, 2};
    std::string dims;
    for (int n = 0; n <= 2; ++n) {
        size_t d = hamiltonian_reduce(*twice, n).dimension();
        size_t oracle = invariant_dimension(*twice, n);
        dims += (dims.empty() ? "" : ",") + std::to_string(d);
        o.require(d == expected[n] && oracle == expected[n],
                  "fused at N = " + std::to_string(n) + ": " + std::to_string(d) + " vs oracle " + std::to_string(oracle));
    }
    ReductionResult r2 = hamiltonian_reduce(*twice, 2);
    const Presentation& a = twice->target->algebra();
    bool casimir = false;
    for (const auto& b : r2.basis) {
        if (b.max_length() < 2) continue;
        bool central = true;
        for (const char* g : {"e_1", "f_1", "h_1"})
            central = central && a.multiply(el(a, g), b) == a.multiply(b, el(a, g));
        casimir = casimir || central;
    }
    o.require(casimir, "no Casimir-type element in the N = 2 basis");
    if (o.ok) o.detail = "(F, id): 1,1,1,1; fused: " + dims + "; matches the dense oracle";
    return o;
}

Outcome hopf_modules() {
    Outcome o;
    const LeftModule& m = builtin("classical-sl2-triple").modules.at("regular");
    const Presentation& h = m.hopf->algebra();
    size_t cases = 0;
    for (const Word& hw : h.normal_words(2))
        for (const Word& vw : m.space->normal_words(2 - static_cast<int>(hw.size()))) {
            TensorElement x(2, h.ring());
            x.add_term({hw, vw}, h.scalar(1));
            TensorElement a = hopf_module_maps(m, x, HopfModuleMode::Alpha);
            TensorElement b = hopf_module_maps(m, x, HopfModuleMode::Beta);
            o.require(hopf_module_maps(m, a, HopfModuleMode::Beta) == x, "beta(alpha) at " + h.word_to_string(hw));
            o.require(hopf_module_maps(m, b, HopfModuleMode::Alpha) == x, "alpha(beta) at " + h.word_to_string(hw));
            ++cases;
        }
    if (o.ok) o.detail = std::to_string(cases) + " basis tensors";
    return o;
}

Outcome classical_side() {
    Outcome o;
    const Workspace& ws = builtin("classical-sl2-triple");
    const QuasiPoissonData& qp = ws.quasi.at("T/g");
    o.require(check_quasi_poisson_variety(ws.varieties.at("A0"), qp.delta, qp.phi, 3).passed(), "KKS variety fails");
    const ClassicalMoment& m = ws.classical.at("kks");
    bool plain = check_classical_moment_map(m, m.double_lie->h).passed();
    o.require(plain, "mu = id fails the classical checker");
    CheckReport twisted = check_classical_moment_map_twisted(m, *qp.twist);
    const CheckRecord* indep = twisted.find("complement-independence");
    o.require(indep && indep->verdict == Verdict::Pass && twisted.passed() == plain, "verdict changes under the twist");
    LiePtr g = ws.lies.at("T/g");
    MultiVector t = MultiVector::basis({*g->find("e"), *g->find("f")});
    MultiVector tt = schouten(t, t, *g);
    o.require(tt == MultiVector::basis({*g->find("e"), *g->find("f"), *g->find("h")}, Q(2)),
              "schouten(t, t) = " + tt.format(g->names()));
    if (o.ok) o.detail = "schouten(t, t) = " + tt.format(g->names());
    return o;
}

Outcome classical_limit_criterion() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    Workspace ws = load_builtin("uhbar-sl2");
    LimitResult res = classical_limit(ws.limits.at("sl2"));
    double s = seconds_since(t0);
    o.require(res.report.passed(), "limit report fails");
    const AffineQP& declared = ws.varieties.at("A0");
    for (const auto& [ij, v] : declared.bivector) {
        auto it = res.moment.x.bivector.find(ij);
        o.require(it != res.moment.x.bivector.end() &&
                      res.moment.x.ring->format(it->second) == declared.ring->format(v),
                  "bracket differs at " + declared.ring->generators().name(ij.first) + ", " +
                      declared.ring->generators().name(ij.second));
    }
    o.require(check_classical_moment_map(res.moment, res.moment.double_lie->h).passed(), "mu_0 fails");
    o.require(s < 5, "took " + fixed(s));
    if (o.ok) o.detail = "bracket matches the structure constants; mu_0 passes; " + fixed(s);
    return o;
}

Outcome rosso() {
    Outcome o;
    const MomentSource& f = *builtin("classical-sl2-triple").sources.at("F");
    std::vector<Element> images = rosso_map(f);
    const Presentation& u = f.presentation();
    for (int g = 0; g < u.generators().size(); ++g)
        o.require(images.at(g) == u.generator(g), "classical rosso moves " + u.generators().name(g));
    const MomentSource& fq = *builtin("rea-sl2").sources.at("Fq");
    CheckReport r = check_rosso(fq, 2);
    const CheckRecord* mul = r.find("rosso-multiplicative");
    o.require(mul && mul->verdict == Verdict::Pass && r.passed(), "quantum rosso map fails at degree 2");
    if (o.ok) o.detail = "identity on generators; quantum map multiplicative on " + std::to_string(mul->cases) + " pairs";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"hopf-validation", hopf_validation},
        {"coquasitriangularity", coquasitriangularity},
        {"moment-map-theorem", moment_map_theorem},
        {"checker-agreement", checker_agreement},
        {"fusion", fusion},
        {"hamiltonian-reduction", hamiltonian_reduction},
        {"hopf-modules", hopf_modules},
        {"classical-side", classical_side},
        {"classical-limit", classical_limit_criterion},
        {"rosso", rosso},
    };
    int failures = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("threw ") + e.what();
        }
        failures += !o.ok;
        std::cout << (o.ok ? "PASS" : "FAIL") << "  " << i + 1 << ". " << criteria[i].first << ": " << o.detail
                  << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
