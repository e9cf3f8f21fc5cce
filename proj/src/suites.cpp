#include <sstream>

#include "hopfmm/workbench.hpp"

namespace hopfmm {

namespace {

using SuiteFn = CheckReport (*)(const Workspace&, int);

std::vector<Word> words_up_to(const Presentation& p, int max_len) { return p.normal_words(max_len); }

// beta(alpha(x)) = x and alpha(beta(x)) = x on basis tensors h (x) v with |h| + |v| <= degree.
CheckRecord hopf_module_inverse(const LeftModule& m, int degree) {
    RecordBuilder b("alpha-beta-inverse", degree);
    const Presentation& h = m.hopf->algebra();
    const Presentation& v = *m.space;
    std::vector<const Presentation*> slots{&h, &v};
    for (const Word& hw : words_up_to(h, degree))
        for (const Word& vw : words_up_to(v, degree - static_cast<int>(hw.size()))) {
            TensorElement x(2, h.ring());
            x.add_term({hw, vw}, h.scalar(1));
            TensorElement ab = hopf_module_maps(m, hopf_module_maps(m, x, HopfModuleMode::Alpha), HopfModuleMode::Beta);
            TensorElement ba = hopf_module_maps(m, hopf_module_maps(m, x, HopfModuleMode::Beta), HopfModuleMode::Alpha);
            std::string in = h.word_to_string(hw) + " (x) " + v.word_to_string(vw);
            b.check(ab == x, [&] { return Witness{{in}, format_tensor(ab, slots), format_tensor(x, slots)}; });
            b.check(ba == x, [&] { return Witness{{in}, format_tensor(ba, slots), format_tensor(x, slots)}; });
        }
    return b.finish();
}

CheckReport suite_hopf(const Workspace& ws, int degree) {
    CheckReport out("hopf");
    for (const auto& [name, h] : ws.hopf) {
        out.append(check_bialgebra(*h, degree), name + ": ");
        out.append(check_antipode(*h, degree), name + ": ");
    }
    for (const auto& [name, m] : ws.modules) {
        CheckReport r(name);
        r.records.push_back(hopf_module_inverse(m, degree));
        out.append(check_module(m), name + ": ");
        out.append(r, name + ": ");
    }
    return out;
}

CheckReport suite_pairing(const Workspace& ws, int degree) {
    CheckReport out("pairing");
    for (const auto& [name, p] : ws.pairings) out.append(p->validate(degree), name + ": ");
    return out;
}

CheckReport suite_coqt(const Workspace& ws, int degree) {
    CheckReport out("coqt");
    for (const auto& [name, p] : ws.pairings)
        if (&p->left() == &p->right()) out.append(check_coquasitriangular(*p, degree), name + ": ");
    for (const auto& [name, r] : ws.relatives)
        out.append(check_relative_coquasitriangular(*r.rh, *r.map, *r.rd, degree), name + ": ");
    return out;
}

CheckReport suite_momentmap(const Workspace& ws, int degree) {
    CheckReport out("momentmap");
    for (const auto& [name, m] : ws.moments) {
        out.append(m->validate(degree), name + ": ");
        out.append(check_moment_map(*m, *m->source->ev, degree), name + ": ");
    }
    return out;
}

CheckReport suite_centrality(const Workspace& ws, int degree) {
    CheckReport out("centrality");
    for (const auto& [name, m] : ws.moments) out.append(check_centrality(*m, degree), name + ": ");
    return out;
}

bool fusable(const MomentMap& m) {
    return m.source->hopf && m.target->coacting().algebra().is_commutative();
}

// Each fusable map is fused with itself and with the trivial pair; the latter must reproduce the
// verdicts of the map alone, record by record.
CheckReport suite_fuse(const Workspace& ws, int degree) {
    CheckReport out("fuse");
    for (const auto& [name, m] : ws.moments) {
        if (!fusable(*m)) continue;
        MomentPtr twice = fuse(*m, *m);
        out.append(check_moment_map(*twice, *m->source->ev, degree), twice->name + ": ");
        CheckReport alone = check_moment_map(*m, *m->source->ev, degree);
        CheckReport with_unit =
            check_moment_map(*fuse(*m, *trivial_moment_map(m->source)), *m->source->ev, degree);
        RecordBuilder b("trivial-unit", degree);
        b.check(alone.records.size() == with_unit.records.size(), [&] {
            return Witness{{name}, std::to_string(with_unit.records.size()) + " records",
                           std::to_string(alone.records.size()) + " records"};
        });
        for (size_t i = 0; i < alone.records.size() && i < with_unit.records.size(); ++i) {
            const auto& x = alone.records[i];
            const auto& y = with_unit.records[i];
            b.check(x.name == y.name && x.verdict == y.verdict && x.cases == y.cases, [&] {
                return Witness{{x.name}, std::string(verdict_name(y.verdict)) + " on " + std::to_string(y.cases),
                               std::string(verdict_name(x.verdict)) + " on " + std::to_string(x.cases)};
            });
        }
        CheckReport r(name);
        r.records.push_back(b.finish());
        out.append(r, name + ": ");
    }
    return out;
}

CheckReport suite_hamred(const Workspace& ws, int degree) {
    CheckReport out("hamred");
    for (const auto& [name, m] : ws.moments) {
        CheckRecord rec;
        rec.name = name + ": reduction";
        rec.degree = degree;
        ReductionResult res = hamiltonian_reduce(*m, degree);
        rec.cases = res.slice_dim;
        std::ostringstream note;
        note << "dimension " << res.dimension() << ":";
        for (const auto& e : res.basis) note << " [" << m->target->algebra().format(e) << "]";
        if (res.partial) {
            rec.verdict = Verdict::Partial;
            note << "; " << res.note;
        }
        rec.note = note.str();
        out.records.push_back(rec);
    }
    return out;
}

CheckReport suite_rosso(const Workspace& ws, int degree) {
    CheckReport out("rosso");
    for (const auto& [name, s] : ws.sources) out.append(check_rosso(*s, degree), name + ": ");
    return out;
}

CheckReport suite_classical(const Workspace& ws, int degree) {
    CheckReport out("classical");
    for (const auto& [lname, q] : ws.quasi) {
        const LieData& l = *ws.lies.at(lname);
        if (!l.g.empty()) out.append(check_group_pair(l), lname + ": ");
        for (const auto& [xname, x] : ws.varieties)
            if (x.lie->name() == lname) {
                out.append(check_quasi_poisson_variety(x, q.delta, q.phi, degree), xname + ": ");
                if (q.twist) {
                    auto [delta, phi] = twist_infinitesimal(q.delta, q.phi, *q.twist, l);
                    out.append(check_quasi_poisson_variety(twist_bivector(x, *q.twist), delta, phi, degree),
                               xname + " twisted: ");
                }
            }
    }
    for (const auto& [name, m] : ws.classical) {
        auto q = ws.quasi.find(m.x.lie->name());
        if (q != ws.quasi.end() && q->second.twist)
            out.append(check_classical_moment_map_twisted(m, *q->second.twist), name + ": ");
        else
            out.append(check_classical_moment_map(m, m.double_lie->h), name + ": ");
    }
    return out;
}

std::string bracket_text(const Bracket& br, const Presentation& p) {
    std::string s;
    for (const auto& [ij, v] : br) {
        if (!s.empty()) s += ", ";
        s += "{" + p.generators().name(ij.first) + ", " + p.generators().name(ij.second) + "} = " + p.format(v);
    }
    return s.empty() ? "0" : s;
}

CheckReport suite_limit(const Workspace& ws, int degree) {
    CheckReport out("limit");
    for (const auto& [name, p] : ws.limits) {
        LimitProblem q = p;
        q.degree = degree;
        LimitResult res = classical_limit(q);
        out.append(res.report, name + ": ");
        CheckRecord rec;
        rec.name = name + ": extracted";
        rec.degree = degree;
        rec.note = "source " + bracket_text(res.moment.dg.bivector, *res.moment.dg.ring) + "; target " +
                   bracket_text(res.moment.x.bivector, *res.moment.x.ring);
        out.records.push_back(rec);
    }
    return out;
}

const std::vector<std::pair<std::string, SuiteFn>>& suites() {
    static const std::vector<std::pair<std::string, SuiteFn>> table = {
        {"hopf", suite_hopf},         {"pairing", suite_pairing}, {"coqt", suite_coqt},
        {"momentmap", suite_momentmap}, {"centrality", suite_centrality}, {"fuse", suite_fuse},
        {"hamred", suite_hamred},     {"rosso", suite_rosso},     {"classical", suite_classical},
        {"limit", suite_limit},
    };
    return table;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [name, fn] : suites()) n.push_back(name);
        return n;
    }();
    return names;
}

CheckReport run_suite(const std::string& suite, const Workspace& ws, int degree) {
    for (const auto& [name, fn] : suites())
        if (name == suite) return fn(ws, degree);
    throw Error(ErrorKind::InvalidInput, "unknown suite " + suite);
}

}  // namespace hopfmm
