#include "hopfmm/moment.hpp"

namespace hopfmm {

namespace {

std::vector<Word> nonempty_words(const Presentation& p, int max_len) {
    std::vector<Word> out;
    for (auto& w : p.normal_words(max_len))
        if (!w.empty()) out.push_back(std::move(w));
    return out;
}

Element shift(const Element& e, int offset) {
    Element out(e.ring());
    for (const auto& [w, c] : e.terms()) {
        Word s = w;
        for (int& x : s) x += offset;
        out.add_term(s, c);
    }
    return out;
}

// Pairs (h, a) of F and A words: all generator pairs, then longer pairs up to total length max_len.
struct PairSet {
    std::vector<std::pair<Word, Word>> generators, words;
};

PairSet moment_pairs(const Presentation& f, const Presentation& a, int max_len) {
    PairSet s;
    for (int i = 0; i < f.generators().size(); ++i)
        for (int j = 0; j < a.generators().size(); ++j) s.generators.push_back({{i}, {j}});
    auto fw = nonempty_words(f, max_len - 1), aw = nonempty_words(a, max_len - 1);
    for (const auto& h : fw)
        for (const auto& x : aw) {
            if (static_cast<int>(h.size() + x.size()) > max_len) continue;
            if (h.size() == 1 && x.size() == 1) continue;
            s.words.push_back({h, x});
        }
    return s;
}

void require_sides(const MomentMap& m, const SkewPairing& ev) {
    const MomentSource& src = *m.source;
    if (&ev.right() != &m.target->coacting())
        throw Error(ErrorKind::IncompatibleSources, m.target->algebra().name() + " is not coacted on by " + ev.right().name());
    if (&ev.left() != &src.covector->coacting())
        throw Error(ErrorKind::IncompatibleSources,
                    "covector coaction of " + src.name + " is not over " + ev.left().name());
}

}  // namespace

Scalar MomentSource::counit_word(const Word& w) const {
    Scalar r = presentation().scalar(1);
    for (int x : w) r *= counit.at(x);
    return r;
}

Scalar MomentSource::counit_of(const Element& e) const {
    Scalar r = presentation().scalar(0);
    for (const auto& [w, c] : e.terms()) r += c * counit_word(w);
    return r;
}

CheckReport MomentSource::validate(int max_degree) const {
    const Presentation& f = presentation();
    if (counit.size() != static_cast<size_t>(f.generators().size()))
        throw Error(ErrorKind::InvalidInput, "counit of " + name + " must cover every generator");
    CheckReport rep("source " + name);

    RecordBuilder shared("shared-base", max_degree);
    shared.check(covector->algebra_ptr() == algebra->algebra_ptr(),
                 [&] { return Witness{{name}, covector->algebra().name(), f.name()}; });
    rep.records.push_back(shared.finish());

    RecordBuilder sides("pairing-sides", max_degree);
    sides.check(&ev->left() == &covector->coacting() && &ev->right() == &algebra->coacting(), [&] {
        return Witness{{ev->name()}, ev->left().name() + " (x) " + ev->right().name(),
                       covector->coacting().name() + " (x) " + algebra->coacting().name()};
    });
    rep.records.push_back(sides.finish());

    RecordBuilder rel("counit-respects-relations", max_degree);
    for (const auto& r : f.rules()) {
        Scalar x = counit_word(r.lhs), y = counit_of(r.rhs);
        rel.check(x == y, [&] { return Witness{{f.word_to_string(r.lhs)}, x.to_string(), y.to_string()}; });
    }
    rep.records.push_back(rel.finish());
    rep.append(algebra->validate(max_degree));
    rep.append(covector->validate(max_degree), "covector ");
    return rep;
}

ComodulePtr covector_from_coproduct(HopfPtr h) {
    std::vector<TensorElement> co;
    for (int g = 0; g < h->algebra().generators().size(); ++g) co.push_back(h->generator_coproduct(g));
    return std::make_shared<ComoduleAlgebra>(h->algebra_ptr(), h, std::move(co));
}

Element MomentMap::apply_word(const Word& w) const {
    const Presentation& a = target->algebra();
    Element r = a.one();
    for (int x : w) r = a.multiply(r, values.at(x));
    return r;
}

Element MomentMap::apply(const Element& f) const {
    Element out = target->algebra().zero();
    for (const auto& [w, c] : f.terms()) out += apply_word(w).scaled(c);
    return out;
}

CheckReport MomentMap::validate(int max_degree) const {
    const Presentation& f = source->presentation();
    const Presentation& a = target->algebra();
    if (values.size() != static_cast<size_t>(f.generators().size()))
        throw Error(ErrorKind::InvalidInput, "moment map " + name + " must cover every generator");
    if (&target->coacting() != &source->algebra->coacting())
        throw Error(ErrorKind::IncompatibleSources, "moment map " + name + " joins comodules over different algebras");
    CheckReport rep("moment map " + name);

    RecordBuilder rel("map-respects-relations", max_degree);
    for (const auto& r : f.rules()) {
        Element x = apply_word(r.lhs), y = apply(r.rhs);
        rel.check(x == y, [&] { return Witness{{f.word_to_string(r.lhs)}, a.format(x), a.format(y)}; });
    }
    rep.records.push_back(rel.finish());

    auto sl = target->slots();
    RecordBuilder eq("equivariance", max_degree);
    for (const auto& w : nonempty_words(f, max_degree)) {
        TensorElement x = target->coact(apply_word(w));
        TensorElement y(2, a.ring());
        for (const auto& [tw, c] : source->algebra->coact_word(w).terms())
            y += TensorElement::pure({apply_word(tw[0]), target->coacting().algebra().word(tw[1])}).scaled(c);
        eq.check(x == y, [&] { return Witness{{f.word_to_string(w)}, format_tensor(x, sl), format_tensor(y, sl)}; });
    }
    rep.records.push_back(eq.finish());
    return rep;
}

std::pair<Element, Element> moment_map_sides(const MomentMap& m, const SkewPairing& ev, const Element& h,
                                             const Element& a) {
    require_sides(m, ev);
    const Presentation& A = m.target->algebra();
    const Presentation& hv = ev.left().algebra();
    Element lhs = A.multiply(m.apply(h), a);
    Element rhs = A.zero();
    for (const auto& [tw, c] : m.source->covector->coact(h).terms()) {
        Element acted = coact_to_act(ev, *m.target, hv.word(tw[1]), a);
        if (acted.is_zero()) continue;
        rhs += A.multiply(acted, m.apply_word(tw[0])).scaled(c);
    }
    return {lhs, rhs};
}

CheckReport check_moment_map(const MomentMap& m, const SkewPairing& ev, int max_degree) {
    require_sides(m, ev);
    const Presentation& f = m.source->presentation();
    const Presentation& A = m.target->algebra();
    CheckReport rep("momentmap " + m.name);
    PairSet ps = moment_pairs(f, A, max_degree);
    auto run = [&](const std::string& name, const std::vector<std::pair<Word, Word>>& pairs) {
        RecordBuilder b(name, max_degree);
        for (const auto& [h, x] : pairs) {
            auto [l, r] = moment_map_sides(m, ev, f.word(h), A.word(x));
            b.check(l == r, [&] { return Witness{{f.word_to_string(h), A.word_to_string(x)}, A.format(l), A.format(r)}; });
        }
        rep.records.push_back(b.finish());
    };
    run("moment-map-generators", ps.generators);
    run("moment-map-words", ps.words);
    return rep;
}

TensorElement adjoint_value(const MomentMap& m, const Element& h) {
    const Presentation& hv = m.source->covector->coacting().algebra();
    TensorElement out(2, m.target->algebra().ring());
    for (const auto& [tw, c] : m.source->covector->coact(h).terms())
        out += TensorElement::pure({m.apply_word(tw[0]), hv.word(tw[1])}).scaled(c);
    return out;
}

std::vector<TensorElement> adjoint_map(const MomentMap& m) {
    const Presentation& f = m.source->presentation();
    std::vector<TensorElement> out;
    for (int g = 0; g < f.generators().size(); ++g) out.push_back(adjoint_value(m, f.generator(g)));
    return out;
}

TensorElement crossed_multiply(const SkewPairing& ev, const ComoduleAlgebra& target, const TensorElement& x,
                               const TensorElement& y) {
    if (x.arity() != 2 || y.arity() != 2) throw Error(ErrorKind::ArityMismatch, "crossed product takes arity 2");
    const HopfStructure& hv = ev.left();
    const Presentation& A = target.algebra();
    const Presentation& H = hv.algebra();
    TensorElement out(2, A.ring());
    for (const auto& [xw, c] : x.terms())
        for (const auto& [dw, d] : hv.coproduct_word(xw[1]).terms()) {
            Element s = hv.antipode_word(dw[0]);
            for (const auto& [yw, e] : y.terms()) {
                Element acted = coact_to_act(ev, target, s, A.word(yw[0]));
                if (acted.is_zero()) continue;
                Element left = A.multiply(A.word(xw[0]), acted);
                Element right = H.multiply(H.word(yw[1]), H.word(dw[1]));
                out += TensorElement::pure({left, right}).scaled(c * d * e);
            }
        }
    return out;
}

CheckReport check_centrality(const MomentMap& m, int max_degree) {
    const SkewPairing& ev = *m.source->ev;
    require_sides(m, ev);
    const Presentation& f = m.source->presentation();
    const Presentation& A = m.target->algebra();
    const Presentation& hv = ev.left().algebra();
    std::vector<const Presentation*> sl{&A, &hv};
    CheckReport rep("centrality " + m.name);
    PairSet ps = moment_pairs(f, A, max_degree);
    auto run = [&](const std::string& name, const std::vector<std::pair<Word, Word>>& pairs) {
        RecordBuilder b(name, max_degree);
        for (const auto& [h, x] : pairs) {
            TensorElement mu = adjoint_value(m, f.word(h));
            TensorElement a = TensorElement::pure({A.word(x), hv.one()});
            TensorElement l = crossed_multiply(ev, *m.target, mu, a), r = crossed_multiply(ev, *m.target, a, mu);
            b.check(l == r, [&] {
                return Witness{{f.word_to_string(h), A.word_to_string(x)}, format_tensor(l, sl), format_tensor(r, sl)};
            });
        }
        rep.records.push_back(b.finish());
    };
    run("centrality-generators", ps.generators);
    run("centrality-words", ps.words);
    return rep;
}

MomentPtr fuse(const MomentMap& m1, const MomentMap& m2) {
    if (m1.source != m2.source)
        throw Error(ErrorKind::IncompatibleSources, m1.name + " and " + m2.name + " have different sources");
    const MomentSource& src = *m1.source;
    if (!src.hopf)
        throw Error(ErrorKind::InvalidInput, "fusion needs a Hopf structure on " + src.name);
    if (&m1.target->coacting() != &m2.target->coacting())
        throw Error(ErrorKind::IncompatibleSources, "fused algebras must be coacted on by the same Hopf algebra");
    const HopfPtr& h = m1.target->coacting_ptr();
    if (!h->algebra().is_commutative())
        throw Error(ErrorKind::InvalidInput, "pointwise fusion needs a commutative " + h->name());

    const Presentation& a1 = m1.target->algebra();
    const Presentation& a2 = m2.target->algebra();
    int n1 = a1.generators().size();
    GeneratorTable gens;
    for (const auto& g : a1.generators().entries())
        gens.add(a2.generators().find(g.name) ? g.name + "_1" : g.name, g.degree);
    for (const auto& g : a2.generators().entries())
        gens.add(a1.generators().find(g.name) ? g.name + "_2" : g.name, g.degree);
    auto fused = std::make_shared<Presentation>(a1.name() + "*" + a2.name(), a1.ring(), gens);
    for (const auto& r : a1.rules()) fused->add_rule(r.lhs, r.rhs);
    for (const auto& r : a2.rules()) {
        Word l = r.lhs;
        for (int& x : l) x += n1;
        fused->add_rule(l, shift(r.rhs, n1));
    }
    for (int y = 0; y < a2.generators().size(); ++y)
        for (int x = 0; x < n1; ++x) fused->add_rule({n1 + y, x}, Element::monomial({x, n1 + y}, a1.scalar(1)));

    auto lift = [&](const TensorElement& t, int offset) {
        TensorElement out(2, t.ring());
        for (const auto& [tw, c] : t.terms()) {
            Word w = tw[0];
            for (int& x : w) x += offset;
            out.add_term({w, tw[1]}, c);
        }
        return out;
    };
    std::vector<TensorElement> co;
    for (int g = 0; g < n1; ++g) co.push_back(lift(m1.target->generator_coaction(g), 0));
    for (int g = 0; g < a2.generators().size(); ++g) co.push_back(lift(m2.target->generator_coaction(g), n1));
    auto target = std::make_shared<ComoduleAlgebra>(fused, h, std::move(co));

    auto out = std::make_shared<MomentMap>();
    out->name = m1.name + "*" + m2.name;
    out->source = m1.source;
    out->target = target;
    const Presentation& f = src.presentation();
    for (int g = 0; g < f.generators().size(); ++g) {
        Element v = fused->zero();
        for (const auto& [tw, c] : src.hopf->generator_coproduct(g).terms()) {
            Element left = m1.apply_word(tw[0]), right = shift(m2.apply_word(tw[1]), n1);
            v += fused->multiply(left, right).scaled(c);
        }
        out->values.push_back(fused->reduce(v));
    }
    return out;
}

MomentPtr trivial_moment_map(SourcePtr source) {
    const MomentSource& src = *source;
    auto k = std::make_shared<Presentation>("k", src.presentation().ring(), GeneratorTable{});
    auto out = std::make_shared<MomentMap>();
    out->name = "counit";
    out->source = source;
    out->target = trivial_comodule(k, src.algebra->coacting_ptr());
    for (const auto& c : src.counit) out->values.push_back(Element::scalar(c));
    return out;
}

ReductionResult hamiltonian_reduce(const MomentMap& m, int max_len, ReductionSide side, bool strict) {
    const Presentation& A = m.target->algebra();
    const Presentation& f = m.source->presentation();
    Ring ring = A.ring();
    ReductionResult res;
    res.degree = max_len;
    res.side = side;

    auto words = A.normal_words(max_len);
    // Largest words first, so the echelon pivots on them and remainders stay short.
    WordIndex idx(ring);
    for (auto it = words.rbegin(); it != words.rend(); ++it) idx.index(*it);
    size_t n = words.size();
    res.slice_dim = n;

    // Coactions first, so every word they mention has a coordinate.
    std::vector<TensorElement> co;
    for (const auto& w : words) {
        co.push_back(m.target->coact_word(w));
        for (const auto& [tw, c] : co.back().terms()) idx.index(tw[0]);
    }
    size_t dim = idx.size();

    Echelon ideal(ring, dim);
    for (const auto& w : words)
        for (int g = 0; g < f.generators().size(); ++g) {
            Element d = m.values.at(g) - A.one().scaled(m.source->counit.at(g));
            Element p = side == ReductionSide::Left ? A.multiply(A.word(w), d) : A.multiply(d, A.word(w));
            if (p.max_length() > max_len) continue;
            ideal.add(idx.coordinates(p));
        }
    res.ideal_dim = ideal.rank();

    // Invariance: a_eta - [eta = 1] a lies in the ideal for every H-word eta of the coaction.
    std::map<Word, std::vector<Vec>> by_eta;  // eta -> one reduced column per slice word
    for (size_t i = 0; i < n; ++i)
        for (const auto& [tw, c] : co[i].terms()) {
            auto& cols = by_eta[tw[1]];
            if (cols.empty()) cols.assign(n, zero_vec(ring, dim));
            Vec& col = cols[i];
            col[*idx.find(tw[0])] += c;
        }
    {
        auto& unit = by_eta[Word{}];
        if (unit.empty()) unit.assign(n, zero_vec(ring, dim));
        for (size_t i = 0; i < n; ++i) unit[i][*idx.find(words[i])] -= Scalar::one(ring);
    }
    std::vector<Vec> rows;
    for (auto& [eta, cols] : by_eta) {
        for (auto& c : cols) c = ideal.reduce(std::move(c));
        for (size_t j = 0; j < dim; ++j) {
            Vec row(n, Scalar::zero(ring));
            bool any = false;
            for (size_t i = 0; i < n; ++i)
                if (!cols[i][j].is_zero()) {
                    row[i] = cols[i][j];
                    any = true;
                }
            if (any) rows.push_back(std::move(row));
        }
    }
    std::vector<Vec> invariant = kernel(rows, n, ring);

    Echelon span = ideal;
    std::vector<Vec> reps;
    Vec one = zero_vec(ring, dim);
    one[*idx.find(Word{})] = Scalar::one(ring);
    std::vector<Vec> candidates{one};
    for (const auto& x : invariant) {
        Vec v = zero_vec(ring, dim);
        for (size_t i = 0; i < n; ++i) v[*idx.find(words[i])] = x[i];
        candidates.push_back(std::move(v));
    }
    for (const auto& v : candidates) {
        if (!span.add(v)) continue;
        reps.push_back(ideal.reduce(v));
        res.basis.push_back(idx.element(reps.back()));
    }

    size_t k = reps.size();
    std::vector<Vec> cols_t(dim, Vec(k, Scalar::zero(ring)));
    for (size_t b = 0; b < k; ++b)
        for (size_t j = 0; j < dim; ++j) cols_t[j][b] = reps[b][j];
    res.product.assign(k, std::vector<std::optional<Vec>>(k));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) {
            Element p = A.multiply(res.basis[i], res.basis[j]);
            auto coords = p.max_length() <= max_len ? idx.coordinates_if_known(p) : std::nullopt;
            if (!coords) {
                if (strict)
                    throw Error(ErrorKind::TruncationUnsound,
                                "product of invariants " + std::to_string(i) + " and " + std::to_string(j) +
                                    " leaves the length " + std::to_string(max_len) + " slice");
                res.partial = true;
                res.note = "some products of invariants leave the slice";
                continue;
            }
            coords->resize(dim, Scalar::zero(ring));
            auto sol = solve(cols_t, ideal.reduce(*coords), k, ring);
            if (!sol) {
                res.partial = true;
                res.note = "a product of invariants is not invariant on the slice";
                continue;
            }
            res.product[i][j] = *sol;
        }
    return res;
}

std::vector<Element> rosso_map(const MomentSource& src) {
    const Presentation& f = src.presentation();
    std::vector<Element> out;
    for (int g = 0; g < f.generators().size(); ++g) out.push_back(rosso_apply(src, f.generator(g)));
    return out;
}

Element rosso_apply(const MomentSource& src, const Element& x) {
    const Presentation& hv = src.covector->coacting().algebra();
    Element out = hv.zero();
    for (const auto& [tw, c] : src.covector->coact(x).terms()) {
        Scalar e = src.counit_word(tw[0]);
        if (!e.is_zero()) out += hv.word(tw[1]).scaled(c * e);
    }
    return out;
}

CheckReport check_rosso(const MomentSource& src, int max_degree) {
    const Presentation& f = src.presentation();
    const Presentation& hv = src.covector->coacting().algebra();
    auto images = rosso_map(src);
    auto image_word = [&](const Word& w) {
        Element r = hv.one();
        for (int x : w) r = hv.multiply(r, images.at(x));
        return r;
    };
    CheckReport rep("rosso " + src.name);

    RecordBuilder rel("rosso-respects-relations", max_degree);
    for (const auto& r : f.rules()) {
        Element x = image_word(r.lhs), y = hv.zero();
        for (const auto& [w, c] : r.rhs.terms()) y += image_word(w).scaled(c);
        rel.check(x == y, [&] { return Witness{{f.word_to_string(r.lhs)}, hv.format(x), hv.format(y)}; });
    }
    rep.records.push_back(rel.finish());

    RecordBuilder mul("rosso-multiplicative", max_degree);
    Element u1 = rosso_apply(src, f.one());
    mul.check(u1 == hv.one(), [&] { return Witness{{"1"}, hv.format(u1), "1"}; });
    auto ws = nonempty_words(f, max_degree - 1);
    for (const auto& u : ws)
        for (const auto& v : ws) {
            if (static_cast<int>(u.size() + v.size()) > max_degree) continue;
            Element l = rosso_apply(src, f.multiply(f.word(u), f.word(v)));
            Element r = hv.multiply(rosso_apply(src, f.word(u)), rosso_apply(src, f.word(v)));
            mul.check(l == r, [&] { return Witness{{f.word_to_string(u), f.word_to_string(v)}, hv.format(l), hv.format(r)}; });
        }
    rep.records.push_back(mul.finish());
    return rep;
}

}  // namespace hopfmm
