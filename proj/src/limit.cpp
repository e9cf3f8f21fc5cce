#include "hopfmm/limit.hpp"

namespace hopfmm {

namespace {

// Generator ids of `from` as ids of `to`, matched by name.
std::vector<int> name_map(const Presentation& from, const Presentation& to) {
    std::vector<int> out;
    for (const auto& g : from.generators().entries()) {
        auto id = to.generators().find(g.name);
        if (!id) throw Error(ErrorKind::NotFlat, "generator " + g.name + " of " + from.name() + " is missing from " + to.name());
        out.push_back(*id);
    }
    return out;
}

Element transport(const Element& e, const Presentation& from, const Presentation& to, bool slope) {
    auto ids = name_map(from, to);
    Element out(to.ring());
    for (const auto& [w, c] : e.terms()) {
        Scalar v = slope ? c.slope() : c.body();
        if (v.is_zero()) continue;
        Word m;
        for (int x : w) m.push_back(ids[x]);
        out.add_term(m, v.in_ring(to.ring()));
    }
    return to.reduce(out);
}

Element raw_word(const Word& w, const Presentation& p) { return Element::monomial(w, p.scalar(1)); }

// Tangent-at-the-unit extension of a form given on generators: derivation in each argument at eps.
Scalar tangent_form(const std::map<std::pair<int, int>, Scalar>& form, const HopfStructure& h, const Word& u,
                    const Word& v) {
    Ring r = h.algebra().ring();
    Scalar out = Scalar::zero(r);
    for (size_t k = 0; k < u.size(); ++k)
        for (size_t l = 0; l < v.size(); ++l) {
            auto it = form.find({u[k], v[l]});
            if (it == form.end() || it->second.is_zero()) continue;
            Scalar c = it->second;
            for (size_t m = 0; m < u.size(); ++m)
                if (m != k) c *= h.generator_counit(u[m]);
            for (size_t m = 0; m < v.size(); ++m)
                if (m != l) c *= h.generator_counit(v[m]);
            out += c;
        }
    return out;
}

}  // namespace

PresentationPtr body_presentation(const Presentation& quantized, const std::string& name) {
    auto p = std::make_shared<Presentation>(name, ring_base(quantized.ring()), quantized.generators());
    for (const auto& r : quantized.rules()) {
        Element rhs(p->ring());
        for (const auto& [w, c] : r.rhs.terms()) rhs.add_term(w, c.body());
        p->add_rule_unchecked(r.lhs, rhs);
    }
    return p;
}

HopfPtr body_hopf(const HopfStructure& quantized, PresentationPtr classical) {
    const Presentation& q = quantized.algebra();
    int n = q.generators().size();
    std::vector<TensorElement> delta;
    std::vector<Scalar> eps;
    std::vector<Element> s;
    for (int i = 0; i < n; ++i) {
        TensorElement d(2, classical->ring());
        for (const auto& [tw, c] : quantized.generator_coproduct(i).terms()) d.add_term(tw, c.body());
        delta.push_back(d);
        eps.push_back(quantized.generator_counit(i).body());
        s.push_back(body_part(quantized.generator_antipode(i), q, *classical));
    }
    return std::make_shared<HopfStructure>(classical, delta, eps, s);
}

Element body_part(const Element& e, const Presentation& from, const Presentation& to) {
    return transport(e, from, to, false);
}

Element slope_part(const Element& e, const Presentation& from, const Presentation& to) {
    return transport(e, from, to, true);
}

void check_flat(const Presentation& quantized, const Presentation& classical, int max_degree) {
    if (!ring_is_dual(quantized.ring()) || classical.ring() != ring_base(quantized.ring()))
        throw Error(ErrorKind::RingMismatch, quantized.name() + " must be over the dual numbers of " +
                                                 ring_name(classical.ring()));
    if (quantized.generators().size() != classical.generators().size())
        throw Error(ErrorKind::NotFlat, quantized.name() + " and " + classical.name() + " have different generators");
    auto ids = name_map(quantized, classical);
    auto pairs = quantized.confluence_report(max_degree);
    if (!pairs.empty())
        throw Error(ErrorKind::NotFlat, "critical pair " + quantized.word_to_string(pairs.front().overlap) + " of " +
                                            quantized.name() + " does not resolve: " +
                                            quantized.format(pairs.front().first) + " vs " +
                                            quantized.format(pairs.front().second));
    for (const auto& r : quantized.rules()) {
        Word lhs;
        for (int x : r.lhs) lhs.push_back(ids[x]);
        Element a = classical.reduce(raw_word(lhs, classical)), b = body_part(r.rhs, quantized, classical);
        if (a != b)
            throw Error(ErrorKind::NotFlat, "rule " + quantized.word_to_string(r.lhs) + " of " + quantized.name() +
                                                " has body " + classical.format(b) + ", expected " + classical.format(a));
    }
    auto back = name_map(classical, quantized);
    for (const auto& r : classical.rules()) {
        Word lhs;
        for (int x : r.lhs) lhs.push_back(back[x]);
        Element a = body_part(quantized.normal_form(lhs), quantized, classical), b = classical.reduce(r.rhs);
        if (a != b)
            throw Error(ErrorKind::NotFlat, "rule " + classical.word_to_string(r.lhs) + " of " + classical.name() +
                                                " is not the body of " + quantized.name() + ": " + classical.format(a));
    }
}

Bracket extract_bracket(const Presentation& quantized, const Presentation& classical) {
    Bracket out;
    int n = quantized.generators().size();
    auto ids = name_map(quantized, classical);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Element x = quantized.generator(i), y = quantized.generator(j);
            Element c = quantized.multiply(x, y) - quantized.multiply(y, x);
            Element body = body_part(c, quantized, classical);
            if (!body.is_zero())
                throw Error(ErrorKind::NotFlat, "generators " + quantized.generators().name(i) + ", " +
                                                    quantized.generators().name(j) + " of " + quantized.name() +
                                                    " do not commute at hbar = 0");
            Element s = slope_part(c, quantized, classical);
            if (s.is_zero()) continue;
            int a = ids[i], b = ids[j];
            if (a < b)
                out[{a, b}] = s;
            else
                out[{b, a}] = -s;
        }
    return out;
}

RLimit r_matrix_limit(const HopfStructure& quantized, const SkewPairing& r) {
    const Presentation& q = quantized.algebra();
    if (&r.left() != &quantized || &r.right() != &quantized)
        throw Error(ErrorKind::IncompatibleSources, r.name() + " is not a form on " + q.name());
    RLimit out;
    auto classical = body_presentation(q, q.name() + "0");
    check_flat(q, *classical);
    out.classical = body_hopf(quantized, classical);
    const HopfStructure& h = *out.classical;
    const Presentation& d = *classical;
    int n = d.generators().size();
    out.report = CheckReport("r-matrix limit " + q.name());
    auto gname = [&](int i) { return d.generators().name(i); };

    RecordBuilder body("r-body", 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Scalar v = r.pair_words({i}, {j});
            Scalar expect = h.generator_counit(i) * h.generator_counit(j);
            body.check(v.body() == expect, [&] { return Witness{{gname(i), gname(j)}, v.to_string(), expect.to_string()}; });
            if (!v.slope().is_zero()) out.r[{i, j}] = v.slope();
        }
    out.report.records.push_back(body.finish());

    std::map<std::pair<int, int>, Scalar> sym;
    Scalar half = Scalar::rational(Rational(1, 2), d.ring());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Scalar a = out.r.count({i, j}) ? out.r.at({i, j}) : d.scalar(0);
            Scalar b = out.r.count({j, i}) ? out.r.at({j, i}) : d.scalar(0);
            if (!(a + b).is_zero()) sym[{i, j}] = (a + b) * half;
        }

    // f -> f2 (x) f1 S(f3) is conjugation; invariance means the coacting legs multiply to c(x, y) 1.
    RecordBuilder inv("r-symmetric-invariant", 3);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            TensorElement u = h.coproduct_left(d.generator(i)), v = h.coproduct_left(d.generator(j));
            Element lhs = d.zero();
            for (const auto& [uw, uc] : u.terms())
                for (const auto& [vw, vc] : v.terms()) {
                    Scalar c = tangent_form(sym, h, uw[1], vw[1]);
                    if (c.is_zero()) continue;
                    Element x = d.multiply(d.word(uw[0]), h.antipode_word(uw[2]));
                    Element y = d.multiply(d.word(vw[0]), h.antipode_word(vw[2]));
                    lhs += d.multiply(x, y).scaled(c * uc * vc);
                }
            Element rhs = d.one().scaled(tangent_form(sym, h, {i}, {j}));
            inv.check(lhs == rhs, [&] { return Witness{{gname(i), gname(j)}, d.format(lhs), d.format(rhs)}; });
        }
    out.report.records.push_back(inv.finish());

    out.bracket = extract_bracket(q, d);
    AffineQP biv{d.name(), classical, std::make_shared<LieData>("0", std::vector<std::string>{}), {}, out.bracket};
    out.report.append(biv.validate(), "bracket ");

    RecordBuilder mult("bracket-multiplicative", 2), induced("bracket-from-r", 2);
    auto slots = h.slots(2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Element x = d.generator(i), y = d.generator(j);
            Element br = biv.bracket(x, y);
            TensorElement lhs = tensor_reduce(h.coproduct(br), slots), rhs(2, d.ring());
            TensorElement dx = h.coproduct(x), dy = h.coproduct(y);
            for (const auto& [a, ac] : dx.terms())
                for (const auto& [b, bc] : dy.terms()) {
                    Element a0 = d.word(a[0]), a1 = d.word(a[1]), b0 = d.word(b[0]), b1 = d.word(b[1]);
                    rhs += TensorElement::pure({biv.bracket(a0, b0), d.multiply(a1, b1)}).scaled(ac * bc);
                    rhs += TensorElement::pure({d.multiply(a0, b0), biv.bracket(a1, b1)}).scaled(ac * bc);
                }
            rhs = tensor_reduce(rhs, slots);
            mult.check(lhs == rhs, [&] {
                return Witness{{gname(i), gname(j)}, format_tensor(lhs, slots), format_tensor(rhs, slots)};
            });

            Element from_r = d.zero();
            for (const auto& [a, ac] : dx.terms())
                for (const auto& [b, bc] : dy.terms()) {
                    Scalar second = tangent_form(out.r, h, a[1], b[1]), first = tangent_form(out.r, h, a[0], b[0]);
                    if (!second.is_zero())
                        from_r += d.multiply(d.word(b[0]), d.word(a[0])).scaled(second * ac * bc);
                    if (!first.is_zero())
                        from_r = from_r - d.multiply(d.word(a[1]), d.word(b[1])).scaled(first * ac * bc);
                }
            induced.check(br == from_r, [&] { return Witness{{gname(i), gname(j)}, d.format(br), d.format(from_r)}; });
        }
    out.report.records.push_back(mult.finish());
    out.report.records.push_back(induced.finish());
    return out;
}

LimitResult classical_limit(const LimitProblem& p) {
    const MomentMap& mq = *p.quantum;
    const Presentation& fq = mq.source->presentation();
    const Presentation& aq = mq.target->algebra();
    const Presentation& f0 = *p.source.ring;
    const Presentation& a0 = *p.target.ring;
    check_flat(fq, f0);
    check_flat(aq, a0);

    LimitResult out;
    out.report = CheckReport("limit " + mq.name);
    out.report.append(check_moment_map(mq, *mq.source->ev, p.degree), "quantum ");

    ClassicalMoment& m = out.moment;
    m.double_lie = p.double_lie;
    m.dg = p.source;
    m.x = p.target;
    m.dg.bivector = extract_bracket(fq, f0);
    m.x.bivector = extract_bracket(aq, a0);
    auto ids = name_map(fq, f0);
    m.mu.assign(f0.generators().size(), a0.zero());
    for (int g = 0; g < fq.generators().size(); ++g) m.mu[ids[g]] = body_part(mq.values[g], aq, a0);

    out.report.append(m.dg.validate());
    out.report.append(m.x.validate());
    if (p.double_hopf && p.r) {
        out.r = r_matrix_limit(*p.double_hopf, *p.r);
        out.report.append(out.r->report);
    }
    out.report.append(check_classical_moment_map(m, p.double_lie->h), "classical ");
    return out;
}

}  // namespace hopfmm
