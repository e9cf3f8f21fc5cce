#include "hopfmm/hopf.hpp"

namespace hopfmm {

HopfStructure::HopfStructure(PresentationPtr alg, std::vector<TensorElement> coproduct, std::vector<Scalar> counit,
                             std::vector<Element> antipode)
    : alg_(std::move(alg)), coproduct_(std::move(coproduct)), counit_(std::move(counit)),
      antipode_(std::move(antipode)) {
    size_t n = alg_->generators().size();
    if (coproduct_.size() != n || counit_.size() != n || antipode_.size() != n)
        throw Error(ErrorKind::InvalidInput, "structure maps of " + alg_->name() + " must cover every generator");
    for (auto& d : coproduct_) {
        if (d.arity() != 2) throw Error(ErrorKind::ArityMismatch, "coproduct values must have arity 2");
        d = tensor_reduce(d, slots(2));
    }
    for (auto& s : antipode_) s = alg_->reduce(s);
    for (const auto& c : counit_)
        if (c.ring() != alg_->ring()) throw Error(ErrorKind::RingMismatch, "counit value over another ring");
}

TensorElement HopfStructure::coproduct_word(const Word& w) const {
    if (w.empty()) return TensorElement::pure({alg_->one(), alg_->one()});
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = delta_memo_.find(w);
        if (it != delta_memo_.end()) return it->second;
    }
    TensorElement r = coproduct_.at(w.back());
    if (w.size() > 1) r = tensor_multiply(coproduct_word(Word(w.begin(), w.end() - 1)), r, slots(2));
    std::lock_guard<std::mutex> lock(mutex_);
    delta_memo_.emplace(w, r);
    return r;
}

TensorElement HopfStructure::coproduct(const Element& e) const {
    TensorElement out(2, alg_->ring());
    for (const auto& [w, c] : e.terms()) out += coproduct_word(w).scaled(c);
    return out;
}

Scalar HopfStructure::counit_word(const Word& w) const {
    Scalar r = alg_->scalar(1);
    for (int x : w) r *= counit_.at(x);
    return r;
}

Scalar HopfStructure::counit(const Element& e) const {
    Scalar r = alg_->scalar(0);
    for (const auto& [w, c] : e.terms()) r += c * counit_word(w);
    return r;
}

Element HopfStructure::antipode_word(const Word& w) const {
    if (w.empty()) return alg_->one();
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = s_memo_.find(w);
        if (it != s_memo_.end()) return it->second;
    }
    Element r = antipode_.at(w.back());
    if (w.size() > 1) r = alg_->multiply(r, antipode_word(Word(w.begin(), w.end() - 1)));
    std::lock_guard<std::mutex> lock(mutex_);
    s_memo_.emplace(w, r);
    return r;
}

Element HopfStructure::antipode(const Element& e) const {
    Element out = alg_->zero();
    for (const auto& [w, c] : e.terms()) out += antipode_word(w).scaled(c);
    return out;
}

TensorElement HopfStructure::coproduct_left(const Element& e) const {
    TensorElement out(3, alg_->ring());
    for (const auto& [tw, c] : coproduct(e).terms())
        for (const auto& [dw, d] : coproduct_word(tw[0]).terms()) out.add_term({dw[0], dw[1], tw[1]}, c * d);
    return out;
}

TensorElement HopfStructure::coproduct_right(const Element& e) const {
    TensorElement out(3, alg_->ring());
    for (const auto& [tw, c] : coproduct(e).terms())
        for (const auto& [dw, d] : coproduct_word(tw[1]).terms()) out.add_term({tw[0], dw[0], dw[1]}, c * d);
    return out;
}

std::optional<CheckReport> HopfStructure::cached_report(const std::string& key, int degree) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = reports_.find({key, degree});
    if (it == reports_.end()) return std::nullopt;
    return it->second;
}

void HopfStructure::store_report(const std::string& key, int degree, const CheckReport& r) const {
    std::lock_guard<std::mutex> lock(mutex_);
    reports_.emplace(std::make_pair(key, degree), r);
}

namespace {

Element word_element(const Presentation& p, const Word& w) { return Element::monomial(w, p.scalar(1)); }

// (f⊗id)Δ or (id⊗f)Δ for a scalar-valued f, landing back in the algebra.
Element collapse(const HopfStructure& h, const TensorElement& t, bool left) {
    const Presentation& p = h.algebra();
    Element out = p.zero();
    for (const auto& [tw, c] : t.terms()) {
        Scalar e = h.counit_word(left ? tw[0] : tw[1]);
        out += p.word(left ? tw[1] : tw[0]).scaled(c * e);
    }
    return out;
}

}  // namespace

CheckReport check_bialgebra(const HopfStructure& h, int max_degree) {
    if (auto cached = h.cached_report("bialgebra", max_degree)) return *cached;
    const Presentation& p = h.algebra();
    auto s2 = h.slots(2), s3 = h.slots(3);
    CheckReport rep("bialgebra " + p.name());

    RecordBuilder rel_d("coproduct-respects-relations", max_degree);
    RecordBuilder rel_e("counit-respects-relations", max_degree);
    for (const auto& r : p.rules()) {
        TensorElement a = h.coproduct(word_element(p, r.lhs)), b = h.coproduct(r.rhs);
        rel_d.check(a == b, [&] { return Witness{{p.word_to_string(r.lhs)}, format_tensor(a, s2), format_tensor(b, s2)}; });
        Scalar x = h.counit_word(r.lhs), y = h.counit(r.rhs);
        rel_e.check(x == y, [&] { return Witness{{p.word_to_string(r.lhs)}, x.to_string(), y.to_string()}; });
    }
    rep.records.push_back(rel_d.finish());
    rep.records.push_back(rel_e.finish());

    RecordBuilder coassoc("coassociativity", max_degree);
    RecordBuilder cl("counit-left", max_degree), cr("counit-right", max_degree);
    for (const auto& w : p.normal_words(max_degree)) {
        Element e = word_element(p, w);
        TensorElement l = h.coproduct_left(e), r = h.coproduct_right(e);
        coassoc.check(l == r, [&] { return Witness{{p.word_to_string(w)}, format_tensor(l, s3), format_tensor(r, s3)}; });
        TensorElement d = h.coproduct(e);
        Element a = collapse(h, d, true), b = collapse(h, d, false);
        cl.check(a == e, [&] { return Witness{{p.word_to_string(w)}, p.format(a), p.format(e)}; });
        cr.check(b == e, [&] { return Witness{{p.word_to_string(w)}, p.format(b), p.format(e)}; });
    }
    rep.records.push_back(coassoc.finish());
    rep.records.push_back(cl.finish());
    rep.records.push_back(cr.finish());
    h.store_report("bialgebra", max_degree, rep);
    return rep;
}

CheckReport check_antipode(const HopfStructure& h, int max_degree) {
    if (auto cached = h.cached_report("antipode", max_degree)) return *cached;
    const Presentation& p = h.algebra();
    auto s2 = h.slots(2);
    CheckReport rep("antipode " + p.name());

    RecordBuilder rel("antipode-respects-relations", max_degree);
    for (const auto& r : p.rules()) {
        Element a = h.antipode(word_element(p, r.lhs)), b = h.antipode(r.rhs);
        rel.check(a == b, [&] { return Witness{{p.word_to_string(r.lhs)}, p.format(a), p.format(b)}; });
    }
    rep.records.push_back(rel.finish());

    RecordBuilder left("antipode-left", max_degree), right("antipode-right", max_degree);
    RecordBuilder counit("counit-of-antipode", max_degree), cop("coproduct-of-antipode", max_degree);
    for (const auto& w : p.normal_words(max_degree)) {
        Element e = word_element(p, w);
        TensorElement d = h.coproduct(e);
        Element l = p.zero(), r = p.zero();
        TensorElement flipped(2, p.ring());
        for (const auto& [tw, c] : d.terms()) {
            l += p.multiply(h.antipode_word(tw[0]), p.word(tw[1])).scaled(c);
            r += p.multiply(p.word(tw[0]), h.antipode_word(tw[1])).scaled(c);
            flipped += TensorElement::pure({h.antipode_word(tw[1]), h.antipode_word(tw[0])}).scaled(c);
        }
        Element unit = p.one().scaled(h.counit_word(w));
        left.check(l == unit, [&] { return Witness{{p.word_to_string(w)}, p.format(l), p.format(unit)}; });
        right.check(r == unit, [&] { return Witness{{p.word_to_string(w)}, p.format(r), p.format(unit)}; });
        Element s = h.antipode_word(w);
        Scalar es = h.counit(s), ew = h.counit_word(w);
        counit.check(es == ew, [&] { return Witness{{p.word_to_string(w)}, es.to_string(), ew.to_string()}; });
        TensorElement ds = h.coproduct(s);
        cop.check(ds == flipped,
                  [&] { return Witness{{p.word_to_string(w)}, format_tensor(ds, s2), format_tensor(flipped, s2)}; });
    }
    rep.records.push_back(left.finish());
    rep.records.push_back(right.finish());
    rep.records.push_back(counit.finish());
    rep.records.push_back(cop.finish());
    h.store_report("antipode", max_degree, rep);
    return rep;
}

Element LeftModule::image_of(const Element& h) const {
    const Presentation& v = *space;
    Element out = v.zero();
    for (const auto& [w, c] : h.terms()) {
        Element t = v.one();
        for (int x : w) t = v.multiply(t, image.at(x));
        out += t.scaled(c);
    }
    return out;
}

Element LeftModule::act(const Element& h, const Element& v) const { return space->multiply(image_of(h), v); }

CheckReport check_module(const LeftModule& m) {
    const Presentation& p = m.hopf->algebra();
    CheckReport rep("module " + m.space->name());
    RecordBuilder rel("action-respects-relations", 0);
    if (m.image.size() != static_cast<size_t>(p.generators().size()))
        throw Error(ErrorKind::InvalidInput, "module action must cover every generator");
    for (const auto& r : p.rules()) {
        Element a = m.image_of(Element::monomial(r.lhs, p.scalar(1))), b = m.image_of(r.rhs);
        rel.check(a == b, [&] { return Witness{{p.word_to_string(r.lhs)}, m.space->format(a), m.space->format(b)}; });
    }
    rep.records.push_back(rel.finish());
    return rep;
}

TensorElement hopf_module_maps(const LeftModule& m, const TensorElement& x, HopfModuleMode mode) {
    if (x.arity() != 2) throw Error(ErrorKind::ArityMismatch, "Hopf module maps act on h (x) v");
    const HopfStructure& h = *m.hopf;
    TensorElement out(2, x.ring());
    for (const auto& [tw, c] : x.terms()) {
        Element v = m.space->word(tw[1]);
        for (const auto& [dw, d] : h.coproduct_word(tw[0]).terms()) {
            Element second = mode == HopfModuleMode::Alpha ? h.algebra().word(dw[1]) : h.antipode_word(dw[1]);
            out += TensorElement::pure({h.algebra().word(dw[0]), m.act(second, v)}).scaled(c * d);
        }
    }
    return out;
}

}  // namespace hopfmm
