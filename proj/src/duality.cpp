#include "hopfmm/duality.hpp"

namespace hopfmm {

namespace {

Element word_element(const Presentation& p, const Word& w) { return Element::monomial(w, p.scalar(1)); }

std::vector<Word> nonempty_words(const Presentation& p, int max_len) {
    auto all = p.normal_words(max_len);
    all.erase(all.begin());
    return all;
}

}  // namespace

// ---------------------------------------------------------------- SkewPairing

SkewPairing::SkewPairing(std::string name, HopfPtr left, HopfPtr right, Table table)
    : name_(std::move(name)), left_(std::move(left)), right_(std::move(right)), table_(std::move(table)) {
    if (left_->algebra().ring() != right_->algebra().ring())
        throw Error(ErrorKind::RingMismatch, "pairing " + name_ + " between algebras over different rings");
    for (auto it = table_.begin(); it != table_.end();) {
        auto [l, r] = it->first;
        if (l < 0 || l >= left_->algebra().generators().size() || r < 0 ||
            r >= right_->algebra().generators().size())
            throw Error(ErrorKind::UnknownGenerator, "pairing table entry out of range");
        if (it->second.ring() != ring()) throw Error(ErrorKind::RingMismatch, "pairing value over another ring");
        it = it->second.is_zero() ? table_.erase(it) : std::next(it);
    }
}

Scalar SkewPairing::pair_words(const Word& a, const Word& b) const {
    if (a.empty()) return right_->counit_word(b);
    if (b.empty()) return left_->counit_word(a);
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = memo_.find({a, b});
        if (it != memo_.end()) return it->second;
    }
    Scalar r = Scalar::zero(ring());
    if (a.size() > 1) {
        Word head{a[0]}, tail(a.begin() + 1, a.end());
        for (const auto& [tw, c] : right_->coproduct_word(b).terms()) {
            Scalar x = pair_words(head, tw[0]);
            if (x.is_zero()) continue;
            r += c * x * pair_words(tail, tw[1]);
        }
    } else if (b.size() > 1) {
        Word head{b[0]}, tail(b.begin() + 1, b.end());
        for (const auto& [tw, c] : left_->coproduct_word(a).terms()) {
            Scalar x = pair_words(tw[1], head);
            if (x.is_zero()) continue;
            r += c * pair_words(tw[0], tail) * x;
        }
    } else {
        auto it = table_.find({a[0], b[0]});
        if (it != table_.end()) r = it->second;
    }
    std::lock_guard<std::mutex> lock(mutex_);
    memo_.emplace(std::make_pair(a, b), r);
    return r;
}

Scalar SkewPairing::pair(const Element& a, const Element& b) const {
    Scalar r = Scalar::zero(ring());
    for (const auto& [wa, ca] : a.terms())
        for (const auto& [wb, cb] : b.terms()) r += ca * cb * pair_words(wa, wb);
    return r;
}

Scalar SkewPairing::convolution_inverse(const Element& a, const Element& b) const {
    return pair(left_->antipode(a), b);
}

CheckReport SkewPairing::validate(int max_degree) const {
    const Presentation &L = left_->algebra(), &R = right_->algebra();
    CheckReport rep("pairing " + name_);
    auto lwords = L.normal_words(max_degree), rwords = R.normal_words(max_degree);

    RecordBuilder lrel("left-relations", max_degree);
    for (const auto& rule : L.rules())
        for (const auto& v : rwords) {
            Scalar x = pair_words(rule.lhs, v), y = pair(rule.rhs, word_element(R, v));
            lrel.check(x == y, [&] {
                return Witness{{L.word_to_string(rule.lhs), R.word_to_string(v)}, x.to_string(), y.to_string()};
            });
        }
    rep.records.push_back(lrel.finish());

    RecordBuilder rrel("right-relations", max_degree);
    for (const auto& rule : R.rules())
        for (const auto& u : lwords) {
            Scalar x = pair_words(u, rule.lhs), y = pair(word_element(L, u), rule.rhs);
            rrel.check(x == y, [&] {
                return Witness{{L.word_to_string(u), R.word_to_string(rule.lhs)}, x.to_string(), y.to_string()};
            });
        }
    rep.records.push_back(rrel.finish());

    RecordBuilder lprod("product-law-left", max_degree);
    auto lne = nonempty_words(L, max_degree - 1);
    for (const auto& a : lne)
        for (const auto& b : lne) {
            if (static_cast<int>(a.size() + b.size()) > max_degree) continue;
            Element ab = L.multiply(word_element(L, a), word_element(L, b));
            for (const auto& c : rwords) {
                Scalar x = pair(ab, word_element(R, c)), y = Scalar::zero(ring());
                for (const auto& [tw, k] : right_->coproduct_word(c).terms())
                    y += k * pair_words(a, tw[0]) * pair_words(b, tw[1]);
                lprod.check(x == y, [&] {
                    return Witness{{L.word_to_string(a), L.word_to_string(b), R.word_to_string(c)}, x.to_string(),
                                   y.to_string()};
                });
            }
        }
    rep.records.push_back(lprod.finish());

    RecordBuilder rprod("product-law-right", max_degree);
    auto rne = nonempty_words(R, max_degree - 1);
    for (const auto& b : rne)
        for (const auto& c : rne) {
            if (static_cast<int>(b.size() + c.size()) > max_degree) continue;
            Element bc = R.multiply(word_element(R, b), word_element(R, c));
            for (const auto& a : lwords) {
                Scalar x = pair(word_element(L, a), bc), y = Scalar::zero(ring());
                for (const auto& [tw, k] : left_->coproduct_word(a).terms())
                    y += k * pair_words(tw[0], c) * pair_words(tw[1], b);
                rprod.check(x == y, [&] {
                    return Witness{{L.word_to_string(a), R.word_to_string(b), R.word_to_string(c)}, x.to_string(),
                                   y.to_string()};
                });
            }
        }
    rep.records.push_back(rprod.finish());
    return rep;
}

// ---------------------------------------------------------------- ComoduleAlgebra

ComoduleAlgebra::ComoduleAlgebra(PresentationPtr base, HopfPtr coacting, std::vector<TensorElement> coaction)
    : base_(std::move(base)), coacting_(std::move(coacting)), coaction_(std::move(coaction)) {
    if (coaction_.size() != static_cast<size_t>(base_->generators().size()))
        throw Error(ErrorKind::InvalidInput, "coaction on " + base_->name() + " must cover every generator");
    if (base_->ring() != coacting_->algebra().ring())
        throw Error(ErrorKind::RingMismatch, "coaction between algebras over different rings");
    for (auto& t : coaction_) {
        if (t.arity() != 2) throw Error(ErrorKind::ArityMismatch, "coaction values must have arity 2");
        t = tensor_reduce(t, slots());
    }
}

TensorElement ComoduleAlgebra::coact_word(const Word& w) const {
    if (w.empty()) return TensorElement::pure({base_->one(), coacting_->algebra().one()});
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = memo_.find(w);
        if (it != memo_.end()) return it->second;
    }
    TensorElement r = coaction_.at(w.back());
    if (w.size() > 1) r = tensor_multiply(coact_word(Word(w.begin(), w.end() - 1)), r, slots());
    std::lock_guard<std::mutex> lock(mutex_);
    memo_.emplace(w, r);
    return r;
}

TensorElement ComoduleAlgebra::coact(const Element& a) const {
    TensorElement out(2, base_->ring());
    for (const auto& [w, c] : a.terms()) out += coact_word(w).scaled(c);
    return out;
}

bool ComoduleAlgebra::is_trivial() const {
    for (int g = 0; g < base_->generators().size(); ++g)
        if (coaction_[g] != TensorElement::pure({base_->generator(g), coacting_->algebra().one()})) return false;
    return true;
}

CheckReport ComoduleAlgebra::validate(int max_degree) const {
    const Presentation& A = *base_;
    const HopfStructure& H = *coacting_;
    auto sl = slots();
    std::vector<const Presentation*> s3{base_.get(), &H.algebra(), &H.algebra()};
    CheckReport rep("coaction " + A.name() + " over " + H.name());

    RecordBuilder rel("coaction-respects-relations", max_degree);
    for (const auto& r : A.rules()) {
        TensorElement x = coact_word(r.lhs), y = coact(r.rhs);
        rel.check(x == y, [&] { return Witness{{A.word_to_string(r.lhs)}, format_tensor(x, sl), format_tensor(y, sl)}; });
    }
    rep.records.push_back(rel.finish());

    RecordBuilder cu("coaction-counit", max_degree), co("coaction-coassociativity", max_degree);
    for (const auto& w : A.normal_words(max_degree)) {
        TensorElement t = coact_word(w);
        Element back = A.zero();
        TensorElement left(3, A.ring()), right(3, A.ring());
        for (const auto& [tw, c] : t.terms()) {
            back += A.word(tw[0]).scaled(c * H.counit_word(tw[1]));
            for (const auto& [iw, d] : coact_word(tw[0]).terms()) left.add_term({iw[0], iw[1], tw[1]}, c * d);
            for (const auto& [dw, d] : H.coproduct_word(tw[1]).terms()) right.add_term({tw[0], dw[0], dw[1]}, c * d);
        }
        Element e = word_element(A, w);
        cu.check(back == e, [&] { return Witness{{A.word_to_string(w)}, A.format(back), A.format(e)}; });
        co.check(left == right,
                 [&] { return Witness{{A.word_to_string(w)}, format_tensor(left, s3), format_tensor(right, s3)}; });
    }
    rep.records.push_back(cu.finish());
    rep.records.push_back(co.finish());
    return rep;
}

ComodulePtr trivial_comodule(PresentationPtr base, HopfPtr coacting) {
    std::vector<TensorElement> co;
    for (int g = 0; g < base->generators().size(); ++g)
        co.push_back(TensorElement::pure({base->generator(g), coacting->algebra().one()}));
    return std::make_shared<ComoduleAlgebra>(base, coacting, std::move(co));
}

// ---------------------------------------------------------------- derived actions

Element coact_to_act(const SkewPairing& ev, const ComoduleAlgebra& a, const Element& h, const Element& x) {
    if (&a.coacting() != &ev.right())
        throw Error(ErrorKind::IncompatibleSources, a.algebra().name() + " is not coacted on by " + ev.right().name());
    const Presentation& A = a.algebra();
    Element out = A.zero();
    for (const auto& [tw, c] : a.coact(x).terms()) {
        Scalar s = ev.pair(h, ev.right().algebra().word(tw[1]));
        if (!s.is_zero()) out += A.word(tw[0]).scaled(c * s);
    }
    return out;
}

static void check_sides(const SkewPairing& ev, const ComoduleAlgebra& w, const ComoduleAlgebra& v) {
    if (&w.coacting() != &ev.left())
        throw Error(ErrorKind::IncompatibleSources, w.algebra().name() + " is not coacted on by " + ev.left().name());
    if (&v.coacting() != &ev.right())
        throw Error(ErrorKind::IncompatibleSources, v.algebra().name() + " is not coacted on by " + ev.right().name());
}

TensorElement distributive_law(const SkewPairing& ev, const ComoduleAlgebra& w, const ComoduleAlgebra& v,
                               const TensorElement& x) {
    check_sides(ev, w, v);
    TensorElement out(2, x.ring());
    for (const auto& [tw, c] : x.terms()) {
        TensorElement cw = w.coact_word(tw[0]), cv = v.coact_word(tw[1]);
        for (const auto& [ww, a] : cw.terms())
            for (const auto& [vw, b] : cv.terms()) {
                Scalar s = ev.pair_words(ww[1], vw[1]);
                if (!s.is_zero()) out.add_term({vw[0], ww[0]}, c * a * b * s);
            }
    }
    return out;
}

TensorElement distributive_law_inverse(const SkewPairing& ev, const ComoduleAlgebra& w, const ComoduleAlgebra& v,
                                       const TensorElement& y) {
    check_sides(ev, w, v);
    TensorElement out(2, y.ring());
    for (const auto& [tw, c] : y.terms()) {
        TensorElement cv = v.coact_word(tw[0]), cw = w.coact_word(tw[1]);
        for (const auto& [ww, a] : cw.terms())
            for (const auto& [vw, b] : cv.terms()) {
                Scalar s = ev.convolution_inverse(ev.left().algebra().word(ww[1]), ev.right().algebra().word(vw[1]));
                if (!s.is_zero()) out.add_term({ww[0], vw[0]}, c * a * b * s);
            }
    }
    return out;
}

// ---------------------------------------------------------------- coquasitriangularity

CheckReport check_coquasitriangular(const SkewPairing& r, int max_degree) {
    if (&r.left() != &r.right())
        throw Error(ErrorKind::IncompatibleSources, "a coquasitriangular structure pairs an algebra with itself");
    const HopfStructure& D = r.left();
    const Presentation& P = D.algebra();
    CheckReport rep("coquasitriangular " + r.name());
    auto check_pair = [&](RecordBuilder& law, const Word& a, const Word& b) {
        TensorElement da = D.coproduct_word(a), db = D.coproduct_word(b);
        Element lhs = P.zero(), rhs = P.zero();
        for (const auto& [x, cx] : da.terms())
            for (const auto& [y, cy] : db.terms()) {
                Scalar l = r.pair_words(x[0], y[0]);
                if (!l.is_zero()) lhs += P.multiply(P.word(x[1]), P.word(y[1])).scaled(cx * cy * l);
                Scalar m = r.pair_words(x[1], y[1]);
                if (!m.is_zero()) rhs += P.multiply(P.word(y[0]), P.word(x[0])).scaled(cx * cy * m);
            }
        law.check(lhs == rhs, [&] {
            return Witness{{P.word_to_string(a), P.word_to_string(b)}, P.format(lhs), P.format(rhs)};
        });
    };
    RecordBuilder gens("braided-commutativity-generators", 1);
    for (int i = 0; i < P.generators().size(); ++i)
        for (int j = 0; j < P.generators().size(); ++j) check_pair(gens, {i}, {j});
    rep.records.push_back(gens.finish());
    RecordBuilder law("braided-commutativity-words", max_degree);
    auto words = nonempty_words(P, max_degree);
    for (const auto& a : words)
        for (const auto& b : words)
            if (a.size() > 1 || b.size() > 1) check_pair(law, a, b);
    rep.records.push_back(law.finish());
    return rep;
}

// ---------------------------------------------------------------- Hopf maps

HopfMap::HopfMap(HopfPtr source, HopfPtr target, std::vector<Element> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    if (images_.size() != static_cast<size_t>(source_->algebra().generators().size()))
        throw Error(ErrorKind::InvalidInput, "Hopf map must cover every generator");
    for (auto& e : images_) e = target_->algebra().reduce(e);
}

Element HopfMap::apply_word(const Word& w) const {
    const Presentation& T = target_->algebra();
    Element r = T.one();
    for (int x : w) r = T.multiply(r, images_.at(x));
    return r;
}

Element HopfMap::apply(const Element& e) const {
    Element out = target_->algebra().zero();
    for (const auto& [w, c] : e.terms()) out += apply_word(w).scaled(c);
    return out;
}

CheckReport HopfMap::validate(int max_degree) const {
    const Presentation &S = source_->algebra(), &T = target_->algebra();
    auto t2 = target_->slots(2);
    CheckReport rep("hopf map " + S.name() + " -> " + T.name());
    RecordBuilder rel("map-respects-relations", max_degree);
    for (const auto& r : S.rules()) {
        Element x = apply_word(r.lhs), y = apply(r.rhs);
        rel.check(x == y, [&] { return Witness{{S.word_to_string(r.lhs)}, T.format(x), T.format(y)}; });
    }
    rep.records.push_back(rel.finish());
    RecordBuilder cop("map-coproduct", max_degree), cu("map-counit", max_degree), an("map-antipode", max_degree);
    for (const auto& w : S.normal_words(max_degree)) {
        Element fw = apply_word(w);
        TensorElement lhs = target_->coproduct(fw), rhs(2, T.ring());
        for (const auto& [tw, c] : source_->coproduct_word(w).terms())
            rhs += TensorElement::pure({apply_word(tw[0]), apply_word(tw[1])}).scaled(c);
        cop.check(lhs == rhs,
                  [&] { return Witness{{S.word_to_string(w)}, format_tensor(lhs, t2), format_tensor(rhs, t2)}; });
        Scalar x = target_->counit(fw), y = source_->counit_word(w);
        cu.check(x == y, [&] { return Witness{{S.word_to_string(w)}, x.to_string(), y.to_string()}; });
        Element sx = target_->antipode(fw), sy = apply(source_->antipode_word(w));
        an.check(sx == sy, [&] { return Witness{{S.word_to_string(w)}, T.format(sx), T.format(sy)}; });
    }
    rep.records.push_back(cop.finish());
    rep.records.push_back(cu.finish());
    rep.records.push_back(an.finish());
    return rep;
}

CheckReport check_relative_coquasitriangular(const SkewPairing& rh, const HopfMap& f, const SkewPairing& rd,
                                             int max_degree) {
    const HopfStructure& D = rd.left();
    const HopfStructure& H = rh.right();
    if (&rd.right() != &D || &rh.left() != &D || &f.source() != &D || &f.target() != &H)
        throw Error(ErrorKind::IncompatibleSources, "relative coquasitriangular data do not share D and H");
    const Presentation &PD = D.algebra(), &PH = H.algebra();
    CheckReport rep("relative coquasitriangular " + rh.name());
    rep.append(f.validate(max_degree));

    RecordBuilder c1("restriction-to-D", max_degree);
    auto dwords = nonempty_words(PD, max_degree);
    for (const auto& d : dwords)
        for (const auto& e : dwords) {
            Scalar x = rh.pair(PD.word(d), f.apply_word(e)), y = rd.pair_words(d, e);
            c1.check(x == y, [&] { return Witness{{PD.word_to_string(d), PD.word_to_string(e)}, x.to_string(), y.to_string()}; });
        }
    rep.records.push_back(c1.finish());

    RecordBuilder c2("braided-commutativity-over-D", max_degree);
    auto hwords = nonempty_words(PH, max_degree);
    for (const auto& d : dwords)
        for (const auto& h : hwords) {
            Element lhs = PH.zero(), rhs = PH.zero();
            for (const auto& [x, cx] : D.coproduct_word(d).terms())
                for (const auto& [y, cy] : H.coproduct_word(h).terms()) {
                    Scalar l = rh.pair_words(x[0], y[0]);
                    if (!l.is_zero()) lhs += PH.multiply(f.apply_word(x[1]), PH.word(y[1])).scaled(cx * cy * l);
                    Scalar m = rh.pair_words(x[1], y[1]);
                    if (!m.is_zero()) rhs += PH.multiply(PH.word(y[0]), f.apply_word(x[0])).scaled(cx * cy * m);
                }
            c2.check(lhs == rhs, [&] {
                return Witness{{PD.word_to_string(d), PH.word_to_string(h)}, PH.format(lhs), PH.format(rhs)};
            });
        }
    rep.records.push_back(c2.finish());
    return rep;
}

}  // namespace hopfmm
