#include "hopfmm/algebra.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

namespace hopfmm {

// ---------------------------------------------------------------- generators and words

int GeneratorTable::add(const std::string& name, int degree) {
    if (index_.count(name)) throw Error(ErrorKind::InvalidInput, "duplicate generator " + name);
    if (degree < 0) throw Error(ErrorKind::InvalidInput, "negative degree for " + name);
    int id = size();
    gens_.push_back({name, degree});
    index_[name] = id;
    return id;
}

std::optional<int> GeneratorTable::find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

int word_degree(const Word& w, const GeneratorTable& t) {
    int d = 0;
    for (int x : w) d += t.degree(x);
    return d;
}

bool word_less(const Word& a, const Word& b, const GeneratorTable& t) {
    int da = word_degree(a, t), db = word_degree(b, t);
    if (da != db) return da < db;
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

// ---------------------------------------------------------------- Element

Element Element::scalar(const Scalar& c) {
    Element e(c.ring());
    e.add_term({}, c);
    return e;
}

Element Element::monomial(const Word& w, const Scalar& c) {
    Element e(c.ring());
    e.add_term(w, c);
    return e;
}

Scalar Element::coeff(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Scalar::zero(ring_) : it->second;
}

std::optional<Scalar> Element::as_scalar() const {
    if (terms_.empty()) return Scalar::zero(ring_);
    if (terms_.size() == 1 && terms_.begin()->first.empty()) return terms_.begin()->second;
    return std::nullopt;
}

int Element::max_length() const {
    int m = -1;
    for (const auto& [w, c] : terms_) m = std::max(m, static_cast<int>(w.size()));
    return m;
}

void Element::add_term(const Word& w, const Scalar& c) {
    if (c.ring() != ring_)
        throw Error(ErrorKind::RingMismatch,
                    std::string("term in ") + ring_name(c.ring()) + " added to element over " + ring_name(ring_));
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(w, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

Element& Element::operator+=(const Element& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
}

Element Element::operator+(const Element& o) const {
    Element r = *this;
    r += o;
    return r;
}

Element Element::operator-() const {
    Element r(ring_);
    for (const auto& [w, c] : terms_) r.terms_.emplace(w, -c);
    return r;
}

Element Element::operator-(const Element& o) const { return *this + (-o); }

Element Element::scaled(const Scalar& s) const {
    Element r(ring_);
    if (s.ring() != ring_) throw Error(ErrorKind::RingMismatch, "scaling by a scalar from another ring");
    for (const auto& [w, c] : terms_) r.add_term(w, c * s);
    return r;
}

// ---------------------------------------------------------------- TensorElement

TensorElement TensorElement::pure(const std::vector<Element>& factors) {
    if (factors.empty()) throw Error(ErrorKind::ArityMismatch, "empty tensor");
    Ring r = factors[0].ring();
    TensorElement t(static_cast<int>(factors.size()), r);
    std::vector<std::pair<TensorWord, Scalar>> acc{{{}, Scalar::one(r)}};
    for (const auto& f : factors) {
        std::vector<std::pair<TensorWord, Scalar>> next;
        for (const auto& [tw, c] : acc)
            for (const auto& [w, d] : f.terms()) {
                TensorWord x = tw;
                x.push_back(w);
                next.emplace_back(std::move(x), c * d);
            }
        acc = std::move(next);
    }
    for (const auto& [tw, c] : acc) t.add_term(tw, c);
    return t;
}

void TensorElement::check(const TensorElement& o) const {
    if (arity_ != o.arity_)
        throw Error(ErrorKind::ArityMismatch,
                    "arity " + std::to_string(arity_) + " against " + std::to_string(o.arity_));
}

void TensorElement::add_term(const TensorWord& w, const Scalar& c) {
    if (static_cast<int>(w.size()) != arity_) throw Error(ErrorKind::ArityMismatch, "tensor word of wrong arity");
    if (c.ring() != ring_) throw Error(ErrorKind::RingMismatch, "tensor term from another ring");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(w, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

TensorElement& TensorElement::operator+=(const TensorElement& o) {
    check(o);
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
}

TensorElement TensorElement::operator+(const TensorElement& o) const {
    TensorElement r = *this;
    r += o;
    return r;
}

TensorElement TensorElement::operator-(const TensorElement& o) const {
    return *this + o.scaled(-Scalar::one(ring_));
}

TensorElement TensorElement::scaled(const Scalar& s) const {
    TensorElement r(arity_, ring_);
    for (const auto& [w, c] : terms_) r.add_term(w, c * s);
    return r;
}

// ---------------------------------------------------------------- Presentation

static size_t default_step_bound() {
    if (const char* env = std::getenv("HOPFMM_STEP_BOUND")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && v > 0) return static_cast<size_t>(v);
    }
    return 1000000;
}

Presentation::Presentation(std::string name, Ring ring, GeneratorTable gens)
    : name_(std::move(name)), ring_(ring), gens_(std::move(gens)), by_first_(gens_.size()),
      step_bound_(default_step_bound()) {}

void Presentation::add_rule(const Word& lhs, const Element& rhs) {
    for (const auto& [w, c] : rhs.terms())
        if (!word_less(w, lhs, gens_))
            throw Error(ErrorKind::InvalidInput, "rule " + word_to_string(lhs) + " -> " + format(rhs) +
                                                     " does not decrease in the word order");
    add_rule_unchecked(lhs, rhs);
}

void Presentation::add_rule_unchecked(const Word& lhs, const Element& rhs) {
    if (lhs.size() < 2) throw Error(ErrorKind::InvalidInput, "rule left side must have length at least 2");
    for (int x : lhs)
        if (x < 0 || x >= gens_.size()) throw Error(ErrorKind::UnknownGenerator, "rule letter out of range");
    if (rhs.ring() != ring_) throw Error(ErrorKind::RingMismatch, "rule right side over another ring");
    rules_.push_back({lhs, rhs});
    by_first_[lhs[0]].push_back(rules_.size() - 1);
    if (lhs.size() == 2 && gens_.degree(lhs[0]) == 0 && gens_.degree(lhs[1]) == 0 && rhs == one()) {
        Word rev{lhs[1], lhs[0]};
        for (const auto& r : rules_)
            if (r.lhs == rev && r.rhs == one()) {
                inverse_[lhs[0]] = lhs[1];
                inverse_[lhs[1]] = lhs[0];
            }
    }
    std::lock_guard<std::mutex> lock(cache_mutex_);
    cache_.clear();
}

std::optional<int> Presentation::inverse_of(int id) const {
    auto it = inverse_.find(id);
    if (it == inverse_.end()) return std::nullopt;
    return it->second;
}

Element Presentation::generator(int id) const {
    if (id < 0 || id >= gens_.size()) throw Error(ErrorKind::UnknownGenerator, "generator id out of range");
    return Element::monomial({id}, scalar(1));
}

Element Presentation::generator(const std::string& name) const {
    auto id = gens_.find(name);
    if (!id) throw Error(ErrorKind::UnknownGenerator, name + " in " + name_);
    return generator(*id);
}

std::optional<std::pair<size_t, const Rule*>> Presentation::find_redex(const Word& w, size_t start) const {
    for (size_t i = start; i < w.size(); ++i)
        for (size_t ri : by_first_[w[i]]) {
            const Rule& r = rules_[ri];
            if (i + r.lhs.size() <= w.size() && std::equal(r.lhs.begin(), r.lhs.end(), w.begin() + i))
                return std::make_pair(i, &r);
        }
    return std::nullopt;
}

std::vector<std::pair<size_t, const Rule*>> Presentation::all_redexes(const Word& w) const {
    std::vector<std::pair<size_t, const Rule*>> out;
    for (size_t i = 0; i < w.size(); ++i)
        for (size_t ri : by_first_[w[i]]) {
            const Rule& r = rules_[ri];
            if (i + r.lhs.size() <= w.size() && std::equal(r.lhs.begin(), r.lhs.end(), w.begin() + i))
                out.emplace_back(i, &r);
        }
    return out;
}

bool Presentation::is_normal(const Word& w) const { return !find_redex(w); }

Element Presentation::rewrite_at(const Word& w, size_t pos, const Rule& r) const {
    Element out(ring_);
    for (const auto& [rw, c] : r.rhs.terms()) {
        Word x(w.begin(), w.begin() + pos);
        x.insert(x.end(), rw.begin(), rw.end());
        x.insert(x.end(), w.begin() + pos + r.lhs.size(), w.end());
        out.add_term(x, c);
    }
    return out;
}

Element Presentation::normal_form(const Word& w) const {
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        auto it = cache_.find(w);
        if (it != cache_.end()) return it->second;
    }
    Element result(ring_);
    std::map<Word, Scalar, WordOrder> pending(WordOrder{&gens_});
    pending.emplace(w, scalar(1));
    size_t steps = 0;
    while (!pending.empty()) {
        auto top = std::prev(pending.end());
        Word cur = top->first;
        Scalar c = top->second;
        pending.erase(top);
        if (cur != w) {
            std::lock_guard<std::mutex> lock(cache_mutex_);
            auto it = cache_.find(cur);
            if (it != cache_.end()) {
                for (const auto& [nw, nc] : it->second.terms()) result.add_term(nw, nc * c);
                continue;
            }
        }
        auto redex = find_redex(cur);
        if (!redex) {
            result.add_term(cur, c);
            continue;
        }
        if (++steps > step_bound_)
            throw Error(ErrorKind::NonTerminating,
                        "reduction of " + word_to_string(w) + " exceeded " + std::to_string(step_bound_) + " steps");
        Element next = rewrite_at(cur, redex->first, *redex->second);
        for (const auto& [nw, nc] : next.terms()) {
            Scalar add = nc * c;
            auto [it, inserted] = pending.emplace(nw, add);
            if (!inserted) {
                it->second += add;
                if (it->second.is_zero()) pending.erase(it);
            }
        }
    }
    std::lock_guard<std::mutex> lock(cache_mutex_);
    cache_.emplace(w, result);
    return result;
}

Element Presentation::reduce(const Element& e) const {
    if (e.ring() != ring_) throw Error(ErrorKind::RingMismatch, "element over another ring in " + name_);
    Element out(ring_);
    for (const auto& [w, c] : e.terms()) {
        if (is_normal(w)) {
            out.add_term(w, c);
            continue;
        }
        Element nf = normal_form(w);
        for (const auto& [nw, nc] : nf.terms()) out.add_term(nw, nc * c);
    }
    return out;
}

Element Presentation::reduce_randomized(const Element& e, std::mt19937& rng) const {
    std::map<Word, Scalar> cur(e.terms().begin(), e.terms().end());
    size_t steps = 0;
    while (true) {
        std::vector<Word> reducible;
        for (const auto& [w, c] : cur)
            if (!is_normal(w)) reducible.push_back(w);
        if (reducible.empty()) break;
        const Word w = reducible[std::uniform_int_distribution<size_t>(0, reducible.size() - 1)(rng)];
        auto redexes = all_redexes(w);
        auto [pos, rule] = redexes[std::uniform_int_distribution<size_t>(0, redexes.size() - 1)(rng)];
        if (++steps > step_bound_) throw Error(ErrorKind::NonTerminating, "randomized reduction exceeded step bound");
        Scalar c = cur.at(w);
        cur.erase(w);
        Element next = rewrite_at(w, pos, *rule);
        for (const auto& [nw, nc] : next.terms()) {
            auto [it, inserted] = cur.emplace(nw, nc * c);
            if (!inserted) {
                it->second += nc * c;
                if (it->second.is_zero()) cur.erase(it);
            }
        }
    }
    Element out(ring_);
    for (const auto& [w, c] : cur) out.add_term(w, c);
    return out;
}

Element Presentation::multiply(const Element& a, const Element& b) const {
    if (a.ring() != ring_ || b.ring() != ring_)
        throw Error(ErrorKind::RingMismatch, "multiplying elements over another ring in " + name_);
    Element out(ring_);
    for (const auto& [wa, ca] : a.terms())
        for (const auto& [wb, cb] : b.terms()) {
            Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            Scalar c = ca * cb;
            if (is_normal(w)) {
                out.add_term(w, c);
                continue;
            }
            Element nf = normal_form(w);
        for (const auto& [nw, nc] : nf.terms()) out.add_term(nw, nc * c);
        }
    return out;
}

Element Presentation::power(const Element& a, int n) const {
    if (n < 0) throw Error(ErrorKind::InvalidInput, "negative power of an algebra element");
    Element r = one();
    for (int i = 0; i < n; ++i) r = multiply(r, a);
    return r;
}

bool Presentation::is_commutative() const {
    for (int i = 0; i < gens_.size(); ++i)
        for (int j = i + 1; j < gens_.size(); ++j)
            if (multiply(generator(i), generator(j)) != multiply(generator(j), generator(i))) return false;
    return true;
}

std::vector<Word> Presentation::normal_words(int max_len) const {
    std::vector<Word> all{{}};
    std::vector<Word> level{{}};
    for (int len = 1; len <= max_len; ++len) {
        std::vector<Word> next;
        for (const auto& w : level)
            for (int g = 0; g < gens_.size(); ++g) {
                Word x = w;
                x.push_back(g);
                if (is_normal(x)) next.push_back(std::move(x));
            }
        all.insert(all.end(), next.begin(), next.end());
        level = std::move(next);
    }
    std::sort(all.begin(), all.end(), WordOrder{&gens_});
    return all;
}

std::vector<CriticalPair> Presentation::confluence_report(int max_degree) const {
    struct Ambiguity {
        Word word;
        size_t p1, p2;
        const Rule *r1, *r2;
    };
    std::vector<Ambiguity> amb;
    for (const auto& r1 : rules_)
        for (const auto& r2 : rules_) {
            const Word &l1 = r1.lhs, &l2 = r2.lhs;
            for (size_t k = 1; k < l1.size() && k < l2.size(); ++k)
                if (std::equal(l1.end() - k, l1.end(), l2.begin())) {
                    Word w = l1;
                    w.insert(w.end(), l2.begin() + k, l2.end());
                    amb.push_back({w, 0, l1.size() - k, &r1, &r2});
                }
            if (&r1 != &r2 && l2.size() <= l1.size())
                for (size_t p = 0; p + l2.size() <= l1.size(); ++p)
                    if (std::equal(l2.begin(), l2.end(), l1.begin() + p)) amb.push_back({l1, 0, p, &r1, &r2});
        }
    std::vector<CriticalPair> failures;
    std::set<Word> seen;
    for (const auto& a : amb) {
        if (static_cast<int>(a.word.size()) > max_degree) continue;
        Element x = reduce(rewrite_at(a.word, a.p1, *a.r1));
        Element y = reduce(rewrite_at(a.word, a.p2, *a.r2));
        if (x != y && seen.insert(a.word).second) failures.push_back({a.word, x, y});
    }
    return failures;
}

std::string Presentation::word_to_string(const Word& w) const {
    if (w.empty()) return "1";
    std::string out;
    for (size_t i = 0; i < w.size();) {
        size_t j = i;
        while (j < w.size() && w[j] == w[i]) ++j;
        if (!out.empty()) out += "*";
        out += gens_.name(w[i]);
        if (j - i > 1) out += "^" + std::to_string(j - i);
        i = j;
    }
    return out;
}

// Appends one signed term; `first` suppresses the leading " + ".
static void append_term(std::string& out, bool first, const Scalar& c, const std::string& body, bool body_is_unit) {
    if (c.is_rational()) {
        Rational v = c.body_value().constant();
        bool neg = v < 0;
        Rational mag = abs(v);
        if (first)
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        if (body_is_unit)
            out += mag.get_str();
        else if (mag == 1)
            out += body;
        else if (body.rfind("1 (x) ", 0) == 0)
            out += mag.get_str() + body.substr(1);
        else
            out += mag.get_str() + "*" + body;
        return;
    }
    if (!first) out += " + ";
    out += c.to_string();
    if (!body_is_unit) out += "*" + body;
}

std::string Presentation::format(const Element& e) const {
    if (e.is_zero()) return "0";
    std::vector<const Element::Terms::value_type*> terms;
    for (const auto& t : e.terms()) terms.push_back(&t);
    std::sort(terms.begin(), terms.end(),
              [&](auto* a, auto* b) { return word_less(b->first, a->first, gens_); });
    std::string out;
    for (size_t i = 0; i < terms.size(); ++i)
        append_term(out, i == 0, terms[i]->second, word_to_string(terms[i]->first), terms[i]->first.empty());
    return out;
}

// ---------------------------------------------------------------- tensors over presentations

static void check_slots(const TensorElement& t, const std::vector<const Presentation*>& slots) {
    if (static_cast<int>(slots.size()) != t.arity())
        throw Error(ErrorKind::ArityMismatch,
                    "tensor of arity " + std::to_string(t.arity()) + " against " + std::to_string(slots.size()) +
                        " slots");
}

TensorElement tensor_reduce(const TensorElement& t, const std::vector<const Presentation*>& slots) {
    check_slots(t, slots);
    TensorElement out(t.arity(), t.ring());
    for (const auto& [tw, c] : t.terms()) {
        std::vector<Element> f;
        for (size_t i = 0; i < tw.size(); ++i) f.push_back(slots[i]->normal_form(tw[i]));
        out += TensorElement::pure(f).scaled(c);
    }
    return out;
}

TensorElement tensor_multiply(const TensorElement& a, const TensorElement& b,
                              const std::vector<const Presentation*>& slots) {
    if (a.arity() != b.arity())
        throw Error(ErrorKind::ArityMismatch,
                    "tensor product of arities " + std::to_string(a.arity()) + " and " + std::to_string(b.arity()));
    check_slots(a, slots);
    TensorElement out(a.arity(), a.ring());
    for (const auto& [wa, ca] : a.terms())
        for (const auto& [wb, cb] : b.terms()) {
            std::vector<Element> f;
            for (size_t i = 0; i < wa.size(); ++i) {
                Word w = wa[i];
                w.insert(w.end(), wb[i].begin(), wb[i].end());
                f.push_back(slots[i]->normal_form(w));
            }
            out += TensorElement::pure(f).scaled(ca * cb);
        }
    return out;
}

std::string format_tensor(const TensorElement& t, const std::vector<const Presentation*>& slots) {
    check_slots(t, slots);
    if (t.is_zero()) return "0";
    std::vector<const TensorElement::Terms::value_type*> terms;
    for (const auto& x : t.terms()) terms.push_back(&x);
    std::sort(terms.begin(), terms.end(), [&](auto* a, auto* b) {
        for (size_t i = 0; i < a->first.size(); ++i) {
            const auto& g = slots[i]->generators();
            if (a->first[i] != b->first[i]) return word_less(b->first[i], a->first[i], g);
        }
        return false;
    });
    std::string out;
    for (size_t i = 0; i < terms.size(); ++i) {
        const auto& [tw, c] = *terms[i];
        std::string rest;
        for (size_t k = 1; k < tw.size(); ++k) rest += " (x) " + slots[k]->word_to_string(tw[k]);
        append_term(out, i == 0, c, slots[0]->word_to_string(tw[0]) + rest, false);
    }
    return out;
}

}  // namespace hopfmm
