#pragma once

// Free algebras on graded generators modulo a terminating rewrite system.

#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "hopfmm/scalar.hpp"

namespace hopfmm {

using Word = std::vector<int>;

struct WordHash {
    size_t operator()(const Word& w) const noexcept {
        size_t h = 1469598103934665603ull;
        for (int x : w) h = (h ^ static_cast<size_t>(x + 1)) * 1099511628211ull;
        return h;
    }
};

struct Generator {
    std::string name;
    int degree;
};

class GeneratorTable {
public:
    int add(const std::string& name, int degree);
    std::optional<int> find(const std::string& name) const;
    int size() const { return static_cast<int>(gens_.size()); }
    const std::string& name(int id) const { return gens_.at(id).name; }
    int degree(int id) const { return gens_.at(id).degree; }
    const std::vector<Generator>& entries() const { return gens_; }

private:
    std::vector<Generator> gens_;
    std::map<std::string, int> index_;
};

int word_degree(const Word& w, const GeneratorTable& t);
// Degree first, then length, then lexicographic by id.
bool word_less(const Word& a, const Word& b, const GeneratorTable& t);

struct WordOrder {
    const GeneratorTable* table;
    bool operator()(const Word& a, const Word& b) const { return word_less(a, b, *table); }
};

class Element {
public:
    using Terms = std::map<Word, Scalar>;

    explicit Element(Ring r = Ring::Rational) : ring_(r) {}
    static Element scalar(const Scalar& c);
    static Element monomial(const Word& w, const Scalar& c);

    Ring ring() const { return ring_; }
    const Terms& terms() const& { return terms_; }
    Terms terms() && { return std::move(terms_); }  // keeps range-for over temporaries safe
    bool is_zero() const { return terms_.empty(); }
    Scalar coeff(const Word& w) const;
    std::optional<Scalar> as_scalar() const;  // set when only the empty word occurs
    int max_length() const;

    void add_term(const Word& w, const Scalar& c);
    Element operator+(const Element& o) const;
    Element operator-(const Element& o) const;
    Element operator-() const;
    Element scaled(const Scalar& c) const;
    Element& operator+=(const Element& o);
    bool operator==(const Element& o) const { return ring_ == o.ring_ && terms_ == o.terms_; }
    bool operator!=(const Element& o) const { return !(*this == o); }

private:
    Ring ring_;
    Terms terms_;
};

using TensorWord = std::vector<Word>;

class TensorElement {
public:
    using Terms = std::map<TensorWord, Scalar>;

    TensorElement(int arity = 2, Ring r = Ring::Rational) : arity_(arity), ring_(r) {}
    static TensorElement pure(const std::vector<Element>& factors);

    int arity() const { return arity_; }
    Ring ring() const { return ring_; }
    const Terms& terms() const& { return terms_; }
    Terms terms() && { return std::move(terms_); }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const TensorWord& w, const Scalar& c);
    TensorElement operator+(const TensorElement& o) const;
    TensorElement operator-(const TensorElement& o) const;
    TensorElement scaled(const Scalar& c) const;
    TensorElement& operator+=(const TensorElement& o);
    bool operator==(const TensorElement& o) const {
        return arity_ == o.arity_ && ring_ == o.ring_ && terms_ == o.terms_;
    }
    bool operator!=(const TensorElement& o) const { return !(*this == o); }

private:
    void check(const TensorElement& o) const;
    int arity_;
    Ring ring_;
    Terms terms_;
};

struct Rule {
    Word lhs;
    Element rhs;
};

struct CriticalPair {
    Word overlap;
    Element first, second;
};

class Presentation {
public:
    Presentation(std::string name, Ring ring, GeneratorTable gens);
    Presentation(const Presentation&) = delete;
    Presentation& operator=(const Presentation&) = delete;

    // Rejects rules whose right side is not strictly below the left side.
    void add_rule(const Word& lhs, const Element& rhs);
    void add_rule_unchecked(const Word& lhs, const Element& rhs);
    void set_step_bound(size_t bound) { step_bound_ = bound; }

    const std::string& name() const { return name_; }
    Ring ring() const { return ring_; }
    const GeneratorTable& generators() const { return gens_; }
    const std::vector<Rule>& rules() const { return rules_; }
    std::optional<int> inverse_of(int id) const;

    Scalar scalar(long v) const { return Scalar::integer(v, ring_); }
    Element one() const { return Element::scalar(scalar(1)); }
    Element zero() const { return Element(ring_); }
    Element generator(int id) const;
    Element generator(const std::string& name) const;
    Element word(const Word& w) const { return normal_form(w); }

    bool is_normal(const Word& w) const;
    Element normal_form(const Word& w) const;
    Element reduce(const Element& e) const;
    // Reduction choosing redexes at random and bypassing the cache.
    Element reduce_randomized(const Element& e, std::mt19937& rng) const;
    Element multiply(const Element& a, const Element& b) const;
    Element power(const Element& a, int n) const;
    bool is_commutative() const;

    // Normal words of length at most max_len, ascending in the word order.
    std::vector<Word> normal_words(int max_len) const;
    std::vector<CriticalPair> confluence_report(int max_degree) const;

    std::string word_to_string(const Word& w) const;
    std::string format(const Element& e) const;

private:
    std::optional<std::pair<size_t, const Rule*>> find_redex(const Word& w, size_t start = 0) const;
    std::vector<std::pair<size_t, const Rule*>> all_redexes(const Word& w) const;
    Element rewrite_at(const Word& w, size_t pos, const Rule& r) const;

    std::string name_;
    Ring ring_;
    GeneratorTable gens_;
    std::vector<Rule> rules_;
    std::vector<std::vector<size_t>> by_first_;
    std::map<int, int> inverse_;
    size_t step_bound_;

    mutable std::mutex cache_mutex_;
    mutable std::unordered_map<Word, Element, WordHash> cache_;
};

// Slotwise operations; slot i of every tensor lives in slots[i].
TensorElement tensor_reduce(const TensorElement& t, const std::vector<const Presentation*>& slots);
TensorElement tensor_multiply(const TensorElement& a, const TensorElement& b,
                              const std::vector<const Presentation*>& slots);
std::string format_tensor(const TensorElement& t, const std::vector<const Presentation*>& slots);

}  // namespace hopfmm
