#pragma once

// Fixtures and independent oracles shared by the test binaries: matrix representations,
// evaluation of q-rational scalars at rational points, and dense rank over Q.

#include <map>
#include <optional>
#include <ostream>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "hopfmm/parser.hpp"
#include "hopfmm/workbench.hpp"

namespace hopfmm {
inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }
}  // namespace hopfmm

namespace hopfmm::test {

inline Scalar Q(long n, long d = 1, Ring r = Ring::Rational) { return Scalar::rational(Rational(n, d), r); }

using Rules = std::vector<std::pair<std::string, std::string>>;
using Gens = std::vector<std::pair<std::string, int>>;

inline std::shared_ptr<Presentation> algebra(const std::string& name, Ring ring, const Gens& gens, const Rules& rules) {
    GeneratorTable t;
    for (const auto& [n, d] : gens) t.add(n, d);
    auto p = std::make_shared<Presentation>(name, ring, t);
    GeneratorTable free_t;
    for (const auto& [n, d] : gens) free_t.add(n, d);
    Presentation free("free", ring, free_t);
    for (const auto& [l, r] : rules) {
        Element lhs = parse_element(l, free);
        p->add_rule(lhs.terms().begin()->first, parse_element(r, *p));
    }
    return p;
}

// Commutative polynomial ring on the given names, all in degree 1.
inline std::shared_ptr<Presentation> polynomial(const std::string& name, const std::vector<std::string>& vars,
                                                Ring ring = Ring::Rational) {
    Gens g;
    Rules r;
    for (const auto& v : vars) g.push_back({v, 1});
    for (size_t i = 0; i < vars.size(); ++i)
        for (size_t j = i + 1; j < vars.size(); ++j) r.push_back({vars[j] + "*" + vars[i], vars[i] + "*" + vars[j]});
    return algebra(name, ring, g, r);
}

using Table = std::map<std::string, std::string>;

inline HopfPtr hopf(std::shared_ptr<const Presentation> p, const Table& delta, const Table& eps, const Table& s) {
    const int n = p->generators().size();
    std::vector<TensorElement> d(n, TensorElement(2, p->ring()));
    std::vector<Scalar> e(n, p->scalar(0));
    std::vector<Element> a(n, p->zero());
    for (const auto& [g, v] : delta) d[*p->generators().find(g)] = parse_tensor(v, {p.get(), p.get()});
    for (const auto& [g, v] : eps) e[*p->generators().find(g)] = parse_scalar(v, p->ring());
    for (const auto& [g, v] : s) a[*p->generators().find(g)] = parse_element(v, *p);
    return std::make_shared<HopfStructure>(p, d, e, a);
}

inline PairingPtr pairing(const std::string& name, HopfPtr l, HopfPtr r, const Table& entries) {
    SkewPairing::Table t;
    for (const auto& [k, v] : entries) {
        auto comma = k.find(',');
        std::string a = k.substr(0, comma), b = k.substr(comma + 1);
        t[{*l->algebra().generators().find(a), *r->algebra().generators().find(b)}] =
            parse_scalar(v, l->algebra().ring());
    }
    return std::make_shared<SkewPairing>(name, l, r, t);
}

inline ComodulePtr comodule(std::shared_ptr<const Presentation> a, HopfPtr h, const Table& co) {
    std::vector<TensorElement> c(a->generators().size(), TensorElement(2, a->ring()));
    for (const auto& [g, v] : co) c[*a->generators().find(g)] = parse_tensor(v, {a.get(), &h->algebra()});
    return std::make_shared<ComoduleAlgebra>(a, h, c);
}

// The error thrown by f, if any.
template <class F>
std::optional<Error> error_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e;
    }
    return std::nullopt;
}

inline std::optional<ErrorKind> kind_of_error(const std::optional<Error>& e) {
    if (!e) return std::nullopt;
    return e->kind();
}

// Builtins are loaded once per test binary.
inline const Workspace& builtin(const std::string& name) {
    static std::map<std::string, std::unique_ptr<Workspace>> cache;
    auto& slot = cache[name];
    if (!slot) slot = std::make_unique<Workspace>(load_builtin(name));
    return *slot;
}

inline Element el(const Presentation& p, const std::string& text) { return parse_element(text, p); }
inline TensorElement tens(const std::string& text, std::vector<const Presentation*> slots) {
    return parse_tensor(text, slots);
}

// The same map with other values on the generators.
inline MomentPtr with_values(const MomentMap& m, const std::string& name, const std::vector<std::string>& values) {
    const Presentation& a = m.target->algebra();
    std::vector<Element> v;
    for (const auto& s : values) v.push_back(el(a, s));
    return std::make_shared<MomentMap>(MomentMap{name, m.source, m.target, v});
}

// ---- evaluation of scalars ------------------------------------------------------------------

inline Rational eval_poly(const Poly& p, const Rational& x) {
    Rational acc = 0;
    for (int i = p.degree(); i >= 0; --i) acc = acc * x + p.coeff(i);
    return acc;
}

inline bool defined_at(const QRat& v, const Rational& q) {
    return v.is_constant() || eval_poly(v.denominator(), q) != 0;
}

inline Rational eval_qrat(const QRat& v, const Rational& q) {
    if (v.is_constant()) return v.constant();
    return eval_poly(v.numerator(), q) / eval_poly(v.denominator(), q);
}

// ---- dense matrices over Q ------------------------------------------------------------------

using Mat = std::vector<std::vector<Rational>>;

inline Mat zero_mat(size_t n) { return Mat(n, std::vector<Rational>(n, 0)); }
inline Mat identity(size_t n) {
    Mat m = zero_mat(n);
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}
inline Mat mat_mul(const Mat& a, const Mat& b) {
    size_t n = a.size();
    Mat c = zero_mat(n);
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k)
            if (a[i][k] != 0)
                for (size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}
inline Mat mat_axpy(const Mat& a, const Rational& s, const Mat& b) {
    Mat c = a;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a.size(); ++j) c[i][j] += s * b[i][j];
    return c;
}

// Image of an element under the representation sending generator i to gens[i]; q is specialized.
inline Mat represent(const Element& e, const std::vector<Mat>& gens, const Rational& q = 1) {
    size_t n = gens.front().size();
    Mat out = zero_mat(n);
    for (const auto& [w, c] : e.terms()) {
        Mat m = identity(n);
        for (int x : w) m = mat_mul(m, gens.at(x));
        out = mat_axpy(out, eval_qrat(c.body_value(), q), m);
    }
    return out;
}

inline Mat from_rows(std::initializer_list<std::initializer_list<long>> rows) {
    Mat m;
    for (const auto& r : rows) {
        m.emplace_back();
        for (long v : r) m.back().push_back(v);
    }
    return m;
}

// Rank by fraction-exact Gaussian elimination; rows are vectors.
inline size_t rank(Mat rows) {
    size_t r = 0;
    size_t cols = rows.empty() ? 0 : rows.front().size();
    for (size_t c = 0; c < cols && r < rows.size(); ++c) {
        size_t piv = r;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[r]);
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            Rational f = rows[i][c] / rows[r][c];
            for (size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
        }
        ++r;
    }
    return r;
}

// ---- Hamiltonian reduction, densely -------------------------------------------------------

// Coordinates on a list of normal words.
struct Coordinates {
    std::map<Word, size_t> index;
    explicit Coordinates(const std::vector<Word>& words) {
        for (const auto& w : words) index.emplace(w, index.size());
    }
    std::vector<Rational> of(const Element& e) const {
        std::vector<Rational> v(index.size(), 0);
        for (const auto& [w, c] : e.terms()) v.at(index.at(w)) = c.body_value().constant();
        return v;
    }
};

// Dimension of {a in slice : [mu(g), a] in I for all g} / (I within the slice), with I the left
// ideal spanned by w mu(g). Computed densely, independent of the reduction routine.
inline size_t invariant_dimension(const MomentMap& m, int n) {
    const Presentation& a = m.target->algebra();
    const Presentation& f = m.source->presentation();
    std::vector<Element> mus;
    for (int g = 0; g < f.generators().size(); ++g) mus.push_back(m.apply(f.generator(g)));
    auto slice = a.normal_words(n);
    Coordinates big(a.normal_words(n + 1));
    auto ideal_rows = [&](int len) {
        Mat rows;
        for (const Word& w : a.normal_words(len))
            for (const auto& mu : mus) rows.push_back(big.of(a.multiply(a.word(w), mu)));
        return rows;
    };
    Mat inside = ideal_rows(n - 1);
    size_t ideal_in_slice = n == 0 ? 0 : rank(inside);
    // One block of coordinates per generator; the condition is membership blockwise.
    size_t blocks = mus.size(), width = big.index.size();
    Mat j_rows, all_rows;
    for (const auto& row : ideal_rows(n))
        for (size_t b = 0; b < blocks; ++b) {
            std::vector<Rational> r(blocks * width, 0);
            std::copy(row.begin(), row.end(), r.begin() + b * width);
            j_rows.push_back(r);
        }
    all_rows = j_rows;
    for (const Word& w : slice) {
        std::vector<Rational> r;
        for (const auto& mu : mus) {
            Element comm = a.multiply(mu, a.word(w)) - a.multiply(a.word(w), mu);
            auto c = big.of(comm);
            r.insert(r.end(), c.begin(), c.end());
        }
        all_rows.push_back(r);
    }
    size_t escaping = rank(all_rows) - rank(j_rows);
    return slice.size() - escaping - ideal_in_slice;
}

// ---- sampling -------------------------------------------------------------------------------

// A random element: up to `terms` normal words of length at most max_len with small coefficients.
inline Element random_element(const Presentation& p, std::mt19937& rng, int max_len = 2, int terms = 3) {
    auto words = p.normal_words(max_len);
    std::uniform_int_distribution<size_t> pick(0, words.size() - 1);
    std::uniform_int_distribution<long> coef(-3, 3);
    Element e = p.zero();
    for (int i = 0; i < terms; ++i) {
        long c = coef(rng);
        if (c != 0) e += Element::monomial(words[pick(rng)], p.scalar(c));
    }
    return e;
}

}  // namespace hopfmm::test
