#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "support.hpp"

using namespace hopfmm;
using namespace hopfmm::test;

namespace {

const Workspace& classical() { return builtin("classical-sl2-triple"); }

Vec combo(const LieData& l, const std::vector<std::pair<std::string, long>>& parts) {
    Vec v = l.zero();
    for (const auto& [n, c] : parts) v[*l.find(n)] = v[*l.find(n)] + Q(c);
    return v;
}

// sl2 (+) sl2 with the Killing-type form on the first summand and its negative on the second.
std::shared_ptr<LieData> double_sl2() {
    auto l = std::make_shared<LieData>("dd", std::vector<std::string>{"e1", "f1", "h1", "e2", "f2", "h2"});
    for (const char* s : {"1", "2"}) {
        std::string k = s;
        int e = *l->find("e" + k), f = *l->find("f" + k), h = *l->find("h" + k);
        long sign = k == "1" ? 1 : -1;
        l->set_bracket(e, f, l->unit(h));
        l->set_bracket(h, e, combo(*l, {{"e" + k, 2}}));
        l->set_bracket(h, f, combo(*l, {{"f" + k, -2}}));
        l->set_pairing(e, f, Q(sign));
        l->set_pairing(h, h, Q(2 * sign));
    }
    l->g = {combo(*l, {{"e1", 1}, {"e2", 1}}), combo(*l, {{"f1", 1}, {"f2", 1}}), combo(*l, {{"h1", 1}, {"h2", 1}})};
    return l;
}

std::vector<Vec> antidiagonal(const LieData& l) {
    return {combo(l, {{"e1", 1}, {"e2", -1}}), combo(l, {{"f1", 1}, {"f2", -1}}), combo(l, {{"h1", 1}, {"h2", -1}})};
}

std::vector<Rational> rationals(const Vec& v) {
    std::vector<Rational> r;
    for (const auto& s : v) r.push_back(s.body_value().constant());
    return r;
}

// Solves a x = b by Gauss-Jordan elimination; a is square and invertible.
std::vector<Rational> solve(Mat a, std::vector<Rational> b) {
    size_t n = a.size();
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (a[p][c] == 0) ++p;
        std::swap(a[p], a[c]);
        std::swap(b[p], b[c]);
        for (size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            Rational f = a[i][c] / a[c][c];
            for (size_t j = 0; j < n; ++j) a[i][j] -= f * a[c][j];
            b[i] -= f * b[c];
        }
    }
    for (size_t i = 0; i < n; ++i) b[i] /= a[i][i];
    return b;
}

// g-part of c^-1(e^i) along g (+) h, computed from the pairing matrix directly.
std::vector<Rational> projection_oracle(const LieData& l, const std::vector<Vec>& h, int i) {
    size_t n = l.dim();
    Mat c(n, std::vector<Rational>(n));
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) c[a][b] = l.pairing(l.unit(a), l.unit(b)).body_value().constant();
    std::vector<Rational> rhs(n, 0);
    rhs[i] = 1;
    std::vector<Rational> v = solve(c, rhs);
    Mat basis(n, std::vector<Rational>(n));
    std::vector<Vec> cols = l.g;
    cols.insert(cols.end(), h.begin(), h.end());
    for (size_t k = 0; k < n; ++k)
        for (size_t r = 0; r < n; ++r) basis[r][k] = cols[k][r].body_value().constant();
    std::vector<Rational> coeffs = solve(basis, v);
    std::vector<Rational> out(n, 0);
    for (size_t k = 0; k < l.g.size(); ++k)
        for (size_t r = 0; r < n; ++r) out[r] += coeffs[k] * l.g[k][r].body_value().constant();
    return out;
}

MultiVector random_multivector(const LieData& l, int degree, std::mt19937& rng) {
    std::uniform_int_distribution<long> c(-2, 2);
    std::uniform_int_distribution<int> pick(0, l.dim() - 1);
    MultiVector m(degree);
    for (int k = 0; k < 3; ++k) {
        std::vector<int> idx;
        for (int i = 0; i < degree; ++i) idx.push_back(pick(rng));
        MultiVector b = MultiVector::basis(idx, Q(c(rng)));
        if (b.degree() == degree) m = m + b;
    }
    return m;
}

long sign_of(int exponent) { return exponent % 2 == 0 ? 1 : -1; }

// k[x1..x4] with a(e_i) = d/dx_i, {x1, x4} = 1 and {x2, x3} = x4; the abelian action is
// quasi-Poisson for delta(e4) = -e2∧e3 and phi = e1∧e2∧e3.
AffineQP four_variables() {
    auto ring = polynomial("X4", {"x1", "x2", "x3", "x4"});
    auto lie = std::make_shared<LieData>("ab4", std::vector<std::string>{"e1", "e2", "e3", "e4"});
    AffineQP x{"X4", ring, lie, {}, {}};
    for (int i = 0; i < 4; ++i) {
        std::vector<Element> row;
        for (int g = 0; g < 4; ++g) row.push_back(g == i ? ring->one() : ring->zero());
        x.action.push_back(row);
    }
    x.bivector[{0, 3}] = ring->one();
    x.bivector[{1, 2}] = el(*ring, "x4");
    return x;
}

}  // namespace

TEST_CASE("Schouten bracket on sl2") {
    LiePtr g = classical().lies.at("T/g");
    int e = *g->find("e"), f = *g->find("f"), h = *g->find("h");
    CHECK(schouten(MultiVector::basis({e}), MultiVector::basis({f}), *g) == MultiVector::basis({h}));
    CHECK(schouten(MultiVector::basis({e}), MultiVector::basis({f, h}), *g) == MultiVector::basis({e, f}, Q(2)));
    CHECK(schouten(MultiVector::basis({h}), MultiVector::basis({e, f}), *g).is_zero());
    CHECK(MultiVector::basis({f, e}) == MultiVector::basis({e, f}, Q(-1)));
    CHECK(MultiVector::basis({e, e}).is_zero());
    CHECK(MultiVector::basis({e, f}).format(g->names()) == "e∧f");
    MultiVector t = MultiVector::basis({e, f});
    CHECK(schouten(t, t, *g) == MultiVector::basis({e, f, h}, Q(2)));
}

TEST_CASE("Schouten bracket is a graded derivation and graded antisymmetric") {
    LiePtr d = classical().lies.at("T");
    std::mt19937 rng(31);
    for (int i = 0; i < 40; ++i) {
        int p = 1 + i % 2, q = 1 + (i / 2) % 2, r = 1;
        MultiVector a = random_multivector(*d, p, rng), b = random_multivector(*d, q, rng),
                    c = random_multivector(*d, r, rng);
        CHECK(schouten(a, b, *d) == schouten(b, a, *d).scaled(Q(-sign_of((p - 1) * (q - 1)))));
        // [a, b∧c] = [a, b]∧c + (-1)^((p-1)q) b∧[a, c]
        CHECK(schouten(a, b.wedge(c), *d) ==
              schouten(a, b, *d).wedge(c) + b.wedge(schouten(a, c, *d)).scaled(Q(sign_of((p - 1) * q))));
    }
}

TEST_CASE("graded Jacobi identity") {
    LiePtr d = classical().lies.at("T");
    std::mt19937 rng(37);
    for (int i = 0; i < 20; ++i) {
        MultiVector a = random_multivector(*d, 2, rng), b = random_multivector(*d, 2, rng),
                    c = random_multivector(*d, 1, rng);
        // Shifted degrees are 1, 1 and 0, so the last term carries a minus sign.
        MultiVector lhs = schouten(a, schouten(b, c, *d), *d);
        MultiVector rhs = schouten(schouten(a, b, *d), c, *d) + schouten(b, schouten(a, c, *d), *d).scaled(Q(-1));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("twists compose additively") {
    LiePtr g = classical().lies.at("T/g");
    const QuasiPoissonData& qp = classical().quasi.at("T/g");
    std::mt19937 rng(41);
    for (int i = 0; i < 10; ++i) {
        MultiVector t1 = random_multivector(*g, 2, rng), t2 = random_multivector(*g, 2, rng);
        auto [d1, p1] = twist_infinitesimal(qp.delta, qp.phi, t1, *g);
        auto [d12, p12] = twist_infinitesimal(d1, p1, t2, *g);
        auto [ds, ps] = twist_infinitesimal(qp.delta, qp.phi, t1 + t2, *g);
        CHECK(d12 == ds);
        CHECK(p12 == ps);
        auto [d0, p0] = twist_infinitesimal(d1, p1, t1.scaled(Q(-1)), *g);
        CHECK(d0 == qp.delta);
        CHECK(p0 == qp.phi);
    }
    int e = *g->find("e"), f = *g->find("f");
    auto [delta, phi] = twist_infinitesimal(zero_cobracket(*g), MultiVector(3), MultiVector::basis({e, f}), *g);
    // delta'(h) = [h, e∧f] = 2e∧f - 2e∧f = 0; delta'(e) = [e, e∧f] = e∧h.
    CHECK(delta[*g->find("h")].is_zero());
    CHECK(delta[e] == MultiVector::basis({e, *g->find("h")}));
    CHECK(phi == schouten(MultiVector::basis({e, f}), MultiVector::basis({e, f}), *g).scaled(Q(1, 2)));
}

TEST_CASE("Manin pairs") {
    CHECK(check_group_pair(*classical().lies.at("T")).passed());
    auto dd = double_sl2();
    CHECK(dd->validate().passed());
    CHECK(check_group_pair(*dd).passed());
    auto whole = double_sl2();
    whole->g.clear();
    for (int i = 0; i < whole->dim(); ++i) whole->g.push_back(whole->unit(i));
    CheckReport r = check_group_pair(*whole);
    CHECK_FALSE(r.passed());
    CHECK(r.find("lagrangian-dimension")->verdict == Verdict::Fail);
    CHECK(r.find("g-isotropic")->verdict == Verdict::Fail);
}

TEST_CASE("complement projections") {
    LiePtr t = classical().lies.at("T");
    auto rows = complement_projection(*t, t->h);
    REQUIRE(rows.size() == 6);
    CHECK(rows[*t->find("e")] == t->zero());
    CHECK(rows[*t->find("E")] == t->unit(*t->find("e")));
    CHECK(rows[*t->find("H")] == t->unit(*t->find("h")));
    auto dd = double_sl2();
    auto h = antidiagonal(*dd);
    auto anti = complement_projection(*dd, h);
    for (int i = 0; i < dd->dim(); ++i) {
        CAPTURE(dd->names()[i]);
        CHECK(rationals(anti[i]) == projection_oracle(*dd, h, i));
    }
    // c^-1(e^e1) = f1 = (f1 + f2)/2 + (f1 - f2)/2.
    Vec half = dd->zero();
    half[*dd->find("f1")] = Q(1, 2);
    half[*dd->find("f2")] = Q(1, 2);
    CHECK(anti[*dd->find("e1")] == half);
}

TEST_CASE("twisting the complement shifts the projection by t-sharp") {
    LiePtr t = classical().lies.at("T");
    std::mt19937 rng(43);
    // t lives on g = span{e, f, h}, with indices in the g basis.
    LiePtr g = classical().lies.at("T/g");
    for (int k = 0; k < 5; ++k) {
        MultiVector tw = random_multivector(*g, 2, rng);
        auto before = complement_projection(*t, t->h);
        auto after = complement_projection(*t, twist_complement(*t, t->h, tw));
        for (int i = 0; i < t->dim(); ++i) {
            Vec xi = zero_vec(Ring::Rational, t->g.size());
            for (size_t a = 0; a < t->g.size(); ++a) xi[a] = t->g[a][i];
            Vec shift = twist_sharp(*t, tw, xi);
            Vec expected = before[i];
            for (int j = 0; j < t->dim(); ++j) expected[j] = expected[j] - shift[j];
            CHECK(after[i] == expected);
        }
    }
}

TEST_CASE("Kirillov-Kostant-Souriau bracket on sl2*") {
    const Workspace& ws = classical();
    const AffineQP& x = ws.varieties.at("A0");
    const QuasiPoissonData& qp = ws.quasi.at("T/g");
    CHECK(x.validate().passed());
    CHECK(check_quasi_poisson_variety(x, qp.delta, qp.phi, 3).passed());
    const Presentation& r = *x.ring;
    CHECK(x.bracket(el(r, "f"), el(r, "e")) == el(r, "-h"));
    CHECK(x.bracket(el(r, "e"), el(r, "f")) == el(r, "h"));
    CHECK(x.bracket(el(r, "h"), el(r, "e*f")) == r.zero());
    // ad vector fields span at most a plane at each point, so every trivector acts as zero.
    MultiVector tri = MultiVector::basis({0, 1, 2});
    for (const Word& a : r.normal_words(2))
        for (const Word& b : r.normal_words(2))
            CHECK(x.apply(tri, {r.word(a), r.word(b), el(r, "e*h")}).is_zero());
    AffineQP zero = x;
    zero.bivector.clear();
    CHECK(check_quasi_poisson_variety(zero, zero_cobracket(*x.lie), MultiVector(3), 3).passed());
}

TEST_CASE("a Jacobiator needs phi") {
    AffineQP x = four_variables();
    const LieData& l = *x.lie;
    Cobracket delta = zero_cobracket(l);
    delta[3] = MultiVector::basis({1, 2}, Q(-1));
    CHECK(check_quasi_poisson_variety(x, delta, MultiVector::basis({0, 1, 2}), 2).passed());
    CheckReport r = check_quasi_poisson_variety(x, delta, MultiVector(3), 2);
    CHECK_FALSE(r.passed());
    const Witness* w = r.first_witness();
    REQUIRE(w != nullptr);
    CHECK(w->inputs == std::vector<std::string>{"x1", "x2", "x3"});
    CHECK_FALSE(check_quasi_poisson_variety(x, zero_cobracket(l), MultiVector::basis({0, 1, 2}), 2).passed());
}

TEST_CASE("classical moment map for sl2*") {
    const Workspace& ws = classical();
    const ClassicalMoment& m = ws.classical.at("kks");
    const QuasiPoissonData& qp = ws.quasi.at("T/g");
    REQUIRE(qp.twist);
    CheckReport r = check_classical_moment_map_twisted(m, *qp.twist);
    CHECK(r.passed());
    REQUIRE(r.find("complement-independence") != nullptr);
    CHECK(r.find("complement-independence")->verdict == Verdict::Pass);
    CHECK(check_classical_moment_map(m, m.double_lie->h).passed());
    CHECK(pullback(m, el(*m.dg.ring, "e*f")) == el(*m.x.ring, "e*f"));
    ClassicalMoment zero = m;
    for (auto& v : zero.mu) v = m.x.ring->zero();
    CHECK_FALSE(check_classical_moment_map(zero, m.double_lie->h).passed());
}
