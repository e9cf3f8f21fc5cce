#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "support.hpp"

using namespace hopfmm;
using namespace hopfmm::test;

namespace {

Scalar dual(long b, long s, Ring r = Ring::DualRational) {
    return Scalar::dual(QRat(b), QRat(s), r);
}

// q-rational built from small integer coefficient lists; numerator and denominator are nonzero.
Scalar random_qrat(std::mt19937& rng, Ring ring) {
    std::uniform_int_distribution<long> c(-4, 4);
    auto poly = [&](int deg) {
        Poly p;
        for (int i = 0; i <= deg; ++i) p = p + Poly::monomial(Rational(c(rng)), i);
        return p;
    };
    Poly num = poly(2), den = poly(1);
    while (den.is_zero()) den = poly(1);
    Scalar body = Scalar::from_qrat(QRat(num, den), ring_base(ring));
    if (!ring_is_dual(ring)) return body;
    Poly s = poly(1);
    return Scalar::dual(body.body_value(), QRat(s, Poly(Rational(1))), ring);
}

Scalar random_scalar(std::mt19937& rng, Ring ring) {
    if (ring_has_q(ring)) return random_qrat(rng, ring);
    std::uniform_int_distribution<long> c(-9, 9);
    std::uniform_int_distribution<long> d(1, 7);
    if (ring == Ring::Rational) return Q(c(rng), d(rng));
    return Scalar::dual(QRat(Rational(c(rng), d(rng))), QRat(Rational(c(rng), d(rng))), ring);
}

const std::vector<Ring> kRings = {Ring::Rational, Ring::QRational, Ring::DualRational, Ring::DualQRational};

}  // namespace

TEST_CASE("rational arithmetic is exact and reduced") {
    CHECK(scalar_arith(ScalarOp::Add, Q(1, 2), Q(1, 3)) == Q(5, 6));
    CHECK(Q(6, 4) == Q(3, 2));
    CHECK(Q(1, -2) == Q(-1, 2));
    CHECK(Q(2, 4).to_string() == "1/2");
    CHECK(scalar_arith(ScalarOp::Neg, Q(3, 7)) == Q(-3, 7));
    CHECK(scalar_arith(ScalarOp::Inv, Q(-3, 7)) == Q(-7, 3));
}

TEST_CASE("dual numbers square hbar to zero") {
    CHECK(scalar_arith(ScalarOp::Mul, dual(1, 2), dual(3, 5)) == dual(3, 11));
    Scalar h = Scalar::hbar(Ring::DualRational);
    CHECK((h * h).is_zero());
    // (2 + 3hbar)(x + y hbar) = 1 gives x = 1/2, y = -3/4.
    Scalar inv = scalar_arith(ScalarOp::Inv, dual(2, 3));
    CHECK(inv == Scalar::dual(QRat(Rational(1, 2)), QRat(Rational(-3, 4)), Ring::DualRational));
    CHECK(inv * dual(2, 3) == Scalar::one(Ring::DualRational));
}

TEST_CASE("hbar_parts splits body and slope") {
    auto [b1, s1] = hbar_parts(dual(3, 5));
    CHECK(b1 == Q(3));
    CHECK(s1 == Q(5));
    auto [b0, s0] = hbar_parts(Scalar::zero(Ring::DualRational));
    CHECK(b0.is_zero());
    CHECK(s0.is_zero());
    Ring r = Ring::DualQRational;
    Scalar q = Scalar::q(r), qi = q.inverse();
    auto [bq, sq] = hbar_parts(q + (q - qi) * Scalar::hbar(r));
    CHECK(bq == Scalar::q(Ring::QRational));
    CHECK(sq == Scalar::q(Ring::QRational) - Scalar::q(Ring::QRational).inverse());
    CHECK(bq.ring() == Ring::QRational);
}

TEST_CASE("non-invertible elements raise DivisionByZero") {
    auto kind_of = [](auto&& f) { return kind_of_error(error_of(f)); };
    CHECK(kind_of([] { Q(0).inverse(); }) == ErrorKind::DivisionByZero);
    CHECK(kind_of([] { Scalar::hbar(Ring::DualRational).inverse(); }) == ErrorKind::DivisionByZero);
    CHECK(kind_of([] { Scalar::zero(Ring::QRational).inverse(); }) == ErrorKind::DivisionByZero);
    CHECK(kind_of([] { (void)(Q(1) / Q(0)); }) == ErrorKind::DivisionByZero);
}

TEST_CASE("mixing rings raises RingMismatch") {
    CHECK_THROWS_AS((void)(Q(1) + Scalar::q(Ring::QRational)), Error);
    try {
        (void)(Q(1) * Scalar::hbar(Ring::DualRational));
        FAIL("no exception");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::RingMismatch);
    }
    CHECK(Q(2).in_ring(Ring::DualQRational) == Scalar::integer(2, Ring::DualQRational));
    CHECK_THROWS_AS(Scalar::q(Ring::QRational).in_ring(Ring::Rational), Error);
}

TEST_CASE("q-rationals have a canonical form") {
    Ring r = Ring::QRational;
    Scalar q = Scalar::q(r);
    Scalar one = Scalar::one(r);
    // (q^2 - 1)/(q - 1) = q + 1
    CHECK((q * q - one) / (q - one) == q + one);
    // 2q/(2q + 2) = q/(q + 1) with monic denominator
    Scalar x = (Scalar::integer(2, r) * q) / (Scalar::integer(2, r) * q + Scalar::integer(2, r));
    CHECK(x.body_value().denominator() == Poly::monomial(1, 1) + Poly(Rational(1)));
    CHECK(x.body_value().numerator() == Poly::monomial(1, 1));
    CHECK(q * q.inverse() == one);
    CHECK((q - q.inverse()) * q == q * q - one);
    CHECK(Scalar::from_qrat(QRat::q_power(-3), r) == q.inverse() * q.inverse() * q.inverse());
}

TEST_CASE("printed scalars parse back to themselves") {
    std::mt19937 rng(7);
    for (Ring r : kRings)
        for (int i = 0; i < 40; ++i) {
            Scalar s = random_scalar(rng, r);
            CAPTURE(s.to_string());
            CHECK(parse_scalar(s.to_string(), r) == s);
        }
}

TEST_CASE("ring axioms on sampled triples") {
    std::mt19937 rng(11);
    for (Ring r : kRings) {
        CAPTURE(ring_name(r));
        for (int i = 0; i < 60; ++i) {
            Scalar a = random_scalar(rng, r), b = random_scalar(rng, r), c = random_scalar(rng, r);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + b == b + a);
            CHECK(a * b == b * a);
            CHECK(a - a == Scalar::zero(r));
            CHECK(a * Scalar::one(r) == a);
        }
    }
}

TEST_CASE("dual product rule for slopes") {
    std::mt19937 rng(13);
    for (Ring r : {Ring::DualRational, Ring::DualQRational})
        for (int i = 0; i < 60; ++i) {
            Scalar a = random_scalar(rng, r), b = random_scalar(rng, r);
            CHECK((a * b).slope() == a.body() * b.slope() + a.slope() * b.body());
            CHECK((a * b).body() == a.body() * b.body());
        }
}

TEST_CASE("inverses are two-sided whenever defined") {
    std::mt19937 rng(17);
    for (Ring r : kRings)
        for (int i = 0; i < 60; ++i) {
            Scalar a = random_scalar(rng, r);
            if (a.body().is_zero()) continue;
            Scalar inv = a.inverse();
            CHECK(a * inv == Scalar::one(r));
            CHECK(inv * a == Scalar::one(r));
        }
}

TEST_CASE("q-rational arithmetic agrees with evaluation at rational points") {
    // Evaluation at q = 3/2 and q = 5 is a ring map; the oracle does the arithmetic in Q.
    std::mt19937 rng(19);
    const std::vector<Rational> points = {Rational(3, 2), Rational(5), Rational(-2, 7)};
    for (int i = 0; i < 60; ++i) {
        Scalar a = random_scalar(rng, Ring::QRational), b = random_scalar(rng, Ring::QRational);
        for (const auto& x : points) {
            if (!defined_at(a.body_value(), x) || !defined_at(b.body_value(), x)) continue;
            Rational av = eval_qrat(a.body_value(), x), bv = eval_qrat(b.body_value(), x);
            CHECK(eval_qrat((a + b).body_value(), x) == av + bv);
            CHECK(eval_qrat((a * b).body_value(), x) == av * bv);
            if (bv != 0) CHECK(eval_qrat((a / b).body_value(), x) == av / bv);
        }
    }
}
