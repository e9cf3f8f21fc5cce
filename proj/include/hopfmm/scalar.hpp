#pragma once

// Exact coefficient rings: Q, Q(q), and the dual numbers R[hbar]/hbar^2 over either.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hopfmm/errors.hpp"

namespace hopfmm {

using Rational = mpq_class;

// Dense univariate polynomial over Q, coefficient i multiplies q^i. No trailing zeros.
class Poly {
public:
    Poly() = default;
    explicit Poly(const Rational& c);
    static Poly monomial(const Rational& c, int degree);

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const Rational& coeff(int i) const;
    const Rational& leading() const { return c_.back(); }
    const std::vector<Rational>& coeffs() const { return c_; }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly scaled(const Rational& s) const;
    // Multiplication by q^k; for k < 0 the low coefficients must vanish.
    Poly shifted(int k) const;
    int valuation() const;  // lowest power with a nonzero coefficient
    bool is_monic_monomial() const { return !c_.empty() && c_.back() == 1 && valuation() == degree(); }
    // Euclidean division; divisor must be nonzero.
    std::pair<Poly, Poly> divmod(const Poly& d) const;
    static Poly gcd(Poly a, Poly b);  // monic, gcd(0,0)=0

    bool operator==(const Poly& o) const { return c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }
    std::string to_string(const char* var = "q") const;

private:
    void trim();
    std::vector<Rational> c_;
};

// Element of Q(q): reduced fraction with monic denominator. Constants avoid the polynomial path.
class QRat {
public:
    QRat() : k_(0) {}
    QRat(long v) : k_(v) {}
    explicit QRat(const Rational& v) : k_(v) { k_.canonicalize(); }
    QRat(const Poly& num, const Poly& den);
    static QRat q_power(int n);

    bool is_zero() const { return !poly_ && k_ == 0; }
    bool is_one() const { return !poly_ && k_ == 1; }
    bool is_constant() const { return !poly_; }
    const Rational& constant() const { return k_; }
    Poly numerator() const;
    Poly denominator() const;

    QRat operator+(const QRat& o) const;
    QRat operator-(const QRat& o) const;
    QRat operator-() const;
    QRat operator*(const QRat& o) const;
    QRat inverse() const;
    bool operator==(const QRat& o) const;
    bool operator!=(const QRat& o) const { return !(*this == o); }
    std::string to_string() const;

private:
    void normalize();
    bool poly_ = false;
    Rational k_;
    Poly num_, den_;
};

enum class Ring : unsigned char { Rational, QRational, DualRational, DualQRational };

const char* ring_name(Ring r);
std::optional<Ring> ring_from_name(const std::string& s);
bool ring_has_q(Ring r);
bool ring_is_dual(Ring r);
Ring ring_base(Ring r);  // drops the hbar
Ring ring_dual(Ring r);  // adds the hbar

// A tagged value body + slope*hbar. For non-dual rings the slope is always zero.
class Scalar {
public:
    Scalar() : ring_(Ring::Rational) {}
    static Scalar integer(long v, Ring r);
    static Scalar rational(const Rational& v, Ring r);
    static Scalar from_qrat(const QRat& v, Ring r);
    static Scalar dual(const QRat& body, const QRat& slope, Ring r);
    static Scalar q(Ring r);
    static Scalar hbar(Ring r);
    static Scalar zero(Ring r) { return integer(0, r); }
    static Scalar one(Ring r) { return integer(1, r); }

    Ring ring() const { return ring_; }
    bool is_zero() const { return body_.is_zero() && slope_.is_zero(); }
    bool is_one() const { return body_.is_one() && slope_.is_zero(); }
    bool is_rational() const { return slope_.is_zero() && body_.is_constant(); }
    const QRat& body_value() const { return body_; }
    const QRat& slope_value() const { return slope_; }
    // Components as scalars of the base ring.
    Scalar body() const;
    Scalar slope() const;
    Scalar in_ring(Ring r) const;  // embedding into a larger ring; throws RingMismatch otherwise

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator-() const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar inverse() const;
    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    // Parseable text; wrapped in parentheses when it is not a single literal.
    std::string to_string() const;
    bool needs_parens() const;

private:
    void check(const Scalar& o) const;
    Ring ring_;
    QRat body_, slope_;
};

enum class ScalarOp { Add, Mul, Neg, Inv };
Scalar scalar_arith(ScalarOp op, const Scalar& a, const std::optional<Scalar>& b = std::nullopt);
std::pair<Scalar, Scalar> hbar_parts(const Scalar& a);

}  // namespace hopfmm
