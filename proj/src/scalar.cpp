#include "hopfmm/scalar.hpp"

#include <algorithm>
#include <sstream>

namespace hopfmm {

const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::DivisionByZero: return "DivisionByZero";
        case ErrorKind::RingMismatch: return "RingMismatch";
        case ErrorKind::NonTerminating: return "NonTerminating";
        case ErrorKind::ArityMismatch: return "ArityMismatch";
        case ErrorKind::SyntaxError: return "SyntaxError";
        case ErrorKind::UnknownGenerator: return "UnknownGenerator";
        case ErrorKind::ValidationFailed: return "ValidationFailed";
        case ErrorKind::IncompatibleSources: return "IncompatibleSources";
        case ErrorKind::TruncationUnsound: return "TruncationUnsound";
        case ErrorKind::NotFlat: return "NotFlat";
        case ErrorKind::SingularPairing: return "SingularPairing";
        case ErrorKind::InvalidInput: return "InvalidInput";
    }
    return "Error";
}

// ---------------------------------------------------------------- Poly

Poly::Poly(const Rational& c) {
    if (c != 0) c_.push_back(c);
}

Poly Poly::monomial(const Rational& c, int degree) {
    Poly p;
    if (c == 0) return p;
    p.c_.assign(degree + 1, Rational(0));
    p.c_[degree] = c;
    return p;
}

const Rational& Poly::coeff(int i) const {
    static const Rational zero(0);
    if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
    return c_[i];
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::operator+(const Poly& o) const {
    Poly r;
    r.c_.resize(std::max(c_.size(), o.c_.size()));
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = coeff(i) + o.coeff(i);
    r.trim();
    return r;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    Poly r;
    if (is_zero() || o.is_zero()) return r;
    r.c_.assign(c_.size() + o.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j)
            if (o.c_[j] != 0) r.c_[i + j] += c_[i] * o.c_[j];
    }
    r.trim();
    return r;
}

Poly Poly::shifted(int k) const {
    Poly p;
    if (is_zero()) return p;
    if (k >= 0) {
        p.c_.assign(k, Rational(0));
        p.c_.insert(p.c_.end(), c_.begin(), c_.end());
    } else {
        p.c_.assign(c_.begin() - k, c_.end());
    }
    return p;
}

int Poly::valuation() const {
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) return static_cast<int>(i);
    return -1;
}

Poly Poly::scaled(const Rational& s) const {
    if (s == 0) return Poly();
    Poly r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
    if (d.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
    Poly quot, rem = *this;
    if (degree() < d.degree()) return {quot, rem};
    quot.c_.assign(degree() - d.degree() + 1, Rational(0));
    while (!rem.is_zero() && rem.degree() >= d.degree()) {
        int shift = rem.degree() - d.degree();
        Rational f = rem.leading() / d.leading();
        quot.c_[shift] = f;
        for (int i = 0; i <= d.degree(); ++i) rem.c_[i + shift] -= f * d.c_[i];
        rem.trim();
    }
    quot.trim();
    return {quot, rem};
}

Poly Poly::gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a.scaled(Rational(1) / a.leading());
}

std::string Poly::to_string(const char* var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Rational& c = c_[i];
        if (c == 0) continue;
        Rational a = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (i == 0) {
            os << a.get_str();
            continue;
        }
        if (a != 1) os << a.get_str() << "*";
        os << var;
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

// ---------------------------------------------------------------- QRat

QRat::QRat(const Poly& num, const Poly& den) : poly_(true), k_(0), num_(num), den_(den) {
    if (den_.is_zero()) throw Error(ErrorKind::DivisionByZero, "zero denominator");
    normalize();
}

QRat QRat::q_power(int n) {
    if (n >= 0) return QRat(Poly::monomial(1, n), Poly(1));
    return QRat(Poly(1), Poly::monomial(1, -n));
}

Poly QRat::numerator() const { return poly_ ? num_ : Poly(k_); }
Poly QRat::denominator() const { return poly_ ? den_ : Poly(1); }

void QRat::normalize() {
    if (!poly_) return;
    if (num_.is_zero()) {
        poly_ = false;
        k_ = 0;
        num_ = den_ = Poly();
        return;
    }
    if (den_.is_monic_monomial()) {
        // Laurent polynomials: only a common power of q can cancel.
        int k = std::min(num_.valuation(), den_.degree());
        if (k > 0) {
            num_ = num_.shifted(-k);
            den_ = den_.shifted(-k);
        }
    } else if (!den_.is_constant()) {
        Poly g = Poly::gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = num_.divmod(g).first;
            den_ = den_.divmod(g).first;
        }
    }
    Rational lc = den_.leading();
    if (lc != 1) {
        Rational inv = Rational(1) / lc;
        num_ = num_.scaled(inv);
        den_ = den_.scaled(inv);
    }
    if (num_.is_constant() && den_.is_constant()) {
        poly_ = false;
        k_ = num_.coeff(0);
        num_ = den_ = Poly();
    }
}

QRat QRat::operator+(const QRat& o) const {
    if (!poly_ && !o.poly_) return QRat(Rational(k_ + o.k_));
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    Poly n1 = numerator(), d1 = denominator(), n2 = o.numerator(), d2 = o.denominator();
    if (d1 == d2) return QRat(n1 + n2, d1);
    if (d1.is_monic_monomial() && d2.is_monic_monomial()) {
        int m = std::max(d1.degree(), d2.degree());
        return QRat(n1.shifted(m - d1.degree()) + n2.shifted(m - d2.degree()), Poly::monomial(1, m));
    }
    return QRat(n1 * d2 + n2 * d1, d1 * d2);
}

QRat QRat::operator-() const {
    if (!poly_) return QRat(Rational(-k_));
    QRat r = *this;
    r.num_ = -r.num_;
    return r;
}

QRat QRat::operator-(const QRat& o) const { return *this + (-o); }

QRat QRat::operator*(const QRat& o) const {
    if (!poly_ && !o.poly_) return QRat(Rational(k_ * o.k_));
    if (is_zero() || o.is_zero()) return QRat();
    if (!poly_) {
        QRat r = o;
        r.num_ = r.num_.scaled(k_);
        return r;
    }
    if (!o.poly_) return o * *this;
    if (den_.is_monic_monomial() && o.den_.is_monic_monomial())
        return QRat(num_ * o.num_, Poly::monomial(1, den_.degree() + o.den_.degree()));
    return QRat(num_ * o.num_, den_ * o.den_);
}

QRat QRat::inverse() const {
    if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
    if (!poly_) return QRat(Rational(1 / k_));
    return QRat(den_, num_);
}

bool QRat::operator==(const QRat& o) const {
    if (poly_ != o.poly_) return false;
    if (!poly_) return k_ == o.k_;
    return num_ == o.num_ && den_ == o.den_;
}

std::string QRat::to_string() const {
    if (!poly_) return k_.get_str();
    if (den_ == Poly(1)) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

// ---------------------------------------------------------------- rings

const char* ring_name(Ring r) {
    switch (r) {
        case Ring::Rational: return "rational";
        case Ring::QRational: return "qrational";
        case Ring::DualRational: return "dual-rational";
        case Ring::DualQRational: return "dual-qrational";
    }
    return "?";
}

std::optional<Ring> ring_from_name(const std::string& s) {
    for (Ring r : {Ring::Rational, Ring::QRational, Ring::DualRational, Ring::DualQRational})
        if (s == ring_name(r)) return r;
    return std::nullopt;
}

bool ring_has_q(Ring r) { return r == Ring::QRational || r == Ring::DualQRational; }
bool ring_is_dual(Ring r) { return r == Ring::DualRational || r == Ring::DualQRational; }
Ring ring_base(Ring r) { return ring_has_q(r) ? Ring::QRational : Ring::Rational; }
Ring ring_dual(Ring r) { return ring_has_q(r) ? Ring::DualQRational : Ring::DualRational; }

// ---------------------------------------------------------------- Scalar

Scalar Scalar::integer(long v, Ring r) {
    Scalar s;
    s.ring_ = r;
    s.body_ = QRat(v);
    return s;
}

Scalar Scalar::rational(const Rational& v, Ring r) {
    Scalar s;
    s.ring_ = r;
    s.body_ = QRat(v);
    return s;
}

Scalar Scalar::from_qrat(const QRat& v, Ring r) {
    if (!v.is_constant() && !ring_has_q(r))
        throw Error(ErrorKind::RingMismatch, std::string("q is not available in ring ") + ring_name(r));
    Scalar s;
    s.ring_ = r;
    s.body_ = v;
    return s;
}

Scalar Scalar::dual(const QRat& body, const QRat& slope, Ring r) {
    if (!ring_is_dual(r) && !slope.is_zero())
        throw Error(ErrorKind::RingMismatch, std::string("hbar is not available in ring ") + ring_name(r));
    Scalar s = from_qrat(body, r);
    if (!slope.is_constant() && !ring_has_q(r))
        throw Error(ErrorKind::RingMismatch, std::string("q is not available in ring ") + ring_name(r));
    s.slope_ = slope;
    return s;
}

Scalar Scalar::q(Ring r) { return from_qrat(QRat::q_power(1), r); }

Scalar Scalar::hbar(Ring r) { return dual(QRat(0), QRat(1), r); }

Scalar Scalar::body() const { return from_qrat(body_, ring_base(ring_)); }
Scalar Scalar::slope() const { return from_qrat(slope_, ring_base(ring_)); }

Scalar Scalar::in_ring(Ring r) const {
    if (r == ring_) return *this;
    if (!body_.is_constant() || !slope_.is_constant()) {
        if (!ring_has_q(r)) throw Error(ErrorKind::RingMismatch, "cannot embed q-dependent scalar");
    }
    if (!slope_.is_zero() && !ring_is_dual(r)) throw Error(ErrorKind::RingMismatch, "cannot drop hbar");
    Scalar s = *this;
    s.ring_ = r;
    return s;
}

void Scalar::check(const Scalar& o) const {
    if (ring_ != o.ring_)
        throw Error(ErrorKind::RingMismatch,
                    std::string("operands in ") + ring_name(ring_) + " and " + ring_name(o.ring_));
}

Scalar Scalar::operator+(const Scalar& o) const {
    check(o);
    Scalar s;
    s.ring_ = ring_;
    s.body_ = body_ + o.body_;
    if (!slope_.is_zero() || !o.slope_.is_zero()) s.slope_ = slope_ + o.slope_;
    return s;
}

Scalar Scalar::operator-() const {
    Scalar s = *this;
    s.body_ = -body_;
    if (!slope_.is_zero()) s.slope_ = -slope_;
    return s;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
    check(o);
    Scalar s;
    s.ring_ = ring_;
    s.body_ = body_ * o.body_;
    if (!slope_.is_zero() || !o.slope_.is_zero()) s.slope_ = body_ * o.slope_ + slope_ * o.body_;
    return s;
}

Scalar Scalar::inverse() const {
    if (body_.is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of " + to_string());
    Scalar s;
    s.ring_ = ring_;
    s.body_ = body_.inverse();
    if (!slope_.is_zero()) s.slope_ = -(slope_ * s.body_ * s.body_);
    return s;
}

Scalar Scalar::operator/(const Scalar& o) const {
    check(o);
    return *this * o.inverse();
}

bool Scalar::operator==(const Scalar& o) const {
    return ring_ == o.ring_ && body_ == o.body_ && slope_ == o.slope_;
}

bool Scalar::needs_parens() const { return !is_rational(); }

std::string Scalar::to_string() const {
    if (slope_.is_zero()) {
        if (body_.is_constant()) return body_.to_string();
        return "(" + body_.to_string() + ")";
    }
    std::string out = "(";
    if (!body_.is_zero()) out += body_.is_constant() ? body_.to_string() : "(" + body_.to_string() + ")";
    QRat slope = slope_;
    if (slope.is_constant() && slope.constant() < 0) {
        out += body_.is_zero() ? "-" : " - ";
        slope = -slope;
    } else if (!body_.is_zero()) {
        out += " + ";
    }
    if (slope.is_constant() && slope.is_one())
        out += "hbar";
    else if (slope.is_constant())
        out += slope.to_string() + "*hbar";
    else
        out += "(" + slope.to_string() + ")*hbar";
    return out + ")";
}

Scalar scalar_arith(ScalarOp op, const Scalar& a, const std::optional<Scalar>& b) {
    switch (op) {
        case ScalarOp::Add:
            if (!b) throw Error(ErrorKind::InvalidInput, "add needs two operands");
            return a + *b;
        case ScalarOp::Mul:
            if (!b) throw Error(ErrorKind::InvalidInput, "mul needs two operands");
            return a * *b;
        case ScalarOp::Neg: return -a;
        case ScalarOp::Inv: return a.inverse();
    }
    return a;
}

std::pair<Scalar, Scalar> hbar_parts(const Scalar& a) { return {a.body(), a.slope()}; }

}  // namespace hopfmm
