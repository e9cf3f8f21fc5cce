#include "hopfmm/parser.hpp"

#include <cctype>

namespace hopfmm {

namespace {

enum class Tok { Name, Number, Plus, Minus, Star, Slash, Caret, LParen, RParen, Tensor, End };

struct Token {
    Tok kind;
    std::string text;
    int col;
};

std::vector<Token> lex(const std::string& s, int line) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < s.size()) {
        unsigned char ch = s[i];
        int col = static_cast<int>(i) + 1;
        if (std::isspace(ch)) {
            ++i;
            continue;
        }
        if (std::isalpha(ch) || ch == '_') {
            size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\''))
                ++j;
            out.push_back({Tok::Name, s.substr(i, j - i), col});
            i = j;
            continue;
        }
        if (std::isdigit(ch)) {
            size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Tok::Number, s.substr(i, j - i), col});
            i = j;
            continue;
        }
        if (s.compare(i, 3, "(x)") == 0) {
            out.push_back({Tok::Tensor, "(x)", col});
            i += 3;
            continue;
        }
        Tok k;
        switch (ch) {
            case '+': k = Tok::Plus; break;
            case '-': k = Tok::Minus; break;
            case '*': k = Tok::Star; break;
            case '/': k = Tok::Slash; break;
            case '^': k = Tok::Caret; break;
            case '(': k = Tok::LParen; break;
            case ')': k = Tok::RParen; break;
            default: throw Error(ErrorKind::SyntaxError, std::string("unexpected character '") + s[i] + "'", line, col);
        }
        out.push_back({k, std::string(1, s[i]), col});
        ++i;
    }
    out.push_back({Tok::End, "", static_cast<int>(s.size()) + 1});
    return out;
}

class Parser {
public:
    Parser(const std::string& text, std::vector<const Presentation*> slots, bool fixed, int line)
        : toks_(lex(text, line)), slots_(std::move(slots)), fixed_(fixed), line_(line) {}

    Parsed run() {
        if (peek().kind == Tok::End) fail("empty expression");
        bool have = false;
        int arity = 0;
        TensorElement acc;
        Element single;
        bool neg = false;
        if (peek().kind == Tok::Plus || peek().kind == Tok::Minus) neg = next().kind == Tok::Minus;
        while (true) {
            int col = peek().col;
            std::vector<Element> factors = tterm();
            if (neg) factors[0] = -factors[0];
            int a = static_cast<int>(factors.size());
            if (!have) {
                arity = a;
                if (fixed_ && arity != static_cast<int>(slots_.size()))
                    throw Error(ErrorKind::ArityMismatch,
                                "expected " + std::to_string(slots_.size()) + " tensor slots, found " +
                                    std::to_string(arity),
                                line_, col);
                if (arity == 1)
                    single = factors[0];
                else
                    acc = TensorElement::pure(factors);
                have = true;
            } else if (a != arity) {
                throw Error(ErrorKind::ArityMismatch,
                            "term with " + std::to_string(a) + " slots in a sum of arity " + std::to_string(arity),
                            line_, col);
            } else if (arity == 1) {
                single += factors[0];
            } else {
                acc += TensorElement::pure(factors);
            }
            if (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
                neg = next().kind == Tok::Minus;
                continue;
            }
            break;
        }
        if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
        if (arity == 1) return single;
        return acc;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }
    [[noreturn]] void fail(const std::string& msg) const { throw Error(ErrorKind::SyntaxError, msg, line_, peek().col); }

    const Presentation& slot(size_t i) const {
        if (i < slots_.size()) return *slots_[i];
        if (fixed_)
            throw Error(ErrorKind::ArityMismatch, "more than " + std::to_string(slots_.size()) + " tensor slots",
                        line_, peek().col);
        return *slots_.back();
    }

    std::vector<Element> tterm() {
        std::vector<Element> out;
        out.push_back(term(slot(0)));
        while (peek().kind == Tok::Tensor) {
            next();
            out.push_back(term(slot(out.size())));
        }
        return out;
    }

    // A parenthesised or top-level sum inside one slot.
    Element sum(const Presentation& p) {
        Element acc = p.zero();
        bool neg = false;
        if (peek().kind == Tok::Plus || peek().kind == Tok::Minus) neg = next().kind == Tok::Minus;
        while (true) {
            Element t = term(p);
            acc += neg ? -t : t;
            if (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
                neg = next().kind == Tok::Minus;
                continue;
            }
            if (peek().kind == Tok::Tensor) fail("tensor separator inside parentheses");
            return acc;
        }
    }

    static bool starts_atom(Tok k) { return k == Tok::Name || k == Tok::Number || k == Tok::LParen; }

    Element term(const Presentation& p) {
        Element acc = factor(p);
        while (true) {
            Tok k = peek().kind;
            if (k == Tok::Star) {
                next();
                acc = p.multiply(acc, factor(p));
            } else if (k == Tok::Slash) {
                next();
                int col = peek().col;
                Element d = factor(p);
                auto s = d.as_scalar();
                if (!s) throw Error(ErrorKind::SyntaxError, "division by a non-scalar", line_, col);
                if (s->is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero", line_, col);
                acc = acc.scaled(s->inverse());
            } else if (starts_atom(k)) {
                acc = p.multiply(acc, factor(p));
            } else {
                return acc;
            }
        }
    }

    Element factor(const Presentation& p) {
        Element base = atom(p);
        if (peek().kind != Tok::Caret) return base;
        next();
        bool neg = false;
        if (peek().kind == Tok::Minus) {
            next();
            neg = true;
        }
        if (peek().kind != Tok::Number) fail("expected an integer exponent");
        int col = peek().col;
        long n = std::stol(next().text);
        if (!neg) return p.power(base, static_cast<int>(n));
        auto s = base.as_scalar();
        if (!s) throw Error(ErrorKind::SyntaxError, "negative power of a non-scalar", line_, col);
        if (s->is_zero()) throw Error(ErrorKind::DivisionByZero, "negative power of zero", line_, col);
        Scalar inv = s->inverse(), r = p.scalar(1);
        for (long i = 0; i < n; ++i) r *= inv;
        return Element::scalar(r);
    }

    Element atom(const Presentation& p) {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Number: {
                next();
                return Element::scalar(Scalar::rational(Rational(t.text), p.ring()));
            }
            case Tok::LParen: {
                next();
                Element e = sum(p);
                if (peek().kind != Tok::RParen) fail("expected ')'");
                next();
                return e;
            }
            case Tok::Name: {
                next();
                if (t.text == "q") {
                    if (!ring_has_q(p.ring()))
                        throw Error(ErrorKind::RingMismatch, std::string("q used over ") + ring_name(p.ring()), line_,
                                    t.col);
                    return Element::scalar(Scalar::q(p.ring()));
                }
                if (t.text == "hbar") {
                    if (!ring_is_dual(p.ring()))
                        throw Error(ErrorKind::RingMismatch, std::string("hbar used over ") + ring_name(p.ring()),
                                    line_, t.col);
                    return Element::scalar(Scalar::hbar(p.ring()));
                }
                auto id = p.generators().find(t.text);
                if (!id)
                    throw Error(ErrorKind::UnknownGenerator, "'" + t.text + "' is not a generator of " + p.name(),
                                line_, t.col);
                return p.generator(*id);
            }
            case Tok::End: fail("unexpected end of expression");
            default: fail("unexpected '" + t.text + "'");
        }
    }

    std::vector<Token> toks_;
    size_t pos_ = 0;
    std::vector<const Presentation*> slots_;
    bool fixed_;
    int line_;
};

}  // namespace

bool is_reserved_name(const std::string& name) { return name == "q" || name == "hbar"; }

Parsed parse_expression(const std::string& text, const Presentation& p, int line) {
    return Parser(text, {&p}, false, line).run();
}

Parsed parse_expression(const std::string& text, const std::vector<const Presentation*>& slots, int line) {
    if (slots.empty()) throw Error(ErrorKind::ArityMismatch, "no slots given");
    return Parser(text, slots, true, line).run();
}

Element parse_element(const std::string& text, const Presentation& p, int line) {
    return std::get<Element>(parse_expression(text, std::vector<const Presentation*>{&p}, line));
}

TensorElement parse_tensor(const std::string& text, const std::vector<const Presentation*>& slots, int line) {
    if (slots.size() < 2) throw Error(ErrorKind::ArityMismatch, "a tensor needs at least two slots");
    return std::get<TensorElement>(parse_expression(text, slots, line));
}

Scalar parse_scalar(const std::string& text, Ring ring, int line) {
    Presentation k("k", ring, GeneratorTable{});
    Element e = parse_element(text, k, line);
    return *e.as_scalar();
}

}  // namespace hopfmm
