#include "hopfmm/qpoisson.hpp"

#include <algorithm>

namespace hopfmm {

namespace {

const Ring kQ = Ring::Rational;

Scalar rat(long v) { return Scalar::integer(v, kQ); }

Vec add_scaled(Vec acc, const Vec& v, const Scalar& c) {
    for (size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) acc[i] += c * v[i];
    return acc;
}

std::string vec_text(const Vec& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].to_string();
    return s + ")";
}

}  // namespace

LieData::LieData(std::string name, std::vector<std::string> basis) : name_(std::move(name)), names_(std::move(basis)) {
    size_t n = names_.size();
    table_.assign(n, std::vector<Vec>(n, zero()));
    pairing_.assign(n, zero());
}

std::optional<int> LieData::find(const std::string& n) const {
    auto it = std::find(names_.begin(), names_.end(), n);
    if (it == names_.end()) return std::nullopt;
    return static_cast<int>(it - names_.begin());
}

Vec LieData::unit(int i) const {
    Vec v = zero();
    v.at(i) = rat(1);
    return v;
}

std::string LieData::format(const Vec& v) const {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        std::string c = v[i].to_string();
        bool neg = !c.empty() && c[0] == '-';
        if (neg) c = c.substr(1);
        if (out.empty())
            out = neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        out += (c == "1" ? "" : c + "*") + names_[i];
    }
    return out.empty() ? "0" : out;
}

void LieData::set_bracket(int i, int j, const Vec& v) {
    if (v.size() != names_.size()) throw Error(ErrorKind::ArityMismatch, "bracket value has the wrong dimension");
    if (i == j && !is_zero(v)) throw Error(ErrorKind::InvalidInput, "[x, x] must vanish for " + names_.at(i));
    table_.at(i).at(j) = v;
    Vec neg = v;
    for (auto& c : neg) c = -c;
    table_.at(j).at(i) = neg;
}

Vec LieData::bracket(const Vec& x, const Vec& y) const {
    Vec out = zero();
    for (size_t i = 0; i < x.size(); ++i) {
        if (x[i].is_zero()) continue;
        for (size_t j = 0; j < y.size(); ++j)
            if (!y[j].is_zero()) out = add_scaled(std::move(out), table_[i][j], x[i] * y[j]);
    }
    return out;
}

void LieData::set_pairing(int i, int j, const Scalar& v) {
    pairing_.at(i).at(j) = v;
    pairing_.at(j).at(i) = v;
    has_pairing_ = true;
}

Scalar LieData::pairing(const Vec& x, const Vec& y) const {
    Scalar r = rat(0);
    for (size_t i = 0; i < x.size(); ++i) {
        if (x[i].is_zero()) continue;
        for (size_t j = 0; j < y.size(); ++j)
            if (!y[j].is_zero() && !pairing_[i][j].is_zero()) r += x[i] * y[j] * pairing_[i][j];
    }
    return r;
}

Vec LieData::g_coordinates(const Vec& v) const {
    std::vector<Vec> rows(names_.size(), zero_vec(kQ, g.size()));
    for (size_t k = 0; k < g.size(); ++k)
        for (size_t i = 0; i < names_.size(); ++i) rows[i][k] = g[k].at(i);
    auto x = solve(rows, v, g.size(), kQ);
    if (!x) throw Error(ErrorKind::InvalidInput, format(v) + " is not in the subalgebra of " + name_);
    return *x;
}

CheckReport LieData::validate() const {
    CheckReport rep("lie " + name_);
    int n = dim();
    RecordBuilder jac("jacobi", 3);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                Vec x = unit(i), y = unit(j), z = unit(k);
                Vec s = add_scaled(add_scaled(bracket(x, bracket(y, z)), bracket(y, bracket(z, x)), rat(1)),
                                   bracket(z, bracket(x, y)), rat(1));
                jac.check(is_zero(s), [&] {
                    return Witness{{names_[i], names_[j], names_[k]}, format(s), "0"};
                });
            }
    rep.records.push_back(jac.finish());
    if (has_pairing_) {
        RecordBuilder inv("pairing-invariance", 3);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    Vec x = unit(i), y = unit(j), z = unit(k);
                    Scalar l = pairing(bracket(x, y), z), r = -pairing(y, bracket(x, z));
                    inv.check(l == r, [&] {
                        return Witness{{names_[i], names_[j], names_[k]}, l.to_string(), r.to_string()};
                    });
                }
        rep.records.push_back(inv.finish());
    }
    return rep;
}

LiePtr subalgebra_g(const LieData& l, const std::string& name) {
    std::vector<std::string> names;
    for (size_t k = 0; k < l.g.size(); ++k) {
        int hits = 0, at = -1;
        for (int i = 0; i < l.dim(); ++i)
            if (!l.g[k][i].is_zero()) ++hits, at = i;
        names.push_back(hits == 1 && l.g[k][at].is_one() ? l.names()[at] : "g" + std::to_string(k + 1));
    }
    auto out = std::make_shared<LieData>(name, names);
    for (size_t a = 0; a < l.g.size(); ++a)
        for (size_t b = a + 1; b < l.g.size(); ++b)
            out->set_bracket(a, b, l.g_coordinates(l.bracket(l.g[a], l.g[b])));
    return out;
}

MultiVector MultiVector::scalar(const Scalar& c) {
    MultiVector m(0);
    m.add_term({}, c);
    return m;
}

MultiVector MultiVector::basis(std::vector<int> idx, const Scalar& c) {
    MultiVector m(static_cast<int>(idx.size()));
    m.add_term(std::move(idx), c);
    return m;
}

MultiVector MultiVector::vector(const Vec& v) {
    MultiVector m(1);
    for (size_t i = 0; i < v.size(); ++i) m.add_term({static_cast<int>(i)}, v[i]);
    return m;
}

Scalar MultiVector::coeff(const std::vector<int>& idx) const {
    auto it = terms_.find(idx);
    return it == terms_.end() ? rat(0) : it->second;
}

void MultiVector::add_term(std::vector<int> idx, const Scalar& c) {
    if (static_cast<int>(idx.size()) != degree_)
        throw Error(ErrorKind::ArityMismatch, "multivector term of degree " + std::to_string(idx.size()) +
                                                  " added to degree " + std::to_string(degree_));
    if (c.is_zero()) return;
    bool odd = false;
    for (size_t i = 0; i < idx.size(); ++i)
        for (size_t j = 0; j + 1 < idx.size() - i; ++j) {
            if (idx[j] == idx[j + 1]) return;
            if (idx[j] > idx[j + 1]) {
                std::swap(idx[j], idx[j + 1]);
                odd = !odd;
            }
        }
    for (size_t j = 0; j + 1 < idx.size(); ++j)
        if (idx[j] == idx[j + 1]) return;
    Scalar v = odd ? -c : c;
    auto it = terms_.find(idx);
    if (it == terms_.end()) {
        terms_.emplace(std::move(idx), v);
        return;
    }
    it->second += v;
    if (it->second.is_zero()) terms_.erase(it);
}

MultiVector MultiVector::operator+(const MultiVector& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    MultiVector r = *this;
    for (const auto& [k, c] : o.terms_) r.add_term(k, c);
    return r;
}

MultiVector MultiVector::operator-(const MultiVector& o) const { return *this + o.scaled(rat(-1)); }

MultiVector MultiVector::scaled(const Scalar& c) const {
    MultiVector r(degree_);
    for (const auto& [k, v] : terms_) r.add_term(k, v * c);
    return r;
}

MultiVector MultiVector::wedge(const MultiVector& o) const {
    MultiVector r(degree_ + o.degree_);
    for (const auto& [a, x] : terms_)
        for (const auto& [b, y] : o.terms_) {
            std::vector<int> idx = a;
            idx.insert(idx.end(), b.begin(), b.end());
            r.add_term(std::move(idx), x * y);
        }
    return r;
}

std::string MultiVector::format(const std::vector<std::string>& names) const {
    std::string out;
    for (const auto& [idx, c] : terms_) {
        std::string mono;
        for (size_t i = 0; i < idx.size(); ++i) mono += (i ? "∧" : "") + names.at(idx[i]);
        std::string cs = c.to_string();
        bool neg = cs[0] == '-';
        if (neg) cs = cs.substr(1);
        if (!out.empty()) out += neg ? " - " : " + ";
        else if (neg) out += "-";
        if (mono.empty())
            out += cs;
        else
            out += (cs == "1" ? "" : cs + "*") + mono;
    }
    return out.empty() ? "0" : out;
}

MultiVector schouten(const MultiVector& p, const MultiVector& q, const LieData& l) {
    MultiVector out(std::max(p.degree() + q.degree() - 1, 0));
    if (p.degree() == 0 || q.degree() == 0) return out;
    for (const auto& [xs, a] : p.terms())
        for (const auto& [ys, b] : q.terms())
            for (size_t i = 0; i < xs.size(); ++i)
                for (size_t j = 0; j < ys.size(); ++j) {
                    const Vec& br = l.bracket(xs[i], ys[j]);
                    if (is_zero(br)) continue;
                    std::vector<int> rest;
                    for (size_t k = 0; k < xs.size(); ++k)
                        if (k != i) rest.push_back(xs[k]);
                    for (size_t k = 0; k < ys.size(); ++k)
                        if (k != j) rest.push_back(ys[k]);
                    Scalar sign = rat((i + j) % 2 ? -1 : 1);
                    for (size_t k = 0; k < br.size(); ++k) {
                        if (br[k].is_zero()) continue;
                        std::vector<int> idx{static_cast<int>(k)};
                        idx.insert(idx.end(), rest.begin(), rest.end());
                        out.add_term(std::move(idx), sign * a * b * br[k]);
                    }
                }
    return out;
}

Cobracket zero_cobracket(const LieData& l) { return Cobracket(l.dim(), MultiVector(2)); }

MultiVector cobracket_differential(const Cobracket& delta, const MultiVector& t, const LieData& l) {
    if (static_cast<int>(delta.size()) != l.dim())
        throw Error(ErrorKind::ArityMismatch, "cobracket must give one bivector per basis element of " + l.name());
    if (t.degree() != 2) throw Error(ErrorKind::ArityMismatch, "twist must be a bivector");
    MultiVector out(3);
    for (const auto& [idx, c] : t.terms()) {
        MultiVector x = MultiVector::basis({idx[0]}), y = MultiVector::basis({idx[1]});
        out = out + (delta.at(idx[0]).wedge(y) - x.wedge(delta.at(idx[1]))).scaled(c);
    }
    return out;
}

std::pair<Cobracket, MultiVector> twist_infinitesimal(const Cobracket& delta, const MultiVector& phi,
                                                      const MultiVector& t, const LieData& l) {
    if (phi.degree() != 3) throw Error(ErrorKind::ArityMismatch, "phi must be a trivector");
    Cobracket out = delta;
    for (int i = 0; i < l.dim(); ++i) out.at(i) = out.at(i) + schouten(MultiVector::basis({i}), t, l);
    Scalar half = Scalar::rational(Rational(1, 2), kQ);
    MultiVector phi2 = phi - cobracket_differential(delta, t, l) + schouten(t, t, l).scaled(half);
    return {out, phi2};
}

CheckReport check_group_pair(const LieData& l) {
    CheckReport rep("group pair " + l.name());
    rep.append(l.validate());
    int n = l.dim();
    auto names = [&](const Vec& v) { return l.format(v); };

    RecordBuilder nondeg("pairing-nondegenerate", 2);
    Scalar det = l.has_pairing() ? determinant(l.pairing_matrix(), kQ) : rat(0);
    nondeg.check(!det.is_zero(), [&] { return Witness{{l.name()}, "det = " + det.to_string(), "nonzero"}; });
    rep.records.push_back(nondeg.finish());

    RecordBuilder dim("lagrangian-dimension", 1);
    dim.check(2 * static_cast<int>(l.g.size()) == n, [&] {
        return Witness{{l.name()}, "2 dim g = " + std::to_string(2 * l.g.size()), "dim d = " + std::to_string(n)};
    });
    rep.records.push_back(dim.finish());

    Echelon span(kQ, n);
    for (const auto& v : l.g) span.add(v);
    RecordBuilder indep("g-independent", 1);
    indep.check(span.rank() == l.g.size(), [&] {
        return Witness{{l.name()}, "rank " + std::to_string(span.rank()), std::to_string(l.g.size())};
    });
    rep.records.push_back(indep.finish());

    RecordBuilder iso("g-isotropic", 2), sub("g-subalgebra", 2);
    for (size_t a = 0; a < l.g.size(); ++a)
        for (size_t b = a; b < l.g.size(); ++b) {
            Scalar c = l.pairing(l.g[a], l.g[b]);
            iso.check(c.is_zero(), [&] { return Witness{{names(l.g[a]), names(l.g[b])}, c.to_string(), "0"}; });
            if (a == b) continue;
            Vec br = l.bracket(l.g[a], l.g[b]);
            sub.check(span.contains(br), [&] {
                return Witness{{names(l.g[a]), names(l.g[b])}, names(br), "an element of g"};
            });
        }
    rep.records.push_back(iso.finish());
    rep.records.push_back(sub.finish());

    if (!l.h.empty()) {
        RecordBuilder hiso("h-isotropic", 2), comp("h-complementary", 1);
        for (size_t a = 0; a < l.h.size(); ++a)
            for (size_t b = a; b < l.h.size(); ++b) {
                Scalar c = l.pairing(l.h[a], l.h[b]);
                hiso.check(c.is_zero(),
                           [&] { return Witness{{names(l.h[a]), names(l.h[b])}, c.to_string(), "0"}; });
            }
        Echelon all = span;
        for (const auto& v : l.h) all.add(v);
        comp.check(all.rank() == static_cast<size_t>(n) && l.g.size() + l.h.size() == static_cast<size_t>(n), [&] {
            return Witness{{l.name()}, "rank " + std::to_string(all.rank()), std::to_string(n)};
        });
        rep.records.push_back(hiso.finish());
        rep.records.push_back(comp.finish());
    }
    return rep;
}

std::vector<Vec> complement_projection(const LieData& l, const std::vector<Vec>& h) {
    int n = l.dim();
    if (!l.has_pairing() || determinant(l.pairing_matrix(), kQ).is_zero())
        throw Error(ErrorKind::SingularPairing, "the pairing on " + l.name() + " is degenerate");
    if (l.g.size() + h.size() != static_cast<size_t>(n))
        throw Error(ErrorKind::InvalidInput, "complement has the wrong dimension");
    std::vector<Vec> split(n, zero_vec(kQ, n));
    for (int k = 0; k < n; ++k) {
        const Vec& v = k < static_cast<int>(l.g.size()) ? l.g[k] : h[k - l.g.size()];
        for (int i = 0; i < n; ++i) split[i][k] = v.at(i);
    }
    std::vector<Vec> out;
    for (int i = 0; i < n; ++i) {
        auto v = solve(l.pairing_matrix(), l.unit(i), n, kQ);
        auto coords = solve(split, *v, n, kQ);
        if (!coords) throw Error(ErrorKind::InvalidInput, "g and the complement do not span " + l.name());
        Vec p = l.zero();
        for (size_t k = 0; k < l.g.size(); ++k) p = add_scaled(std::move(p), l.g[k], (*coords)[k]);
        out.push_back(std::move(p));
    }
    return out;
}

Vec twist_sharp(const LieData& l, const MultiVector& t, const Vec& xi_on_g) {
    Vec out = l.zero();
    for (const auto& [idx, c] : t.terms()) {
        out = add_scaled(std::move(out), l.g.at(idx[1]), c * xi_on_g.at(idx[0]));
        out = add_scaled(std::move(out), l.g.at(idx[0]), -(c * xi_on_g.at(idx[1])));
    }
    return out;
}

std::vector<Vec> twist_complement(const LieData& l, const std::vector<Vec>& h, const MultiVector& t) {
    std::vector<Vec> out;
    for (const auto& eta : h) {
        Vec xi;
        for (const auto& ga : l.g) xi.push_back(l.pairing(eta, ga));
        out.push_back(add_scaled(eta, twist_sharp(l, t, xi), rat(1)));
    }
    return out;
}

Element AffineQP::derive_basis(int i, const Element& f) const {
    const auto& images = action.at(i);
    const Presentation& p = *ring;
    Element out = p.zero();
    for (const auto& [w, c] : f.terms())
        for (size_t k = 0; k < w.size(); ++k) {
            const Element& img = images.at(w[k]);
            if (img.is_zero()) continue;
            Word pre(w.begin(), w.begin() + k), post(w.begin() + k + 1, w.end());
            out += p.multiply(p.multiply(p.word(pre), img), p.word(post)).scaled(c);
        }
    return out;
}

Element AffineQP::derive(const Vec& x, const Element& f) const {
    Element out = ring->zero();
    for (size_t i = 0; i < x.size(); ++i)
        if (!x[i].is_zero()) out += derive_basis(static_cast<int>(i), f).scaled(x[i]);
    return out;
}

Element AffineQP::bivector_entry(int i, int j) const {
    if (i == j) return ring->zero();
    auto it = bivector.find({std::min(i, j), std::max(i, j)});
    if (it == bivector.end()) return ring->zero();
    return i < j ? it->second : -it->second;
}

Element AffineQP::bracket(const Element& f, const Element& g) const {
    const Presentation& p = *ring;
    int n = p.generators().size();
    auto partial = [&](const Element& e, int i) {
        Element out = p.zero();
        for (const auto& [w, c] : e.terms())
            for (size_t k = 0; k < w.size(); ++k) {
                if (w[k] != i) continue;
                Word rest = w;
                rest.erase(rest.begin() + k);
                out += p.word(rest).scaled(c);
            }
        return out;
    };
    std::vector<Element> df, dg;
    for (int i = 0; i < n; ++i) {
        df.push_back(partial(f, i));
        dg.push_back(partial(g, i));
    }
    Element out = p.zero();
    for (int i = 0; i < n; ++i) {
        if (df[i].is_zero()) continue;
        for (int j = 0; j < n; ++j) {
            if (i == j || dg[j].is_zero()) continue;
            Element e = bivector_entry(i, j);
            if (e.is_zero()) continue;
            out += p.multiply(p.multiply(df[i], dg[j]), e);
        }
    }
    return out;
}

Element AffineQP::apply(const MultiVector& m, const std::vector<Element>& fs) const {
    if (static_cast<size_t>(m.degree()) != fs.size())
        throw Error(ErrorKind::ArityMismatch, "multivector of degree " + std::to_string(m.degree()) + " applied to " +
                                                  std::to_string(fs.size()) + " functions");
    const Presentation& p = *ring;
    std::map<std::pair<int, size_t>, Element> cache;
    auto entry = [&](int i, size_t s) -> const Element& {
        auto it = cache.find({i, s});
        if (it == cache.end()) it = cache.emplace(std::make_pair(i, s), derive_basis(i, fs[s])).first;
        return it->second;
    };
    Element out = p.zero();
    size_t d = fs.size();
    std::vector<size_t> perm(d);
    for (size_t k = 0; k < d; ++k) perm[k] = k;
    for (const auto& [idx, c] : m.terms()) {
        std::sort(perm.begin(), perm.end());
        do {
            int inversions = 0;
            for (size_t a = 0; a < d; ++a)
                for (size_t b = a + 1; b < d; ++b)
                    if (perm[a] > perm[b]) ++inversions;
            Element prod = p.one();
            for (size_t r = 0; r < d && !prod.is_zero(); ++r) prod = p.multiply(prod, entry(idx[r], perm[r]));
            if (!prod.is_zero()) out += prod.scaled(inversions % 2 ? -c : c);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return out;
}

CheckReport AffineQP::validate() const {
    CheckReport rep("variety " + name);
    const Presentation& p = *ring;
    int n = p.generators().size();

    RecordBuilder comm("commutative", 2);
    comm.check(p.is_commutative(), [&] { return Witness{{p.name()}, "noncommutative", "commutative"}; });
    rep.records.push_back(comm.finish());

    RecordBuilder shape("action-shape", 1);
    bool ok = static_cast<int>(action.size()) == lie->dim();
    for (const auto& row : action) ok = ok && static_cast<int>(row.size()) == n;
    shape.check(ok, [&] {
        return Witness{{name}, std::to_string(action.size()) + " derivations", std::to_string(lie->dim())};
    });
    rep.records.push_back(shape.finish());
    if (!ok) return rep;

    RecordBuilder rel("derivations-respect-relations", 2), biv("bivector-respects-relations", 2);
    for (const auto& r : p.rules()) {
        Element lhs = Element::monomial(r.lhs, p.scalar(1));
        for (int i = 0; i < lie->dim(); ++i) {
            Element a = derive_basis(i, lhs), b = derive_basis(i, r.rhs);
            rel.check(a == b, [&] {
                return Witness{{lie->names()[i], p.word_to_string(r.lhs)}, p.format(a), p.format(b)};
            });
        }
        for (int g = 0; g < n; ++g) {
            Element a = bracket(lhs, p.generator(g)), b = bracket(r.rhs, p.generator(g));
            biv.check(a == b, [&] {
                return Witness{{p.word_to_string(r.lhs), p.generators().name(g)}, p.format(a), p.format(b)};
            });
        }
    }
    rep.records.push_back(rel.finish());
    rep.records.push_back(biv.finish());

    RecordBuilder hom("action-respects-brackets", 2);
    for (int i = 0; i < lie->dim(); ++i)
        for (int j = i + 1; j < lie->dim(); ++j)
            for (int g = 0; g < n; ++g) {
                Element x = p.generator(g);
                Element l = derive_basis(i, derive_basis(j, x)) - derive_basis(j, derive_basis(i, x));
                Element r = derive(lie->bracket(i, j), x);
                hom.check(l == r, [&] {
                    return Witness{{lie->names()[i], lie->names()[j], p.generators().name(g)}, p.format(l),
                                   p.format(r)};
                });
            }
    rep.records.push_back(hom.finish());
    return rep;
}

AffineQP twist_bivector(const AffineQP& x, const MultiVector& t) {
    AffineQP out = x;
    const Presentation& p = *x.ring;
    int n = p.generators().size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Element e = x.bivector_entry(i, j) - x.apply(t, {p.generator(i), p.generator(j)});
            if (e.is_zero())
                out.bivector.erase({i, j});
            else
                out.bivector[{i, j}] = e;
        }
    return out;
}

CheckReport check_quasi_poisson_variety(const AffineQP& x, const Cobracket& delta, const MultiVector& phi,
                                        int max_len) {
    if (static_cast<int>(delta.size()) != x.lie->dim())
        throw Error(ErrorKind::ArityMismatch, "cobracket must give one bivector per basis element of " + x.lie->name());
    if (phi.degree() != 3) throw Error(ErrorKind::ArityMismatch, "phi must be a trivector");
    const Presentation& p = *x.ring;
    CheckReport rep("quasi-poisson " + x.name);
    std::vector<Word> words;
    for (auto& w : p.normal_words(max_len))
        if (!w.empty()) words.push_back(std::move(w));
    std::vector<Element> fs;
    for (const auto& w : words) fs.push_back(p.word(w));
    auto txt = [&](size_t i) { return p.word_to_string(words[i]); };

    RecordBuilder jac("jacobiator", max_len);
    for (size_t i = 0; i < fs.size(); ++i)
        for (size_t j = i + 1; j < fs.size(); ++j) {
            Element bij = x.bracket(fs[i], fs[j]);
            for (size_t k = j + 1; k < fs.size(); ++k) {
                Element l = x.bracket(fs[i], x.bracket(fs[j], fs[k])) + x.bracket(fs[j], x.bracket(fs[k], fs[i])) +
                            x.bracket(fs[k], bij);
                Element r = x.apply(phi, {fs[i], fs[j], fs[k]});
                jac.check(l == r, [&] { return Witness{{txt(i), txt(j), txt(k)}, p.format(l), p.format(r)}; });
            }
        }
    rep.records.push_back(jac.finish());

    RecordBuilder comp("compatibility", max_len);
    for (int a = 0; a < x.lie->dim(); ++a)
        for (size_t i = 0; i < fs.size(); ++i)
            for (size_t j = i + 1; j < fs.size(); ++j) {
                Element l = x.derive_basis(a, x.bracket(fs[i], fs[j])) -
                            x.bracket(x.derive_basis(a, fs[i]), fs[j]) - x.bracket(fs[i], x.derive_basis(a, fs[j]));
                Element r = -x.apply(delta[a], {fs[i], fs[j]});
                comp.check(l == r, [&] {
                    return Witness{{x.lie->names()[a], txt(i), txt(j)}, p.format(l), p.format(r)};
                });
            }
    rep.records.push_back(comp.finish());
    return rep;
}

Element pullback(const ClassicalMoment& m, const Element& f) {
    const Presentation& t = *m.x.ring;
    Element out = t.zero();
    for (const auto& [w, c] : f.terms()) {
        Element prod = t.one();
        for (int g : w) prod = t.multiply(prod, m.mu.at(g));
        out += prod.scaled(c);
    }
    return out;
}

CheckReport check_classical_moment_map(const ClassicalMoment& m, const std::vector<Vec>& complement) {
    const LieData& l = *m.double_lie;
    const Presentation& dg = *m.dg.ring;
    const Presentation& x = *m.x.ring;
    if (m.mu.size() != static_cast<size_t>(dg.generators().size()))
        throw Error(ErrorKind::ArityMismatch, "moment map must give a value for every generator of " + dg.name());
    if (m.dg.lie->dim() != l.dim() || m.x.lie->dim() != static_cast<int>(l.g.size()))
        throw Error(ErrorKind::IncompatibleSources, "actions do not match the Lie data of " + l.name());
    CheckReport rep("classical moment map");

    RecordBuilder eq("equivariance", 1);
    for (size_t k = 0; k < l.g.size(); ++k)
        for (int f = 0; f < dg.generators().size(); ++f) {
            Element a = pullback(m, m.dg.derive(l.g[k], dg.generator(f)));
            Element b = m.x.derive_basis(static_cast<int>(k), m.mu[f]);
            eq.check(a == b, [&] {
                return Witness{{l.format(l.g[k]), dg.generators().name(f)}, x.format(a), x.format(b)};
            });
        }
    rep.records.push_back(eq.finish());

    auto proj = complement_projection(l, complement);
    std::vector<Vec> in_g;
    for (const auto& v : proj) in_g.push_back(l.g_coordinates(v));
    RecordBuilder mm("moment-map", 1);
    for (int f1 = 0; f1 < dg.generators().size(); ++f1) {
        std::vector<Element> pulled;
        for (int i = 0; i < l.dim(); ++i) pulled.push_back(pullback(m, m.dg.derive_basis(i, dg.generator(f1))));
        for (int f2 = 0; f2 < x.generators().size(); ++f2) {
            Element lhs = m.x.bracket(m.mu[f1], x.generator(f2));
            Element rhs = x.zero();
            for (int i = 0; i < l.dim(); ++i) {
                if (pulled[i].is_zero() || is_zero(in_g[i])) continue;
                rhs += x.multiply(pulled[i], m.x.derive(in_g[i], x.generator(f2)));
            }
            mm.check(lhs == rhs, [&] {
                return Witness{{dg.generators().name(f1), x.generators().name(f2)}, x.format(lhs), x.format(rhs)};
            });
        }
    }
    rep.records.push_back(mm.finish());
    return rep;
}

CheckReport check_classical_moment_map_twisted(const ClassicalMoment& m, const MultiVector& t) {
    const LieData& l = *m.double_lie;
    CheckReport rep("classical moment map");
    CheckReport first = check_classical_moment_map(m, l.h);
    ClassicalMoment twisted = m;
    twisted.x = twist_bivector(m.x, t);
    auto h2 = twist_complement(l, l.h, t);
    CheckReport second = check_classical_moment_map(twisted, h2);
    rep.append(first);
    rep.append(second, "twisted ");
    RecordBuilder agree("complement-independence", 1);
    agree.check(first.passed() == second.passed(), [&] {
        std::string hs;
        for (const auto& v : h2) hs += (hs.empty() ? "" : ", ") + vec_text(v);
        return Witness{{t.format(m.x.lie->names()), hs}, verdict_name(first.verdict()), verdict_name(second.verdict())};
    });
    rep.records.push_back(agree.finish());
    return rep;
}

}  // namespace hopfmm
