#include "hopfmm/workbench.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "hopfmm/parser.hpp"

namespace hopfmm {

const std::vector<std::pair<std::string, std::string>>& embedded_builtins();

namespace {

namespace fs = std::filesystem;

struct Entry {
    std::string key, value;
    int line;
};

struct Section {
    std::string kind;
    std::vector<std::string> args;
    std::vector<Entry> entries;
    int line;
};

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

std::vector<std::string> words(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

std::vector<Section> parse_sections(const std::string& text, const std::string& origin) {
    std::vector<Section> out;
    std::istringstream in(text);
    int line = 0;
    for (std::string raw; std::getline(in, raw);) {
        ++line;
        std::string s = trim(raw.substr(0, raw.find('#')));
        if (s.empty()) continue;
        if (s.front() == '[' && s.back() == ']' && s.find('=') == std::string::npos) {
            auto w = words(s.substr(1, s.size() - 2));
            if (w.empty()) throw Error(ErrorKind::SyntaxError, origin + ": empty section header", line, 1);
            out.push_back({w[0], std::vector<std::string>(w.begin() + 1, w.end()), {}, line});
            continue;
        }
        if (out.empty()) throw Error(ErrorKind::SyntaxError, origin + ": entry outside of any section", line, 1);
        size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorKind::SyntaxError, origin + ": expected `key = value`", line, static_cast<int>(s.size()));
        out.back().entries.push_back({trim(s.substr(0, eq)), trim(s.substr(eq + 1)), line});
    }
    if (out.empty()) throw Error(ErrorKind::SyntaxError, origin + ": no sections", std::max(line, 1), 1);
    return out;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error(ErrorKind::InvalidInput, "cannot read " + p.string());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// Free algebra on the given names; used to read left-hand sides and linear expressions unreduced.
std::shared_ptr<Presentation> free_on(const std::vector<std::string>& names, Ring ring) {
    GeneratorTable t;
    for (const auto& n : names) t.add(n, 1);
    return std::make_shared<Presentation>("free", ring, t);
}

std::vector<std::string> names_of(const Presentation& p) {
    std::vector<std::string> out;
    for (const auto& g : p.generators().entries()) out.push_back(g.name);
    return out;
}

class Loader {
public:
    Loader(Workspace& ws, const LoadOptions& opts) : ws_(ws), opts_(opts) {}

    void load(const std::string& text, const std::string& origin, const fs::path& dir) {
        if (std::find(stack_.begin(), stack_.end(), origin) != stack_.end())
            throw Error(ErrorKind::InvalidInput, "import cycle through " + origin);
        if (!done_.insert(origin).second) return;
        stack_.push_back(origin);
        origin_ = origin;
        auto sections = parse_sections(text, origin);
        static const std::vector<std::vector<std::string>> phases = {
            {"scalars"},
            {"import"},
            {"generators"},
            {"relations"},
            {"coproduct", "counit", "antipode"},
            {"pairing"},
            {"coaction", "covector_coaction"},
            {"source"},
            {"momentmap", "module", "hopfmap"},
            {"relative"},
            {"lie"},
            {"derivations"},
            {"bivector"},
            {"phi"},
            {"classical"},
            {"limit"},
        };
        for (const auto& s : sections) {
            bool known = false;
            for (const auto& ph : phases) known = known || std::find(ph.begin(), ph.end(), s.kind) != ph.end();
            if (!known) fail(ErrorKind::SyntaxError, s.line, "unknown section [" + s.kind + "]");
        }
        Ring saved_ring = ring_;
        for (const auto& ph : phases) {
            for (const auto& s : sections)
                if (std::find(ph.begin(), ph.end(), s.kind) != ph.end()) section(s, dir);
            if (ph.front() == "antipode" || ph.front() == "coproduct") finish_hopf();
        }
        ring_ = saved_ring;
        stack_.pop_back();
        if (!stack_.empty()) origin_ = stack_.back();
        ws_.origins.push_back(origin);
    }

private:
    [[noreturn]] void fail(ErrorKind k, int line, const std::string& msg) const {
        throw Error(k, origin_ + ": " + msg, line, 1);
    }

    [[noreturn]] void rethrow(const Error& err, int line) const {
        if (err.line()) throw err;
        std::string msg = err.what();
        msg.erase(0, std::string(error_kind_name(err.kind())).size() + 2);
        fail(err.kind(), line, msg);
    }

    void need_args(const Section& s, size_t n) const {
        if (s.args.size() != n)
            fail(ErrorKind::SyntaxError, s.line,
                 "[" + s.kind + "] takes " + std::to_string(n) + " argument" + (n == 1 ? "" : "s"));
    }

    template <class Map>
    void fresh(const Map& m, const typename Map::key_type& key, const std::string& what, int line) const {
        if (m.count(key)) fail(ErrorKind::InvalidInput, line, what + " is defined twice");
    }

    const Presentation& pres(const std::string& name, int line) const {
        auto it = ws_.presentations.find(name);
        if (it != ws_.presentations.end()) return *it->second;
        auto b = building_.find(name);
        if (b != building_.end()) return *b->second;
        fail(ErrorKind::InvalidInput, line, "unknown algebra " + name);
    }

    PresentationPtr pres_ptr(const std::string& name, int line) const {
        auto it = ws_.presentations.find(name);
        if (it == ws_.presentations.end()) fail(ErrorKind::InvalidInput, line, "unknown algebra " + name);
        return it->second;
    }

    HopfPtr hopf(const std::string& name, int line) const {
        auto it = ws_.hopf.find(name);
        if (it == ws_.hopf.end()) fail(ErrorKind::InvalidInput, line, name + " has no Hopf structure");
        return it->second;
    }

    template <class Map>
    typename Map::mapped_type lookup(const Map& m, const std::string& name, const std::string& what, int line) const {
        auto it = m.find(name);
        if (it == m.end()) fail(ErrorKind::InvalidInput, line, "unknown " + what + " " + name);
        return it->second;
    }

    int gen(const Presentation& p, const std::string& name, int line) const {
        auto id = p.generators().find(name);
        if (!id) fail(ErrorKind::UnknownGenerator, line, name + " is not a generator of " + p.name());
        return *id;
    }

    std::map<std::string, std::string> keyed(const Section& s, const std::set<std::string>& allowed) const {
        std::map<std::string, std::string> out;
        for (const auto& e : s.entries) {
            if (!allowed.count(e.key)) fail(ErrorKind::SyntaxError, e.line, "unexpected key " + e.key);
            out[e.key] = e.value;
        }
        return out;
    }

    std::string require(const std::map<std::string, std::string>& m, const std::string& key, const Section& s) const {
        auto it = m.find(key);
        if (it == m.end()) fail(ErrorKind::SyntaxError, s.line, "[" + s.kind + "] needs " + key);
        return it->second;
    }

    void section(const Section& s, const fs::path& dir) {
        const std::string& k = s.kind;
        if (k == "scalars") {
            for (const auto& e : s.entries) {
                if (e.key != "ring") fail(ErrorKind::SyntaxError, e.line, "unexpected key " + e.key);
                auto r = ring_from_name(e.value);
                if (!r) fail(ErrorKind::SyntaxError, e.line, "unknown ring " + e.value);
                ring_ = *r;
            }
        } else if (k == "import") {
            for (const auto& e : s.entries) {
                if (e.key == "builtin") {
                    load(builtin_text(e.value), "builtin:" + e.value, dir);
                } else if (e.key == "file") {
                    fs::path p = dir / e.value;
                    if (!fs::exists(p)) fail(ErrorKind::InvalidInput, e.line, "cannot find " + p.string());
                    p = fs::canonical(p);
                    load(read_file(p), p.string(), p.parent_path());
                } else {
                    fail(ErrorKind::SyntaxError, e.line, "import takes builtin = NAME or file = PATH");
                }
            }
        } else if (k == "generators") {
            generators(s);
        } else if (k == "relations") {
            relations(s);
        } else if (k == "coproduct" || k == "counit" || k == "antipode") {
            need_args(s, 1);
            pending_[s.args[0]][k] = &s;
        } else if (k == "pairing") {
            pairing(s);
        } else if (k == "coaction" || k == "covector_coaction") {
            coaction(s);
        } else if (k == "source") {
            source(s);
        } else if (k == "momentmap") {
            momentmap(s);
        } else if (k == "module") {
            module(s);
        } else if (k == "hopfmap") {
            hopfmap(s);
        } else if (k == "relative") {
            need_args(s, 4);
            fresh(ws_.relatives, s.args[0], "relative structure " + s.args[0], s.line);
            RelativeCoqt r{lookup(ws_.pairings, s.args[1], "pairing", s.line),
                           lookup(ws_.pairings, s.args[3], "pairing", s.line),
                           lookup(ws_.hopf_maps, s.args[2], "Hopf map", s.line)};
            ws_.relatives[s.args[0]] = r;
        } else if (k == "lie") {
            lie(s);
        } else if (k == "derivations") {
            derivations(s);
        } else if (k == "bivector") {
            bivector(s);
        } else if (k == "phi") {
            phi(s);
        } else if (k == "classical") {
            classical(s);
        } else if (k == "limit") {
            limit(s);
        }
    }

    void generators(const Section& s) {
        if (s.args.empty() || s.args.size() > 2) fail(ErrorKind::SyntaxError, s.line, "[generators NAME [ring]]");
        const std::string& name = s.args[0];
        if (ws_.presentations.count(name) || building_.count(name))
            fail(ErrorKind::InvalidInput, s.line, "algebra " + name + " is defined twice");
        Ring r = ring_;
        if (s.args.size() == 2) {
            auto rr = ring_from_name(s.args[1]);
            if (!rr) fail(ErrorKind::SyntaxError, s.line, "unknown ring " + s.args[1]);
            r = *rr;
        }
        GeneratorTable t;
        for (const auto& e : s.entries) {
            if (is_reserved_name(e.key)) fail(ErrorKind::SyntaxError, e.line, e.key + " is reserved");
            if (t.find(e.key)) fail(ErrorKind::InvalidInput, e.line, "generator " + e.key + " is declared twice");
            int deg;
            try {
                size_t used = 0;
                deg = std::stoi(e.value, &used);
                if (used != e.value.size()) throw std::invalid_argument("degree");
            } catch (const std::exception&) {
                fail(ErrorKind::SyntaxError, e.line, "degree of " + e.key + " must be an integer");
            }
            t.add(e.key, deg);
        }
        building_[name] = std::make_shared<Presentation>(name, r, t);
    }

    void relations(const Section& s) {
        need_args(s, 1);
        auto it = building_.find(s.args[0]);
        if (it == building_.end()) fail(ErrorKind::InvalidInput, s.line, "relations for undeclared algebra " + s.args[0]);
        Presentation& p = *it->second;
        auto free = free_on(names_of(p), p.ring());
        for (const auto& e : s.entries) {
            Element lhs = parse_element(e.key, *free, e.line);
            if (lhs.terms().size() != 1 || !lhs.terms().begin()->second.is_one())
                fail(ErrorKind::SyntaxError, e.line, "left-hand side must be a single word");
            Element rhs = parse_element(e.value, p, e.line);
            try {
                p.add_rule(lhs.terms().begin()->first, rhs);
            } catch (const Error& err) {
                rethrow(err, e.line);
            }
        }
    }

    void publish_presentations() {
        for (auto& [n, p] : building_) ws_.presentations[n] = p;
        building_.clear();
    }

    void finish_hopf() {
        publish_presentations();
        for (auto& [name, parts] : pending_) {
            const Presentation& p = pres(name, parts.begin()->second->line);
            int n = p.generators().size();
            std::vector<Scalar> eps(n, p.scalar(0));
            bool has_eps = parts.count("counit");
            if (has_eps)
                for (const auto& e : parts["counit"]->entries) eps[gen(p, e.key, e.line)] = parse_scalar(e.value, p.ring(), e.line);
            if (!parts.count("coproduct")) {
                if (parts.count("antipode"))
                    fail(ErrorKind::InvalidInput, parts["antipode"]->line, "antipode of " + name + " without a coproduct");
                fresh(ws_.counits, name, "counit of " + name, parts["counit"]->line);
                ws_.counits[name] = eps;
                continue;
            }
            const Section& cs = *parts["coproduct"];
            if (!has_eps || !parts.count("antipode"))
                fail(ErrorKind::InvalidInput, cs.line, name + " needs coproduct, counit and antipode together");
            fresh(ws_.hopf, name, "Hopf structure of " + name, cs.line);
            std::vector<TensorElement> delta(n, TensorElement(2, p.ring()));
            std::vector<bool> seen(n, false);
            for (const auto& e : cs.entries) {
                int g = gen(p, e.key, e.line);
                delta[g] = parse_tensor(e.value, {&p, &p}, e.line);
                seen[g] = true;
            }
            std::vector<Element> s(n, p.zero());
            std::vector<bool> seen_s(n, false);
            for (const auto& e : parts["antipode"]->entries) {
                int g = gen(p, e.key, e.line);
                s[g] = parse_element(e.value, p, e.line);
                seen_s[g] = true;
            }
            for (int g = 0; g < n; ++g)
                if (!seen[g] || !seen_s[g])
                    fail(ErrorKind::InvalidInput, cs.line,
                         "coproduct and antipode of " + name + " must cover " + p.generators().name(g));
            auto h = std::make_shared<HopfStructure>(pres_ptr(name, cs.line), delta, eps, s);
            ws_.hopf[name] = h;
            ws_.counits[name] = eps;
        }
        pending_.clear();
    }

    void pairing(const Section& s) {
        need_args(s, 3);
        fresh(ws_.pairings, s.args[0], "pairing " + s.args[0], s.line);
        HopfPtr l = hopf(s.args[1], s.line), r = hopf(s.args[2], s.line);
        SkewPairing::Table t;
        for (const auto& e : s.entries) {
            auto ab = split(e.key, ',');
            if (ab.size() != 2) fail(ErrorKind::SyntaxError, e.line, "pairing entries are `a, b = value`");
            t[{gen(l->algebra(), ab[0], e.line), gen(r->algebra(), ab[1], e.line)}] =
                parse_scalar(e.value, l->algebra().ring(), e.line);
        }
        ws_.pairings[s.args[0]] = std::make_shared<SkewPairing>(s.args[0], l, r, t);
    }

    void coaction(const Section& s) {
        need_args(s, 2);
        auto& target = s.kind == "coaction" ? ws_.coactions : ws_.covectors;
        std::pair<std::string, std::string> key{s.args[0], s.args[1]};
        fresh(target, key, s.kind + " of " + s.args[0] + " over " + s.args[1], s.line);
        PresentationPtr a = pres_ptr(s.args[0], s.line);
        HopfPtr h = hopf(s.args[1], s.line);
        int n = a->generators().size();
        std::vector<TensorElement> co(n, TensorElement(2, a->ring()));
        std::vector<bool> seen(n, false);
        for (const auto& e : s.entries) {
            int g = gen(*a, e.key, e.line);
            co[g] = parse_tensor(e.value, {a.get(), &h->algebra()}, e.line);
            seen[g] = true;
        }
        for (int g = 0; g < n; ++g)
            if (!seen[g]) fail(ErrorKind::InvalidInput, s.line, s.kind + " must cover " + a->generators().name(g));
        target[key] = std::make_shared<ComoduleAlgebra>(a, h, co);
    }

    void source(const Section& s) {
        need_args(s, 1);
        fresh(ws_.sources, s.args[0], "source " + s.args[0], s.line);
        auto m = keyed(s, {"algebra", "coaction", "covector", "pairing", "hopf"});
        std::string alg = require(m, "algebra", s), over = require(m, "coaction", s), cov = require(m, "covector", s);
        auto src = std::make_shared<MomentSource>();
        src->name = s.args[0];
        auto co = ws_.coactions.find({alg, over});
        if (co == ws_.coactions.end()) fail(ErrorKind::InvalidInput, s.line, "no coaction of " + alg + " over " + over);
        src->algebra = co->second;
        auto cv = ws_.covectors.find({alg, cov});
        if (cv != ws_.covectors.end())
            src->covector = cv->second;
        else if (cov == alg && ws_.hopf.count(alg))
            src->covector = covector_from_coproduct(ws_.hopf.at(alg));
        else
            fail(ErrorKind::InvalidInput, s.line, "no covector coaction of " + alg + " over " + cov);
        auto ce = ws_.counits.find(alg);
        if (ce == ws_.counits.end()) fail(ErrorKind::InvalidInput, s.line, alg + " has no counit");
        src->counit = ce->second;
        src->ev = lookup(ws_.pairings, require(m, "pairing", s), "pairing", s.line);
        if (m.count("hopf")) src->hopf = hopf(m["hopf"], s.line);
        ws_.sources[src->name] = src;
    }

    void momentmap(const Section& s) {
        need_args(s, 3);
        fresh(ws_.moments, s.args[0], "moment map " + s.args[0], s.line);
        SourcePtr src = lookup(ws_.sources, s.args[1], "source", s.line);
        const std::string& over = src->algebra->coacting().name();
        auto co = ws_.coactions.find({s.args[2], over});
        if (co == ws_.coactions.end())
            fail(ErrorKind::InvalidInput, s.line, "no coaction of " + s.args[2] + " over " + over);
        const Presentation& f = src->presentation();
        const Presentation& a = co->second->algebra();
        auto m = std::make_shared<MomentMap>();
        m->name = s.args[0];
        m->source = src;
        m->target = co->second;
        m->values.assign(f.generators().size(), a.zero());
        std::vector<bool> seen(f.generators().size(), false);
        for (const auto& e : s.entries) {
            int g = gen(f, e.key, e.line);
            m->values[g] = parse_element(e.value, a, e.line);
            seen[g] = true;
        }
        for (size_t g = 0; g < seen.size(); ++g)
            if (!seen[g]) fail(ErrorKind::InvalidInput, s.line, "moment map must give a value for " + f.generators().name(g));
        ws_.moments[m->name] = m;
    }

    void module(const Section& s) {
        need_args(s, 3);
        fresh(ws_.modules, s.args[0], "module " + s.args[0], s.line);
        LeftModule m{hopf(s.args[1], s.line), pres_ptr(s.args[2], s.line), {}};
        const Presentation& h = m.hopf->algebra();
        m.image.assign(h.generators().size(), m.space->zero());
        for (const auto& e : s.entries) m.image[gen(h, e.key, e.line)] = parse_element(e.value, *m.space, e.line);
        ws_.modules.emplace(s.args[0], m);
    }

    void hopfmap(const Section& s) {
        need_args(s, 3);
        fresh(ws_.hopf_maps, s.args[0], "Hopf map " + s.args[0], s.line);
        HopfPtr d = hopf(s.args[1], s.line), h = hopf(s.args[2], s.line);
        std::vector<Element> images(d->algebra().generators().size(), h->algebra().zero());
        for (const auto& e : s.entries)
            images[gen(d->algebra(), e.key, e.line)] = parse_element(e.value, h->algebra(), e.line);
        ws_.hopf_maps[s.args[0]] = std::make_shared<HopfMap>(d, h, images);
    }

    Vec lie_vector(const LieData& l, const Presentation& free, const std::string& text, int line) const {
        Element e = parse_element(text, free, line);
        Vec v = l.zero();
        for (const auto& [w, c] : e.terms()) {
            if (w.size() != 1 || !c.is_rational())
                fail(ErrorKind::SyntaxError, line, "expected a rational combination of basis elements of " + l.name());
            v[w[0]] = c;
        }
        return v;
    }

    MultiVector multivector(const LieData& l, int degree, const std::string& text, int line) const {
        auto free = free_on(l.names(), Ring::Rational);
        Element e = parse_element(text, *free, line);
        MultiVector m(degree);
        for (const auto& [w, c] : e.terms()) {
            if (static_cast<int>(w.size()) != degree)
                fail(ErrorKind::SyntaxError, line, "expected a multivector of degree " + std::to_string(degree));
            m.add_term(w, c);
        }
        return m;
    }

    int lie_index(const LieData& l, const std::string& name, int line) const {
        auto i = l.find(name);
        if (!i) fail(ErrorKind::UnknownGenerator, line, name + " is not a basis element of " + l.name());
        return *i;
    }

    void lie(const Section& s) {
        need_args(s, 1);
        const std::string& name = s.args[0];
        fresh(ws_.lies, name, "Lie algebra " + name, s.line);
        std::vector<std::string> basis;
        for (const auto& e : s.entries)
            if (e.key == "basis")
                for (auto& b : split(e.value, ',')) basis.push_back(b);
        if (basis.empty()) fail(ErrorKind::SyntaxError, s.line, "[lie " + name + "] needs a basis");
        auto l = std::make_shared<LieData>(name, basis);
        auto free = free_on(basis, Ring::Rational);
        for (const auto& e : s.entries) {
            const std::string& key = e.key;
            if (key == "basis") continue;
            if (key.size() > 2 && key.front() == '[' && key.back() == ']') {
                auto xy = split(key.substr(1, key.size() - 2), ',');
                if (xy.size() != 2) fail(ErrorKind::SyntaxError, e.line, "brackets are `[x, y] = value`");
                try {
                    l->set_bracket(lie_index(*l, xy[0], e.line), lie_index(*l, xy[1], e.line),
                                   lie_vector(*l, *free, e.value, e.line));
                } catch (const Error& err) {
                    rethrow(err, e.line);
                }
            } else if (key.rfind("pairing(", 0) == 0 && key.back() == ')') {
                auto xy = split(key.substr(8, key.size() - 9), ',');
                if (xy.size() != 2) fail(ErrorKind::SyntaxError, e.line, "pairing entries are `pairing(x, y) = value`");
                l->set_pairing(lie_index(*l, xy[0], e.line), lie_index(*l, xy[1], e.line),
                               parse_scalar(e.value, Ring::Rational, e.line));
            } else if (key == "subalgebra" || key == "complement") {
                auto& dst = key == "subalgebra" ? l->g : l->h;
                for (const auto& v : split(e.value, ',')) dst.push_back(lie_vector(*l, *free, v, e.line));
            } else {
                fail(ErrorKind::SyntaxError, e.line, "unexpected key " + key);
            }
        }
        ws_.lies[name] = l;
        if (!l->g.empty()) {
            try {
                ws_.lies[name + "/g"] = subalgebra_g(*l, name + "/g");
            } catch (const Error& err) {
                rethrow(err, s.line);
            }
        }
    }

    AffineQP& variety(const std::string& ring, LiePtr lie, int line) {
        auto it = ws_.varieties.find(ring);
        if (it != ws_.varieties.end()) return it->second;
        AffineQP x;
        x.name = ring;
        x.ring = pres_ptr(ring, line);
        x.lie = lie ? lie : std::make_shared<LieData>("0", std::vector<std::string>{});
        x.action.assign(x.lie->dim(), std::vector<Element>(x.ring->generators().size(), x.ring->zero()));
        return ws_.varieties.emplace(ring, x).first->second;
    }

    void derivations(const Section& s) {
        need_args(s, 2);
        fresh(ws_.varieties, s.args[0], "action on " + s.args[0], s.line);
        LiePtr l = lookup(ws_.lies, s.args[1], "Lie algebra", s.line);
        AffineQP& x = variety(s.args[0], l, s.line);
        for (const auto& e : s.entries) {
            auto xg = split(e.key, ',');
            if (xg.size() != 2) fail(ErrorKind::SyntaxError, e.line, "derivation entries are `x, gen = value`");
            x.action[lie_index(*l, xg[0], e.line)][gen(*x.ring, xg[1], e.line)] = parse_element(e.value, *x.ring, e.line);
        }
    }

    void bivector(const Section& s) {
        need_args(s, 1);
        AffineQP& x = variety(s.args[0], nullptr, s.line);
        if (!x.bivector.empty()) fail(ErrorKind::InvalidInput, s.line, "bivector on " + s.args[0] + " is defined twice");
        for (const auto& e : s.entries) {
            auto ij = split(e.key, ',');
            if (ij.size() != 2) fail(ErrorKind::SyntaxError, e.line, "bivector entries are `a, b = value`");
            int i = gen(*x.ring, ij[0], e.line), j = gen(*x.ring, ij[1], e.line);
            Element v = parse_element(e.value, *x.ring, e.line);
            if (i == j) {
                if (!v.is_zero()) fail(ErrorKind::InvalidInput, e.line, "bivector must be antisymmetric");
                continue;
            }
            if (i > j) {
                std::swap(i, j);
                v = -v;
            }
            x.bivector[{i, j}] = v;
        }
    }

    void phi(const Section& s) {
        need_args(s, 1);
        fresh(ws_.quasi, s.args[0], "quasi-Poisson data of " + s.args[0], s.line);
        LiePtr l = lookup(ws_.lies, s.args[0], "Lie algebra", s.line);
        QuasiPoissonData q;
        q.delta = zero_cobracket(*l);
        for (const auto& e : s.entries) {
            if (e.key == "phi") {
                q.phi = multivector(*l, 3, e.value, e.line);
            } else if (e.key == "twist") {
                q.twist = multivector(*l, 2, e.value, e.line);
            } else if (e.key.rfind("delta(", 0) == 0 && e.key.back() == ')') {
                q.delta[lie_index(*l, trim(e.key.substr(6, e.key.size() - 7)), e.line)] =
                    multivector(*l, 2, e.value, e.line);
            } else {
                fail(ErrorKind::SyntaxError, e.line, "unexpected key " + e.key);
            }
        }
        ws_.quasi[s.args[0]] = q;
    }

    void classical(const Section& s) {
        need_args(s, 3);
        fresh(ws_.classical, s.args[0], "classical moment map " + s.args[0], s.line);
        ClassicalMoment m;
        m.dg = lookup(ws_.varieties, s.args[1], "variety", s.line);
        m.x = lookup(ws_.varieties, s.args[2], "variety", s.line);
        m.double_lie = m.dg.lie;
        const Presentation& dg = *m.dg.ring;
        m.mu.assign(dg.generators().size(), m.x.ring->zero());
        std::vector<bool> seen(m.mu.size(), false);
        for (const auto& e : s.entries) {
            int g = gen(dg, e.key, e.line);
            m.mu[g] = parse_element(e.value, *m.x.ring, e.line);
            seen[g] = true;
        }
        for (size_t g = 0; g < seen.size(); ++g)
            if (!seen[g]) fail(ErrorKind::InvalidInput, s.line, "moment map must give a value for " + dg.generators().name(g));
        ws_.classical[s.args[0]] = m;
    }

    void limit(const Section& s) {
        need_args(s, 1);
        fresh(ws_.limits, s.args[0], "limit " + s.args[0], s.line);
        auto m = keyed(s, {"moment", "source", "target", "double", "r", "degree"});
        LimitProblem p;
        p.quantum = lookup(ws_.moments, require(m, "moment", s), "moment map", s.line);
        p.source = lookup(ws_.varieties, require(m, "source", s), "variety", s.line);
        p.target = lookup(ws_.varieties, require(m, "target", s), "variety", s.line);
        p.double_lie = p.source.lie;
        if (m.count("double")) p.double_hopf = hopf(m["double"], s.line);
        if (m.count("r")) p.r = lookup(ws_.pairings, m["r"], "pairing", s.line);
        if (m.count("degree")) p.degree = std::stoi(m["degree"]);
        ws_.limits[s.args[0]] = p;
    }

    Workspace& ws_;
    LoadOptions opts_;
    Ring ring_ = Ring::Rational;
    std::string origin_;
    std::set<std::string> done_;
    std::vector<std::string> stack_;
    std::map<std::string, std::shared_ptr<Presentation>> building_;
    std::map<std::string, std::map<std::string, const Section*>> pending_;
};

void validate_workspace(Workspace& ws, const LoadOptions& opts) {
    CheckReport& rep = ws.validation;
    int vd = opts.validation_degree;
    for (const auto& [name, p] : ws.presentations) {
        RecordBuilder b("confluence", opts.confluence_degree);
        for (const auto& cp : p->confluence_report(opts.confluence_degree))
            b.fail(Witness{{p->word_to_string(cp.overlap)}, p->format(cp.first), p->format(cp.second)});
        if (!b.failed()) b.pass();
        CheckReport r(name);
        r.records.push_back(b.finish());
        rep.append(r, name + ": ");
    }
    for (const auto& [name, h] : ws.hopf) {
        rep.append(check_bialgebra(*h, vd), name + ": ");
        rep.append(check_antipode(*h, vd), name + ": ");
    }
    for (const auto& [name, p] : ws.pairings) rep.append(p->validate(vd), name + ": ");
    for (const auto& [key, c] : ws.coactions) rep.append(c->validate(vd), key.first + "/" + key.second + ": ");
    for (const auto& [key, c] : ws.covectors) rep.append(c->validate(vd), key.first + "/" + key.second + ": ");
    for (const auto& [name, s] : ws.sources) rep.append(s->validate(vd), name + ": ");
    for (const auto& [name, m] : ws.modules) rep.append(check_module(m), name + ": ");
    for (const auto& [name, f] : ws.hopf_maps) rep.append(f->validate(vd), name + ": ");
    for (const auto& [name, l] : ws.lies) rep.append(l->validate(), name + ": ");
    for (const auto& [name, x] : ws.varieties) rep.append(x.validate(), name + ": ");
    for (const auto& r : rep.records)
        if (r.verdict == Verdict::Fail) {
            std::string msg = r.name;
            if (!r.witnesses.empty()) {
                const Witness& w = r.witnesses.front();
                msg += " at";
                for (const auto& i : w.inputs) msg += " " + i;
                msg += ": " + w.lhs + " vs " + w.rhs;
            }
            throw ValidationError(msg, rep);
        }
}

}  // namespace

const Presentation& Workspace::presentation(const std::string& name) const {
    auto it = presentations.find(name);
    if (it == presentations.end()) throw Error(ErrorKind::InvalidInput, "unknown algebra " + name);
    return *it->second;
}

MomentPtr Workspace::moment(const std::string& name) const {
    auto it = moments.find(name);
    if (it == moments.end()) throw Error(ErrorKind::InvalidInput, "unknown moment map " + name);
    return it->second;
}

std::vector<std::string> builtin_names() {
    std::vector<std::string> out;
    for (const auto& [n, t] : embedded_builtins()) out.push_back(n);
    return out;
}

const std::string& builtin_text(const std::string& name) {
    for (const auto& [n, t] : embedded_builtins())
        if (n == name) return t;
    throw Error(ErrorKind::InvalidInput, "no builtin named " + name);
}

namespace {

void load_into(Loader& loader, const std::string& path) {
    if (fs::exists(path)) {
        fs::path p = fs::canonical(path);
        loader.load(read_file(p), p.string(), p.parent_path());
    } else {
        auto names = builtin_names();
        if (std::find(names.begin(), names.end(), path) == names.end())
            throw Error(ErrorKind::InvalidInput, "no file or builtin named " + path);
        loader.load(builtin_text(path), "builtin:" + path, fs::current_path());
    }
}

}  // namespace

Workspace load_text(const std::string& text, const std::string& origin, const LoadOptions& opts) {
    Workspace ws;
    Loader loader(ws, opts);
    loader.load(text, origin, fs::current_path());
    validate_workspace(ws, opts);
    return ws;
}

Workspace load_file(const std::string& path, const LoadOptions& opts) { return load_files({path}, opts); }

Workspace load_builtin(const std::string& name, const LoadOptions& opts) {
    Workspace ws;
    Loader loader(ws, opts);
    loader.load(builtin_text(name), "builtin:" + name, fs::current_path());
    validate_workspace(ws, opts);
    return ws;
}

Workspace load_files(const std::vector<std::string>& paths, const LoadOptions& opts) {
    Workspace ws;
    Loader loader(ws, opts);
    for (const auto& p : paths) load_into(loader, p);
    validate_workspace(ws, opts);
    return ws;
}

std::string write_fused(const MomentMap& fused, const std::vector<std::string>& imports) {
    const Presentation& a = fused.target->algebra();
    const HopfStructure& h = fused.target->coacting();
    const Presentation& f = fused.source->presentation();
    std::ostringstream out;
    out << "# fused moment map " << fused.name << "\n\n[import]\n";
    for (const auto& i : imports) {
        if (i.rfind("builtin:", 0) == 0)
            out << "builtin = " << i.substr(8) << "\n";
        else
            out << "file = " << i << "\n";
    }
    out << "\n[generators " << a.name() << " " << ring_name(a.ring()) << "]\n";
    for (const auto& g : a.generators().entries()) out << g.name << " = " << g.degree << "\n";
    out << "\n[relations " << a.name() << "]\n";
    for (const auto& r : a.rules()) out << a.word_to_string(r.lhs) << " = " << a.format(r.rhs) << "\n";
    out << "\n[coaction " << a.name() << " " << h.name() << "]\n";
    std::vector<const Presentation*> slots{&a, &h.algebra()};
    for (int g = 0; g < a.generators().size(); ++g)
        out << a.generators().name(g) << " = " << format_tensor(fused.target->generator_coaction(g), slots) << "\n";
    out << "\n[momentmap " << fused.name << " " << fused.source->name << " " << a.name() << "]\n";
    for (int g = 0; g < f.generators().size(); ++g)
        out << f.generators().name(g) << " = " << a.format(fused.values[g]) << "\n";
    return out.str();
}

}  // namespace hopfmm
