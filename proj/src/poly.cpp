#include "ym/poly.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace ym {

namespace {

struct VarRegistry {
    std::unordered_map<std::string, VarId> ids;
    std::vector<std::string> names;
    std::mutex mu;

    VarRegistry() {
        // Stable ids for the model variables; dynamically created symbols
        // (series unknowns) follow after.
        for (const char* n :
             {"q1", "q2", "p1", "p2", "z1", "z2", "z3", "z4", "z5", "a",
              "b1", "b2", "c1", "c2", "c3", "u", "v", "w",
              "alpha", "beta", "gamma", "theta", "s", "zeta", "z", "lambda"})
            intern_locked(n);
    }
    VarId intern_locked(const std::string& n) {
        auto it = ids.find(n);
        if (it != ids.end()) return it->second;
        VarId id = static_cast<VarId>(names.size());
        names.push_back(n);
        ids.emplace(n, id);
        return id;
    }
};

VarRegistry& registry() {
    static VarRegistry r;
    return r;
}

} // namespace

VarId VarTable::intern(const std::string& name) {
    auto& r = registry();
    std::lock_guard<std::mutex> lock(r.mu);
    return r.intern_locked(name);
}

const std::string& VarTable::name(VarId id) {
    auto& r = registry();
    std::lock_guard<std::mutex> lock(r.mu);
    return r.names.at(static_cast<size_t>(id));
}

Mono Mono::times(const Mono& o) const {
    Mono out;
    out.e.reserve(e.size() + o.e.size());
    size_t i = 0, j = 0;
    while (i < e.size() && j < o.e.size()) {
        if (e[i].first == o.e[j].first) {
            out.e.emplace_back(e[i].first, e[i].second + o.e[j].second);
            ++i, ++j;
        } else if (e[i].first < o.e[j].first) {
            out.e.push_back(e[i++]);
        } else {
            out.e.push_back(o.e[j++]);
        }
    }
    while (i < e.size()) out.e.push_back(e[i++]);
    while (j < o.e.size()) out.e.push_back(o.e[j++]);
    return out;
}

bool MonoGreater::operator()(const Mono& x, const Mono& y) const {
    int dx = x.degree(), dy = y.degree();
    if (dx != dy) return dx > dy;
    // Lex tie-break: larger exponent on the earliest differing variable wins.
    size_t i = 0, j = 0;
    while (i < x.e.size() && j < y.e.size()) {
        if (x.e[i].first != y.e[j].first)
            return x.e[i].first < y.e[j].first;
        if (x.e[i].second != y.e[j].second)
            return x.e[i].second > y.e[j].second;
        ++i, ++j;
    }
    return i < x.e.size();
}

void Poly::add_term(const Mono& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Poly Poly::var(const std::string& name, int exp) { return var(VarTable::intern(name), exp); }

Poly Poly::var(VarId id, int exp) {
    Poly p;
    if (exp == 0) return Poly(1);
    if (exp < 0) throw std::invalid_argument("Poly::var: negative exponent");
    Mono m;
    m.e.emplace_back(id, exp);
    p.add_term(m, Scalar(1));
    return p;
}

Scalar Poly::constant_term() const {
    Mono unit;
    auto it = terms_.find(unit);
    return it == terms_.end() ? Scalar() : it->second;
}

Scalar Poly::as_constant() const {
    if (!is_constant()) throw std::domain_error("Poly::as_constant: not constant: " + pretty());
    return constant_term();
}

int Poly::degree_in(VarId v) const {
    int d = 0;
    for (auto& [m, c] : terms_) d = std::max(d, m.deg_in(v));
    return d;
}

std::set<VarId> Poly::vars() const {
    std::set<VarId> out;
    for (auto& [m, c] : terms_)
        for (auto& [v, k] : m.e) out.insert(v);
    return out;
}

Poly Poly::operator-() const {
    Poly out;
    for (auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

Poly Poly::operator+(const Poly& o) const {
    Poly out = *this;
    for (auto& [m, c] : o.terms_) out.add_term(m, c);
    return out;
}

Poly Poly::operator-(const Poly& o) const {
    Poly out = *this;
    for (auto& [m, c] : o.terms_) out.add_term(m, -c);
    return out;
}

Poly Poly::operator*(const Poly& o) const {
    Poly out;
    for (auto& [m1, c1] : terms_)
        for (auto& [m2, c2] : o.terms_) out.add_term(m1.times(m2), c1 * c2);
    return out;
}

Poly Poly::scaled(const Scalar& s) const {
    Poly out;
    if (s.is_zero()) return out;
    for (auto& [m, c] : terms_) out.terms_.emplace(m, c * s);
    return out;
}

Poly Poly::pow(int n) const {
    if (n < 0) throw std::invalid_argument("Poly::pow: negative exponent");
    Poly result(1), base = *this;
    while (n > 0) {
        if (n & 1) result *= base;
        base = base * base;
        n >>= 1;
    }
    return result;
}

Poly Poly::partial(VarId v) const {
    Poly out;
    for (auto& [m, c] : terms_) {
        int k = m.deg_in(v);
        if (k == 0) continue;
        Mono dm;
        for (auto& [w, e] : m.e) {
            if (w == v) {
                if (e > 1) dm.e.emplace_back(w, e - 1);
            } else {
                dm.e.emplace_back(w, e);
            }
        }
        out.add_term(dm, c * Scalar(k));
    }
    return out;
}

Poly Poly::substitute(const std::map<VarId, Poly>& image) const {
    // Memoize powers of each replacement polynomial.
    std::map<std::pair<VarId, int>, Poly> powers;
    auto power_of = [&](VarId v, int k) -> const Poly& {
        auto key = std::make_pair(v, k);
        auto it = powers.find(key);
        if (it != powers.end()) return it->second;
        const Poly& base = image.at(v);
        Poly p = base.pow(k);
        return powers.emplace(key, std::move(p)).first->second;
    };

    Poly out;
    for (auto& [m, c] : terms_) {
        Poly term(c);
        for (auto& [v, k] : m.e) {
            if (image.count(v)) {
                term *= power_of(v, k);
            } else {
                term *= Poly::var(v, k);
            }
        }
        out += term;
    }
    return out;
}

Poly Poly::substitute(VarId v, const Poly& image) const {
    std::map<VarId, Poly> m{{v, image}};
    return substitute(m);
}

Scalar Poly::eval(const std::map<VarId, Scalar>& assignment) const {
    Scalar out(0);
    for (auto& [m, c] : terms_) {
        Scalar term = c;
        for (auto& [v, k] : m.e) {
            auto it = assignment.find(v);
            if (it == assignment.end())
                throw std::invalid_argument("Poly::eval: unassigned variable " + VarTable::name(v));
            Scalar p(1);
            for (int j = 0; j < k; ++j) p *= it->second;
            term *= p;
        }
        out += term;
    }
    return out;
}

std::complex<double> Poly::eval_c(const std::map<VarId, std::complex<double>>& assignment) const {
    std::complex<double> out(0.0, 0.0);
    for (auto& [m, c] : terms_) {
        std::complex<double> term = c.to_complex();
        for (auto& [v, k] : m.e) {
            auto it = assignment.find(v);
            if (it == assignment.end())
                throw std::invalid_argument("Poly::eval_c: unassigned variable " + VarTable::name(v));
            for (int j = 0; j < k; ++j) term *= it->second;
        }
        out += term;
    }
    return out;
}

Poly Poly::conjugate_i() const {
    Poly out;
    for (auto& [m, c] : terms_) out.terms_.emplace(m, c.conj_i());
    return out;
}

std::map<int, Poly> Poly::as_univariate(VarId v) const {
    std::map<int, Poly> out;
    for (auto& [m, c] : terms_) {
        int k = m.deg_in(v);
        Mono rest;
        for (auto& [w, e] : m.e)
            if (w != v) rest.e.emplace_back(w, e);
        out[k].add_term(rest, c);
    }
    return out;
}

Poly Poly::coefficient_of(VarId v, int k) const {
    Poly out;
    for (auto& [m, c] : terms_) {
        if (m.deg_in(v) != k) continue;
        Mono rest;
        for (auto& [w, e] : m.e)
            if (w != v) rest.e.emplace_back(w, e);
        out.add_term(rest, c);
    }
    return out;
}

Poly Poly::divexact(const Poly& g) const {
    if (g.is_zero()) throw std::domain_error("Poly::divexact: division by zero polynomial");
    Poly r = *this, q;
    const auto& [gm, gc] = *g.terms_.begin();
    const Scalar gc_inv = gc.inverse();
    while (!r.is_zero()) {
        const auto& [rm, rc] = *r.terms_.begin();
        // lt(g) | lt(r) componentwise?
        Mono quot;
        bool ok = true;
        for (auto& [v, k] : rm.e) {
            int gk = gm.deg_in(v);
            if (gk > k) { ok = false; break; }
            if (k - gk > 0) quot.e.emplace_back(v, k - gk);
        }
        for (auto& [v, k] : gm.e)
            if (rm.deg_in(v) < k) { ok = false; break; }
        if (!ok)
            throw std::domain_error("Poly::divexact: not divisible");
        Poly piece;
        piece.add_term(quot, rc * gc_inv);
        q += piece;
        r -= piece * g;
    }
    return q;
}

void Poly::affine_decompose(const std::set<VarId>& unknowns,
                            std::map<VarId, Poly>& coeff, Poly& rest) const {
    coeff.clear();
    rest = Poly();
    for (auto& [m, c] : terms_) {
        VarId hit = -1;
        int unknown_degree = 0;
        for (auto& [v, k] : m.e) {
            if (unknowns.count(v)) {
                unknown_degree += k;
                hit = v;
            }
        }
        if (unknown_degree == 0) {
            rest.add_term(m, c);
        } else if (unknown_degree == 1) {
            Mono stripped;
            for (auto& [v, k] : m.e)
                if (v != hit) stripped.e.emplace_back(v, k);
            coeff[hit].add_term(stripped, c);
        } else {
            throw std::domain_error("affine_decompose: nonlinear in unknowns: " + pretty());
        }
    }
}

std::string Poly::str() const {
    if (terms_.empty()) return "(0, 0, 0, 0)";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.str();
        for (auto& [v, k] : m.e) {
            os << " * " << VarTable::name(v);
            if (k != 1) os << "^" << k;
        }
    }
    return os.str();
}

std::string Poly::pretty() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        bool needs_parens = !(c.is_one() && !m.e.empty());
        if (c.is_one() && !m.e.empty()) {
            // coefficient 1 omitted
        } else {
            std::string p = c.pretty();
            needs_parens = p.find(' ') != std::string::npos && !m.e.empty();
            os << (needs_parens ? "(" + p + ")" : p);
            if (!m.e.empty()) os << "*";
        }
        bool firstv = true;
        for (auto& [v, k] : m.e) {
            if (!firstv) os << "*";
            firstv = false;
            os << VarTable::name(v);
            if (k != 1) os << "^" << k;
        }
    }
    return os.str();
}

Poly quadratic_discriminant(const Poly& A, const Poly& B, const Poly& C) {
    return B * B - 4 * (A * C);
}

} // namespace ym
