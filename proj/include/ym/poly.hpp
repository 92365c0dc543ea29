#pragma once

#include <complex>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ym/scalar.hpp"

namespace ym {

using VarId = int;

/// Process-wide variable interner. Ids are assigned in first-intern order;
/// the standard model variables are pre-seeded so ids (and hence the
/// canonical monomial order) are stable across runs.
class VarTable {
public:
    static VarId intern(const std::string& name);
    static const std::string& name(VarId id);
};

/// Monomial: sparse exponents sorted by variable id, no zero exponents.
struct Mono {
    std::vector<std::pair<VarId, int>> e;

    int degree() const {
        int d = 0;
        for (auto& [v, k] : e) d += k;
        return d;
    }
    int deg_in(VarId v) const {
        for (auto& [w, k] : e)
            if (w == v) return k;
        return 0;
    }
    bool operator==(const Mono& o) const { return e == o.e; }
    Mono times(const Mono& o) const;
};

/// Graded-lexicographic order, descending (leading term first).
struct MonoGreater {
    bool operator()(const Mono& x, const Mono& y) const;
};

/// Sparse multivariate polynomial over Q(i, sqrt2).
class Poly {
public:
    Poly() = default;
    Poly(long n) { add_term(Mono{}, Scalar(n)); }
    Poly(const Scalar& s) { add_term(Mono{}, s); }

    static Poly var(const std::string& name, int exp = 1);
    static Poly var(VarId id, int exp = 1);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.e.empty());
    }
    /// Constant term (zero if absent).
    Scalar constant_term() const;
    /// The scalar value of a constant polynomial; throws otherwise.
    Scalar as_constant() const;

    int degree() const { return terms_.empty() ? 0 : terms_.begin()->first.degree(); }
    int degree_in(VarId v) const;
    std::set<VarId> vars() const;
    size_t term_count() const { return terms_.size(); }

    bool operator==(const Poly& o) const { return terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly& operator+=(const Poly& o) { *this = *this + o; return *this; }
    Poly& operator-=(const Poly& o) { *this = *this - o; return *this; }
    Poly& operator*=(const Poly& o) { *this = *this * o; return *this; }

    Poly scaled(const Scalar& s) const;
    Poly pow(int n) const;

    /// Formal partial derivative.
    Poly partial(VarId v) const;

    /// Simultaneous substitution of polynomials for variables.
    Poly substitute(const std::map<VarId, Poly>& image) const;
    /// Substitute a single variable.
    Poly substitute(VarId v, const Poly& image) const;

    /// Exact evaluation; every variable of the polynomial must be assigned.
    Scalar eval(const std::map<VarId, Scalar>& assignment) const;
    /// Floating evaluation (variables may be assigned complex values).
    std::complex<double> eval_c(const std::map<VarId, std::complex<double>>& assignment) const;

    /// Coefficient automorphism i -> -i.
    Poly conjugate_i() const;

    /// Collect as a univariate polynomial in v: exponent -> coefficient
    /// polynomial in the remaining variables.
    std::map<int, Poly> as_univariate(VarId v) const;
    Poly coefficient_of(VarId v, int k) const;

    /// Exact division; throws std::domain_error if the quotient does not
    /// exist in the polynomial ring.
    Poly divexact(const Poly& g) const;

    /// Split q = sum coeff_x * x + rest over the given unknowns; throws if
    /// q is not affine-linear in them (degree >= 2 or unknown products).
    void affine_decompose(const std::set<VarId>& unknowns,
                          std::map<VarId, Poly>& coeff, Poly& rest) const;

    /// Canonical text form: terms in descending graded-lex order,
    /// "(c0, c1, c2, c3) * x^2 * y" joined by " + ".
    std::string str() const;
    /// Human-readable form with pretty scalar coefficients.
    std::string pretty() const;

    const std::map<Mono, Scalar, MonoGreater>& terms() const { return terms_; }
    void add_term(const Mono& m, const Scalar& c);

private:
    std::map<Mono, Scalar, MonoGreater> terms_;
};

inline Poly operator*(const Scalar& s, const Poly& p) { return p.scaled(s); }
inline Poly operator*(long n, const Poly& p) { return p.scaled(Scalar(n)); }

/// B^2 - 4AC of A y^2 + B y + C.
Poly quadratic_discriminant(const Poly& A, const Poly& B, const Poly& C);

} // namespace ym
