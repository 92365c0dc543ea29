#include "ym/curves.hpp"

#include <cstdio>
#include <stdexcept>

#include "ym/rootfind.hpp"

namespace ym {

Poly fiber_discriminant(const CurveRelation& c) {
    auto by_fiber = c.rel.as_univariate(c.fiber);
    for (auto& [k, coeff] : by_fiber)
        if (k > 2) throw std::domain_error("fiber_discriminant: relation not quadratic in fiber");
    Poly A = c.rel.coefficient_of(c.fiber, 2);
    Poly B = c.rel.coefficient_of(c.fiber, 1);
    Poly C = c.rel.coefficient_of(c.fiber, 0);
    if (A.is_zero()) throw std::domain_error("fiber_discriminant: fiber degree < 2");
    return quadratic_discriminant(A, B, C);
}

Poly hyperelliptic_p6() {
    Poly s = Poly::var("s"), a = Poly::var("a"), b1 = Poly::var("b1"), b2 = Poly::var("b2");
    return s * (-8 * s.pow(5) - 4 * (a * s.pow(3)) + 2 * (b1 * s) + b2);
}

std::vector<std::complex<double>> hyperelliptic_p6_coeffs(std::complex<double> a,
                                                          std::complex<double> b1,
                                                          std::complex<double> b2) {
    // degrees 0..6: (0, b2, 2 b1, 0, -4a, 0, -8)
    return {0.0, b2, 2.0 * b1, 0.0, -4.0 * a, 0.0, -8.0};
}

CurveRelation separation_curve() {
    CurveRelation c;
    c.base = VarTable::intern("s");
    c.fiber = VarTable::intern("zeta");
    c.rel = Poly::var("zeta", 2) - hyperelliptic_p6();
    c.id = "p6";
    return c;
}

CurveRelation quotient_to_gamma(const CurveRelation& c) {
    const VarId u = c.base, v = c.fiber;
    const VarId z = VarTable::intern("z"), w = VarTable::intern("w");
    Poly lifted = c.rel * Poly::var(u, 2);

    // Monomial rewrite u^j v^k -> z^((j-k)/2) w^k; requires j >= k and j == k (mod 2).
    Poly out;
    for (auto& [m, coeff] : lifted.terms()) {
        int ju = 0, kv = 0;
        Mono rest;
        for (auto& [var, e] : m.e) {
            if (var == u) ju = e;
            else if (var == v) kv = e;
            else rest.e.emplace_back(var, e);
        }
        if (ju < kv || (ju - kv) % 2 != 0)
            throw std::domain_error("quotient_to_gamma: odd power of base variable survives");
        Mono img;
        // variable ids for z (24) and w (17) both precede dynamically
        // interned symbols; keep exponent list sorted by id.
        std::vector<std::pair<VarId, int>> extra;
        if (kv > 0) extra.emplace_back(w, kv);
        if (ju - kv > 0) extra.emplace_back(z, (ju - kv) / 2);
        for (auto& [var, e] : rest.e) extra.emplace_back(var, e);
        std::sort(extra.begin(), extra.end());
        img.e = std::move(extra);
        out.add_term(img, coeff);
    }

    CurveRelation g;
    g.rel = out;
    g.base = z;
    g.fiber = w;
    g.eps = c.eps;
    g.id = "gamma";
    return g;
}

CurveRelation curve_involution_swap(const CurveRelation& c) {
    std::map<VarId, Poly> flip{{c.base, -Poly::var(c.base)}, {c.fiber, -Poly::var(c.fiber)}};
    CurveRelation out;
    out.rel = c.rel.substitute(flip);
    out.base = c.base;
    out.fiber = c.fiber;
    out.eps = -c.eps;
    out.id = c.id;
    return out;
}

CurveRelation curve_flip_conjugate(const CurveRelation& c) {
    std::map<VarId, Poly> flip{{c.base, -Poly::var(c.base)}, {c.fiber, -Poly::var(c.fiber)}};
    CurveRelation out;
    out.rel = c.rel.substitute(flip).conjugate_i();
    out.base = c.base;
    out.fiber = c.fiber;
    out.eps = -c.eps;
    out.id = c.id;
    return out;
}

BranchReport count_branch_points(const CurveRelation& c,
                                 const std::map<VarId, std::complex<double>>& params,
                                 double tol) {
    if (tol <= 0) throw std::invalid_argument("count_branch_points: tol must be positive");
    Poly disc = fiber_discriminant(c);

    auto by_base = disc.as_univariate(c.base);
    const int deg = by_base.empty() ? 0 : by_base.rbegin()->first;
    std::vector<std::complex<double>> coeffs(static_cast<size_t>(deg) + 1, 0.0);
    for (auto& [k, coeff] : by_base) coeffs[static_cast<size_t>(k)] = coeff.eval_c(params);

    BranchReport r;
    r.sheets = 2;
    int effective_degree = 0;
    std::vector<double> estimates;
    auto roots = polynomial_roots(coeffs, 1e-13, &effective_degree, &estimates);

    if (effective_degree != deg) {
        r.degenerate = true;
        r.note = "discriminant leading coefficient vanished at these parameters";
        return r;
    }

    // Splintered multiple roots carry error estimates far above the cluster
    // tolerance; refuse to report a genus from them.
    for (double est : estimates) {
        if (est > tol) {
            char note[128];
            std::snprintf(note, sizeof note,
                          "root clusters ambiguous at tolerance %.3e (estimated root error %.3e)",
                          tol, est);
            r.degenerate = true;
            r.note = note;
            for (auto& rt : roots) r.branch_points.push_back(rt);
            return r;
        }
    }

    auto clusters = cluster_roots(roots, tol);
    if (static_cast<int>(clusters.size()) != effective_degree) {
        r.degenerate = true;
        r.note = "discriminant has a multiple root at tolerance " + std::to_string(tol);
        for (auto& cl : clusters) r.branch_points.push_back(cl.center);
        return r;
    }

    for (auto& cl : clusters) r.branch_points.push_back(cl.center);
    // Two sheets separate at infinity iff the discriminant degree is even.
    r.infinity_branched = (effective_degree % 2 != 0);
    r.total_branch_points = effective_degree + (r.infinity_branched ? 1 : 0);
    r.genus = genus_riemann_hurwitz(2, r.total_branch_points);
    return r;
}

int genus_riemann_hurwitz(int n, int v) {
    if (n < 1) throw std::invalid_argument("genus_riemann_hurwitz: need n >= 1");
    if (v % 2 != 0) throw std::invalid_argument("genus_riemann_hurwitz: odd branch count");
    return -n + 1 + v / 2;
}

} // namespace ym
