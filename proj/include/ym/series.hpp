#pragma once

#include <optional>
#include <vector>

#include "ym/curves.hpp"
#include "ym/poly.hpp"
#include "ym/systems.hpp"

namespace ym {

/// Truncated Puiseux series in tau (tau^2 = t). coeffs[k] is the
/// coefficient of tau^(lead + k), polynomial in the balance parameters.
/// Exponents above valid_to are unknown, never implicitly zero.
struct PuiseuxSeries {
    int lead = 0;
    std::vector<Poly> coeffs;
    int valid_to = kInfiniteOrder;

    static constexpr int kInfiniteOrder = 1 << 24;

    static PuiseuxSeries zero() { return PuiseuxSeries{}; }
    static PuiseuxSeries of_poly(const Poly& p) {
        PuiseuxSeries s;
        if (!p.is_zero()) {
            s.lead = 0;
            s.coeffs = {p};
        }
        return s;
    }

    bool known_zero() const {
        for (const auto& c : coeffs)
            if (!c.is_zero()) return false;
        return true;
    }
    /// Coefficient of tau^r; zero outside the stored window, error above
    /// the validity bound.
    const Poly& coeff(int r) const;

    PuiseuxSeries operator+(const PuiseuxSeries& o) const;
    PuiseuxSeries operator-(const PuiseuxSeries& o) const;
    PuiseuxSeries operator*(const PuiseuxSeries& o) const;
    PuiseuxSeries scaled(const Poly& p) const;
    PuiseuxSeries pow(int n) const;
    /// d/dt = (1/(2 tau)) d/dtau.
    PuiseuxSeries dt() const;
    PuiseuxSeries truncated(int new_valid_to) const;
};

/// Substitute series for the mapped variables of f; unmapped variables stay
/// inside the coefficient polynomials.
PuiseuxSeries compose(const Poly& f, const std::map<VarId, PuiseuxSeries>& image);

/// A leading-order family z_k ~ lead[k] * tau^(-m_k).
struct LeadingFamily {
    Scalar eps;
    std::vector<Poly> lead;               // per component; may hold deferred symbols
    std::vector<std::string> free_names;  // leading free parameters (renamed)
    std::vector<VarId> deferred;          // leading coefficients pinned at later orders
};

/// The extended balance: per-coordinate series with exact polynomial
/// coefficients in (a, free parameters).
struct Balance {
    const SystemDef* sys = nullptr;
    Scalar eps;
    std::vector<PuiseuxSeries> coords;
    std::vector<SystemDef::Slot> inserted; // free parameters in insertion order
    int order = 0;                         // solved through this tau stage
};

/// Solve the leading-order algebraic system. Returns the principal families
/// (exactly two, eps = +-i, for both model systems).
std::vector<LeadingFamily> find_leading_balances(const SystemDef& sys);

/// Order-by-order extension through tau stage `order`, inserting the declared
/// free parameters at rank-deficient orders. Throws if a resonance is
/// incompatible (a logarithm would be required) or the structure does not
/// match the declared slots.
Balance extend_balance(const SystemDef& sys, const LeadingFamily& family, int order);

/// find_leading_balances + extend_balance for the requested branch.
Balance compute_balance(const SystemDef& sys, const Scalar& eps, int order);

struct ResidualReport {
    bool ok = true;
    int checked_to = 0;        // highest absolute tau order verified
    int first_bad_order = 0;   // absolute tau order of first nonzero coefficient
    int first_bad_component = -1;
    Poly witness;
};

/// Substitute the balance into dz/dt - f(z) and require the identically
/// zero series through tau order N.
ResidualReport residual_check(const Balance& b, int N);
ResidualReport residual_check_series(const SystemDef& sys, const std::vector<PuiseuxSeries>& coords, int N);

/// The named invariant evaluated on the balance, as a series.
PuiseuxSeries invariant_series(const Balance& b, const Poly& invariant);

/// Substitute the balance into its invariants, take constant terms, and
/// eliminate the declared linear parameters; returns the relation among the
/// remaining ones, scaled so the fiber-squared coefficient matches the
/// system's convention.
CurveRelation curve_from_balance(const Balance& b);

/// {-1} plus one exponent k/2 per free-parameter insertion at tau order k,
/// as found by the order-by-order rank checks.
std::vector<Rational> kowalevski_exponents(const SystemDef& sys, const Scalar& eps);

} // namespace ym
