#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace ym {

using Rational = mpq_class;

/// Element of the number field Q(i, sqrt2), stored on the basis
/// {1, i, sqrt2, i*sqrt2} with arbitrary-precision rational components.
///
/// The component order matches the wire format "(c0, c1, c2, c3)" used by
/// the polynomial serializer: c0 + c1*i + c2*sqrt2 + c3*i*sqrt2.
class Scalar {
public:
    Scalar() : c_{0, 0, 0, 0} {}
    Scalar(long n) : c_{Rational(n), 0, 0, 0} { canonicalize(); }
    Scalar(const Rational& r) : c_{r, 0, 0, 0} { canonicalize(); }
    Scalar(Rational r0, Rational r1, Rational r2, Rational r3)
        : c_{std::move(r0), std::move(r1), std::move(r2), std::move(r3)} {
        canonicalize();
    }

    static Scalar rational(long num, long den) { return Scalar(Rational(num, den)); }
    static Scalar i() { return Scalar(0, 1, 0, 0); }
    static Scalar sqrt2() { return Scalar(0, 0, 1, 0); }
    static Scalar i_sqrt2() { return Scalar(0, 0, 0, 1); }

    const Rational& c0() const { return c_[0]; }
    const Rational& c1() const { return c_[1]; }
    const Rational& c2() const { return c_[2]; }
    const Rational& c3() const { return c_[3]; }

    bool is_zero() const {
        return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0;
    }
    bool is_rational() const { return c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }
    bool is_one() const { return is_rational() && c_[0] == 1; }

    bool operator==(const Scalar& o) const { return c_[0] == o.c_[0] && c_[1] == o.c_[1] && c_[2] == o.c_[2] && c_[3] == o.c_[3]; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    Scalar operator-() const { return Scalar(-c_[0], -c_[1], -c_[2], -c_[3]); }

    Scalar operator+(const Scalar& o) const {
        return Scalar(c_[0] + o.c_[0], c_[1] + o.c_[1], c_[2] + o.c_[2], c_[3] + o.c_[3]);
    }
    Scalar operator-(const Scalar& o) const {
        return Scalar(c_[0] - o.c_[0], c_[1] - o.c_[1], c_[2] - o.c_[2], c_[3] - o.c_[3]);
    }
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;

    Scalar& operator+=(const Scalar& o) { *this = *this + o; return *this; }
    Scalar& operator-=(const Scalar& o) { *this = *this - o; return *this; }
    Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }

    /// Multiplicative inverse; throws std::domain_error on zero.
    Scalar inverse() const;

    /// Field automorphism i -> -i (fixes sqrt2).
    Scalar conj_i() const { return Scalar(c_[0], -c_[1], c_[2], -c_[3]); }
    /// Field automorphism sqrt2 -> -sqrt2 (fixes i).
    Scalar conj_sqrt2() const { return Scalar(c_[0], c_[1], -c_[2], -c_[3]); }

    /// Square root when the argument is rational and the root stays inside
    /// the field on a single basis component (r^2, -r^2, 2r^2 or -2r^2).
    /// Returns the root with positive leading component; nullopt otherwise.
    std::optional<Scalar> sqrt_simple() const;

    std::complex<double> to_complex() const {
        static const double s2 = std::sqrt(2.0);
        return {c_[0].get_d() + s2 * c_[2].get_d(), c_[1].get_d() + s2 * c_[3].get_d()};
    }

    /// Wire form "(c0, c1, c2, c3)" with canonical rationals.
    std::string str() const;
    /// Human form, e.g. "1/2 - 2*i*sqrt2"; "0" for zero.
    std::string pretty() const;

private:
    void canonicalize() {
        for (auto& r : c_) r.canonicalize();
    }
    Rational c_[4];
};

inline Scalar operator*(long n, const Scalar& s) { return Scalar(n) * s; }

} // namespace ym
