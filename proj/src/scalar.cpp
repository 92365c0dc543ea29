#include "ym/scalar.hpp"

#include <sstream>

namespace ym {

Scalar Scalar::operator*(const Scalar& o) const {
    // Basis products: i^2 = -1, sqrt2^2 = 2, (i*sqrt2)^2 = -2,
    // i*sqrt2 = (i sqrt2), i*(i sqrt2) = -sqrt2, sqrt2*(i sqrt2) = 2i.
    const Rational &a0 = c_[0], &a1 = c_[1], &a2 = c_[2], &a3 = c_[3];
    const Rational &b0 = o.c_[0], &b1 = o.c_[1], &b2 = o.c_[2], &b3 = o.c_[3];
    return Scalar(
        a0 * b0 - a1 * b1 + 2 * a2 * b2 - 2 * a3 * b3,
        a0 * b1 + a1 * b0 + 2 * (a2 * b3 + a3 * b2),
        a0 * b2 + a2 * b0 - (a1 * b3 + a3 * b1),
        a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1);
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw std::domain_error("Scalar::inverse: division by zero");
    // Product of the three nontrivial Galois conjugates; the full product
    // with *this is the rational field norm.
    Scalar cofactor = conj_i() * conj_sqrt2() * conj_i().conj_sqrt2();
    Scalar norm = *this * cofactor;
    if (!norm.is_rational() || norm.c_[0] == 0)
        throw std::logic_error("Scalar::inverse: norm not a nonzero rational");
    Rational inv = 1 / norm.c_[0];
    return Scalar(cofactor.c_[0] * inv, cofactor.c_[1] * inv,
                  cofactor.c_[2] * inv, cofactor.c_[3] * inv);
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

namespace {

// Exact square root of a nonnegative rational, if it exists.
std::optional<Rational> rational_sqrt(const Rational& r) {
    if (r < 0) return std::nullopt;
    const mpz_class num = r.get_num(), den = r.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
    mpz_class sn, sd;
    mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
    return Rational(sn, sd);
}

} // namespace

std::optional<Scalar> Scalar::sqrt_simple() const {
    if (!is_rational()) return std::nullopt;
    const Rational& r = c_[0];
    if (r == 0) return Scalar(0);
    if (auto s = rational_sqrt(r)) return Scalar(*s);              // r = s^2
    if (auto s = rational_sqrt(r / 2)) return Scalar(0, 0, *s, 0); // r = 2 s^2
    if (auto s = rational_sqrt(-r)) return Scalar(0, *s, 0, 0);    // r = -s^2
    if (auto s = rational_sqrt(-r / 2)) return Scalar(0, 0, 0, *s);// r = -2 s^2
    return std::nullopt;
}

std::string Scalar::str() const {
    std::ostringstream os;
    os << "(" << c_[0] << ", " << c_[1] << ", " << c_[2] << ", " << c_[3] << ")";
    return os.str();
}

std::string Scalar::pretty() const {
    if (is_zero()) return "0";
    static const char* unit[4] = {"", "i", "sqrt2", "i*sqrt2"};
    std::ostringstream os;
    bool first = true;
    for (int k = 0; k < 4; ++k) {
        if (c_[k] == 0) continue;
        Rational v = c_[k];
        if (first) {
            if (v < 0) { os << "-"; v = -v; }
        } else {
            os << (v < 0 ? " - " : " + ");
            if (v < 0) v = -v;
        }
        first = false;
        if (k == 0) {
            os << v;
        } else if (v == 1) {
            os << unit[k];
        } else {
            os << v << "*" << unit[k];
        }
    }
    return os.str();
}

} // namespace ym
