#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ym/poly.hpp"

using namespace ym;

namespace {

Poly random_poly(std::mt19937& rng, const std::vector<std::string>& vars, int max_deg, int terms) {
    std::uniform_int_distribution<long> coeff(-6, 6);
    std::uniform_int_distribution<int> deg(0, max_deg);
    Poly p;
    for (int t = 0; t < terms; ++t) {
        Poly mono(Scalar(Rational(coeff(rng), 1 + std::abs(coeff(rng)))));
        for (const auto& v : vars) mono *= Poly::var(v, deg(rng));
        p += mono;
    }
    return p;
}

std::map<VarId, Scalar> random_point(std::mt19937& rng, const std::vector<std::string>& vars) {
    std::uniform_int_distribution<long> num(-5, 5);
    std::map<VarId, Scalar> pt;
    for (const auto& v : vars)
        pt.emplace(VarTable::intern(v), Scalar(Rational(num(rng), 3)));
    return pt;
}

} // namespace

TEST_CASE("ring axioms on random polynomials") {
    std::mt19937 rng(99);
    const std::vector<std::string> vars{"x", "y", "zz"};
    for (int trial = 0; trial < 60; ++trial) {
        Poly p = random_poly(rng, vars, 3, 4);
        Poly q = random_poly(rng, vars, 3, 4);
        Poly r = random_poly(rng, vars, 3, 4);
        REQUIRE((p + q) + r == p + (q + r));
        REQUIRE(p * q == q * p);
        REQUIRE((p * q) * r == p * (q * r));
        REQUIRE(p * (q + r) == p * q + p * r);
    }
}

TEST_CASE("evaluation is a ring homomorphism") {
    std::mt19937 rng(17);
    const std::vector<std::string> vars{"x", "y", "zz"};
    for (int trial = 0; trial < 40; ++trial) {
        Poly p = random_poly(rng, vars, 6, 5);
        Poly q = random_poly(rng, vars, 6, 5);
        auto pt = random_point(rng, vars);
        REQUIRE((p * q).eval(pt) == p.eval(pt) * q.eval(pt));
        REQUIRE((p + q).eval(pt) == p.eval(pt) + q.eval(pt));
    }
}

TEST_CASE("missing assignment is an error") {
    Poly p = Poly::var("x") + Poly::var("y");
    std::map<VarId, Scalar> partial{{VarTable::intern("x"), Scalar(1)}};
    CHECK_THROWS_AS(p.eval(partial), std::invalid_argument);
}

TEST_CASE("partial derivative satisfies Leibniz") {
    std::mt19937 rng(23);
    const std::vector<std::string> vars{"x", "y"};
    const VarId x = VarTable::intern("x");
    for (int trial = 0; trial < 40; ++trial) {
        Poly p = random_poly(rng, vars, 4, 4);
        Poly q = random_poly(rng, vars, 4, 4);
        REQUIRE((p * q).partial(x) == p.partial(x) * q + p * q.partial(x));
    }
    CHECK(Poly(7).partial(x).is_zero());
}

TEST_CASE("substitution") {
    Poly w = Poly::var("w"), u = Poly::var("u"), v = Poly::var("v");
    CHECK((2 * (w * w)).substitute(VarTable::intern("w"), u * v) == 2 * (u * u * v * v));

    Poly p = 3 * (w * w) - Poly(1);
    CHECK(p.substitute(VarTable::intern("w"), w) == p);
}

TEST_CASE("exact division") {
    Poly x = Poly::var("x"), y = Poly::var("y");
    Poly p = (x + y) * (x - y) * (2 * x + 3 * y);
    CHECK(p.divexact(x + y) == (x - y) * (2 * x + 3 * y));
    CHECK(p.divexact(p) == Poly(1));
    CHECK_THROWS_AS((x * x + y).divexact(x + Poly(1)), std::domain_error);
    CHECK_THROWS_AS(p.divexact(Poly()), std::domain_error);
}

TEST_CASE("affine decomposition over unknowns") {
    Poly x = Poly::var("_t1"), y = Poly::var("_t2"), a = Poly::var("a");
    std::set<VarId> unknowns{VarTable::intern("_t1"), VarTable::intern("_t2")};
    Poly e = 3 * (a * x) - 2 * y + a * a;
    std::map<VarId, Poly> coeff;
    Poly rest;
    e.affine_decompose(unknowns, coeff, rest);
    CHECK(coeff[VarTable::intern("_t1")] == 3 * a);
    CHECK(coeff[VarTable::intern("_t2")] == Poly(-2));
    CHECK(rest == a * a);
    CHECK_THROWS_AS((x * y).affine_decompose(unknowns, coeff, rest), std::domain_error);
}

TEST_CASE("quadratic discriminant") {
    CHECK(quadratic_discriminant(Poly(1), Poly(), Poly(-1)) == Poly(4));
    Poly x = Poly::var("x");
    CHECK(quadratic_discriminant(Poly(1), x, Poly(1)) == x * x - Poly(4));
}

TEST_CASE("canonical text form") {
    Poly p = 2 * Poly::var("u", 5) * Poly::var("v") - Poly(Scalar(Rational(1, 3)));
    CHECK(p.str() == "(2, 0, 0, 0) * u^5 * v + (-1/3, 0, 0, 0)");
    CHECK(Poly().str() == "(0, 0, 0, 0)");
}

TEST_CASE("conjugate_i") {
    Poly p = Scalar::i() * Poly::var("x") + Poly(2);
    CHECK(p.conjugate_i() == -Scalar::i() * Poly::var("x") + Poly(2));
}

TEST_CASE("univariate collection") {
    Poly x = Poly::var("x"), y = Poly::var("y");
    Poly p = x * x * y + 2 * x + y * y;
    auto uni = p.as_univariate(VarTable::intern("x"));
    CHECK(uni[2] == y);
    CHECK(uni[1] == Poly(2));
    CHECK(uni[0] == y * y);
    CHECK(p.coefficient_of(VarTable::intern("x"), 2) == y);
}
