#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "ym/series.hpp"

using namespace ym;
using fixtures::Q;
using fixtures::V;

namespace {

void check_against_fixture(const Balance& b, const std::vector<std::vector<Poly>>& fix,
                           bool (*has_ref)(size_t, size_t) = nullptr) {
    for (size_t i = 0; i < fix.size(); ++i) {
        for (size_t k = 0; k < fix[i].size(); ++k) {
            if (has_ref && !has_ref(i, k)) continue;
            const int abs_order = b.coords[i].lead + static_cast<int>(k);
            INFO("component ", i, " tau stage ", k);
            CHECK(b.coords[i].coeff(abs_order) == fix[i][k]);
        }
    }
}

} // namespace

TEST_CASE("puiseux series arithmetic bookkeeping") {
    PuiseuxSeries x;
    x.lead = -1;
    x.coeffs = {Poly(1), Poly(2), Poly(3)};
    x.valid_to = 1;

    PuiseuxSeries y = x * x; // (t^-1 + 2 + 3t)^2 in tau... orders -2..0 valid
    CHECK(y.lead == -2);
    CHECK(y.valid_to == 0);
    CHECK(y.coeff(-2) == Poly(1));
    CHECK(y.coeff(-1) == Poly(4));
    CHECK(y.coeff(0) == Poly(10));
    CHECK_THROWS_AS(y.coeff(1), std::out_of_range);

    PuiseuxSeries d = x.dt();
    CHECK(d.coeff(-3) == Poly(Q(-1, 2)));
    CHECK(d.coeff(-2) == Poly());
    CHECK(d.coeff(-1) == Poly(Q(3, 2)));
}

TEST_CASE("4d leading balances: two families with the reference leading terms") {
    auto fams = find_leading_balances(sys4());
    REQUIRE(fams.size() == 2);
    CHECK(fams[0].eps == Scalar::i());
    CHECK(fams[1].eps == -Scalar::i());
    for (auto& fam : fams) {
        const Scalar pre = fam.eps * Scalar::sqrt2() * Q(1, 4);
        CHECK(fam.lead[0] == Poly::var("u"));            // q1 free at leading order
        CHECK(fam.lead[1] == Poly(pre));                 // q2: eps sqrt2/4
        CHECK(fam.lead[2] == Q(-1, 2) * Poly::var("u")); // p1
        CHECK(fam.lead[3] == Poly(-pre));                // p2: -eps sqrt2/4
        CHECK(fam.free_names == std::vector<std::string>{"u"});
        CHECK(fam.deferred.empty());
    }
}

TEST_CASE("5d leading balances leave z5 deferred") {
    auto fams = find_leading_balances(sys5());
    REQUIRE(fams.size() == 2);
    for (auto& fam : fams) {
        const Scalar pre = fam.eps * Scalar::sqrt2() * Q(1, 4);
        CHECK(fam.lead[0] == Poly::var("alpha"));
        CHECK(fam.lead[1] == Poly(pre));
        CHECK(fam.lead[2] == Poly(-pre));
        CHECK(fam.lead[3] == Q(-1, 2) * Poly::var("alpha"));
        CHECK(fam.free_names == std::vector<std::string>{"alpha"});
        CHECK(fam.deferred.size() == 1); // z5 leading coefficient pinned later
    }
}

TEST_CASE("4d balance reproduces every reference coefficient, both branches") {
    for (const Scalar& eps : {Scalar::i(), -Scalar::i()}) {
        Balance b = compute_balance(sys4(), eps, 10);
        CHECK(b.inserted.size() == 3); // u, v, w (+ time shift = dim 4)
        CHECK(b.inserted[0].param == "u");
        CHECK(b.inserted[1].param == "v");
        CHECK(b.inserted[1].tau_order == 4);
        CHECK(b.inserted[2].param == "w");
        CHECK(b.inserted[2].tau_order == 8);
        check_against_fixture(b, fixtures::balance4(eps));

        // Odd tau stages vanish: the corrections are integer powers of t.
        for (auto& z : b.coords)
            for (size_t k = 1; k < z.coeffs.size(); k += 2) CHECK(z.coeffs[k].is_zero());
    }
}

TEST_CASE("5d balance reproduces every reference coefficient, both branches") {
    for (const Scalar& eps : {Scalar::i(), -Scalar::i()}) {
        Balance b = compute_balance(sys5(), eps, 10);
        REQUIRE(b.inserted.size() == 4); // alpha, beta, gamma, theta (+ time = dim 5)
        CHECK(b.inserted[0].param == "alpha");
        CHECK(b.inserted[1].param == "beta");
        CHECK(b.inserted[2].param == "gamma");
        CHECK(b.inserted[3].param == "theta");
        check_against_fixture(b, fixtures::balance5(eps), fixtures::balance5_has_reference);
    }
}

TEST_CASE("residuals vanish identically through tau order 16") {
    {
        Balance b = compute_balance(sys4(), Scalar::i(), 22);
        auto rep = residual_check(b, 16);
        INFO("first bad: component ", rep.first_bad_component, " order ", rep.first_bad_order, " -> ",
             rep.witness.str());
        CHECK(rep.ok);
    }
    {
        Balance b = compute_balance(sys5(), -Scalar::i(), 24);
        auto rep = residual_check(b, 16);
        INFO("first bad: component ", rep.first_bad_component, " order ", rep.first_bad_order, " -> ",
             rep.witness.str());
        CHECK(rep.ok);
    }
}

TEST_CASE("zero series solves the zero system") {
    SystemDef trivial;
    trivial.name = "null";
    trivial.state = {VarTable::intern("q1")};
    trivial.param_a = VarTable::intern("a");
    trivial.field = {Poly()};
    trivial.lead_tau = {1};
    PuiseuxSeries z;
    z.lead = -1;
    z.coeffs = {Poly()};
    z.valid_to = 20;
    auto rep = residual_check_series(trivial, {z}, 10);
    CHECK(rep.ok);
}

TEST_CASE("deleting the v term breaks the residual at the resonance") {
    Balance b = compute_balance(sys4(), Scalar::i(), 10);
    auto coords = b.coords;
    coords[0].coeffs[4] = Poly(); // q1's t^2 slot held exactly v
    auto rep = residual_check_series(sys4(), coords, 2);
    CHECK(!rep.ok);
    CHECK(rep.first_bad_component == 2); // the p1 equation
    CHECK(rep.first_bad_order == -1);
    CHECK(rep.witness == Q(3, 4) * Poly::var("v"));
}

TEST_CASE("conservation at series level and parameter counts") {
    Balance b = compute_balance(sys4(), Scalar::i(), 12);
    for (auto& [name, inv] : sys4().invariants) {
        PuiseuxSeries s = invariant_series(b, inv);
        const int hi = std::min(s.valid_to, s.lead + static_cast<int>(s.coeffs.size()) - 1);
        for (int r = s.lead; r <= hi; ++r) {
            if (r == 0) continue;
            INFO(name, " at tau order ", r);
            CHECK(s.coeff(r).is_zero());
        }
        CHECK(!s.coeff(0).is_zero());
    }
    CHECK(static_cast<int>(b.inserted.size()) + 1 == sys4().dim());

    Balance b5 = compute_balance(sys5(), Scalar::i(), 12);
    CHECK(static_cast<int>(b5.inserted.size()) + 1 == sys5().dim());
}

TEST_CASE("kowalevski exponents from the order-by-order rank checks") {
    auto e4 = kowalevski_exponents(sys4(), Scalar::i());
    CHECK(e4 == std::vector<Rational>{Rational(-1), Rational(0), Rational(2), Rational(4)});
    auto e5 = kowalevski_exponents(sys5(), Scalar::i());
    CHECK(e5 == std::vector<Rational>{Rational(-1), Rational(0), Rational(2), Rational(4), Rational(4)});
}

TEST_CASE("4d kowalevski matrix eigenvalues match the rank-check exponents") {
    // K = D(top part of f)(leading data) + diag(1/2, 1, 3/2, 2); its
    // characteristic polynomial must be x(x-2)(x-4)(x+1), independent of u.
    Poly u = V("u"), x = V("lambda");
    const Scalar es2 = Scalar::i_sqrt2();
    Poly K[4][4] = {};
    K[0][0] = Poly(Q(1, 2));
    K[0][2] = Poly(1);
    K[1][1] = Poly(1);
    K[1][3] = Poly(1);
    K[2][0] = Poly(Q(3, 4));
    K[2][1] = (-Scalar(3) * es2) * u;
    K[2][2] = Poly(Q(3, 2));
    K[3][1] = Poly(6);
    K[3][3] = Poly(2);
    for (int i = 0; i < 4; ++i) K[i][i] -= x;

    // 4x4 determinant by cofactor expansion.
    auto det3 = [&](int r0, int r1, int r2, int c0, int c1, int c2) {
        return K[r0][c0] * (K[r1][c1] * K[r2][c2] - K[r1][c2] * K[r2][c1]) -
               K[r0][c1] * (K[r1][c0] * K[r2][c2] - K[r1][c2] * K[r2][c0]) +
               K[r0][c2] * (K[r1][c0] * K[r2][c1] - K[r1][c1] * K[r2][c0]);
    };
    Poly det = K[0][0] * det3(1, 2, 3, 1, 2, 3) - K[0][1] * det3(1, 2, 3, 0, 2, 3) +
               K[0][2] * det3(1, 2, 3, 0, 1, 3) - K[0][3] * det3(1, 2, 3, 0, 1, 2);

    Poly expect = x * (x - Poly(2)) * (x - Poly(4)) * (x + Poly(1));
    CHECK(det == expect);
}

TEST_CASE("extension rejects orders below the last resonance") {
    auto fams = find_leading_balances(sys4());
    CHECK_THROWS_AS(extend_balance(sys4(), fams[0], 4), std::invalid_argument);
}

TEST_CASE("an incompatible resonance reports the required logarithm") {
    // dx/dt = x^2, dy/dt = x y + x^2: the y-equation has a resonance at tau
    // order 2 whose compatibility condition is the nonzero constant -1, so
    // the series would need a log term.
    SystemDef bad;
    bad.name = "log-demo";
    bad.state = {VarTable::intern("q1"), VarTable::intern("q2")};
    bad.param_a = VarTable::intern("a");
    Poly x = Poly::var("q1"), y = Poly::var("q2");
    bad.field = {x * x, x * y + x * x};
    bad.lead_tau = {2, 4};

    auto fams = find_leading_balances(bad);
    REQUIRE(!fams.empty());
    CHECK(fams[0].lead[0] == Poly(-1));
    CHECK_THROWS_WITH_AS(extend_balance(bad, fams[0], 6),
                         doctest::Contains("logarithm required"), std::runtime_error);
}

TEST_CASE("an undeclared free direction is a structure error") {
    // Same 4d system, but with the t^2 resonance slot removed from the
    // declaration: the rank deficiency is then a loud mismatch.
    SystemDef wrong = sys4();
    wrong.slots = {{0, 0, "u"}, {1, 8, "w"}};
    auto fams = find_leading_balances(wrong);
    CHECK_THROWS_WITH_AS(extend_balance(wrong, fams[0], 10),
                         doctest::Contains("structure mismatch"), std::runtime_error);
}
