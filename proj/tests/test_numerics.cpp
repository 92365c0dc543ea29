#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ym/integrate.hpp"
#include "ym/separation.hpp"

using namespace ym;

namespace {

CVec cv(std::initializer_list<double> xs) {
    CVec out;
    for (double x : xs) out.emplace_back(x, 0.0);
    return out;
}

const CVec kState4 = cv({1, 1, 0, 0});

Trajectory default_traj4(double T = 10.0, IntegratorConfig cfg = {}) {
    return integrate(sys4(), kState4, 1.0, 0.0, T, cfg);
}

// Minimal hand-built trajectory carrying only samples (no dense output).
Trajectory samples_only(std::initializer_list<CVec> states) {
    Trajectory t;
    t.system = "4d";
    t.a = 1.0;
    double s = 0.0;
    for (auto& y : states) {
        t.nodes.push_back(s);
        t.states.push_back(y);
        s += 1.0;
    }
    return t;
}

} // namespace

TEST_CASE("equilibrium stays put") {
    Trajectory t = integrate(sys4(), cv({0, 0, 0, 0}), 1.0, 0.0, 5.0, {});
    for (auto& y : t.states)
        for (auto& z : y) CHECK(std::abs(z) == 0.0);
    auto drift = invariant_drift(sys4(), t);
    CHECK(drift.worst_rel == 0.0);
}

TEST_CASE("dimension mismatch is rejected") {
    CHECK_THROWS_AS(integrate(sys4(), cv({1, 2, 3}), 1.0, 0.0, 1.0, {}), std::invalid_argument);
}

TEST_CASE("invariant drift at default tolerances") {
    Trajectory t4 = default_traj4();
    CHECK(!t4.truncated);
    auto d4 = invariant_drift(sys4(), t4);
    INFO("4d worst relative drift ", d4.worst_rel);
    CHECK(d4.worst_rel <= 1e-8);

    Trajectory t5 = integrate(sys5(), pushforward_phi(kState4), 1.0, 0.0, 10.0, {});
    auto d5 = invariant_drift(sys5(), t5);
    INFO("5d worst relative drift ", d5.worst_rel);
    CHECK(d5.worst_rel <= 1e-8);
}

TEST_CASE("drift shrinks when tolerances tighten 100x") {
    IntegratorConfig loose;
    loose.rtol = 1e-8;
    loose.atol = 1e-10;
    IntegratorConfig tight;
    tight.rtol = 1e-10;
    tight.atol = 1e-12;
    double dl = invariant_drift(sys4(), default_traj4(10.0, loose)).worst_rel;
    double dt = invariant_drift(sys4(), default_traj4(10.0, tight)).worst_rel;
    INFO("loose ", dl, " tight ", dt);
    CHECK(dt * 10.0 <= dl);
}

TEST_CASE("fixed-step refinement sweep shows order >= 4") {
    auto drift_at = [](double h) {
        IntegratorConfig cfg;
        cfg.fixed_step = h;
        return invariant_drift(sys4(), default_traj4(5.0, cfg)).worst_rel;
    };
    const double d1 = drift_at(0.02), d2 = drift_at(0.01), d3 = drift_at(0.005);
    const double slope1 = std::log2(d1 / d2), slope2 = std::log2(d2 / d3);
    INFO("drifts ", d1, " ", d2, " ", d3, " slopes ", slope1, " ", slope2);
    CHECK(slope1 >= 4.0);
    CHECK(slope2 >= 4.0);
}

TEST_CASE("phi maps the 4d flow onto the 5d flow") {
    Trajectory t4 = default_traj4(5.0);
    Trajectory t5 = integrate(sys5(), pushforward_phi(kState4), 1.0, 0.0, 5.0, {});
    double worst = 0.0;
    for (size_t i = 0; i < t4.states.size(); ++i) {
        CVec mapped = pushforward_phi(t4.states[i]);
        CVec direct = t5.state_at(t4.nodes[i]);
        for (size_t k = 0; k < 5; ++k) worst = std::max(worst, std::abs(mapped[k] - direct[k]));
    }
    INFO("max pointwise distance ", worst);
    CHECK(worst <= 1e-7);
}

TEST_CASE("F3 stays at its zero value along phi-image trajectories") {
    Trajectory t5 = integrate(sys5(), pushforward_phi(kState4), 1.0, 0.0, 10.0, {});
    double worst = 0.0;
    for (auto& y : t5.states) worst = std::max(worst, std::abs(invariants_at(sys5(), y, t5.a)[2]));
    CHECK(worst <= 1e-10);
}

TEST_CASE("separation coordinate examples") {
    // (q1, q2) = (2i, 5/2): s^2 - (5/2)s + 1 factors as (s-2)(s-1/2).
    Trajectory t = samples_only({CVec{{0, 2}, {2.5, 0}, {1, 0}, {1, 0}}});
    auto s = separation_coordinates(t);
    REQUIRE(s.size() == 1);
    CHECK(std::abs(s[0].s1 - std::complex<double>(2, 0)) < 1e-12);
    CHECK(std::abs(s[0].s2 - std::complex<double>(0.5, 0)) < 1e-12);
    CHECK(!s[0].degenerate);

    // q1 = 0 degenerates the p1 relation: {s1, s2} = {q2, 0}, flagged.
    Trajectory tz = samples_only({cv({0, 3, 1, 1})});
    auto sz = separation_coordinates(tz);
    CHECK(sz[0].degenerate);
    CHECK(std::abs(sz[0].s1 - std::complex<double>(3, 0)) < 1e-12);
    CHECK(std::abs(sz[0].s2) < 1e-12);
}

TEST_CASE("separation closure relations hold along a generic trajectory") {
    Trajectory t = default_traj4();
    auto samples = separation_coordinates(t);
    size_t checked = 0;
    for (auto& s : samples) {
        if (s.degenerate) continue;
        CHECK(s.closure <= 1e-10);
        ++checked;
    }
    CHECK(checked > 100);
}

TEST_CASE("p6 identity on a generic trajectory") {
    Trajectory t = default_traj4();
    auto rep = p6_residual(t);
    INFO("max residual ", rep.max_residual, " over ", rep.samples, " samples");
    CHECK(rep.samples > 100);
    CHECK(rep.max_residual <= 1e-6);

    // Corrupting b2 by +1 moves the residual by O(1).
    auto bad = p6_residual_with(t, rep.b1, rep.b2 + 1.0);
    CHECK(bad.max_residual >= 1e-2);
}

TEST_CASE("p6 residual shrinks under step refinement with order >= 4") {
    auto residual_at = [](double h) {
        IntegratorConfig cfg;
        cfg.fixed_step = h;
        return p6_residual(default_traj4(5.0, cfg)).max_residual;
    };
    const double r1 = residual_at(0.02), r2 = residual_at(0.01);
    INFO("residuals ", r1, " ", r2);
    CHECK(std::log2(r1 / r2) >= 4.0);
}

TEST_CASE("abel quadratures: xi1 constant, xi2 linear in t") {
    Trajectory t = default_traj4();
    auto rep = quadrature_linearization(t);
    INFO("xi1 dev ", rep.xi1_deviation, " xi2 dev ", rep.xi2_deviation, " slope ", rep.slope);
    CHECK(rep.xi1_deviation <= 1e-6);
    CHECK(rep.xi2_deviation <= 1e-6);
    CHECK((rep.slope == 1 || rep.slope == -1));
    CHECK(rep.sheet_sign_1 == rep.sheet_sign_2);

    // Algebraically forced with the dynamical branch: zero and t to roundoff.
    auto cross = quadrature_linearization(t, BranchMode::dynamical);
    CHECK(cross.xi1_deviation <= 1e-9);
    CHECK(cross.xi2_deviation <= 1e-9);
    CHECK(cross.slope == 1);
}

TEST_CASE("reversed time flips the detected slope") {
    Trajectory fwd = default_traj4(6.0);
    Trajectory rev = integrate(sys4(), kState4, 1.0, 0.0, -6.0, {});
    auto qf = quadrature_linearization(fwd, BranchMode::dynamical);
    auto qr = quadrature_linearization(rev, BranchMode::dynamical);
    CHECK(qf.slope == -qr.slope);
}

TEST_CASE("section-4 residuals under step refinement: order >= 4 overall") {
    // The xi deviations sit at roundoff once the sheet signs are fixed; the
    // h-dependence of the family is carried by the P6 identity residual.
    auto residual_at = [](double h) {
        IntegratorConfig cfg;
        cfg.fixed_step = h;
        Trajectory t = default_traj4(5.0, cfg);
        auto rep = quadrature_linearization(t);
        CHECK(rep.xi1_deviation <= 1e-9);
        CHECK(rep.xi2_deviation <= 1e-9);
        return std::max({p6_residual(t).max_residual, rep.xi1_deviation, rep.xi2_deviation});
    };
    const double r1 = residual_at(0.02), r2 = residual_at(0.01);
    INFO("residuals ", r1, " ", r2);
    CHECK(std::log2(r1 / r2) >= 4.0);
}

TEST_CASE("the two 5d flows commute") {
    const CVec z0 = pushforward_phi(kState4);
    double d = flows_commute_numeric(z0, 1.0, 0.5, 0.5, {});
    INFO("discrepancy ", d);
    CHECK(d <= 1e-6);

    // t1 = 0 leaves a single leg each way.
    CHECK(flows_commute_numeric(z0, 1.0, 0.0, 0.7, {}) <= 1e-9);
}

TEST_CASE("a perturbed second field fails to commute at O(t1 t2)") {
    auto perturbed = second_flow_fixture();
    perturbed[0] += Scalar(Rational(1, 100)) * Poly::var("z2", 2); // breaks the commutation
    const CVec z0 = pushforward_phi(kState4);
    double d_small = flows_commute_fields(sys5().field, perturbed, z0, 1.0, 0.1, 0.1, {});
    double d_large = flows_commute_fields(sys5().field, perturbed, z0, 1.0, 0.2, 0.2, {});
    INFO("small ", d_small, " large ", d_large);
    CHECK(d_large > 1e-5); // visibly non-commuting
    const double ratio = d_small / d_large;
    CHECK(ratio > 0.15);
    CHECK(ratio < 0.4); // ~ (1/2)*(1/2) = 1/4 at leading order
}

TEST_CASE("complex time rays conserve the invariants too") {
    // Movable singularities sit off the real axis, so keep the ray short.
    CVec y0 = cv({0.3, 0.2, 0.1, 0.0});
    Trajectory t = integrate(sys4(), y0, 1.0, 0.0, {0.0, 0.8}, {});
    CHECK(!t.truncated);
    CHECK(std::abs(t.time_at(t.states.size() - 1) - std::complex<double>(0.0, 0.8)) < 1e-12);
    auto drift = invariant_drift(sys4(), t);
    INFO("drift along the imaginary axis ", drift.worst_rel);
    CHECK(drift.worst_rel <= 1e-8);
}

TEST_CASE("trajectory truncates near a blow-up instead of diverging") {
    // Complex-time ray toward a movable singularity: the integrator must
    // either finish or stop with a diagnostic, never return non-finite data.
    Trajectory t = integrate(sys4(), cv({3, 3, 9, 9}), 0.0, 0.0, 4.0, {});
    if (t.truncated) CHECK(!t.diagnostic.empty());
    for (auto& y : t.states)
        for (auto& z : y) CHECK(std::isfinite(std::abs(z)));
}
