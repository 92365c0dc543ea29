#include "ym/systems.hpp"

#include <stdexcept>

namespace ym {

namespace {

Poly V(const char* n, int e = 1) { return Poly::var(n, e); }
Scalar Q(long n, long d) { return Scalar(Rational(n, d)); }

SystemDef make_sys4() {
    SystemDef s;
    s.name = "4d";
    for (const char* n : {"q1", "q2", "p1", "p2"}) s.state.push_back(VarTable::intern(n));
    s.param_a = VarTable::intern("a");

    Poly q1 = V("q1"), q2 = V("q2"), p1 = V("p1"), p2 = V("p2"), a = V("a");

    s.field = {
        p1,
        p2,
        -((a + q1 * q1 + 6 * (q2 * q2)) * q1),
        -2 * ((2 * a + 3 * (q1 * q1) + 8 * (q2 * q2)) * q2),
    };

    Poly H1 = Q(1, 2) * (p1 * p1 + p2 * p2)
            + Q(1, 2) * (a * (q1 * q1 + 4 * (q2 * q2)))
            + Q(1, 4) * q1.pow(4) + 4 * q2.pow(4) + 3 * (q1 * q1 * q2 * q2);
    Poly H2 = a * q1 * q1 * q2 + q1.pow(4) * q2 + 2 * (q1 * q1 * q2.pow(3))
            - q2 * p1 * p1 + q1 * p1 * p2;
    s.invariants = {{"H1", H1}, {"H2", H2}};

    s.weights = {{VarTable::intern("q1"), 1}, {VarTable::intern("q2"), 1},
                 {VarTable::intern("p1"), 2}, {VarTable::intern("p2"), 2},
                 {s.param_a, 2}};
    s.lead_tau = {1, 2, 3, 4};
    s.slots = {{0, 0, "u"}, {0, 4, "v"}, {1, 8, "w"}};
    s.value_names = {"b1", "b2"};
    s.curve = {"u", "v", {"w"}, Scalar(2), "balance-4d"};
    return s;
}

SystemDef make_sys5() {
    SystemDef s;
    s.name = "5d";
    for (const char* n : {"z1", "z2", "z3", "z4", "z5"}) s.state.push_back(VarTable::intern(n));
    s.param_a = VarTable::intern("a");

    Poly z1 = V("z1"), z2 = V("z2"), z3 = V("z3"), z4 = V("z4"), z5 = V("z5"), a = V("a");

    s.field = {
        2 * z4,
        z3,
        -4 * (a * z2) - 6 * (z1 * z2) - 16 * z2.pow(3),
        -(a * z1) - z1 * z1 - 8 * (z1 * z2 * z2) + z5,
        -8 * (z2 * z2 * z4) - 2 * (a * z4) - 2 * (z1 * z4) + 4 * (z1 * z2 * z3),
    };

    Poly F1 = Q(1, 2) * z5 + 2 * (z1 * z2 * z2) + Q(1, 2) * (z3 * z3)
            + Q(1, 2) * (a * z1) + 2 * (a * z2 * z2) + Q(1, 4) * (z1 * z1) + 4 * z2.pow(4);
    Poly F2 = a * z1 * z2 + z1 * z1 * z2 + 4 * (z1 * z2.pow(3)) - z2 * z5 + z3 * z4;
    Poly F3 = z1 * z5 - 2 * (z1 * z1 * z2 * z2) - z4 * z4;
    s.invariants = {{"F1", F1}, {"F2", F2}, {"F3", F3}};

    s.weights = {{VarTable::intern("z1"), 2}, {VarTable::intern("z2"), 1},
                 {VarTable::intern("z3"), 2}, {VarTable::intern("z4"), 3},
                 {VarTable::intern("z5"), 4}, {s.param_a, 2}};
    s.lead_tau = {2, 2, 4, 4, 2};
    s.slots = {{0, 0, "alpha"}, {0, 4, "beta"}, {0, 8, "gamma"}, {1, 8, "theta"}};
    s.value_names = {"c1", "c2", "c3"};
    s.curve = {"alpha", "beta", {"gamma", "theta"}, Scalar(1), "balance-5d"};
    return s;
}

} // namespace

const SystemDef& sys4() {
    static const SystemDef s = make_sys4();
    return s;
}

const SystemDef& sys5() {
    static const SystemDef s = make_sys5();
    return s;
}

const SystemDef& system_by_name(const std::string& name) {
    if (name == "4d") return sys4();
    if (name == "5d") return sys5();
    throw std::invalid_argument("unknown system: " + name);
}

const std::array<std::array<Poly, 5>, 5>& poisson_matrix() {
    static const auto J = [] {
        Poly z1 = V("z1"), z2 = V("z2"), z4 = V("z4"), z5 = V("z5");
        Poly zero;
        std::array<std::array<Poly, 5>, 5> m;
        m[0] = {zero, zero, zero, 2 * z1, 4 * z4};
        m[1] = {zero, zero, Poly(1), zero, zero};
        m[2] = {zero, Poly(-1), zero, zero, -4 * (z1 * z2)};
        m[3] = {-2 * z1, zero, zero, zero, 2 * z5 - 8 * (z1 * z2 * z2)};
        m[4] = {-4 * z4, zero, 4 * (z1 * z2), -2 * z5 + 8 * (z1 * z2 * z2), zero};
        return m;
    }();
    return J;
}

Poly poisson_bracket(const Poly& F, const Poly& G) {
    const auto& J = poisson_matrix();
    const auto& z = sys5().state;
    Poly out;
    for (int k = 0; k < 5; ++k) {
        Poly dF = F.partial(z[k]);
        if (dF.is_zero()) continue;
        for (int l = 0; l < 5; ++l) {
            if (J[k][l].is_zero()) continue;
            out += J[k][l] * dF * G.partial(z[l]);
        }
    }
    return out;
}

std::vector<Poly> hamiltonian_vector_field(const Poly& F) {
    const auto& J = poisson_matrix();
    const auto& z = sys5().state;
    std::vector<Poly> grad;
    for (int l = 0; l < 5; ++l) grad.push_back(F.partial(z[l]));
    std::vector<Poly> out(5);
    for (int k = 0; k < 5; ++k)
        for (int l = 0; l < 5; ++l)
            if (!J[k][l].is_zero() && !grad[l].is_zero()) out[k] += J[k][l] * grad[l];
    return out;
}

const std::vector<Poly>& second_flow_fixture() {
    static const std::vector<Poly> flow = [] {
        Poly z1 = V("z1"), z2 = V("z2"), z3 = V("z3"), z4 = V("z4"), z5 = V("z5"), a = V("a");
        return std::vector<Poly>{
            2 * (z1 * z3) - 4 * (z2 * z4),
            z4,
            z5 - 8 * (z1 * z2 * z2) - a * z1 - z1 * z1,
            -2 * (a * z1 * z2) - 4 * (z1 * z1 * z2) - 2 * (z2 * z5),
            -4 * (a * z2 * z4) - 4 * (z1 * z2 * z4) - 16 * (z2.pow(3) * z4)
                - 2 * (z3 * z5) + 8 * (z1 * z2 * z2 * z3),
        };
    }();
    return flow;
}

const std::vector<Poly>& phi_components() {
    static const std::vector<Poly> phi = [] {
        Poly q1 = V("q1"), q2 = V("q2"), p1 = V("p1"), p2 = V("p2");
        return std::vector<Poly>{
            q1 * q1, q2, p2, q1 * p1, 2 * (q1 * q1 * q2 * q2) + p1 * p1,
        };
    }();
    return phi;
}

const std::map<VarId, Poly>& phi_substitution() {
    static const std::map<VarId, Poly> sub = [] {
        std::map<VarId, Poly> m;
        const auto& z = sys5().state;
        const auto& phi = phi_components();
        for (int k = 0; k < 5; ++k) m.emplace(z[k], phi[k]);
        return m;
    }();
    return sub;
}

CVec pushforward_phi(const CVec& s) {
    if (s.size() != 4) throw std::invalid_argument("pushforward_phi: need 4 components");
    return {s[0] * s[0], s[1], s[3], s[0] * s[2],
            2.0 * s[0] * s[0] * s[1] * s[1] + s[2] * s[2]};
}

std::vector<Scalar> pushforward_phi(const std::vector<Scalar>& s) {
    if (s.size() != 4) throw std::invalid_argument("pushforward_phi: need 4 components");
    return {s[0] * s[0], s[1], s[3], s[0] * s[2],
            Scalar(2) * s[0] * s[0] * s[1] * s[1] + s[2] * s[2]};
}

CVec apply_sigma(const CVec& z) {
    if (z.size() != 5) throw std::invalid_argument("apply_sigma: need 5 components");
    return {z[0], z[1], -z[2], -z[3], z[4]};
}

const std::map<VarId, Poly>& sigma_substitution() {
    static const std::map<VarId, Poly> sub = [] {
        std::map<VarId, Poly> m;
        m.emplace(VarTable::intern("z3"), -V("z3"));
        m.emplace(VarTable::intern("z4"), -V("z4"));
        return m;
    }();
    return sub;
}

int sigma_sign(int k) { return (k == 2 || k == 3) ? -1 : 1; }

std::vector<Poly> lie_bracket_fields(const std::vector<Poly>& X, const std::vector<Poly>& Y,
                                     const std::vector<VarId>& vars) {
    if (X.size() != Y.size() || X.size() != vars.size())
        throw std::invalid_argument("lie_bracket_fields: dimension mismatch");
    const size_t n = vars.size();
    std::vector<Poly> out(n);
    for (size_t k = 0; k < n; ++k)
        for (size_t i = 0; i < n; ++i)
            out[k] += Y[k].partial(vars[i]) * X[i] - X[k].partial(vars[i]) * Y[i];
    return out;
}

namespace {

template <typename T>
std::map<VarId, T> state_assignment(const SystemDef& sys, const std::vector<T>& state, const T& a) {
    if (static_cast<int>(state.size()) != sys.dim())
        throw std::invalid_argument(sys.name + ": state dimension mismatch, expected " +
                                    std::to_string(sys.dim()));
    std::map<VarId, T> m;
    for (int k = 0; k < sys.dim(); ++k) m.emplace(sys.state[k], state[k]);
    m.emplace(sys.param_a, a);
    return m;
}

} // namespace

CVec vector_field(const SystemDef& sys, const CVec& state, std::complex<double> a) {
    auto m = state_assignment(sys, state, a);
    CVec out;
    for (const auto& f : sys.field) out.push_back(f.eval_c(m));
    return out;
}

std::vector<Scalar> vector_field(const SystemDef& sys, const std::vector<Scalar>& state, const Scalar& a) {
    auto m = state_assignment(sys, state, a);
    std::vector<Scalar> out;
    for (const auto& f : sys.field) out.push_back(f.eval(m));
    return out;
}

CVec invariants_at(const SystemDef& sys, const CVec& state, std::complex<double> a) {
    auto m = state_assignment(sys, state, a);
    CVec out;
    for (const auto& [name, inv] : sys.invariants) out.push_back(inv.eval_c(m));
    return out;
}

std::vector<Scalar> invariants_at(const SystemDef& sys, const std::vector<Scalar>& state, const Scalar& a) {
    auto m = state_assignment(sys, state, a);
    std::vector<Scalar> out;
    for (const auto& [name, inv] : sys.invariants) out.push_back(inv.eval(m));
    return out;
}

std::vector<Check> verify_jacobi() {
    std::vector<Check> checks;
    const auto& J = poisson_matrix();
    const auto& z = sys5().state;

    bool skew = true;
    std::string skew_witness;
    for (int i = 0; i < 5 && skew; ++i)
        for (int j = 0; j < 5; ++j) {
            if (!(J[i][j] + J[j][i]).is_zero()) {
                skew = false;
                skew_witness = "J[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) + "]";
                break;
            }
        }
    checks.push_back({"poisson-skew-symmetry", skew, 0.0, skew_witness});

    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j)
            for (int k = j + 1; k < 5; ++k) {
                Poly sum;
                for (int l = 0; l < 5; ++l) {
                    sum += J[l][i] * J[j][k].partial(z[l])
                         + J[l][j] * J[k][i].partial(z[l])
                         + J[l][k] * J[i][j].partial(z[l]);
                }
                Check c;
                c.name = "jacobi-(" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                         "," + std::to_string(k + 1) + ")";
                c.pass = sum.is_zero();
                if (!c.pass) c.witness = sum.str();
                checks.push_back(c);
            }
    return checks;
}

std::vector<Check> verify_weight_homogeneity(const SystemDef& sys,
                                             const std::map<VarId, int>& weights) {
    std::vector<Check> checks;
    const VarId lam = VarTable::intern("lambda");
    std::map<VarId, Poly> scale;
    for (const auto& [v, nu] : weights)
        scale.emplace(v, Poly::var(lam, nu) * Poly::var(v));

    for (int k = 0; k < sys.dim(); ++k) {
        const int nu_k = weights.at(sys.state[k]);
        Poly lhs = sys.field[k].substitute(scale);
        Poly rhs = Poly::var(lam, nu_k + 1) * sys.field[k];
        Check c;
        c.name = sys.name + "-field-weight-" + VarTable::name(sys.state[k]);
        c.pass = (lhs - rhs).is_zero();
        if (!c.pass) c.witness = (lhs - rhs).str();
        checks.push_back(c);
    }

    for (const auto& [name, inv] : sys.invariants) {
        Poly scaled = inv.substitute(scale);
        auto by_lambda = scaled.as_univariate(lam);
        Check c;
        c.name = sys.name + "-invariant-weight-" + name;
        if (by_lambda.size() == 1 && (by_lambda.begin()->second - inv).is_zero()) {
            c.pass = true;
            c.witness = "weight " + std::to_string(by_lambda.begin()->first);
        } else {
            c.pass = false;
            c.witness = "not weight-homogeneous";
        }
        checks.push_back(c);
    }
    return checks;
}

std::vector<Check> verify_phi_intertwines() {
    std::vector<Check> checks;
    const auto& s4 = sys4();
    const auto& s5 = sys5();
    const auto& phi = phi_components();
    const auto& sub = phi_substitution();
    for (int k = 0; k < 5; ++k) {
        Poly lhs;
        for (int i = 0; i < 4; ++i) lhs += phi[k].partial(s4.state[i]) * s4.field[i];
        Poly rhs = s5.field[k].substitute(sub);
        Check c;
        c.name = "phi-intertwines-z" + std::to_string(k + 1);
        c.pass = (lhs - rhs).is_zero();
        if (!c.pass) c.witness = (lhs - rhs).str();
        checks.push_back(c);
    }
    return checks;
}

std::vector<ReductionRatio> su2_reduction_ratios(bool identity_transform) {
    Poly q1 = V("q1"), q2 = V("q2"), p1 = V("p1"), p2 = V("p2");

    // Target form: H = (p1^2 + p2^2)/2 + q1^4/4 + q2^4/4 + q1^2 q2^2 / 2.
    std::map<std::string, std::pair<Poly, Scalar>> classes;
    classes["p1^2"] = {p1 * p1, Q(1, 2)};
    classes["p2^2"] = {p2 * p2, Q(1, 2)};
    classes["q1^4"] = {q1.pow(4), Q(1, 4)};
    classes["q2^4"] = {q2.pow(4), Q(1, 4)};
    classes["q1^2*q2^2"] = {q1 * q1 * q2 * q2, Q(1, 2)};

    Poly transformed;
    if (identity_transform) {
        transformed = Q(1, 2) * (p1 * p1 + p2 * p2) + Q(1, 4) * q1.pow(4)
                    + Q(1, 4) * q2.pow(4) + Q(1, 2) * (q1 * q1 * q2 * q2);
    } else {
        // Kinetic part of (p1^2 + p2^2 + q1^2 q2^2)/2 under
        // p1 <- (sqrt2/2)(p1 + p2), p2 <- (sqrt2/2)(p1 - p2).
        Scalar h2 = Scalar::sqrt2() * Q(1, 2);
        Poly P1 = h2 * (p1 + p2), P2 = h2 * (p1 - p2);
        Poly kinetic = Q(1, 2) * (P1 * P1 + P2 * P2);
        // Quartic part: q_j enters only through its square, and
        // q1^2 <- (sqrt2/4)(q1 + i q2)^2, q2^2 <- (sqrt2/4)(q1 - i q2)^2.
        Scalar s4 = Scalar::sqrt2() * Q(1, 4);
        Poly Q1sq = s4 * ((q1 + Scalar::i() * q2) * (q1 + Scalar::i() * q2));
        Poly Q2sq = s4 * ((q1 - Scalar::i() * q2) * (q1 - Scalar::i() * q2));
        transformed = kinetic + Q(1, 2) * (Q1sq * Q2sq);
    }

    std::vector<ReductionRatio> out;
    for (const auto& [label, target] : classes) {
        const auto& [mono_poly, expected] = target;
        const Mono& mono = mono_poly.terms().begin()->first;
        Scalar found(0);
        auto it = transformed.terms().find(mono);
        if (it != transformed.terms().end()) found = it->second;
        out.push_back({label, found, expected, found / expected});
    }
    return out;
}

} // namespace ym
