#pragma once

#include <array>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "ym/poly.hpp"
#include "ym/report.hpp"

namespace ym {

using CVec = std::vector<std::complex<double>>;

/// One of the two model systems, with its polynomial vector field,
/// invariants, weight data and balance bookkeeping.
struct SystemDef {
    std::string name;                // "4d" or "5d"
    std::vector<VarId> state;        // phase-space variables
    VarId param_a;                   // coupling parameter
    std::vector<Poly> field;         // d(state_k)/dt
    std::vector<std::pair<std::string, Poly>> invariants;
    std::map<VarId, int> weights;    // scaling weights incl. parameter a

    // Puiseux-balance data (tau^2 = t): leading exponents m_k with
    // state_k ~ c_k tau^(-m_k), and the declared free-parameter slots.
    struct Slot {
        int component;
        int tau_order;
        std::string param;
    };
    std::vector<int> lead_tau;
    std::vector<Slot> slots;
    std::vector<std::string> value_names; // invariant value symbols (b1,b2 / c1..c3)

    // Parameter-curve extraction: the free parameters eliminated linearly
    // from the invariant-value equations, the surviving pair, and the
    // reference normalization of the fiber-squared coefficient.
    struct CurveSpec {
        std::string base, fiber;
        std::vector<std::string> eliminate;
        Scalar fiber_norm;
        std::string id;
    };
    CurveSpec curve;

    int dim() const { return static_cast<int>(state.size()); }
};

const SystemDef& sys4();
const SystemDef& sys5();
const SystemDef& system_by_name(const std::string& name);

/// 5x5 Poisson tensor of the 5d system, entries polynomial in z1..z5.
const std::array<std::array<Poly, 5>, 5>& poisson_matrix();

/// {F, G} = <dF/dz, J dG/dz>.
Poly poisson_bracket(const Poly& F, const Poly& G);

/// J * grad(F), componentwise.
std::vector<Poly> hamiltonian_vector_field(const Poly& F);

/// The second commuting flow in closed form (exact fixture).
const std::vector<Poly>& second_flow_fixture();

/// Components of the quadratic morphism (q1,q2,p1,p2) -> (z1..z5).
const std::vector<Poly>& phi_components();
/// Substitution map z_k -> phi_k(q,p) for composing 5d objects with phi.
const std::map<VarId, Poly>& phi_substitution();

CVec pushforward_phi(const CVec& state4);
std::vector<Scalar> pushforward_phi(const std::vector<Scalar>& state4);

/// The flip (z1,z2,z3,z4,z5) -> (z1,z2,-z3,-z4,z5).
CVec apply_sigma(const CVec& state5);
const std::map<VarId, Poly>& sigma_substitution();
/// Sign of sigma on component k (+1 or -1).
int sigma_sign(int k);

/// [X, Y]_k = sum_i (dY_k/dz_i X_i - dX_k/dz_i Y_i) over the given variables.
std::vector<Poly> lie_bracket_fields(const std::vector<Poly>& X, const std::vector<Poly>& Y,
                                     const std::vector<VarId>& vars);

/// Componentwise evaluation of the field; validates dimension.
CVec vector_field(const SystemDef& sys, const CVec& state, std::complex<double> a);
std::vector<Scalar> vector_field(const SystemDef& sys, const std::vector<Scalar>& state, const Scalar& a);

CVec invariants_at(const SystemDef& sys, const CVec& state, std::complex<double> a);
std::vector<Scalar> invariants_at(const SystemDef& sys, const std::vector<Scalar>& state, const Scalar& a);

// -- exact identity checks ---------------------------------------------------

/// Skew-symmetry of J plus all ten Jacobi cyclic sums.
std::vector<Check> verify_jacobi();

/// f_k(lambda^nu z) = lambda^(nu_k + 1) f_k(z) for the system's weights,
/// plus the weights of its invariants.
std::vector<Check> verify_weight_homogeneity(const SystemDef& sys,
                                             const std::map<VarId, int>& weights);

/// Dphi . X_4d == X_5d o phi, all five components.
std::vector<Check> verify_phi_intertwines();

/// Coefficient ratios of the quartic-oscillator Hamiltonian under the
/// canonical su(2) reduction transform, per monomial class. Ratios are
/// reported, not asserted equal to one.
struct ReductionRatio {
    std::string monomial;
    Scalar found;
    Scalar expected;
    Scalar ratio; // found / expected
};
std::vector<ReductionRatio> su2_reduction_ratios(bool identity_transform = false);

} // namespace ym
