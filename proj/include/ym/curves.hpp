#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "ym/poly.hpp"

namespace ym {

/// A plane curve given by a polynomial relation, quadratic in the fiber
/// variable, with named parameters and (where it applies) a branch tag
/// eps = +-i baked into the coefficients.
struct CurveRelation {
    Poly rel;
    VarId base = -1;
    VarId fiber = -1;
    Scalar eps;
    std::string id;
};

/// Discriminant of the relation in its fiber variable; throws if the
/// relation is not quadratic in it.
Poly fiber_discriminant(const CurveRelation& c);

/// P6(s) = s(-8 s^5 - 4 a s^3 + 2 b1 s + b2) with symbolic a, b1, b2.
Poly hyperelliptic_p6();
/// Same with numeric parameters, as coefficients of degrees 0..6.
std::vector<std::complex<double>> hyperelliptic_p6_coeffs(std::complex<double> a,
                                                          std::complex<double> b1,
                                                          std::complex<double> b2);

/// The separation curve zeta^2 = P6(s).
CurveRelation separation_curve();

/// Quotient of the 4d parameter curve by (u,v) -> (-u,-v): multiply by u^2
/// and substitute z = u^2, w = u v. Throws if an odd power of u survives.
CurveRelation quotient_to_gamma(const CurveRelation& c);

/// (alpha, beta) -> (-alpha, -beta) on the 5d parameter curve; the result
/// carries the opposite branch tag.
CurveRelation curve_involution_swap(const CurveRelation& c);

/// Parameter flip combined with the coefficient automorphism i -> -i;
/// maps the 4d parameter curve for eps onto the one for -eps.
CurveRelation curve_flip_conjugate(const CurveRelation& c);

struct BranchReport {
    int sheets = 2;
    std::vector<std::complex<double>> branch_points; // finite ones
    bool infinity_branched = false;
    int total_branch_points = 0;
    int genus = -1;
    bool degenerate = false;
    std::string note;
};

/// Count branch points of the 2-sheeted cover at numeric parameter values
/// and fill the genus via Riemann-Hurwitz. Root clusters that merge at the
/// given tolerance mark the report degenerate instead of producing a genus.
BranchReport count_branch_points(const CurveRelation& c,
                                 const std::map<VarId, std::complex<double>>& params,
                                 double tol);

/// g = -n + 1 + v/2; throws on odd v or n < 1.
int genus_riemann_hurwitz(int n, int v);

} // namespace ym
