#pragma once

#include <complex>
#include <vector>

namespace ym {

/// All complex roots of sum_k coeffs[k] x^k (ascending degree), via the
/// companion matrix plus one Newton polish step. Leading zeros (within
/// lead_tol relative to the largest coefficient) are stripped and reported
/// through `effective_degree`. `error_estimates`, when supplied, receives
/// |p(r)| / |p'(r)| per root; it blows up on multiple roots.
std::vector<std::complex<double>> polynomial_roots(std::vector<std::complex<double>> coeffs,
                                                   double lead_tol = 1e-13,
                                                   int* effective_degree = nullptr,
                                                   std::vector<double>* error_estimates = nullptr);

struct RootCluster {
    std::complex<double> center;
    int multiplicity = 1;
};

/// Greedy clustering by absolute distance tol.
std::vector<RootCluster> cluster_roots(const std::vector<std::complex<double>>& pts, double tol);

} // namespace ym
