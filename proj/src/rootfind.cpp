#include "ym/rootfind.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <stdexcept>

namespace ym {

std::vector<std::complex<double>> polynomial_roots(std::vector<std::complex<double>> c,
                                                   double lead_tol, int* effective_degree,
                                                   std::vector<double>* error_estimates) {
    double scale = 0.0;
    for (auto& z : c) scale = std::max(scale, std::abs(z));
    if (scale == 0.0) throw std::invalid_argument("polynomial_roots: zero polynomial");
    while (c.size() > 1 && std::abs(c.back()) <= lead_tol * scale) c.pop_back();
    const int n = static_cast<int>(c.size()) - 1;
    if (effective_degree) *effective_degree = n;
    if (n <= 0) return {};

    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) m(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) m(i, n - 1) = -c[static_cast<size_t>(i)] / c.back();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);

    auto value_and_slope = [&](std::complex<double> x) {
        std::complex<double> p = 0.0, dp = 0.0;
        for (int k = n; k >= 0; --k) {
            dp = dp * x + p;
            p = p * x + c[static_cast<size_t>(k)];
        }
        return std::make_pair(p, dp);
    };

    std::vector<std::pair<std::complex<double>, double>> polished;
    polished.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        std::complex<double> r = es.eigenvalues()(i);
        auto [p, dp] = value_and_slope(r);
        if (std::abs(dp) > 0.0) {
            std::complex<double> r2 = r - p / dp;
            auto [p2, dp2] = value_and_slope(r2);
            if (std::abs(p2) < std::abs(p)) {
                r = r2;
                p = p2;
                dp = dp2;
            }
        }
        const double est = std::abs(p) / std::max(std::abs(dp), 1e-300);
        polished.emplace_back(r, est);
    }
    std::sort(polished.begin(), polished.end(), [](auto a, auto b) {
        if (a.first.real() != b.first.real()) return a.first.real() < b.first.real();
        return a.first.imag() < b.first.imag();
    });
    std::vector<std::complex<double>> roots;
    if (error_estimates) error_estimates->clear();
    for (auto& [r, est] : polished) {
        roots.push_back(r);
        if (error_estimates) error_estimates->push_back(est);
    }
    return roots;
}

std::vector<RootCluster> cluster_roots(const std::vector<std::complex<double>>& pts, double tol) {
    std::vector<RootCluster> clusters;
    std::vector<bool> used(pts.size(), false);
    for (size_t i = 0; i < pts.size(); ++i) {
        if (used[i]) continue;
        RootCluster c{pts[i], 1};
        used[i] = true;
        for (size_t j = i + 1; j < pts.size(); ++j) {
            if (!used[j] && std::abs(pts[j] - c.center) <= tol) {
                c.center = (c.center * double(c.multiplicity) + pts[j]) / double(c.multiplicity + 1);
                ++c.multiplicity;
                used[j] = true;
            }
        }
        clusters.push_back(c);
    }
    return clusters;
}

} // namespace ym
