#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace assoc {

// Gaussian copula C_rho(u,v) = Phi2(Phi^{-1}(u), Phi^{-1}(v); rho), with the
// boundary values taken exactly.
double exact_gaussian_copula(double u, double v, double rho);

// Copula values on the uniform grid u_i = i/M, i = 0..M.
struct CopulaGrid {
    std::size_t resolution = 0;             // M
    std::vector<double> values;             // (M+1)^2 row-major, C(u_i, v_j)

    double at(std::size_t i, std::size_t j) const { return values[i * (resolution + 1) + j]; }
    double point(std::size_t i) const { return static_cast<double>(i) / resolution; }

    static CopulaGrid gaussian(double rho, std::size_t resolution);
};

// Empirical copula of paired observations on a uniform grid:
// C_hat(u,v) = (1/N) #{i: rank_x(i)/N <= u, rank_y(i)/N <= v}, ranks 1..N,
// ties broken by original index. Requires N >= resolution.
CopulaGrid empirical_copula(std::span<const double> x, std::span<const double> y,
                            std::size_t resolution);

}  // namespace assoc
