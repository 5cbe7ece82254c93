#pragma once

// Test-only reference routines. None of these call into the library code
// paths they are used to check.

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "stockfc/rng.hpp"

namespace stockfc::testing {

/// Simulates y_t = c + sum phi_i y_{t-i} + eps_t + sum theta_j eps_{t-j},
/// eps ~ N(0, sigma^2), discarding a burn-in so the start-up transient is gone.
inline std::vector<double> simulate_arma(std::size_t n, std::span<const double> phi,
                                         std::span<const double> theta, double c, double sigma,
                                         std::uint64_t seed, std::size_t burn_in = 500)
{
    RngStream rng(seed);
    const std::size_t total = n + burn_in;
    std::vector<double> y(total, 0.0), eps(total, 0.0);
    for (std::size_t t = 0; t < total; ++t) {
        eps[t] = sigma * rng.normal();
        double v = c + eps[t];
        for (std::size_t i = 1; i <= phi.size() && i <= t; ++i)
            v += phi[i - 1] * y[t - i];
        for (std::size_t j = 1; j <= theta.size() && j <= t; ++j)
            v += theta[j - 1] * eps[t - j];
        y[t] = v;
    }
    return {y.begin() + static_cast<std::ptrdiff_t>(burn_in), y.end()};
}

/// 2-8-2 forward pass written straight from the gene layout, one scalar at a time.
inline std::vector<double> reference_forward_282(const std::vector<double>& g, double x0, double x1)
{
    auto logistic = [](double z) { return 1.0 / (1.0 + std::exp(-z)); };
    double h[8];
    for (int j = 0; j < 8; ++j)
        h[j] = logistic(g[2 * j] * x0 + g[2 * j + 1] * x1 + g[32]);
    std::vector<double> y(2);
    for (int k = 0; k < 2; ++k) {
        double z = g[33];
        for (int j = 0; j < 8; ++j)
            z += g[16 + 8 * k + j] * h[j];
        y[k] = logistic(z);
    }
    return y;
}

inline double sphere(std::span<const double> x)
{
    double s = 0.0;
    for (double v : x)
        s += v * v;
    return s;
}

} // namespace stockfc::testing
