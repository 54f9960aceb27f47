#pragma once

// Shared builders for synthetic distributions used by the unit and
// acceptance suites.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "entrofit/distribution.hpp"
#include "entrofit/laws.hpp"

namespace testutil {

// Uniform grid on [lo, hi] with the exact abscissa `insert` replacing the
// nearest interior point, so peak detection can land on it bit-exactly.
inline std::vector<double> grid_with_point(double lo, double hi, std::size_t n, double insert) {
    std::vector<double> g(n);
    const double h = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) g[i] = lo + h * static_cast<double>(i);
    auto it = std::min_element(g.begin(), g.end(), [&](double a, double b) {
        return std::abs(a - insert) < std::abs(b - insert);
    });
    *it = insert;
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

// Scale the state counts of the above-mean bins so the population-weighted
// mean of omega is exactly 1, then assemble a valid distribution.
inline entrofit::BenefitDistribution balanced_distribution(std::vector<double> omega,
                                                           std::vector<double> nu) {
    std::vector<double> g(omega.size(), 1.0);
    double above = 0.0, below = 0.0;
    for (std::size_t k = 0; k < omega.size(); ++k) {
        const double d = nu[k] * (omega[k] - 1.0);
        if (d > 0.0) {
            above += d;
        } else {
            below -= d;
        }
    }
    const double scale = below / above;
    for (std::size_t k = 0; k < omega.size(); ++k) {
        if (omega[k] > 1.0) g[k] = scale;
    }
    return entrofit::BenefitDistribution::create(std::move(omega), std::move(nu), std::move(g));
}

// Noiseless forward data from the occupation law on a grid containing the
// exact peak abscissa.
inline entrofit::BenefitDistribution forward_distribution(const entrofit::FitParameters& params,
                                                          std::size_t bins, double lo, double hi) {
    const double omega_p = entrofit::omega_p_from_lambda(params.lambda());
    auto omega = grid_with_point(lo, hi, bins, omega_p);
    std::vector<double> nu(omega.size());
    for (std::size_t k = 0; k < omega.size(); ++k) {
        nu[k] = entrofit::nu_theta(omega[k], params);
    }
    return balanced_distribution(std::move(omega), std::move(nu));
}

struct DrawnModel {
    entrofit::FitParameters params{1.0, 1.0, -1.0, 0.0};
    double grid_lo = 0.0;
    double grid_hi = 0.0;
};

// Random parameter set for which the forward law is defined on the whole
// grid: positive law argument everywhere and, for negative theta, argument
// below the stationarity supremum.
inline DrawnModel draw_valid_model(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> draw_alpha(0.1, 2.0);
    std::uniform_real_distribution<double> draw_beta(0.2, 3.0);
    std::uniform_real_distribution<double> draw_lambda(-3.0, -0.3);
    std::uniform_real_distribution<double> draw_theta(-0.5, 0.5);
    for (;;) {
        const double alpha = draw_alpha(rng);
        const double beta = draw_beta(rng);
        const double lambda = draw_lambda(rng);
        const double theta = draw_theta(rng);
        entrofit::FitParameters p(alpha, beta, lambda, theta);

        const double omega_p = entrofit::omega_p_from_lambda(lambda);
        const double lo = std::min(0.3, omega_p / 2.0);
        const double hi = std::max(2.5, 1.6 * omega_p);
        const double t_peak = beta * entrofit::phi_be(omega_p, lambda) + alpha;
        if (!(t_peak > 0.05)) continue;
        // phi is convex, so the law argument peaks at a grid end.
        const double t_max = beta * std::max(entrofit::phi_be(lo, lambda),
                                             entrofit::phi_be(hi, lambda)) +
                             alpha;
        if (theta < 0.0 && !(t_max < 0.98 * entrofit::stationarity_sup(theta))) continue;
        return {p, lo, hi};
    }
}

// Random valid distribution (unrelated to the law), for invariance checks.
inline entrofit::BenefitDistribution random_distribution(std::mt19937_64& rng,
                                                         std::size_t max_bins = 50) {
    std::uniform_int_distribution<std::size_t> draw_bins(3, max_bins);
    std::uniform_real_distribution<double> draw_step(0.01, 0.2);
    std::uniform_real_distribution<double> draw_nu(0.05, 5.0);
    const std::size_t n = draw_bins(rng);
    std::vector<double> omega(n), nu(n);
    double w = draw_step(rng) * 0.5;
    bool above = false, below = false;
    for (std::size_t k = 0; k < n; ++k) {
        omega[k] = w;
        w += draw_step(rng);
        nu[k] = draw_nu(rng);
        above = above || omega[k] > 1.0;
        below = below || omega[k] < 1.0;
    }
    if (!above) omega.back() = 1.5;
    if (!below) omega.front() = 0.5;
    std::sort(omega.begin(), omega.end());
    return balanced_distribution(std::move(omega), std::move(nu));
}

}  // namespace testutil
