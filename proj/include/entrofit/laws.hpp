#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>

#include "entrofit/distribution.hpp"
#include "entrofit/entropy.hpp"
#include "entrofit/error.hpp"

namespace entrofit {

// Model parameters. mu and temperature are derived on construction and
// cannot drift out of sync with alpha and beta.
class FitParameters {
public:
    FitParameters(double alpha, double beta, double lambda, double theta)
        : alpha_(alpha),
          beta_(beta),
          lambda_(lambda),
          theta_(theta),
          mu_(-alpha / beta),
          temperature_(1.0 / beta) {}

    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }
    double lambda() const noexcept { return lambda_; }
    double theta() const noexcept { return theta_; }
    double mu() const noexcept { return mu_; }
    double temperature() const noexcept { return temperature_; }

    // alpha > 0 and lambda < 0 hold on realistic fits; the regression may
    // still return values outside that region, which the report flags.
    bool physical() const noexcept { return alpha_ > 0.0 && lambda_ < 0.0; }

private:
    double alpha_, beta_, lambda_, theta_, mu_, temperature_;
};

enum class InteractionVerdict { short_range, long_range };

struct InteractionRange {
    double theta = 0.0;
    std::optional<int> dimensionality;
    InteractionVerdict verdict = InteractionVerdict::long_range;
    std::optional<double> interactions_per_individual;  // ~1/(theta*d), short range only
};

// Social free energy per individual, phi(omega) = omega + lambda*h_be(omega).
// phi(0, lambda) = 0 for any finite lambda.
inline double phi_be(double omega, double lambda) {
    return omega + lambda * h_be(omega);
}

// Classical-limit free energy, omega*(1 + lambda*ln(omega)).
inline double phi_mbg(double omega, double lambda) {
    if (!(omega > 0.0)) throw DomainError("phi_mbg: omega must be positive");
    return omega * (1.0 + lambda * std::log(omega));
}

// Peak abscissa <-> lambda bijection. phi_be is stationary exactly at
// omega_p, so the peak of the data fixes lambda.
inline double omega_p_from_lambda(double lambda) {
    if (!(lambda < 0.0)) throw DomainError("omega_p_from_lambda: lambda must be negative");
    return 1.0 / std::expm1(-1.0 / lambda);
}

inline double lambda_from_omega_p(double omega_p) {
    if (!(omega_p > 0.0)) throw DomainError("lambda_from_omega_p: omega_p must be positive");
    return -1.0 / std::log1p(1.0 / omega_p);
}

// Classical-limit peak, exp(1/lambda). Stated for the classical law as a
// constant-formula helper; no stationarity identity is asserted for it
// because the literal phi_mbg above is stationary at exp(-1 - 1/lambda).
inline double omega_p_mbg(double lambda) {
    if (!(lambda < 0.0)) throw DomainError("omega_p_mbg: lambda must be negative");
    return std::exp(1.0 / lambda);
}

namespace detail {

inline double law_argument(double omega, const FitParameters& p) {
    return p.beta() * phi_be(omega, p.lambda()) + p.alpha();
}

}  // namespace detail

// Occupation law without exclusion: nu = 1/(exp(beta*phi + alpha) - 1).
// Diverges as the argument approaches zero from above.
inline double nu_be(double omega, const FitParameters& p) {
    const double t = detail::law_argument(omega, p);
    if (!(t > 0.0)) {
        throw DivergentOccupation("nu_be: beta*phi + alpha <= 0");
    }
    return 1.0 / std::expm1(t);
}

// Occupation law with exclusion: nu = 1/(exp(beta*phi + alpha) + 1) < 1.
inline double nu_fd(double omega, const FitParameters& p) {
    const double t = detail::law_argument(omega, p);
    return 1.0 / (std::exp(t) + 1.0);
}

// Classical-limit law, exp(-(beta*phi_mbg + alpha)).
inline double nu_mbg(double omega, const FitParameters& p) {
    return std::exp(-(p.beta() * phi_mbg(omega, p.lambda()) + p.alpha()));
}

// d s_theta / d nu: ln(1 + 1/nu) at theta = 0, otherwise
// ((1-theta)/theta) * (nu^-theta - (1+nu)^-theta). Strictly decreasing in nu
// for theta in (-1,1), which makes the inversion below single-rooted.
inline double stationarity_lhs(double nu, double theta) {
    if (!(nu > 0.0)) throw DomainError("stationarity_lhs: nu must be positive");
    if (theta == 0.0) return std::log1p(1.0 / nu);
    // nu^-t - (1+nu)^-t written via expm1 to survive theta -> 0.
    const double diff = -std::exp(-theta * std::log(nu)) *
                        std::expm1(-theta * std::log1p(1.0 / nu));
    return (1.0 - theta) / theta * diff;
}

// Supremum of stationarity_lhs as nu -> 0+. Finite only for negative theta.
inline double stationarity_sup(double theta) {
    if (theta < 0.0) return (1.0 - theta) / (-theta);
    return std::numeric_limits<double>::infinity();
}

// Invert stationarity_lhs(nu, theta) = t for nu. Bracketing bisection from
// the theta = 0 closed form; the strict monotonicity of the curve makes this
// total on 0 < t < sup.
inline double invert_stationarity(double t, double theta) {
    if (!(t > 0.0)) throw DivergentOccupation("invert_stationarity: target must be positive");
    if (!(theta > -1.0 && theta < 1.0)) {
        throw DomainError("invert_stationarity: theta outside (-1, 1)");
    }
    if (theta == 0.0) return 1.0 / std::expm1(t);
    if (t >= stationarity_sup(theta)) {
        throw NoSolution("invert_stationarity: target at or above the curve supremum");
    }

    double lo = 1.0 / std::expm1(t);  // theta = 0 guess
    double hi = lo;
    int guard = 0;
    while (stationarity_lhs(lo, theta) < t) {
        lo *= 0.5;
        if (++guard > 4000 || lo == 0.0) {
            throw NoSolution("invert_stationarity: failed to bracket from below");
        }
    }
    guard = 0;
    while (stationarity_lhs(hi, theta) > t) {
        hi *= 2.0;
        if (++guard > 4000 || !std::isfinite(hi)) {
            throw NoSolution("invert_stationarity: failed to bracket from above");
        }
    }

    // stationarity_lhs decreases in nu: f(lo) >= t >= f(hi).
    for (int i = 0; i < 400; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double f = stationarity_lhs(mid, theta);
        const double resid = f - t;
        if (std::abs(resid) < 1e-12) return mid;
        if (resid > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Interaction-sensitive occupation law: solve the deformed stationarity
// condition at t = beta*phi + alpha. Closed form at theta = 0.
inline double nu_theta(double omega, const FitParameters& p) {
    const double t = detail::law_argument(omega, p);
    if (!(t > 0.0)) {
        throw DivergentOccupation("nu_theta: beta*phi + alpha <= 0");
    }
    return invert_stationarity(t, p.theta());
}

// Model population with omega ~ 0, equal to nu at zero free energy.
inline double extreme_poverty_fraction(double alpha) {
    if (!(alpha > 0.0)) throw DomainError("extreme_poverty_fraction: alpha must be positive");
    return 1.0 / std::expm1(alpha);
}

// Population-weighted mean of phi_be; should agree with the regressed 1/beta.
inline double temperature_check(const BenefitDistribution& dist, double lambda) {
    KahanSum s;
    for (std::size_t k = 0; k < dist.size(); ++k) {
        s.add(dist.population(k) * phi_be(dist.omega[k], lambda));
    }
    return s.value() / dist.n_total;
}

// theta > 0: finitely many interactions per individual (short range);
// theta <= 0: every individual couples to infinitely many others.
inline InteractionRange classify_interaction(double theta, std::optional<int> d = std::nullopt) {
    if (!(theta > -1.0)) throw InvalidInput("classify_interaction: theta must exceed -1");
    InteractionRange r;
    r.theta = theta;
    r.dimensionality = d;
    if (theta > 0.0) {
        r.verdict = InteractionVerdict::short_range;
        if (d) r.interactions_per_individual = 1.0 / (theta * static_cast<double>(*d));
    } else {
        r.verdict = InteractionVerdict::long_range;
    }
    return r;
}

}  // namespace entrofit
