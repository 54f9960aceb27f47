#pragma once

#include <cmath>
#include <cstddef>

#include "entrofit/distribution.hpp"
#include "entrofit/error.hpp"
#include "entrofit/numeric.hpp"

namespace entrofit {

// Quasi-logarithm ln_theta(x) = (1 - x^-theta)/theta, the natural log at
// theta = 0. The theta = 0 branch is exact, not a small-theta approximation.
inline double qlog(double x, double theta) {
    if (!(x > 0.0)) throw DomainError("qlog: argument must be positive");
    if (theta == 0.0) return std::log(x);
    return -std::expm1(-theta * std::log(x)) / theta;
}

// Group entropy contribution (1+w)ln(1+w) - w*ln(w), with the limit 0 at 0.
inline double h_be(double omega) {
    if (omega < 0.0) throw DomainError("h_be: negative argument");
    if (omega == 0.0) return 0.0;
    return (1.0 + omega) * std::log1p(omega) - omega * std::log(omega);
}

// Entropy produced by nu individuals per state; same functional form.
inline double s_be(double nu) {
    if (nu < 0.0) throw DomainError("s_be: negative argument");
    if (nu == 0.0) return 0.0;
    return (1.0 + nu) * std::log1p(nu) - nu * std::log(nu);
}

// Interaction-deformed entropy production; reduces exactly to s_be at
// theta = 0.
inline double s_theta(double nu, double theta) {
    if (nu < 0.0) throw DomainError("s_theta: negative argument");
    if (theta == 0.0) return s_be(nu);
    if (nu == 0.0) return 0.0;
    return (1.0 + nu) * qlog(1.0 + nu, theta) - nu * qlog(nu, theta);
}

// Classical-limit counterparts.
inline double h_mbg(double omega) {
    if (omega < 0.0) throw DomainError("h_mbg: negative argument");
    if (omega == 0.0) return 0.0;
    return omega * (1.0 - std::log(omega));
}

inline double s_mbg(double nu) {
    if (nu < 0.0) throw DomainError("s_mbg: negative argument");
    if (nu == 0.0) return 0.0;
    return nu * (1.0 - std::log(nu));
}

// Diversity entropy H = sum_k g_k nu_k h_be(omega_k).
inline double big_h_be(const BenefitDistribution& dist) {
    KahanSum s;
    for (std::size_t k = 0; k < dist.size(); ++k) {
        s.add(dist.population(k) * h_be(dist.omega[k]));
    }
    return s.value();
}

// Entropy production S = sum_k g_k s_be(nu_k).
inline double big_s_be(const BenefitDistribution& dist) {
    KahanSum s;
    for (std::size_t k = 0; k < dist.size(); ++k) {
        s.add(dist.g[k] * s_be(dist.nu[k]));
    }
    return s.value();
}

inline double big_h_mbg(const BenefitDistribution& dist) {
    KahanSum s;
    for (std::size_t k = 0; k < dist.size(); ++k) {
        s.add(dist.population(k) * h_mbg(dist.omega[k]));
    }
    return s.value();
}

inline double big_s_mbg(const BenefitDistribution& dist) {
    KahanSum s;
    for (std::size_t k = 0; k < dist.size(); ++k) {
        s.add(dist.g[k] * s_mbg(dist.nu[k]));
    }
    return s.value();
}

// Redundancy-style inequality: I = 1 - H/H_max, where H_max is the diversity
// entropy of the equal-allocation counterfactual (omega = 1 everywhere, same
// state weights). Welfare is w_bar * (1 - I).
struct InequalityReport {
    double h = 0.0;
    double h_max = 0.0;
    double index = 0.0;
    double redundancy = 0.0;  // same number, information-theory name
    double welfare = 0.0;     // in benefit units per individual
};

inline InequalityReport inequality_index(const BenefitDistribution& dist) {
    InequalityReport rep;
    rep.h = big_h_be(dist);
    rep.h_max = dist.n_total * h_be(1.0);
    rep.index = 1.0 - rep.h / rep.h_max;
    // Clamp the 1e-16 fuzz at perfect equality so the [0,1] contract holds.
    if (rep.index < 0.0 && rep.index > -1e-12) rep.index = 0.0;
    rep.redundancy = rep.index;
    rep.welfare = dist.w_bar * (1.0 - rep.index);
    return rep;
}

}  // namespace entrofit
