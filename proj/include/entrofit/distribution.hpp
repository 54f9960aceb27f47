#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "entrofit/error.hpp"
#include "entrofit/numeric.hpp"

namespace entrofit {

// Binned empirical data: benefit value per bin, individuals per bin, and
// optionally the number of states per bin. When the states column is absent
// each bin contributes G_k = count_k states, so nu_k = 1.
struct BinnedSeries {
    std::vector<double> benefits;
    std::vector<double> counts;
    std::vector<double> states;  // empty means "defaulted to counts"
    std::string period;          // reporting period label, e.g. "1 year"

    std::size_t size() const noexcept { return benefits.size(); }

    void validate() const {
        if (benefits.size() != counts.size()) {
            throw InvalidInput("series: benefit/count length mismatch");
        }
        if (!states.empty() && states.size() != benefits.size()) {
            throw InvalidInput("series: states length mismatch");
        }
        if (benefits.size() < 2) {
            throw InvalidInput("series: need at least 2 bins");
        }
        std::size_t positive = 0;
        double total = 0.0;
        for (std::size_t i = 0; i < benefits.size(); ++i) {
            if (benefits[i] < 0.0) {
                throw InvalidInput("series: negative benefit at bin " + std::to_string(i));
            }
            if (i > 0 && !(benefits[i] > benefits[i - 1])) {
                throw InvalidInput("series: benefits not strictly increasing at bin " +
                                   std::to_string(i));
            }
            if (counts[i] < 0.0) {
                throw InvalidInput("series: negative count at bin " + std::to_string(i));
            }
            if (!states.empty() && !(states[i] >= 1.0)) {
                throw InvalidInput("series: states must be >= 1 at bin " + std::to_string(i));
            }
            if (counts[i] > 0.0) ++positive;
            total += counts[i];
        }
        if (positive < 2) {
            throw InvalidInput("series: need at least 2 bins with positive count");
        }
        if (!(total > 0.0)) {
            throw InvalidInput("series: total count is zero");
        }
    }
};

// Normalized distribution over binned states. omega is benefit over the
// population mean, nu the per-state occupation, g the state count per bin.
// Weighted means: sum(g*nu) = N and sum(g*nu*omega) = N (mean omega is 1).
struct BenefitDistribution {
    std::vector<double> omega;
    std::vector<double> nu;
    std::vector<double> g;
    double n_total = 0.0;
    double w_total = 0.0;
    double w_bar = 0.0;

    std::size_t size() const noexcept { return omega.size(); }

    double population(std::size_t k) const noexcept { return g[k] * nu[k]; }

    static BenefitDistribution create(std::vector<double> omega, std::vector<double> nu,
                                      std::vector<double> g, double w_bar = 1.0) {
        if (omega.empty() || omega.size() != nu.size() || omega.size() != g.size()) {
            throw InvalidInput("distribution: omega/nu/g length mismatch");
        }
        if (!(w_bar > 0.0)) {
            throw InvalidInput("distribution: mean benefit must be positive");
        }
        KahanSum pop, ben;
        for (std::size_t k = 0; k < omega.size(); ++k) {
            if (omega[k] < 0.0) throw InvalidInput("distribution: negative omega");
            if (k > 0 && !(omega[k] > omega[k - 1])) {
                throw InvalidInput("distribution: omega not strictly increasing");
            }
            if (nu[k] < 0.0) throw InvalidInput("distribution: negative occupation");
            if (!(g[k] > 0.0)) throw InvalidInput("distribution: state count must be positive");
            pop.add(g[k] * nu[k]);
            ben.add(g[k] * nu[k] * omega[k]);
        }
        const double n = pop.value();
        if (!(n > 0.0)) throw InvalidInput("distribution: empty population");
        if (std::abs(ben.value() - n) > 1e-9 * n) {
            throw InvalidInput("distribution: weighted mean of omega is not 1");
        }
        BenefitDistribution d;
        d.omega = std::move(omega);
        d.nu = std::move(nu);
        d.g = std::move(g);
        d.n_total = n;
        d.w_bar = w_bar;
        d.w_total = w_bar * n;
        return d;
    }
};

struct SmoothingConfig {
    int window = 5;  // odd, in bins
    int passes = 1;

    void validate() const {
        if (window < 1 || window % 2 == 0) {
            throw InvalidInput("smoothing: window must be a positive odd integer");
        }
        if (passes < 1) throw InvalidInput("smoothing: passes must be positive");
    }
};

enum class PeakMode { detected, pinned_to_minimum };

struct PeakInfo {
    double omega_p = 0.0;
    std::size_t index = 0;
    PeakMode mode = PeakMode::detected;
};

// Normalize binned data: w_bar = W/N, omega = benefit/w_bar, nu = count/states.
inline BenefitDistribution normalize(const BinnedSeries& series) {
    series.validate();
    KahanSum n_sum, w_sum;
    for (std::size_t i = 0; i < series.size(); ++i) {
        n_sum.add(series.counts[i]);
        w_sum.add(series.counts[i] * series.benefits[i]);
    }
    const double n = n_sum.value();
    const double w = w_sum.value();
    const double w_bar = w / n;
    if (!(w_bar > 0.0)) {
        throw InvalidInput("normalize: mean benefit is zero");
    }

    BenefitDistribution d;
    d.omega.resize(series.size());
    d.nu.resize(series.size());
    d.g.resize(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        d.omega[i] = series.benefits[i] / w_bar;
        d.g[i] = series.states.empty() ? series.counts[i] : series.states[i];
        // A zero-count bin without a states column carries no states either;
        // keep it with one empty state so the bin survives downstream.
        if (!(d.g[i] > 0.0)) d.g[i] = 1.0;
        d.nu[i] = series.counts[i] / d.g[i];
    }
    d.n_total = n;
    d.w_total = w;
    d.w_bar = w_bar;
    return d;
}

// Centered moving average of nu with the window truncated at the edges,
// rescaled after each pass so the population sum(g*nu) is preserved.
inline BenefitDistribution smooth(const BenefitDistribution& dist, const SmoothingConfig& cfg) {
    cfg.validate();
    const std::size_t n = dist.size();
    if (static_cast<std::size_t>(cfg.window) > n) {
        throw InvalidInput("smoothing: window larger than bin count");
    }
    if (cfg.window == 1) return dist;

    BenefitDistribution out = dist;
    const std::size_t half = static_cast<std::size_t>(cfg.window / 2);
    std::vector<double> next(n);
    for (int pass = 0; pass < cfg.passes; ++pass) {
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t lo = i >= half ? i - half : 0;
            const std::size_t hi = std::min(n - 1, i + half);
            KahanSum s;
            for (std::size_t j = lo; j <= hi; ++j) s.add(out.nu[j]);
            next[i] = s.value() / static_cast<double>(hi - lo + 1);
        }
        KahanSum mass;
        for (std::size_t i = 0; i < n; ++i) mass.add(out.g[i] * next[i]);
        const double scale = dist.n_total / mass.value();
        for (std::size_t i = 0; i < n; ++i) out.nu[i] = next[i] * scale;
    }
    return out;
}

// Peak bin of the occupation curve; ties go to the smaller omega. With
// pin_to_min the first bin is reported regardless of nu (used when the
// data truncates below the actual peak).
inline PeakInfo detect_peak(const BenefitDistribution& dist, bool pin_to_min = false) {
    if (dist.size() == 0) throw InvalidInput("detect_peak: empty distribution");
    PeakInfo peak;
    if (pin_to_min) {
        peak.index = 0;
        peak.omega_p = dist.omega.front();
        peak.mode = PeakMode::pinned_to_minimum;
        return peak;
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < dist.size(); ++i) {
        if (dist.nu[i] > dist.nu[best]) best = i;
    }
    peak.index = best;
    peak.omega_p = dist.omega[best];
    peak.mode = PeakMode::detected;
    return peak;
}

// Cumulative population fraction Pr(omega_k <= omega).
inline double cpf(const BenefitDistribution& dist, double omega) {
    KahanSum below;
    for (std::size_t k = 0; k < dist.size(); ++k) {
        if (dist.omega[k] <= omega) below.add(dist.population(k));
    }
    return below.value() / dist.n_total;
}

}  // namespace entrofit
