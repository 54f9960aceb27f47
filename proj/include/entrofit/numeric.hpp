#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "entrofit/error.hpp"

namespace entrofit {

// Kahan compensated accumulator. Keeps large sums order-stable to ~1e-16
// relative regardless of bin count.
class KahanSum {
public:
    void add(double x) noexcept {
        const double y = x - comp_;
        const double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }

    double value() const noexcept { return sum_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

struct OlsLine {
    double slope = 0.0;
    double intercept = 0.0;
    double pearson_r = 0.0;
    double r_squared = 0.0;
};

namespace detail {

inline double mean(std::span<const double> v) {
    KahanSum s;
    for (double x : v) s.add(x);
    return s.value() / static_cast<double>(v.size());
}

inline double weighted_mean(std::span<const double> v, std::span<const double> w) {
    KahanSum num, den;
    for (std::size_t i = 0; i < v.size(); ++i) {
        num.add(w[i] * v[i]);
        den.add(w[i]);
    }
    return num.value() / den.value();
}

}  // namespace detail

// Pearson correlation; 0 when either side has (numerically) no variance.
inline double pearson_r(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw InvalidInput("pearson_r: need two equal-length series of 2+ points");
    }
    const double mx = detail::mean(x);
    const double my = detail::mean(y);
    KahanSum sxy, sxx, syy;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy.add(dx * dy);
        sxx.add(dx * dx);
        syy.add(dy * dy);
    }
    const double denom = std::sqrt(sxx.value()) * std::sqrt(syy.value());
    if (!(denom > 0.0)) return 0.0;
    return sxy.value() / denom;
}

// Ordinary (optionally weighted) least squares of y on x.
inline OlsLine ols_fit(std::span<const double> x, std::span<const double> y,
                       std::span<const double> weights = {}) {
    if (x.size() != y.size() || x.size() < 2) {
        throw InvalidInput("ols_fit: need two equal-length series of 2+ points");
    }
    const bool weighted = !weights.empty();
    if (weighted && weights.size() != x.size()) {
        throw InvalidInput("ols_fit: weight length mismatch");
    }

    double mx, my;
    if (weighted) {
        mx = detail::weighted_mean(x, weights);
        my = detail::weighted_mean(y, weights);
    } else {
        mx = detail::mean(x);
        my = detail::mean(y);
    }

    KahanSum sxy, sxx, syy;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double w = weighted ? weights[i] : 1.0;
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy.add(w * dx * dy);
        sxx.add(w * dx * dx);
        syy.add(w * dy * dy);
    }

    if (!(sxx.value() > 0.0)) {
        throw SingularRegression("ols_fit: zero variance in the abscissa");
    }

    OlsLine line;
    line.slope = sxy.value() / sxx.value();
    line.intercept = my - line.slope * mx;
    const double denom = std::sqrt(sxx.value()) * std::sqrt(syy.value());
    line.pearson_r = denom > 0.0 ? sxy.value() / denom : 0.0;
    line.r_squared = line.pearson_r * line.pearson_r;
    return line;
}

}  // namespace entrofit
