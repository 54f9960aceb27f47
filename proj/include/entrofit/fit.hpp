#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "entrofit/distribution.hpp"
#include "entrofit/entropy.hpp"
#include "entrofit/error.hpp"
#include "entrofit/laws.hpp"
#include "entrofit/lorenz.hpp"
#include "entrofit/numeric.hpp"

namespace entrofit {

enum class SegmentCriterion { bic, fixed_k };

struct FitConfig {
    SmoothingConfig smoothing{};
    bool pin_peak_to_min = false;
    double theta_min = -0.9;
    double theta_max = 0.9;
    double theta_tolerance = 1e-4;
    int max_segments = 6;  // under fixed_k, the exact segment count
    SegmentCriterion segment_criterion = SegmentCriterion::bic;
    int min_segment_bins = 4;
    bool exclude_zero_occupation = true;
    bool weight_by_count = false;  // count-weighted regression variant

    void validate() const {
        smoothing.validate();
        if (!(theta_min > -0.99 && theta_max < 0.99 && theta_min < theta_max)) {
            throw InvalidInput("config: theta range must lie inside (-0.99, 0.99)");
        }
        if (!(theta_min <= 0.0 && theta_max >= 0.0)) {
            throw InvalidInput("config: theta range must contain 0");
        }
        if (!(theta_tolerance > 0.0)) throw InvalidInput("config: theta tolerance must be positive");
        if (max_segments < 1) throw InvalidInput("config: max_segments must be positive");
        if (min_segment_bins < 3) {
            throw InvalidInput("config: a segment line needs at least 3 bins");
        }
    }
};

struct ThetaEstimate {
    double theta = 0.0;
    double pearson_r = 0.0;
};

struct RegressionResult {
    double alpha = 0.0;
    double beta = 0.0;
    double pearson_r = 0.0;
    double r_squared = 0.0;
};

// A contiguous omega range sharing one line in the linearized stationarity
// plot: a social class or a life period.
struct Segment {
    std::size_t bin_first = 0;  // inclusive indices into the fitted distribution
    std::size_t bin_last = 0;
    double omega_min = 0.0;
    double omega_max = 0.0;
    double benefit_min = 0.0;  // omega range in benefit units
    double benefit_max = 0.0;
    FitParameters params{0.0, 0.0, 0.0, 0.0};
    double pearson_r = 0.0;
    int label = 0;  // 1-based, ordered by omega
};

struct Goodness {
    double pearson_r = 0.0;
    double rmse_nu = 0.0;
    double r_squared = 0.0;
};

struct FitReport {
    FitParameters global_params{0.0, 0.0, 0.0, 0.0};
    PeakInfo peak{};
    double poverty_fraction = 0.0;  // cumulative population up to the peak
    double gini = 0.0;
    SymmetryVerdict symmetry{};
    InequalityReport inequality{};
    std::vector<Segment> segments;
    Goodness goodness{};
    bool extreme_poverty_defined = true;  // false when the fitted alpha <= 0
};

inline double estimate_lambda(const PeakInfo& peak) {
    if (!(peak.omega_p > 0.0)) {
        throw InvalidInput("estimate_lambda: peak abscissa must be positive");
    }
    return lambda_from_omega_p(peak.omega_p);
}

namespace detail {

// Scatter for the linearized stationarity plot: x = phi_be(omega, lambda),
// plus the occupation thaty = d s_theta/d nu is evaluated on.
struct FitPoints {
    std::vector<std::size_t> bins;
    std::vector<double> x;
    std::vector<double> nu;
    std::vector<double> weight;  // population per bin, for the weighted variant
};

inline FitPoints gather_points(const BenefitDistribution& dist, double lambda,
                               bool exclude_zero = true) {
    FitPoints pts;
    for (std::size_t k = 0; k < dist.size(); ++k) {
        if (!(dist.nu[k] > 0.0)) {
            // Zero occupation has no stationarity ordinate. The default is to
            // drop such bins; strict mode turns them into an error instead.
            if (!exclude_zero) {
                throw InvalidInput("fit: zero-occupation bin " + std::to_string(k) +
                                   " cannot enter the regression");
            }
            continue;
        }
        pts.bins.push_back(k);
        pts.x.push_back(phi_be(dist.omega[k], lambda));
        pts.nu.push_back(dist.nu[k]);
        pts.weight.push_back(dist.population(k));
    }
    return pts;
}

inline std::vector<double> stationarity_ordinates(std::span<const double> nu, double theta) {
    std::vector<double> y(nu.size());
    for (std::size_t i = 0; i < nu.size(); ++i) y[i] = stationarity_lhs(nu[i], theta);
    return y;
}

inline double theta_objective(const FitPoints& pts, double theta) {
    const auto y = stationarity_ordinates(pts.nu, theta);
    return pearson_r(pts.x, y);
}

// Golden-section maximization of the Pearson objective on [a, b].
inline ThetaEstimate golden_section(const FitPoints& pts, double a, double b, double tol) {
    constexpr double kInvPhi = 0.6180339887498949;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = theta_objective(pts, c);
    double fd = theta_objective(pts, d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = theta_objective(pts, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = theta_objective(pts, d);
        }
    }
    const double theta = 0.5 * (a + b);
    return {theta, theta_objective(pts, theta)};
}

// The Pearson objective is smooth but not provably unimodal in theta, so the
// range is split into sub-intervals searched independently; the exact
// theta = 0 ordinate joins the candidate pool. Ties go to the smaller |theta|.
inline ThetaEstimate best_theta(const FitPoints& pts, const FitConfig& cfg) {
    if (pts.x.size() < 3) {
        throw InsufficientData("estimate_theta: need at least 3 bins with positive occupation");
    }
    constexpr int kSubIntervals = 8;
    ThetaEstimate best{0.0, theta_objective(pts, 0.0)};
    const double width = (cfg.theta_max - cfg.theta_min) / kSubIntervals;
    for (int i = 0; i < kSubIntervals; ++i) {
        const double a = cfg.theta_min + i * width;
        const double b = a + width;
        const ThetaEstimate cand = golden_section(pts, a, b, cfg.theta_tolerance);
        if (cand.pearson_r > best.pearson_r ||
            (cand.pearson_r == best.pearson_r && std::abs(cand.theta) < std::abs(best.theta))) {
            best = cand;
        }
    }
    return best;
}

inline RegressionResult regress_points(const FitPoints& pts, double theta, bool weighted) {
    if (pts.x.size() < 3) {
        throw InsufficientData("regress_alpha_beta: need at least 3 bins with positive occupation");
    }
    const auto y = stationarity_ordinates(pts.nu, theta);
    const OlsLine line =
        ols_fit(pts.x, y, weighted ? std::span<const double>(pts.weight) : std::span<const double>{});
    return {line.intercept, line.slope, line.pearson_r, line.r_squared};
}

inline FitPoints slice(const FitPoints& pts, std::size_t first, std::size_t last) {
    FitPoints out;
    out.bins.assign(pts.bins.begin() + first, pts.bins.begin() + last + 1);
    out.x.assign(pts.x.begin() + first, pts.x.begin() + last + 1);
    out.nu.assign(pts.nu.begin() + first, pts.nu.begin() + last + 1);
    out.weight.assign(pts.weight.begin() + first, pts.weight.begin() + last + 1);
    return out;
}

// Least-squares cost of one line over points [i, j], from prefix sums.
class SegmentCost {
public:
    SegmentCost(std::span<const double> x, std::span<const double> y)
        : sx_(x.size() + 1, 0.0),
          sy_(x.size() + 1, 0.0),
          sxx_(x.size() + 1, 0.0),
          sxy_(x.size() + 1, 0.0),
          syy_(x.size() + 1, 0.0) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            sx_[i + 1] = sx_[i] + x[i];
            sy_[i + 1] = sy_[i] + y[i];
            sxx_[i + 1] = sxx_[i] + x[i] * x[i];
            sxy_[i + 1] = sxy_[i] + x[i] * y[i];
            syy_[i + 1] = syy_[i] + y[i] * y[i];
        }
    }

    double operator()(std::size_t i, std::size_t j) const {
        const double n = static_cast<double>(j - i + 1);
        const double sx = sx_[j + 1] - sx_[i];
        const double sy = sy_[j + 1] - sy_[i];
        const double cxx = (sxx_[j + 1] - sxx_[i]) - sx * sx / n;
        const double cxy = (sxy_[j + 1] - sxy_[i]) - sx * sy / n;
        const double cyy = (syy_[j + 1] - syy_[i]) - sy * sy / n;
        const double sse = cxx > 1e-300 ? cyy - cxy * cxy / cxx : cyy;
        return std::max(sse, 0.0);
    }

private:
    std::vector<double> sx_, sy_, sxx_, sxy_, syy_;
};

struct Partition {
    std::vector<std::size_t> last_of_segment;  // inclusive end index per segment
    double sse = std::numeric_limits<double>::infinity();
};

// Optimal K-segment partition of the point sequence by dynamic programming
// over bin indices.
inline Partition best_partition(const SegmentCost& cost, std::size_t n, int k_segments,
                                std::size_t min_bins) {
    const double inf = std::numeric_limits<double>::infinity();
    const auto K = static_cast<std::size_t>(k_segments);
    // dp[k][j]: best cost of splitting points [0, j] into k+1 segments.
    std::vector<std::vector<double>> dp(K, std::vector<double>(n, inf));
    std::vector<std::vector<std::size_t>> cut(K, std::vector<std::size_t>(n, 0));
    for (std::size_t j = min_bins - 1; j < n; ++j) dp[0][j] = cost(0, j);
    for (std::size_t k = 1; k < K; ++k) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j + 1 < (k + 1) * min_bins) continue;
            for (std::size_t i = k * min_bins; j + 1 >= min_bins && i + min_bins - 1 <= j; ++i) {
                if (dp[k - 1][i - 1] == inf) continue;
                const double c = dp[k - 1][i - 1] + cost(i, j);
                if (c < dp[k][j]) {
                    dp[k][j] = c;
                    cut[k][j] = i;
                }
            }
        }
    }

    Partition part;
    part.sse = dp[K - 1][n - 1];
    if (part.sse == inf) return part;
    part.last_of_segment.resize(K);
    std::size_t j = n - 1;
    for (std::size_t k = K; k-- > 0;) {
        part.last_of_segment[k] = j;
        if (k > 0) j = cut[k][j] - 1;
    }
    return part;
}

}  // namespace detail

// Interaction parameter maximizing the Pearson correlation of the linearized
// stationarity plot.
inline ThetaEstimate estimate_theta(const BenefitDistribution& dist, double lambda,
                                    const FitConfig& cfg) {
    cfg.validate();
    return detail::best_theta(detail::gather_points(dist, lambda, cfg.exclude_zero_occupation),
                              cfg);
}

// Slope and intercept of the stationarity ordinate on the free energy:
// beta and alpha.
inline RegressionResult regress_alpha_beta(const BenefitDistribution& dist, double lambda,
                                           double theta, bool weight_by_count = false) {
    return detail::regress_points(detail::gather_points(dist, lambda), theta, weight_by_count);
}

// Fitted occupation on a grid. Points where the law diverges (or the
// deformed equation has no root) come back empty rather than throwing.
inline std::vector<std::optional<double>> predict(std::span<const double> omega_grid,
                                                  const FitParameters& params) {
    std::vector<std::optional<double>> out(omega_grid.size());
    for (std::size_t i = 0; i < omega_grid.size(); ++i) {
        try {
            out[i] = nu_theta(omega_grid[i], params);
        } catch (const DivergentOccupation&) {
            out[i] = std::nullopt;
        } catch (const NoSolution&) {
            out[i] = std::nullopt;
        }
    }
    return out;
}

// Fit quality in occupation space over bins with observed nu > 0.
inline Goodness goodness(const BenefitDistribution& dist,
                         const std::vector<std::optional<double>>& predicted) {
    if (predicted.size() != dist.size()) {
        throw InvalidInput("goodness: prediction length mismatch");
    }
    std::vector<double> obs, pred;
    for (std::size_t k = 0; k < dist.size(); ++k) {
        if (!(dist.nu[k] > 0.0) || !predicted[k].has_value()) continue;
        obs.push_back(dist.nu[k]);
        pred.push_back(*predicted[k]);
    }
    if (obs.size() < 2) {
        throw InsufficientData("goodness: need at least 2 comparable bins");
    }
    const double mean_obs = detail::mean(obs);
    KahanSum ss_res, ss_tot;
    for (std::size_t i = 0; i < obs.size(); ++i) {
        ss_res.add((pred[i] - obs[i]) * (pred[i] - obs[i]));
        ss_tot.add((obs[i] - mean_obs) * (obs[i] - mean_obs));
    }
    Goodness g;
    g.pearson_r = pearson_r(obs, pred);
    g.rmse_nu = std::sqrt(ss_res.value() / static_cast<double>(obs.size()));
    g.r_squared = ss_tot.value() > 0.0 ? 1.0 - ss_res.value() / ss_tot.value() : 0.0;
    return g;
}

// Piecewise-linear segmentation of the theta = 0 linearization, segment count
// chosen by BIC (or fixed), each segment then refitted with its own theta and
// regression. lambda stays global: the peak pins it once per distribution.
inline std::vector<Segment> segment(const BenefitDistribution& dist, double lambda,
                                    const FitConfig& cfg) {
    cfg.validate();
    const auto pts = detail::gather_points(dist, lambda, cfg.exclude_zero_occupation);
    const std::size_t n = pts.x.size();
    const auto min_bins = static_cast<std::size_t>(cfg.min_segment_bins);
    if (n < 2 * min_bins) {
        throw InsufficientData("segment: need at least " + std::to_string(2 * min_bins) +
                               " bins with positive occupation");
    }

    const auto y0 = detail::stationarity_ordinates(pts.nu, 0.0);
    const detail::SegmentCost cost(pts.x, y0);

    const int k_max = std::min<int>(cfg.max_segments, static_cast<int>(n / min_bins));
    int k_best = 1;
    detail::Partition chosen;
    if (cfg.segment_criterion == SegmentCriterion::fixed_k) {
        k_best = std::min(cfg.max_segments, k_max);
        chosen = detail::best_partition(cost, n, k_best, min_bins);
        if (!std::isfinite(chosen.sse)) {
            throw InsufficientData("segment: too few bins for the requested segment count");
        }
    } else {
        double bic_best = std::numeric_limits<double>::infinity();
        for (int k = 1; k <= k_max; ++k) {
            const auto part = detail::best_partition(cost, n, k, min_bins);
            if (!std::isfinite(part.sse)) continue;
            // 2 line parameters per segment plus one per interior breakpoint.
            const double p = 3.0 * k - 1.0;
            const double nn = static_cast<double>(n);
            const double bic = nn * std::log(std::max(part.sse, 1e-30) / nn) + p * std::log(nn);
            if (bic < bic_best) {
                bic_best = bic;
                k_best = k;
                chosen = part;
            }
        }
    }

    std::vector<Segment> segments;
    std::size_t first = 0;
    for (int s = 0; s < k_best; ++s) {
        const std::size_t last = chosen.last_of_segment[static_cast<std::size_t>(s)];
        const auto sub = detail::slice(pts, first, last);
        const ThetaEstimate th = detail::best_theta(sub, cfg);
        const RegressionResult reg = detail::regress_points(sub, th.theta, cfg.weight_by_count);

        Segment seg;
        seg.bin_first = pts.bins[first];
        seg.bin_last = pts.bins[last];
        seg.omega_min = dist.omega[seg.bin_first];
        seg.omega_max = dist.omega[seg.bin_last];
        seg.benefit_min = seg.omega_min * dist.w_bar;
        seg.benefit_max = seg.omega_max * dist.w_bar;
        seg.params = FitParameters(reg.alpha, reg.beta, lambda, th.theta);
        seg.pearson_r = reg.pearson_r;
        seg.label = s + 1;
        segments.push_back(seg);
        first = last + 1;
    }
    return segments;
}

namespace detail {

template <typename F>
auto stage(const char* name, F&& body) {
    try {
        return body();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(name, e.what());
    }
}

}  // namespace detail

// End-to-end estimation: smooth, locate the peak, pin lambda, search theta,
// regress alpha and beta, then segment and assemble the report.
inline FitReport fit(const BenefitDistribution& dist, const FitConfig& cfg) {
    cfg.validate();

    const BenefitDistribution smoothed =
        detail::stage("smooth", [&] { return smooth(dist, cfg.smoothing); });
    const PeakInfo peak =
        detail::stage("detect_peak", [&] { return detect_peak(smoothed, cfg.pin_peak_to_min); });
    const double lambda = detail::stage("estimate_lambda", [&] { return estimate_lambda(peak); });
    const ThetaEstimate theta =
        detail::stage("estimate_theta", [&] { return estimate_theta(smoothed, lambda, cfg); });
    const RegressionResult reg = detail::stage("regress_alpha_beta", [&] {
        return regress_alpha_beta(smoothed, lambda, theta.theta, cfg.weight_by_count);
    });

    FitReport report;
    report.global_params = FitParameters(reg.alpha, reg.beta, lambda, theta.theta);
    report.peak = peak;
    report.poverty_fraction = cpf(smoothed, peak.omega_p);
    report.extreme_poverty_defined = reg.alpha > 0.0;

    const LorenzCurve lorenz =
        detail::stage("lorenz", [&] { return lorenz_points(smoothed); });
    report.gini = lorenz.gini;
    report.symmetry = detail::stage("classify_symmetry", [&] { return classify_symmetry(lorenz.gini); });
    report.inequality = detail::stage("inequality", [&] { return inequality_index(smoothed); });

    report.goodness = detail::stage("goodness", [&] {
        return goodness(smoothed, predict(smoothed.omega, report.global_params));
    });
    report.segments = detail::stage("segment", [&] { return segment(smoothed, lambda, cfg); });
    return report;
}

}  // namespace entrofit
