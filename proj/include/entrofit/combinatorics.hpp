#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "entrofit/error.hpp"

namespace entrofit {

enum class Statistics { mbg, fd, be };

struct ConfigurationCount {
    Statistics statistics = Statistics::mbg;
    std::uint64_t entities = 0;
    std::uint64_t states = 0;
    std::uint64_t value = 0;
};

namespace detail {

// Desk-scale cap for the closed-form counts; keeps every binomial well
// inside 64 bits.
inline constexpr std::uint64_t kCountCap = 60;

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) {
        throw TooLarge("count exceeds 64-bit range");
    }
    return out;
}

// C(n, k) by the multiplicative formula, exact at every step.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        // result * (n - k + i) is divisible by i at this point.
        const std::uint64_t num = checked_mul(result, n - k + i);
        result = num / i;
    }
    return result;
}

inline std::uint64_t power(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t result = 1;
    for (std::uint64_t i = 0; i < exp; ++i) result = checked_mul(result, base);
    return result;
}

inline void check_cap(std::uint64_t n, std::uint64_t g) {
    if (n + g > kCountCap) {
        throw TooLarge("count request beyond desk scale (entities + states > " +
                       std::to_string(kCountCap) + ")");
    }
}

}  // namespace detail

// Distinguishable entities on k states: k^n labeled assignments.
inline std::uint64_t count_mbg(std::uint64_t n, std::uint64_t k) {
    if (k == 0 && n > 0) throw InvalidInput("count_mbg: no states to populate");
    detail::check_cap(n, k);
    if (n == 0) return 1;
    return detail::power(k, n);
}

// Exclusion statistics: at most one entity per state, C(g, n).
inline std::uint64_t count_fd(std::uint64_t n, std::uint64_t g) {
    if (n > g) {
        throw ExclusionViolation("count_fd: more entities than states");
    }
    detail::check_cap(n, g);
    return detail::binomial(g, n);
}

// Indistinguishable individuals on g states: C(n + g - 1, n).
inline std::uint64_t count_be_individuals(std::uint64_t n, std::uint64_t g) {
    if (g == 0) throw InvalidInput("count_be_individuals: need at least one state");
    detail::check_cap(n, g);
    return detail::binomial(n + g - 1, n);
}

// Same count with benefit quanta in the entity role.
inline std::uint64_t count_be_resources(std::uint64_t w, std::uint64_t c) {
    if (c == 0) throw InvalidInput("count_be_resources: need at least one state");
    detail::check_cap(w, c);
    return detail::binomial(w + c - 1, w);
}

// Brute-force verifier. Walks all g^n labeled assignments; for the
// indistinguishable kinds an assignment is canonicalized by sorting its
// state labels, so exchange-equivalent configurations collapse to one.
inline std::uint64_t enumerate_configs(std::uint64_t n, std::uint64_t g, Statistics kind) {
    if (n > 8 || g > 8) {
        throw TooLarge("enumerate_configs: capped at 8 entities and 8 states");
    }
    if (g == 0) {
        if (n == 0) return 1;
        throw InvalidInput("enumerate_configs: no states to populate");
    }
    if (n == 0) return 1;

    std::vector<std::uint64_t> assignment(n, 0);
    std::set<std::vector<std::uint64_t>> canonical;
    std::uint64_t labeled = 0;
    bool done = false;
    while (!done) {
        if (kind == Statistics::mbg) {
            ++labeled;
        } else {
            bool exclusion_ok = true;
            if (kind == Statistics::fd) {
                std::vector<std::uint64_t> occupancy(g, 0);
                for (auto s : assignment) {
                    if (++occupancy[s] > 1) {
                        exclusion_ok = false;
                        break;
                    }
                }
            }
            if (exclusion_ok) {
                std::vector<std::uint64_t> key = assignment;
                std::sort(key.begin(), key.end());
                canonical.insert(std::move(key));
            }
        }
        // Odometer over state labels.
        std::size_t pos = 0;
        while (pos < n) {
            if (++assignment[pos] < g) break;
            assignment[pos] = 0;
            ++pos;
        }
        done = pos == n;
    }
    return kind == Statistics::mbg ? labeled : static_cast<std::uint64_t>(canonical.size());
}

// Relative error of the large-G approximation C(n+g, n) against the exact
// C(n+g-1, n). Only the no-exclusion counts have this approximation.
inline double stirling_gap(std::uint64_t n, std::uint64_t g, Statistics kind) {
    if (kind != Statistics::be) {
        throw InvalidInput("stirling_gap: approximation defined for the be kind only");
    }
    if (g == 0) throw InvalidInput("stirling_gap: need at least one state");
    const std::uint64_t exact = detail::binomial(n + g - 1, n);
    const std::uint64_t approx = detail::binomial(n + g, n);
    return static_cast<double>(approx - exact) / static_cast<double>(exact);
}

}  // namespace entrofit
