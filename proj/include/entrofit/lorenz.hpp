#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "entrofit/distribution.hpp"
#include "entrofit/error.hpp"
#include "entrofit/numeric.hpp"

namespace entrofit {

struct LorenzPoint {
    double f = 0.0;  // cumulative population fraction
    double l = 0.0;  // cumulative benefit fraction
};

struct LorenzCurve {
    std::vector<LorenzPoint> points;  // includes (0,0) and (1,1)
    double gini = 0.0;
};

enum class SymmetryKind { symmetry_feasible, asymmetry_required };

// Whether a symmetric (uniform-equivalent) distribution can reproduce the
// Gini value. Above 1/3 none can.
struct SymmetryVerdict {
    SymmetryKind kind = SymmetryKind::symmetry_feasible;
    double gini = 0.0;
    std::optional<double> equivalent_ratio;  // present iff gini <= 1/3
};

// Lorenz polyline of a binned distribution and its Gini coefficient,
// Gi = 1 - 2 * integral of L dF by trapezoids (exact on the polyline).
inline LorenzCurve lorenz_points(const BenefitDistribution& dist) {
    KahanSum pop_total, ben_total;
    for (std::size_t k = 0; k < dist.size(); ++k) {
        pop_total.add(dist.population(k));
        ben_total.add(dist.population(k) * dist.omega[k]);
    }
    if (!(ben_total.value() > 0.0)) {
        throw InvalidInput("lorenz: total benefit is zero");
    }

    LorenzCurve curve;
    curve.points.reserve(dist.size() + 1);
    curve.points.push_back({0.0, 0.0});
    KahanSum pop, ben;
    for (std::size_t k = 0; k < dist.size(); ++k) {
        pop.add(dist.population(k));
        ben.add(dist.population(k) * dist.omega[k]);
        curve.points.push_back({pop.value() / pop_total.value(),
                                ben.value() / ben_total.value()});
    }
    curve.points.back().f = 1.0;
    curve.points.back().l = 1.0;

    KahanSum area;  // integral of L dF
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        const auto& a = curve.points[i - 1];
        const auto& b = curve.points[i];
        area.add(0.5 * (b.l + a.l) * (b.f - a.f));
    }
    curve.gini = 1.0 - 2.0 * area.value();
    return curve;
}

// Cumulative benefit fraction of the uniform density with min/max benefit
// ratio R: L(F) = [2RF + (1-R)F^2] / (1+R).
inline double uniform_lorenz(double f, double r) {
    if (!(f >= 0.0 && f <= 1.0)) throw InvalidInput("uniform_lorenz: F outside [0,1]");
    if (!(r >= 0.0 && r <= 1.0)) throw InvalidInput("uniform_lorenz: R outside [0,1]");
    return (2.0 * r * f + (1.0 - r) * f * f) / (1.0 + r);
}

// Gini of the uniform family: (1/3)(1-R)/(1+R), at most 1/3.
inline double uniform_gini(double r) {
    if (!(r >= 0.0 && r <= 1.0)) throw InvalidInput("uniform_gini: R outside [0,1]");
    return (1.0 - r) / (3.0 * (1.0 + r));
}

// Invert uniform_gini. Only Gini values up to 1/3 have a uniform equivalent.
inline double equivalent_ratio(double gini) {
    if (gini < 0.0) throw InvalidInput("equivalent_ratio: negative Gini");
    if (gini > 1.0 / 3.0) {
        throw NoSymmetricEquivalent("equivalent_ratio: Gini above 1/3 has no uniform equivalent");
    }
    return (1.0 - 3.0 * gini) / (1.0 + 3.0 * gini);
}

inline SymmetryVerdict classify_symmetry(double gini) {
    if (!(gini >= 0.0 && gini < 1.0)) {
        throw InvalidInput("classify_symmetry: Gini outside [0,1)");
    }
    SymmetryVerdict v;
    v.gini = gini;
    if (gini > 1.0 / 3.0) {
        v.kind = SymmetryKind::asymmetry_required;
    } else {
        v.kind = SymmetryKind::symmetry_feasible;
        v.equivalent_ratio = equivalent_ratio(gini);
    }
    return v;
}

}  // namespace entrofit
