#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "oqsinfo/grid.hpp"

namespace oqsinfo {

// Entropic uncertainty lower bounds for the position/momentum entropy sum,
// in nats: 1 + ln(pi) per particle.
inline const double kBoundOneParticle = 1.0 + std::log(std::numbers::pi);
inline const double kBoundTwoParticle = 2.0 * (1.0 + std::log(std::numbers::pi));
inline constexpr double kBoundTol = 1e-6;

// Contributions below this density are treated as exact zeros in n ln n.
inline constexpr double kEntropyFloor = 1e-300;

inline constexpr double kNormTol = 1e-6;

inline void require_normalized(double norm) {
    if (std::abs(norm - 1.0) > kNormTol) {
        throw std::invalid_argument("density field is not normalized");
    }
}

inline double entropy_term(double v) {
    if (v < 0.0) {
        throw std::invalid_argument("density field has negative values");
    }
    return v > kEntropyFloor ? v * std::log(v) : 0.0;
}

// Differential Shannon entropy -Int n ln n by composite trapezoid, in nats.
inline double shannon_1d(const DensityField1D& field) {
    require_normalized(field.norm);
    double acc = 0.0;
    for (int i = 0; i < field.grid.points; ++i) {
        acc += field.grid.weight(i) * entropy_term(field.values[i]);
    }
    return -acc;
}

inline double shannon_2d(const DensityField2D& field) {
    require_normalized(field.norm);
    double acc = 0.0;
    for (int i = 0; i < field.grid.x.points; ++i) {
        double row = 0.0;
        const double* v = field.values.data() + static_cast<size_t>(i) * field.grid.y.points;
        for (int j = 0; j < field.grid.y.points; ++j) {
            row += field.grid.y.weight(j) * entropy_term(v[j]);
        }
        acc += field.grid.x.weight(i) * row;
    }
    return -acc;
}

// Mutual information s(m1) + s(m2) - s(joint).  For exchange-symmetric
// joints the two marginals coincide and this is the usual 2 s - s2.
inline double mutual_information(const DensityField2D& joint, const DensityField1D& marg1,
                                 const DensityField1D& marg2) {
    if (!(marg1.grid == joint.grid.x) || !(marg2.grid == joint.grid.y)) {
        throw std::invalid_argument("marginal grids do not match the joint grid");
    }
    return shannon_1d(marg1) + shannon_1d(marg2) - shannon_2d(joint);
}

// Same quantity from the relative-entropy integrand Int n ln(n/(m1 m2)),
// used as an independent cross-check of the entropy-difference form.
inline double mutual_information_integrand(const DensityField2D& joint,
                                           const DensityField1D& marg1,
                                           const DensityField1D& marg2) {
    if (!(marg1.grid == joint.grid.x) || !(marg2.grid == joint.grid.y)) {
        throw std::invalid_argument("marginal grids do not match the joint grid");
    }
    require_normalized(joint.norm);
    require_normalized(marg1.norm);
    require_normalized(marg2.norm);
    double acc = 0.0;
    for (int i = 0; i < joint.grid.x.points; ++i) {
        double row = 0.0;
        const double* v = joint.values.data() + static_cast<size_t>(i) * joint.grid.y.points;
        for (int j = 0; j < joint.grid.y.points; ++j) {
            const double n = v[j];
            const double prod = marg1.values[i] * marg2.values[j];
            if (n > kEntropyFloor && prod > kEntropyFloor) {
                row += joint.grid.y.weight(j) * n * std::log(n / prod);
            }
        }
        acc += joint.grid.x.weight(i) * row;
    }
    return acc;
}

// Per-time-point bundle of information measures, all in nats.  The
// two-particle and mutual-information entries are only present for the
// two-particle model.
struct InfoRecord {
    double t = 0.0;
    double s_x = 0.0;
    double s_p = 0.0;
    double s_t = 0.0;
    std::optional<double> s_x2;
    std::optional<double> s_p2;
    std::optional<double> s_T;
    std::optional<double> I_x;
    std::optional<double> I_p;
    std::optional<double> I_t;
};

struct BoundReport {
    double margin_one_particle = 0.0;
    std::optional<double> margin_two_particle;
    bool ok = true;
};

// Margins of the entropy sums above their uncertainty bounds; a margin
// below -1e-6 flags a violation.
inline BoundReport check_bounds(const InfoRecord& record) {
    BoundReport report;
    report.margin_one_particle = record.s_t - kBoundOneParticle;
    report.ok = report.margin_one_particle >= -kBoundTol;
    if (record.s_T) {
        report.margin_two_particle = *record.s_T - kBoundTwoParticle;
        report.ok = report.ok && *report.margin_two_particle >= -kBoundTol;
    }
    return report;
}

}  // namespace oqsinfo
