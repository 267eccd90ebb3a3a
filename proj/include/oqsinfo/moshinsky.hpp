#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "oqsinfo/dynamics.hpp"
#include "oqsinfo/grid.hpp"
#include "oqsinfo/hermite.hpp"
#include "oqsinfo/info.hpp"

namespace oqsinfo {

// Two particles in a common trap of frequency omega, repelling through
// -1/2 lambda (x1-x2)^2.  The Jacobi rotation R=(x1+x2)/sqrt2,
// r=(x1-x2)/sqrt2 separates the pair into a center-of-mass oscillator at
// omega and a relative oscillator at sqrt(omega^2 - 2 lambda).
struct MoshinskyParams {
    double omega = 1.0;
    double lambda = 0.0;
    BathParams bath;
};

struct TwoParticleLabel {
    int m = 0;  // center-of-mass quantum number
    int n = 0;  // relative quantum number; even keeps the pair exchange-symmetric
};

inline double relative_frequency(const MoshinskyParams& params) {
    require_positive_omega(params.omega);
    const double threshold = 0.5 * params.omega * params.omega;
    if (!(params.lambda >= 0.0) || params.lambda >= threshold) {
        throw std::invalid_argument(
            "interparticle strength must satisfy 0 <= lambda < omega^2/2");
    }
    return std::sqrt(params.omega * params.omega - 2.0 * params.lambda);
}

inline Grid1D default_grid_2d_axis() { return Grid1D(8.0, 401); }

// Eigenstate Phi_mn(x1,x2) = phi_m(R; omega) phi_n(r; omega_r); the Jacobi
// map is orthogonal with unit Jacobian, so normalization carries over.
inline double eigenfunction(const TwoParticleLabel& label, const MoshinskyParams& params,
                            double x1, double x2) {
    const double omega_r = relative_frequency(params);
    const double big_r = (x1 + x2) / std::numbers::sqrt2;
    const double rel = (x1 - x2) / std::numbers::sqrt2;
    return eigenfunction_x(label.m, OscillatorParams{params.omega}, big_r) *
           eigenfunction_x(label.n, OscillatorParams{omega_r}, rel);
}

// Coefficients of the pair's density operator truncated to the states
// |00> and |10>.  Only the center-of-mass quantum number differs, so the
// coherence phase rotates at the bare gap omega in both regimes.  In the
// relaxation regime the bath's detailed balance is taken at the
// interaction-shifted relative frequency, which is what lets the
// stationary populations (and hence the total two-particle entropy) feel
// the interparticle strength.
inline DensityMatrix2 moshinsky_coefficients(double t, const MoshinskyParams& params) {
    if (params.bath.regime == Regime::PureDephasing) {
        relative_frequency(params);  // still validates lambda
        return dephasing_coefficients(t, params.omega, params.bath);
    }
    return relaxation_coefficients(t, params.omega, relative_frequency(params), params.bath);
}

// Two-particle position density over the truncated pair of states.
inline double two_particle_density_x(double x1, double x2, double t,
                                     const MoshinskyParams& params) {
    const DensityMatrix2 rho = moshinsky_coefficients(t, params);
    const double a = eigenfunction({0, 0}, params, x1, x2);
    const double b = eigenfunction({1, 0}, params, x1, x2);
    return rho.rho00 * a * a + rho.rho11 * b * b + 2.0 * rho.rho01.real() * a * b;
}

// Momentum-space counterpart.  The Jacobi rotation acts identically on the
// momenta; the (-i) phase on the excited center-of-mass factor turns the
// cross term into -2 Im(rho01) times real envelopes, as in the
// one-particle model.
inline double two_particle_density_p(double p1, double p2, double t,
                                     const MoshinskyParams& params) {
    const DensityMatrix2 rho = moshinsky_coefficients(t, params);
    const double omega_r = relative_frequency(params);
    const double big_p = (p1 + p2) / std::numbers::sqrt2;
    const double rel = (p1 - p2) / std::numbers::sqrt2;
    const double u = eigenfunction_p_real(0, OscillatorParams{params.omega}, big_p);
    const double v = eigenfunction_p_real(1, OscillatorParams{params.omega}, big_p);
    const double h = eigenfunction_p_real(0, OscillatorParams{omega_r}, rel);
    return (rho.rho00 * u * u + rho.rho11 * v * v - 2.0 * rho.rho01.imag() * u * v) * h * h;
}

// One-particle density by quadrature over the partner coordinate.
inline double reduced_density_x(double x1, double t, const MoshinskyParams& params,
                                const Grid1D& grid = default_grid_2d_axis()) {
    double acc = 0.0;
    for (int j = 0; j < grid.points; ++j) {
        acc += grid.weight(j) * two_particle_density_x(x1, grid.point(j), t, params);
    }
    return acc;
}

inline double reduced_density_p(double p1, double t, const MoshinskyParams& params,
                                const Grid1D& grid = default_grid_2d_axis()) {
    double acc = 0.0;
    for (int j = 0; j < grid.points; ++j) {
        acc += grid.weight(j) * two_particle_density_p(p1, grid.point(j), t, params);
    }
    return acc;
}

// Time-independent basis fields of the truncated pair on a shared axis
// grid, in both spaces, together with their partner-coordinate marginals.
// Any instant's density is a three-coefficient combination of these, so a
// sweep never reevaluates eigenfunctions.  Entropies are evaluated in a
// fused pass that renormalizes by the quadrature mass q via
// s(n/q) = s_raw/q + ln q.
class MoshinskyWorkspace {
public:
    MoshinskyWorkspace(const MoshinskyParams& params, const Grid1D& axis)
        : params_(params), axis_(axis), weights_(axis.all_weights()) {
        const double omega_r = relative_frequency(params);
        const int n = axis.points;
        const size_t nn = static_cast<size_t>(n) * n;
        aa_x_.resize(nn);
        bb_x_.resize(nn);
        ab_x_.resize(nn);
        aa_p_.resize(nn);
        bb_p_.resize(nn);
        ab_p_.resize(nn);

        const OscillatorParams com{params.omega};
        const OscillatorParams rel{omega_r};
        for (int i = 0; i < n; ++i) {
            const double x1 = axis.point(i);
            for (int j = 0; j < n; ++j) {
                const double x2 = axis.point(j);
                const double big = (x1 + x2) / std::numbers::sqrt2;
                const double small = (x1 - x2) / std::numbers::sqrt2;
                const size_t idx = static_cast<size_t>(i) * n + j;

                const double a = eigenfunction_x(0, com, big) * eigenfunction_x(0, rel, small);
                const double b = eigenfunction_x(1, com, big) * eigenfunction_x(0, rel, small);
                aa_x_[idx] = a * a;
                bb_x_[idx] = b * b;
                ab_x_[idx] = a * b;

                const double u =
                    eigenfunction_p_real(0, com, big) * eigenfunction_p_real(0, rel, small);
                const double v =
                    eigenfunction_p_real(1, com, big) * eigenfunction_p_real(0, rel, small);
                aa_p_[idx] = u * u;
                bb_p_[idx] = v * v;
                ab_p_[idx] = u * v;
            }
        }
        aa_x_m_ = marginal(aa_x_);
        bb_x_m_ = marginal(bb_x_);
        ab_x_m_ = marginal(ab_x_);
        aa_p_m_ = marginal(aa_p_);
        bb_p_m_ = marginal(bb_p_);
        ab_p_m_ = marginal(ab_p_);
    }

    const MoshinskyParams& params() const { return params_; }
    const Grid1D& axis() const { return axis_; }

    // Full per-instant bundle: reduced entropies, two-particle entropies,
    // entropy sums and mutual information in both spaces.
    InfoRecord record(double t) const {
        const DensityMatrix2 rho = moshinsky_coefficients(t, params_);
        const double cx = 2.0 * rho.rho01.real();
        const double cp = -2.0 * rho.rho01.imag();

        InfoRecord rec;
        rec.t = t;
        const double s2x = entropy_2d(aa_x_, bb_x_, ab_x_, rho.rho00, rho.rho11, cx);
        const double s2p = entropy_2d(aa_p_, bb_p_, ab_p_, rho.rho00, rho.rho11, cp);
        rec.s_x = entropy_1d(aa_x_m_, bb_x_m_, ab_x_m_, rho.rho00, rho.rho11, cx);
        rec.s_p = entropy_1d(aa_p_m_, bb_p_m_, ab_p_m_, rho.rho00, rho.rho11, cp);
        rec.s_t = rec.s_x + rec.s_p;
        rec.s_x2 = s2x;
        rec.s_p2 = s2p;
        rec.s_T = s2x + s2p;
        rec.I_x = 2.0 * rec.s_x - s2x;
        rec.I_p = 2.0 * rec.s_p - s2p;
        rec.I_t = *rec.I_x + *rec.I_p;
        return rec;
    }

    DensityField2D density_x(double t, bool renormalize = true) const {
        const DensityMatrix2 rho = moshinsky_coefficients(t, params_);
        return field_2d(aa_x_, bb_x_, ab_x_, rho.rho00, rho.rho11, 2.0 * rho.rho01.real(),
                        renormalize);
    }

    DensityField2D density_p(double t, bool renormalize = true) const {
        const DensityMatrix2 rho = moshinsky_coefficients(t, params_);
        return field_2d(aa_p_, bb_p_, ab_p_, rho.rho00, rho.rho11, -2.0 * rho.rho01.imag(),
                        renormalize);
    }

    DensityField1D reduced_x(double t, bool renormalize = true) const {
        const DensityMatrix2 rho = moshinsky_coefficients(t, params_);
        return field_1d(aa_x_m_, bb_x_m_, ab_x_m_, rho.rho00, rho.rho11,
                        2.0 * rho.rho01.real(), renormalize);
    }

    DensityField1D reduced_p(double t, bool renormalize = true) const {
        const DensityMatrix2 rho = moshinsky_coefficients(t, params_);
        return field_1d(aa_p_m_, bb_p_m_, ab_p_m_, rho.rho00, rho.rho11,
                        -2.0 * rho.rho01.imag(), renormalize);
    }

private:
    std::vector<double> marginal(const std::vector<double>& field) const {
        const int n = axis_.points;
        std::vector<double> m(n);
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            const double* row = field.data() + static_cast<size_t>(i) * n;
            for (int j = 0; j < n; ++j) acc += weights_[j] * row[j];
            m[i] = acc;
        }
        return m;
    }

    double entropy_2d(const std::vector<double>& d00, const std::vector<double>& d11,
                      const std::vector<double>& d01, double c00, double c11, double c01) const {
        const int n = axis_.points;
        double mass = 0.0;
        double raw = 0.0;
        for (int i = 0; i < n; ++i) {
            const size_t off = static_cast<size_t>(i) * n;
            double row_mass = 0.0;
            double row_raw = 0.0;
            for (int j = 0; j < n; ++j) {
                const double v =
                    clamp_density_value(c00 * d00[off + j] + c11 * d11[off + j] + c01 * d01[off + j]);
                if (v > kEntropyFloor) {
                    const double wv = weights_[j] * v;
                    row_mass += wv;
                    row_raw += wv * std::log(v);
                }
            }
            mass += weights_[i] * row_mass;
            raw += weights_[i] * row_raw;
        }
        return -raw / mass + std::log(mass);
    }

    double entropy_1d(const std::vector<double>& d00, const std::vector<double>& d11,
                      const std::vector<double>& d01, double c00, double c11, double c01) const {
        const int n = axis_.points;
        double mass = 0.0;
        double raw = 0.0;
        for (int i = 0; i < n; ++i) {
            const double v = clamp_density_value(c00 * d00[i] + c11 * d11[i] + c01 * d01[i]);
            if (v > kEntropyFloor) {
                const double wv = weights_[i] * v;
                mass += wv;
                raw += wv * std::log(v);
            }
        }
        return -raw / mass + std::log(mass);
    }

    DensityField2D field_2d(const std::vector<double>& d00, const std::vector<double>& d11,
                            const std::vector<double>& d01, double c00, double c11, double c01,
                            bool renormalize) const {
        const int n = axis_.points;
        DensityField2D field{{axis_, axis_}, std::vector<double>(static_cast<size_t>(n) * n),
                             0.0};
        for (size_t k = 0; k < field.values.size(); ++k) {
            field.values[k] = clamp_density_value(c00 * d00[k] + c11 * d11[k] + c01 * d01[k]);
        }
        field.norm = trapezoid_norm_2d(field.grid, field.values);
        if (renormalize) {
            const double inv = 1.0 / field.norm;
            for (double& v : field.values) v *= inv;
            field.norm = trapezoid_norm_2d(field.grid, field.values);
        }
        return field;
    }

    DensityField1D field_1d(const std::vector<double>& d00, const std::vector<double>& d11,
                            const std::vector<double>& d01, double c00, double c11, double c01,
                            bool renormalize) const {
        const int n = axis_.points;
        DensityField1D field{axis_, std::vector<double>(n), 0.0};
        for (int i = 0; i < n; ++i) {
            field.values[i] = clamp_density_value(c00 * d00[i] + c11 * d11[i] + c01 * d01[i]);
        }
        field.norm = trapezoid_norm(axis_, field.values);
        if (renormalize) {
            const double inv = 1.0 / field.norm;
            for (double& v : field.values) v *= inv;
            field.norm = trapezoid_norm(axis_, field.values);
        }
        return field;
    }

    MoshinskyParams params_;
    Grid1D axis_;
    std::vector<double> weights_;
    std::vector<double> aa_x_, bb_x_, ab_x_;
    std::vector<double> aa_p_, bb_p_, ab_p_;
    std::vector<double> aa_x_m_, bb_x_m_, ab_x_m_;
    std::vector<double> aa_p_m_, bb_p_m_, ab_p_m_;
};

inline InfoRecord moshinsky_record(double t, const MoshinskyParams& params, const Grid1D& axis) {
    return MoshinskyWorkspace(params, axis).record(t);
}

}  // namespace oqsinfo
