#pragma once

#include <cmath>
#include <vector>

#include "oqsinfo/dynamics.hpp"
#include "oqsinfo/grid.hpp"
#include "oqsinfo/hermite.hpp"
#include "oqsinfo/info.hpp"

namespace oqsinfo {

struct HOModel {
    OscillatorParams osc;
    BathParams bath;
};

inline Grid1D default_grid_1d() { return Grid1D(8.0, 2001); }

// Position density n(x,t) = rho00 phi0^2 + rho11 phi1^2 + 2 Re(rho01) phi0 phi1.
inline double position_density(double x, double t, const HOModel& model) {
    const DensityMatrix2 rho = coefficients_at(t, model.osc.omega, model.bath);
    const double f0 = eigenfunction_x(0, model.osc, x);
    const double f1 = eigenfunction_x(1, model.osc, x);
    return rho.rho00 * f0 * f0 + rho.rho11 * f1 * f1 + 2.0 * rho.rho01.real() * f0 * f1;
}

// Momentum density n(p,t) = sum_nm rho_nm phi~_n phi~_m^*.  The (-i) phase
// on phi~_1 makes the cross term -2 Im(rho01) phi~_0 phi~_1 with both
// factors taken real, a quarter period out of step with position space.
inline double momentum_density(double p, double t, const HOModel& model) {
    const DensityMatrix2 rho = coefficients_at(t, model.osc.omega, model.bath);
    const double f0 = eigenfunction_p_real(0, model.osc, p);
    const double f1 = eigenfunction_p_real(1, model.osc, p);
    return rho.rho00 * f0 * f0 + rho.rho11 * f1 * f1 - 2.0 * rho.rho01.imag() * f0 * f1;
}

// Precomputed basis profiles on a fixed grid, so a time sweep only has to
// recombine three arrays per instant instead of reevaluating Hermite
// functions everywhere.
class HOWorkspace {
public:
    HOWorkspace(const HOModel& model, const Grid1D& grid) : model_(model), grid_(grid) {
        const int n = grid.points;
        x00_.resize(n);
        x11_.resize(n);
        x01_.resize(n);
        p00_.resize(n);
        p11_.resize(n);
        p01_.resize(n);
        for (int i = 0; i < n; ++i) {
            const double x = grid.point(i);
            const double f0 = eigenfunction_x(0, model.osc, x);
            const double f1 = eigenfunction_x(1, model.osc, x);
            x00_[i] = f0 * f0;
            x11_[i] = f1 * f1;
            x01_[i] = f0 * f1;
            const double g0 = eigenfunction_p_real(0, model.osc, x);
            const double g1 = eigenfunction_p_real(1, model.osc, x);
            p00_[i] = g0 * g0;
            p11_[i] = g1 * g1;
            p01_[i] = g0 * g1;
        }
    }

    DensityField1D density_x(double t) const {
        const DensityMatrix2 rho = coefficients_at(t, model_.osc.omega, model_.bath);
        return combine(x00_, x11_, x01_, rho.rho00, rho.rho11, 2.0 * rho.rho01.real());
    }

    DensityField1D density_p(double t) const {
        const DensityMatrix2 rho = coefficients_at(t, model_.osc.omega, model_.bath);
        return combine(p00_, p11_, p01_, rho.rho00, rho.rho11, -2.0 * rho.rho01.imag());
    }

    InfoRecord record(double t) const {
        InfoRecord rec;
        rec.t = t;
        rec.s_x = shannon_1d(density_x(t));
        rec.s_p = shannon_1d(density_p(t));
        rec.s_t = rec.s_x + rec.s_p;
        return rec;
    }

    const Grid1D& grid() const { return grid_; }

private:
    DensityField1D combine(const std::vector<double>& d00, const std::vector<double>& d11,
                           const std::vector<double>& d01, double c00, double c11,
                           double c01) const {
        DensityField1D field{grid_, std::vector<double>(grid_.points), 0.0};
        for (int i = 0; i < grid_.points; ++i) {
            field.values[i] =
                clamp_density_value(c00 * d00[i] + c11 * d11[i] + c01 * d01[i]);
        }
        field.norm = trapezoid_norm(grid_, field.values);
        return field;
    }

    HOModel model_;
    Grid1D grid_;
    std::vector<double> x00_, x11_, x01_;
    std::vector<double> p00_, p11_, p01_;
};

inline InfoRecord ho_record(double t, const HOModel& model, const Grid1D& grid) {
    return HOWorkspace(model, grid).record(t);
}

}  // namespace oqsinfo
