#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oqsinfo {

// Uniform symmetric grid on [-half_width, half_width] with an odd point
// count, so the origin is a sample point.  Points are generated around the
// center index to keep the grid exactly mirror-symmetric in floating point.
struct Grid1D {
    double half_width = 0.0;
    int points = 0;

    Grid1D(double half_width_, int points_) : half_width(half_width_), points(points_) {
        if (!(half_width > 0.0)) {
            throw std::invalid_argument("grid half-width must be positive");
        }
        if (points < 3 || points % 2 == 0) {
            throw std::invalid_argument("grid needs an odd number of points, at least 3");
        }
    }

    double spacing() const { return 2.0 * half_width / (points - 1); }

    double point(int i) const { return (i - (points - 1) / 2) * spacing(); }

    // Composite trapezoid weight: h everywhere except h/2 at the ends.
    double weight(int i) const {
        const double h = spacing();
        return (i == 0 || i == points - 1) ? 0.5 * h : h;
    }

    std::vector<double> all_points() const {
        std::vector<double> xs(points);
        for (int i = 0; i < points; ++i) xs[i] = point(i);
        return xs;
    }

    std::vector<double> all_weights() const {
        std::vector<double> ws(points);
        for (int i = 0; i < points; ++i) ws[i] = weight(i);
        return ws;
    }

    bool operator==(const Grid1D& other) const {
        return half_width == other.half_width && points == other.points;
    }
};

struct Grid2D {
    Grid1D x;
    Grid1D y;
};

// A density value just below zero is floating-point noise and is clamped;
// anything more negative than the tolerance is a real defect.
inline constexpr double kNegativeClampTol = 1e-12;

inline double clamp_density_value(double v) {
    if (v >= 0.0) return v;
    if (v > -kNegativeClampTol) return 0.0;
    throw std::invalid_argument("density value negative beyond clamp tolerance");
}

// Sampled 1D density with its trapezoid quadrature norm.
struct DensityField1D {
    Grid1D grid;
    std::vector<double> values;
    double norm = 0.0;
};

// Sampled 2D density, row-major over (x, y), with its quadrature norm.
struct DensityField2D {
    Grid2D grid;
    std::vector<double> values;
    double norm = 0.0;
};

inline double trapezoid_norm(const Grid1D& grid, const std::vector<double>& values) {
    double acc = 0.0;
    for (int i = 0; i < grid.points; ++i) acc += grid.weight(i) * values[i];
    return acc;
}

inline double trapezoid_norm_2d(const Grid2D& grid, const std::vector<double>& values) {
    double acc = 0.0;
    for (int i = 0; i < grid.x.points; ++i) {
        double row = 0.0;
        const double* v = values.data() + static_cast<size_t>(i) * grid.y.points;
        for (int j = 0; j < grid.y.points; ++j) row += grid.y.weight(j) * v[j];
        acc += grid.x.weight(i) * row;
    }
    return acc;
}

inline DensityField1D make_density_1d(const Grid1D& grid,
                                      const std::function<double(double)>& density,
                                      bool renormalize = false) {
    DensityField1D field{grid, std::vector<double>(grid.points), 0.0};
    for (int i = 0; i < grid.points; ++i) {
        field.values[i] = clamp_density_value(density(grid.point(i)));
    }
    field.norm = trapezoid_norm(grid, field.values);
    if (renormalize) {
        if (!(field.norm > 0.0)) {
            throw std::invalid_argument("cannot normalize a zero-mass density");
        }
        const double inv = 1.0 / field.norm;
        for (double& v : field.values) v *= inv;
        field.norm = trapezoid_norm(grid, field.values);
    }
    return field;
}

inline DensityField2D make_density_2d(const Grid2D& grid,
                                      const std::function<double(double, double)>& density,
                                      bool renormalize = false) {
    DensityField2D field{grid,
                         std::vector<double>(static_cast<size_t>(grid.x.points) * grid.y.points),
                         0.0};
    for (int i = 0; i < grid.x.points; ++i) {
        const double xi = grid.x.point(i);
        double* row = field.values.data() + static_cast<size_t>(i) * grid.y.points;
        for (int j = 0; j < grid.y.points; ++j) {
            row[j] = clamp_density_value(density(xi, grid.y.point(j)));
        }
    }
    field.norm = trapezoid_norm_2d(grid, field.values);
    if (renormalize) {
        if (!(field.norm > 0.0)) {
            throw std::invalid_argument("cannot normalize a zero-mass density");
        }
        const double inv = 1.0 / field.norm;
        for (double& v : field.values) v *= inv;
        field.norm = trapezoid_norm_2d(grid, field.values);
    }
    return field;
}

// Marginal over the second coordinate: m(x_i) = sum_j w_j n(x_i, y_j).
inline DensityField1D marginal_x(const DensityField2D& joint) {
    DensityField1D field{joint.grid.x, std::vector<double>(joint.grid.x.points), 0.0};
    for (int i = 0; i < joint.grid.x.points; ++i) {
        double row = 0.0;
        const double* v = joint.values.data() + static_cast<size_t>(i) * joint.grid.y.points;
        for (int j = 0; j < joint.grid.y.points; ++j) row += joint.grid.y.weight(j) * v[j];
        field.values[i] = row;
    }
    field.norm = trapezoid_norm(field.grid, field.values);
    return field;
}

// Marginal over the first coordinate.
inline DensityField1D marginal_y(const DensityField2D& joint) {
    DensityField1D field{joint.grid.y, std::vector<double>(joint.grid.y.points), 0.0};
    for (int j = 0; j < joint.grid.y.points; ++j) {
        double col = 0.0;
        for (int i = 0; i < joint.grid.x.points; ++i) {
            col += joint.grid.x.weight(i) *
                   joint.values[static_cast<size_t>(i) * joint.grid.y.points + j];
        }
        field.values[j] = col;
    }
    field.norm = trapezoid_norm(field.grid, field.values);
    return field;
}

}  // namespace oqsinfo
