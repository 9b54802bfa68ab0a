#pragma once

#include <string>
#include <vector>

#include "xychain/errors.hpp"

namespace xychain {

// Sampled curve y(x); x strictly increasing.
struct Series {
    std::vector<double> x;
    std::vector<double> y;
    std::string label;

    size_t size() const { return x.size(); }
    void validate() const;
};

enum class ExtremumKind { Maximum, Minimum };

struct Extremum {
    double x = 0.0;
    double y = 0.0;
    size_t index = 0; // grid index of the bracketing interior point
};

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double rms_residual = 0.0;
    size_t n_points = 0;
    double x_min = 0.0, x_max = 0.0; // fit window in the transformed abscissa
};

enum class Abscissa { LnN, LnDistanceToHc };

// Second-order finite differences on a uniform grid (central inside,
// one-sided at the ends). Throws NonUniformGrid when spacings disagree
// beyond 1e-12.
Series numeric_derivative(const Series& s);

// Richardson extrapolation (4 D_{h/2} - D_h)/3 on the coarse grid; `fine`
// must contain every coarse abscissa at half the spacing.
Series numeric_derivative(const Series& coarse, const Series& fine);

// Global interior extremum of the requested kind, refined by a parabola
// through the three bracketing samples. Throws NoInteriorExtremum when the
// extreme sample sits on the boundary.
Extremum locate_extremum(const Series& s, ExtremumKind kind);

// Least-squares line through (t(x), y) with t = ln x or t = ln|1-x|.
FitResult log_linear_fit(const Series& s, Abscissa abscissa);

// y = c * exp(-rate * x): line fit of ln y; all y must be positive.
FitResult exp_decay_fit(const Series& s);

// nu = -slope_h / slope_N for logarithmically diverging derivatives.
double critical_exponent(double slope_n, double slope_h);

// Collapse quality of derivative curves from several sizes: each curve is
// shifted by its extremum (x_m, y_m) and the abscissa rescaled by N^{1/nu};
// returns the rms spread across curves on the shared rescaled window.
double collapse_check(const std::vector<Series>& curves,
                      const std::vector<double>& sizes, double nu);

} // namespace xychain
