#include "xychain/scaling.hpp"

#include <algorithm>
#include <cmath>

namespace xychain {

namespace {

double uniform_spacing(const Series& s) {
    const double dx = s.x[1] - s.x[0];
    for (size_t i = 1; i + 1 < s.x.size(); ++i) {
        if (std::abs((s.x[i + 1] - s.x[i]) - dx) > 1e-12 * std::max(1.0, std::abs(dx)))
            throw NonUniformGrid("derivative: grid spacing varies beyond 1e-12");
    }
    if (dx <= 0.0) throw NonUniformGrid("derivative: abscissa must increase");
    return dx;
}

double interpolate(const Series& s, double x) {
    const auto it = std::upper_bound(s.x.begin(), s.x.end(), x);
    size_t i = static_cast<size_t>(it - s.x.begin());
    if (i == 0) i = 1;
    if (i >= s.x.size()) i = s.x.size() - 1;
    const double t = (x - s.x[i - 1]) / (s.x[i] - s.x[i - 1]);
    return (1.0 - t) * s.y[i - 1] + t * s.y[i];
}

FitResult line_fit(const std::vector<double>& t, const std::vector<double>& y) {
    if (t.size() < 4) throw DegenerateFit("fit: need at least 4 points");
    const double n = static_cast<double>(t.size());
    double st = 0, sy = 0, stt = 0, sty = 0;
    for (size_t i = 0; i < t.size(); ++i) {
        st += t[i];
        sy += y[i];
        stt += t[i] * t[i];
        sty += t[i] * y[i];
    }
    const double det = n * stt - st * st;
    if (std::abs(det) < 1e-14 * std::max(1.0, stt * n))
        throw DegenerateFit("fit: abscissa has no spread");
    FitResult f;
    f.slope = (n * sty - st * sy) / det;
    f.intercept = (sy - f.slope * st) / n;
    double ss = 0;
    for (size_t i = 0; i < t.size(); ++i) {
        const double r = y[i] - (f.slope * t[i] + f.intercept);
        ss += r * r;
    }
    f.rms_residual = std::sqrt(ss / n);
    f.n_points = t.size();
    f.x_min = *std::min_element(t.begin(), t.end());
    f.x_max = *std::max_element(t.begin(), t.end());
    return f;
}

} // namespace

void Series::validate() const {
    if (x.size() != y.size()) throw InvalidParams("series: x/y length mismatch");
    if (x.size() < 3) throw InvalidParams("series: need at least 3 points");
    for (size_t i = 0; i + 1 < x.size(); ++i)
        if (!(x[i] < x[i + 1])) throw InvalidParams("series: x must be strictly increasing");
}

Series numeric_derivative(const Series& s) {
    s.validate();
    const double dx = uniform_spacing(s);
    Series d;
    d.x = s.x;
    d.label = s.label;
    d.y.resize(s.y.size());
    const size_t n = s.y.size();
    d.y[0] = (-3.0 * s.y[0] + 4.0 * s.y[1] - s.y[2]) / (2.0 * dx);
    for (size_t i = 1; i + 1 < n; ++i) d.y[i] = (s.y[i + 1] - s.y[i - 1]) / (2.0 * dx);
    d.y[n - 1] = (3.0 * s.y[n - 1] - 4.0 * s.y[n - 2] + s.y[n - 3]) / (2.0 * dx);
    return d;
}

Series numeric_derivative(const Series& coarse, const Series& fine) {
    const Series dc = numeric_derivative(coarse);
    const Series df = numeric_derivative(fine);
    const double dxc = uniform_spacing(coarse);
    const double dxf = uniform_spacing(fine);
    if (std::abs(dxf - 0.5 * dxc) > 1e-10 * std::max(1.0, dxc))
        throw NonUniformGrid("richardson: companion grid must halve the step");
    Series out;
    out.x = dc.x;
    out.label = coarse.label;
    out.y.resize(dc.x.size());
    for (size_t i = 0; i < dc.x.size(); ++i) {
        // locate the matching fine-grid point
        const auto it = std::lower_bound(df.x.begin(), df.x.end(), dc.x[i] - 1e-10);
        if (it == df.x.end() || std::abs(*it - dc.x[i]) > 1e-9)
            throw NonUniformGrid("richardson: companion grid misses a coarse point");
        const size_t j = static_cast<size_t>(it - df.x.begin());
        out.y[i] = (4.0 * df.y[j] - dc.y[i]) / 3.0;
    }
    return out;
}

Extremum locate_extremum(const Series& s, ExtremumKind kind) {
    s.validate();
    const double sgn = kind == ExtremumKind::Maximum ? 1.0 : -1.0;
    size_t best = 0;
    for (size_t i = 1; i < s.size(); ++i)
        if (sgn * s.y[i] > sgn * s.y[best]) best = i;
    if (best == 0 || best + 1 == s.size())
        throw NoInteriorExtremum("extremum sits on the grid boundary");
    // parabola through the three bracketing points
    const double x0 = s.x[best - 1], x1 = s.x[best], x2 = s.x[best + 1];
    const double y0 = s.y[best - 1], y1 = s.y[best], y2 = s.y[best + 1];
    const double d1 = (y1 - y0) / (x1 - x0);
    const double d2 = (y2 - y1) / (x2 - x1);
    const double curv = (d2 - d1) / (x2 - x0); // half the second derivative
    Extremum e;
    e.index = best;
    if (std::abs(curv) < 1e-300) {
        e.x = x1;
        e.y = y1;
        return e;
    }
    // vertex of the interpolating parabola
    e.x = 0.5 * (x0 + x1) - 0.5 * d1 / curv;
    const double a = curv;
    const double b = d1 - a * (x0 + x1);
    const double c = y0 - a * x0 * x0 - b * x0;
    e.y = a * e.x * e.x + b * e.x + c;
    return e;
}

FitResult log_linear_fit(const Series& s, Abscissa abscissa) {
    s.validate();
    std::vector<double> t;
    t.reserve(s.size());
    for (double x : s.x) {
        if (abscissa == Abscissa::LnN) {
            if (x <= 0.0) throw NonPositiveValue("log fit: x must be positive");
            t.push_back(std::log(x));
        } else {
            if (std::abs(1.0 - x) <= 0.0)
                throw NonPositiveValue("log fit: x coincides with the critical point");
            t.push_back(std::log(std::abs(1.0 - x)));
        }
    }
    return line_fit(t, s.y);
}

FitResult exp_decay_fit(const Series& s) {
    s.validate();
    std::vector<double> ly;
    ly.reserve(s.size());
    for (double v : s.y) {
        if (v <= 0.0) throw NonPositiveValue("exp fit: y must be positive");
        ly.push_back(std::log(v));
    }
    FitResult f = line_fit(s.x, ly);
    f.slope = -f.slope; // report the decay rate
    return f;
}

double critical_exponent(double slope_n, double slope_h) {
    if (std::abs(slope_n) < 1e-12)
        throw DivisionByZeroSlope("critical exponent: finite-size slope is zero");
    return -slope_h / slope_n;
}

double collapse_check(const std::vector<Series>& curves,
                      const std::vector<double>& sizes, double nu) {
    if (curves.size() != sizes.size() || curves.size() < 3)
        throw InsufficientOverlap("collapse: need at least 3 curves with sizes");
    if (std::abs(nu) < 1e-12) throw DivisionByZeroSlope("collapse: nu must be nonzero");
    std::vector<Series> rescaled;
    double lo = -1e300, hi = 1e300;
    for (size_t k = 0; k < curves.size(); ++k) {
        const Series& s = curves[k];
        // both peak signs occur (E grows, Q dips): take the interior extremum
        // of larger magnitude
        std::vector<Extremum> found;
        for (ExtremumKind kind : {ExtremumKind::Maximum, ExtremumKind::Minimum}) {
            try {
                found.push_back(locate_extremum(s, kind));
            } catch (const NoInteriorExtremum&) {
            }
        }
        if (found.empty()) throw NoInteriorExtremum("collapse: curve has no interior extremum");
        Extremum e = found.front();
        for (const Extremum& cand : found)
            if (std::abs(cand.y) > std::abs(e.y)) e = cand;
        const double scale = std::pow(sizes[k], 1.0 / nu);
        Series r;
        r.label = s.label;
        r.x.reserve(s.size());
        r.y.reserve(s.size());
        for (size_t i = 0; i < s.size(); ++i) {
            r.x.push_back((s.x[i] - e.x) * scale);
            r.y.push_back(s.y[i] - e.y);
        }
        lo = std::max(lo, r.x.front());
        hi = std::min(hi, r.x.back());
        rescaled.push_back(std::move(r));
    }
    if (!(lo < hi)) throw InsufficientOverlap("collapse: rescaled windows do not overlap");
    constexpr int kSamples = 50;
    double ss = 0.0;
    for (int i = 0; i < kSamples; ++i) {
        const double x = lo + (hi - lo) * i / (kSamples - 1);
        double mean = 0.0;
        std::vector<double> vals;
        vals.reserve(rescaled.size());
        for (const Series& r : rescaled) {
            vals.push_back(interpolate(r, x));
            mean += vals.back();
        }
        mean /= static_cast<double>(vals.size());
        for (double v : vals) ss += (v - mean) * (v - mean);
    }
    return std::sqrt(ss / (kSamples * static_cast<double>(rescaled.size())));
}

} // namespace xychain
