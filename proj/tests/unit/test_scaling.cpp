#include <cmath>
#include <functional>
#include <random>

#include <doctest.h>

#include "xychain/scaling.hpp"

using namespace xychain;

namespace {

Series sampled(double lo, double hi, int n, const std::function<double(double)>& f) {
    Series s;
    for (int i = 0; i < n; ++i) {
        const double x = lo + (hi - lo) * i / (n - 1);
        s.x.push_back(x);
        s.y.push_back(f(x));
    }
    return s;
}

} // namespace

TEST_CASE("derivative is exact on quadratics") {
    const Series s = sampled(0.0, 2.0, 21,
                             [](double x) { return 3.0 * x * x - x + 0.5; });
    const Series d = numeric_derivative(s);
    for (size_t i = 0; i < d.size(); ++i)
        CHECK(d.y[i] == doctest::Approx(6.0 * d.x[i] - 1.0).epsilon(1e-10));
}

TEST_CASE("non-uniform grids are rejected") {
    Series s;
    s.x = {0.0, 0.1, 0.25, 0.3};
    s.y = {0.0, 1.0, 2.0, 3.0};
    CHECK_THROWS_AS(numeric_derivative(s), NonUniformGrid);
}

TEST_CASE("richardson derivative kills the leading error") {
    auto f = [](double x) { return std::sin(3.0 * x); };
    const Series coarse = sampled(0.0, 1.0, 11, f);
    const Series fine = sampled(0.0, 1.0, 21, f);
    const Series d = numeric_derivative(coarse, fine);
    double worst = 0.0;
    for (size_t i = 1; i + 1 < d.size(); ++i)
        worst = std::max(worst, std::abs(d.y[i] - 3.0 * std::cos(3.0 * d.x[i])));
    CHECK(worst < 2e-4); // plain central difference on this grid is ~1.5e-2
}

TEST_CASE("extremum location with parabolic refinement") {
    const Series s = sampled(0.0, 1.0, 51,
                             [](double x) { return -(x - 0.372) * (x - 0.372); });
    const Extremum e = locate_extremum(s, ExtremumKind::Maximum);
    CHECK(e.x == doctest::Approx(0.372).epsilon(1e-9));
    CHECK(e.y == doctest::Approx(0.0).epsilon(1e-9));

    const Series mono = sampled(0.0, 1.0, 11, [](double x) { return 2.0 * x; });
    CHECK_THROWS_AS(locate_extremum(mono, ExtremumKind::Maximum),
                    NoInteriorExtremum);
}

TEST_CASE("log-linear fits recover synthetic slopes") {
    const Series a = sampled(8.0, 256.0, 12,
                             [](double n) { return 0.15 * std::log(n) + 0.7; });
    const FitResult fa = log_linear_fit(a, Abscissa::LnN);
    CHECK(fa.slope == doctest::Approx(0.15).epsilon(1e-10));
    CHECK(fa.rms_residual < 1e-12);

    const Series b = sampled(0.9, 0.999, 12, [](double h) {
        return -0.59 * std::log(std::abs(1.0 - h)) + 0.2;
    });
    const FitResult fb = log_linear_fit(b, Abscissa::LnDistanceToHc);
    CHECK(fb.slope == doctest::Approx(-0.59).epsilon(1e-10));

    Series tiny;
    tiny.x = {1.0, 2.0, 3.0};
    tiny.y = {1.0, 2.0, 3.0};
    CHECK_THROWS_AS(log_linear_fit(tiny, Abscissa::LnN), DegenerateFit);
}

TEST_CASE("exponential decay fit") {
    const Series s = sampled(8.0, 24.0, 9,
                             [](double n) { return 5.0 * std::exp(-0.3 * n); });
    const FitResult f = exp_decay_fit(s);
    CHECK(f.slope == doctest::Approx(0.3).epsilon(1e-8)); // slope reports the rate
    CHECK(f.rms_residual < 1e-10);

    Series bad = s;
    bad.y[2] = -1.0;
    CHECK_THROWS_AS(exp_decay_fit(bad), NonPositiveValue);
}

TEST_CASE("critical exponent arithmetic") {
    CHECK(critical_exponent(0.15, -0.15) == doctest::Approx(1.0));
    CHECK(critical_exponent(-0.59, 0.59) == doctest::Approx(1.0));
    CHECK(critical_exponent(2.0, -1.0) == doctest::Approx(0.5));
    CHECK_THROWS_AS(critical_exponent(0.0, 1.0), DivisionByZeroSlope);
}

TEST_CASE("collapse check prefers the true exponent") {
    // synthetic logarithmic-divergence family: peaks at h_m(N) = 1 - 1/N,
    // shape g((h - h_m) N^{1/nu}) with nu = 1
    std::vector<Series> curves;
    std::vector<double> sizes = {32.0, 64.0, 128.0};
    for (double n : sizes) {
        const double hm = 1.0 - 1.0 / n;
        curves.push_back(sampled(hm - 0.4, hm + 0.4, 321, [=](double h) {
            const double u = (h - hm) * n; // width shrinks as 1/N <=> nu = 1
            return std::log(n) - std::log1p(0.04 * u * u);
        }));
    }
    const double good = collapse_check(curves, sizes, 1.0);
    const double bad = collapse_check(curves, sizes, 2.0);
    CHECK(good * 5.0 < bad);

    // identical curves collapse perfectly for any nu
    std::vector<Series> same(3, curves[0]);
    CHECK(collapse_check(same, {32.0, 32.0, 32.0}, 1.7) < 1e-12);
}

TEST_CASE("series validation") {
    Series s;
    s.x = {0.0, 1.0};
    s.y = {0.0, 1.0};
    CHECK_THROWS(s.validate()); // fewer than 3 points
    s.x = {0.0, 2.0, 1.0};
    s.y = {0.0, 1.0, 2.0};
    CHECK_THROWS(s.validate()); // not increasing
}
