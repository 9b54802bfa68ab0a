#include "xychain/quadrature.hpp"

#include <cmath>
#include <vector>

#include "xychain/errors.hpp"

namespace xychain {

void gauss_legendre(int n, double* nodes, double* weights) {
    const double pi = std::acos(-1.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[n - 1 - i] = weights[i];
    }
}

namespace {

constexpr int kOrder = 16;

struct Rule {
    double x[kOrder];
    double w[kOrder];
    Rule() { gauss_legendre(kOrder, x, w); }
};

const Rule& rule() {
    static const Rule r;
    return r;
}

double panels(const std::function<double(double)>& f, double a, double b, int n) {
    const Rule& r = rule();
    const double dx = (b - a) / n;
    double sum = 0.0;
    for (int p = 0; p < n; ++p) {
        const double lo = a + p * dx;
        const double mid = lo + 0.5 * dx;
        double s = 0.0;
        for (int i = 0; i < kOrder; ++i) s += r.w[i] * f(mid + 0.5 * dx * r.x[i]);
        sum += 0.5 * dx * s;
    }
    return sum;
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, int max_doublings) {
    double prev = panels(f, a, b, 1);
    int n = 1;
    for (int d = 0; d < max_doublings; ++d) {
        n *= 2;
        const double cur = panels(f, a, b, n);
        const double err = std::abs(cur - prev);
        // |cur - prev| overestimates the error of cur for a rule this sharp
        if (err < abs_tol) return cur;
        prev = cur;
    }
    throw QuadratureFailure("quadrature: tolerance not reached after panel doubling cap");
}

} // namespace xychain
