#include <cmath>
#include <random>

#include <doctest.h>
#include <Eigen/Dense>

#include "xychain/pfaffian.hpp"

using namespace xychain;

namespace {

Eigen::MatrixXd random_skew(int n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            a(i, j) = nd(rng);
            a(j, i) = -a(i, j);
        }
    return a;
}

} // namespace

TEST_CASE("pfaffian of the canonical 2x2 block") {
    Eigen::MatrixXd a(2, 2);
    a << 0, 3, -3, 0;
    CHECK(pfaffian(a) == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("pfaffian of a 4x4 with known value") {
    // Pf = a01*a23 - a02*a13 + a03*a12
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(4, 4);
    const double v[6] = {1.5, -2.0, 0.5, 3.0, -1.0, 2.5};
    int k = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            a(i, j) = v[k];
            a(j, i) = -v[k];
            ++k;
        }
    const double expected = v[0] * v[5] - v[1] * v[4] + v[2] * v[3];
    CHECK(pfaffian(a) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("pfaffian squared equals the determinant") {
    for (int n : {4, 6, 8, 12}) {
        Eigen::MatrixXd a = random_skew(n, 100 + static_cast<unsigned>(n));
        const double det = a.determinant();
        const double pf = pfaffian(a); // consumes a as workspace
        CHECK(pf * pf == doctest::Approx(det).epsilon(1e-10));
    }
}

TEST_CASE("odd dimension gives zero") {
    Eigen::MatrixXd a = random_skew(5, 7);
    CHECK(std::abs(pfaffian(a)) < 1e-12);
}

TEST_CASE("row swap flips the sign") {
    Eigen::MatrixXd a = random_skew(6, 42);
    Eigen::MatrixXd b = a;
    b.row(0).swap(b.row(1));
    b.col(0).swap(b.col(1));
    Eigen::MatrixXd aw = a, bw = b;
    CHECK(pfaffian(aw) == doctest::Approx(-pfaffian(bw)).epsilon(1e-12));
}
