#include <cmath>
#include <random>

#include <doctest.h>
#include <Eigen/Dense>

#include "xychain/measures.hpp"

using namespace xychain;

namespace {

Eigen::Matrix4d bell_phi_plus() {
    Eigen::Vector4d psi;
    psi << 1.0 / std::sqrt(2.0), 0, 0, 1.0 / std::sqrt(2.0);
    return psi * psi.transpose();
}

Eigen::Matrix4d werner(double p) {
    return p * bell_phi_plus() + (1.0 - p) * Eigen::Matrix4d::Identity() / 4.0;
}

} // namespace

TEST_CASE("concurrence of reference states") {
    CHECK(concurrence(bell_phi_plus()) == doctest::Approx(1.0).epsilon(1e-12));
    Eigen::Matrix4d product = Eigen::Matrix4d::Zero();
    product(0, 0) = 1.0; // |uu>
    CHECK(concurrence(product) == doctest::Approx(0.0));
    // Werner state: C = max(0, (3p - 1)/2)
    CHECK(concurrence(werner(0.8)) == doctest::Approx(0.7).epsilon(1e-10));
    CHECK(concurrence(werner(0.2)) == doctest::Approx(0.0));
}

TEST_CASE("entanglement of response equals concurrence squared") {
    for (double p : {0.1, 0.5, 0.9}) {
        const double c = concurrence(werner(p));
        CHECK(entanglement_of_response(werner(p)) ==
              doctest::Approx(c * c).epsilon(1e-10));
    }
}

TEST_CASE("distances on orthogonal pure states") {
    Eigen::Matrix4cd a = Eigen::Matrix4cd::Zero();
    Eigen::Matrix4cd b = Eigen::Matrix4cd::Zero();
    a(0, 0) = 1.0;
    b(3, 3) = 1.0;
    CHECK(trace_distance(a, b) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(hilbert_schmidt_distance(a, b) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(trace_distance(a, a) == doctest::Approx(0.0));
}

TEST_CASE("unitary image is a proper involution") {
    const Eigen::Matrix4cd rho = werner(0.6).cast<std::complex<double>>();
    BlochDirection n;
    n.theta = 1.1;
    n.phi = 2.3;
    const Eigen::Matrix4cd img = unitary_image(rho, n);
    CHECK(std::abs(img.trace().real() - 1.0) < 1e-13);
    CHECK((img - img.adjoint()).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((unitary_image(img, n) - rho).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("sphere optimizer finds a known minimum") {
    // f(n) = (n_z - 1)^2 has its minimum 0 at the north pole
    auto f = [](const BlochDirection& n) {
        const double nz = std::cos(n.theta);
        return (nz - 1.0) * (nz - 1.0);
    };
    const SphereOptimum opt = optimize_over_sphere(f);
    CHECK(opt.value < 1e-10);
    CHECK(std::abs(std::cos(opt.argmin.theta) - 1.0) < 1e-5);
    CHECK(opt.converged);
}

TEST_CASE("pure-state identity on deterministic random states") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> nd;
    for (int t = 0; t < 50; ++t) {
        Eigen::Vector4d psi;
        for (int i = 0; i < 4; ++i) psi(i) = nd(rng);
        psi.normalize();
        const Eigen::Matrix4d rho = psi * psi.transpose();
        const double c2 = concurrence(rho) * concurrence(rho);
        CHECK(pure_entanglement_of_response(psi.cast<std::complex<double>>()) ==
              doctest::Approx(c2).epsilon(1e-7));
        CHECK(discord_of_response(rho, Metric::Trace).value ==
              doctest::Approx(c2).epsilon(1e-7));
    }
}

TEST_CASE("discord dominates entanglement and vanishes on classical states") {
    const Eigen::Matrix4d rho = werner(0.7);
    const double q = discord_of_response(rho, Metric::Trace).value;
    CHECK(q >= entanglement_of_response(rho) - 1e-8);
    // a diagonal state commutes with sigma_z x sigma_z
    Eigen::Matrix4d classical = Eigen::Matrix4d::Zero();
    classical(0, 0) = 0.4;
    classical(1, 1) = 0.3;
    classical(2, 2) = 0.2;
    classical(3, 3) = 0.1;
    CHECK(discord_of_response(classical, Metric::Trace).value < 1e-10);
    CHECK(discord_of_response(classical, Metric::HilbertSchmidt).value < 1e-10);
}
