#include <cmath>

#include <doctest.h>
#include <Eigen/Dense>

#include "xychain/ed_oracle.hpp"

using namespace xychain;

TEST_CASE("hamiltonian is symmetric and parity preserving") {
    ed::OracleConfig oc;
    oc.n = 6;
    oc.gamma = 0.7;
    oc.h = 0.8;
    const Eigen::MatrixXd ham = ed::build_hamiltonian(oc);
    CHECK((ham - ham.transpose()).cwiseAbs().maxCoeff() < 1e-13);
    // [H, P] = 0 for the global phase flip P = prod sigma^z without pinning:
    // entries only connect states of equal magnetization parity.
    const int dim = 1 << oc.n;
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) {
            if (std::abs(ham(a, b)) < 1e-14) continue;
            const int pa = __builtin_popcount(static_cast<unsigned>(a)) & 1;
            const int pb = __builtin_popcount(static_cast<unsigned>(b)) & 1;
            CHECK(pa == pb);
        }
}

TEST_CASE("lanczos agrees with the dense ground energy") {
    ed::OracleConfig oc;
    oc.n = 8;
    oc.gamma = 0.4;
    oc.h = 1.3;
    const Eigen::MatrixXd ham = ed::build_hamiltonian(oc);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ham);
    CHECK(ed::ground_energy(oc) ==
          doctest::Approx(es.eigenvalues()(0)).epsilon(1e-10));
}

TEST_CASE("ground state is normalized and an eigenvector") {
    ed::OracleConfig oc;
    oc.n = 8;
    oc.gamma = 0.6;
    oc.h = 0.5;
    const Eigen::VectorXd v = ed::ground_state(oc);
    CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-12));
    const Eigen::MatrixXd ham = ed::build_hamiltonian(oc);
    const Eigen::VectorXd hv = ham * v;
    const double e = v.dot(hv);
    CHECK((hv - e * v).norm() < 1e-8);
}

TEST_CASE("gibbs state basics") {
    ed::OracleConfig oc;
    oc.n = 6;
    oc.gamma = 0.5;
    oc.h = 0.9;
    oc.temperature = 0.7;
    const Eigen::MatrixXd rho = ed::gibbs_state(oc);
    CHECK(rho.trace() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((rho - rho.transpose()).cwiseAbs().maxCoeff() < 1e-13);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rho);
    CHECK(es.eigenvalues()(0) > -1e-13);
    // very hot chain: close to maximally mixed
    oc.temperature = 1e4;
    const Eigen::MatrixXd hot = ed::gibbs_state(oc);
    const int dim = 1 << oc.n;
    CHECK((hot - Eigen::MatrixXd::Identity(dim, dim) / dim).cwiseAbs().maxCoeff() <
          1e-3);
}

TEST_CASE("pair reduction of a product state") {
    // |up down up up> on 4 sites: reduced pair (0,1) is |up down><up down|
    const int n = 4;
    Eigen::VectorXd psi = Eigen::VectorXd::Zero(1 << n);
    // bit j of the index is the spin at site j, 0 = up
    psi(1 << 1) = 1.0; // site 1 down
    const Eigen::Matrix4d pair = ed::reduce_to_pair(psi, n, 0, 1);
    CHECK(pair.trace() == doctest::Approx(1.0));
    CHECK(pair(1, 1) == doctest::Approx(1.0)); // basis uu, ud, du, dd
}

TEST_CASE("reduced pair state is a valid density matrix") {
    ed::OracleConfig oc;
    oc.n = 8;
    oc.gamma = 0.3;
    oc.h = 1.1;
    for (int r : {1, 2, 3}) {
        const Eigen::Matrix4d rho = ed::pair_state(oc, r);
        CHECK(rho.trace() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK((rho - rho.transpose()).cwiseAbs().maxCoeff() < 1e-12);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(rho);
        CHECK(es.eigenvalues()(0) > -1e-12);
    }
}

TEST_CASE("pinning selects a factorized branch at the factorizing field") {
    ed::OracleConfig oc;
    oc.n = 10;
    oc.gamma = 0.6;
    oc.h = 0.8; // = sqrt(1 - 0.36)
    oc.pinning_epsilon = 0.01;
    const CorrelatorSet c = ed::oracle_correlators(oc, 1);
    CHECK(c.mx > 0.1);
    // product-state factorization: <xx> ~ mx^2, <xz> ~ mx * sz
    CHECK(c.xx == doctest::Approx(c.mx * c.mx).epsilon(0.05));
    CHECK(c.xz == doctest::Approx(c.mx * c.sz).epsilon(0.05));
}
