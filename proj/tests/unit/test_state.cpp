#include <cmath>

#include <doctest.h>
#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "xychain/correlators.hpp"
#include "xychain/state.hpp"

using namespace xychain;

namespace {

CorrelatorSet sample_set(Sector sector) {
    ModelParams p;
    p.gamma = 0.5;
    p.h = 0.7;
    p.sector = sector;
    return correlator_set(1, p);
}

} // namespace

TEST_CASE("two-site state is a valid density matrix") {
    for (Sector s : {Sector::Symmetric, Sector::Broken}) {
        const TwoSiteDensityMatrix rho = build_rho(sample_set(s));
        CHECK(rho.elements.trace() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK((rho.elements - rho.elements.transpose()).cwiseAbs().maxCoeff() <
              1e-13);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(rho.elements);
        CHECK(es.eigenvalues()(0) > -1e-12);
        CHECK(rho.purity() <= 1.0 + 1e-12);
    }
}

TEST_CASE("symmetric sector gives an X state") {
    const TwoSiteDensityMatrix rho = build_rho(sample_set(Sector::Symmetric));
    // phase-flip symmetry kills everything off the X pattern
    const Eigen::Matrix4d& m = rho.elements;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const bool on_x = (i == j) || (i + j == 3);
            if (!on_x) CHECK(std::abs(m(i, j)) < 1e-13);
        }
}

TEST_CASE("broken sector at the factorizing field is a pure product pair") {
    ModelParams p;
    p.gamma = 0.6;
    p.h = p.factorizing_field();
    p.sector = Sector::Broken;
    const TwoSiteDensityMatrix rho = build_rho(correlator_set(1, p));
    CHECK(rho.purity() == doctest::Approx(1.0).epsilon(1e-6));
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(rho.elements);
    CHECK(es.eigenvalues()(3) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(es.eigenvalues()(0)) < 1e-6);
}

TEST_CASE("unphysical correlators are rejected") {
    CorrelatorSet c;
    c.sz = 1.4; // |<sigma_z>| > 1 cannot come from a state
    CHECK_THROWS_AS(build_rho(c), PositivityViolation);
}

TEST_CASE("classical pointer angle") {
    CorrelatorSet c = sample_set(Sector::Broken);
    const double angle = classical_pointer_angle(c);
    CHECK(angle == doctest::Approx(std::atan2(c.mx, c.sz)).epsilon(1e-12));
    CorrelatorSet zero;
    zero.sz = 0.0;
    zero.mx = 0.0;
    CHECK_THROWS_AS(classical_pointer_angle(zero), DegenerateAngle);
}

TEST_CASE("json round trip preserves the state") {
    const TwoSiteDensityMatrix rho = build_rho(sample_set(Sector::Symmetric));
    const nlohmann::json j = density_matrix_to_json(rho);
    CHECK(j.at("basis") == "uu ud du dd");
    const TwoSiteDensityMatrix back = density_matrix_from_json(j);
    CHECK((rho.elements - back.elements).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(back.sector == rho.sector);
    CHECK(back.r == rho.r);
}
