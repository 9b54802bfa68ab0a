#include <cmath>

#include <doctest.h>

#include "xychain/correlators.hpp"
#include "xychain/ed_oracle.hpp"

using namespace xychain;

TEST_CASE("dispersion endpoints") {
    ModelParams p;
    p.gamma = 0.5;
    p.h = 0.7;
    CHECK(dispersion(0.0, p) == doctest::Approx(std::abs(1.0 - p.h)).epsilon(1e-14));
    const double pi = 3.14159265358979323846;
    CHECK(dispersion(pi, p) == doctest::Approx(1.0 + p.h).epsilon(1e-14));
}

TEST_CASE("zero-field isotropic limit has closed-form correlators") {
    // gamma=1, h=0: G(k) = delta_{k,1}; the chain is a classical Neel pair in x
    ModelParams p;
    p.gamma = 1.0;
    p.h = 0.0;
    CHECK(std::abs(transverse_magnetization(p)) < 1e-12);
    CHECK(xx_correlator(1, p) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(xx_correlator(2, p) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(yy_correlator(1, p)) < 1e-12);
    CHECK(std::abs(zz_correlator(1, p)) < 1e-12);
}

TEST_CASE("strong-field limit approaches the polarized product state") {
    ModelParams p;
    p.gamma = 0.5;
    p.h = 50.0;
    CHECK(transverse_magnetization(p) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(std::abs(xx_correlator(1, p)) < 0.02);
}

TEST_CASE("finite chains match exact diagonalization") {
    for (double t : {0.0, 0.35}) {
        ModelParams p;
        p.gamma = 0.7;
        p.h = 0.85;
        p.temperature = t;
        p.size = 8;
        ed::OracleConfig oc;
        oc.n = 8;
        oc.gamma = p.gamma;
        oc.h = p.h;
        oc.temperature = t;
        for (int r : {1, 2, 3}) {
            const CorrelatorSet ours = correlator_set(r, p);
            const CorrelatorSet ref = ed::oracle_correlators(oc, r);
            CHECK(ours.sz == doctest::Approx(ref.sz).epsilon(1e-10));
            CHECK(ours.xx == doctest::Approx(ref.xx).epsilon(1e-10));
            CHECK(ours.yy == doctest::Approx(ref.yy).epsilon(1e-10));
            CHECK(ours.zz == doctest::Approx(ref.zz).epsilon(1e-10));
        }
    }
}

TEST_CASE("finite-size correlators converge to the thermodynamic limit") {
    ModelParams inf_p;
    inf_p.gamma = 0.5;
    inf_p.h = 1.4;
    const double target = xx_correlator(1, inf_p);
    ModelParams p = inf_p;
    p.size = 256;
    CHECK(xx_correlator(1, p) == doctest::Approx(target).epsilon(1e-8));
}

TEST_CASE("spontaneous magnetization closed form") {
    // m_x^2 = 2 (gamma^2 (1 - h^2))^{1/4} / (1 + gamma) in the ordered phase
    for (double g : {0.4, 0.8}) {
        for (double hh : {0.3, 0.6}) {
            ModelParams p;
            p.gamma = g;
            p.h = hh;
            p.sector = Sector::Broken;
            const double m = spontaneous_magnetization(p);
            const double expect =
                std::sqrt(2.0 * std::pow(g * g * (1.0 - hh * hh), 0.25) / (1.0 + g));
            CHECK(m == doctest::Approx(expect).epsilon(1e-6));
        }
    }
    // disordered phase: no order parameter
    ModelParams p;
    p.gamma = 0.4;
    p.h = 1.5;
    CHECK(spontaneous_magnetization(p) == 0.0);
}

TEST_CASE("broken sector factorizes at the factorizing field") {
    ModelParams p;
    p.gamma = 0.6;
    p.h = p.factorizing_field();
    p.sector = Sector::Broken;
    const CorrelatorSet c = correlator_set(1, p);
    CHECK(c.xx == doctest::Approx(c.mx * c.mx).epsilon(1e-8));
    CHECK(c.xz == doctest::Approx(c.mx * c.sz).epsilon(1e-8));
    CHECK(c.zx == doctest::Approx(c.mx * c.sz).epsilon(1e-8));
    CHECK(c.zz == doctest::Approx(c.sz * c.sz).epsilon(1e-8));
    // mx^2 = 2 gamma / (1 + gamma) at h_f
    CHECK(c.mx * c.mx == doctest::Approx(2.0 * 0.6 / 1.6).epsilon(1e-8));
}

TEST_CASE("asymptotic separation") {
    ModelParams p;
    p.gamma = 0.5;
    p.h = 0.6;
    const CorrelatorSet sym = correlator_set(kInfinite, p);
    const double m2 = 2.0 * std::pow(0.25 * (1.0 - 0.36), 0.25) / 1.5;
    CHECK(sym.xx == doctest::Approx(m2).epsilon(1e-6));
    CHECK(sym.zz == doctest::Approx(sym.sz * sym.sz).epsilon(1e-12));
    CHECK(sym.yy == 0.0);
    // disordered side: all connected parts die off
    p.h = 1.5;
    const CorrelatorSet far = correlator_set(kInfinite, p);
    CHECK(far.xx == 0.0);
    CHECK(far.zz == doctest::Approx(far.sz * far.sz).epsilon(1e-12));
}

TEST_CASE("thermal factor and infinite-temperature death") {
    CHECK(thermal_factor(2.0, 0.0) == doctest::Approx(1.0));
    CHECK(thermal_factor(2.0, 1.0) == doctest::Approx(std::tanh(1.0)).epsilon(1e-14));
    ModelParams p;
    p.gamma = 0.5;
    p.h = 0.8;
    p.temperature = 1e4;
    CHECK(std::abs(transverse_magnetization(p)) < 1e-3);
    CHECK(std::abs(xx_correlator(1, p)) < 1e-3);
}

TEST_CASE("corrupted contraction sign is detected downstream") {
    ModelParams p;
    p.gamma = 0.5;
    p.h = 0.8;
    const double clean = xx_correlator(1, p);
    testing::corrupt_contraction_sign(true);
    const double dirty = xx_correlator(1, p);
    testing::corrupt_contraction_sign(false);
    CHECK(std::abs(clean - dirty) > 1e-3);
    CHECK(xx_correlator(1, p) == doctest::Approx(clean).epsilon(1e-14));
}
