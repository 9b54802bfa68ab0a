#include <doctest.h>

#include "xychain/model.hpp"

using namespace xychain;

TEST_CASE("factorizing and critical fields") {
    ModelParams p;
    p.gamma = 0.6;
    CHECK(p.factorizing_field() == doctest::Approx(0.8).epsilon(1e-12));
    p.gamma = 1.0;
    CHECK(p.factorizing_field() == doctest::Approx(0.0));
    p.gamma = 0.0;
    CHECK(p.factorizing_field() == doctest::Approx(1.0));
    CHECK(ModelParams::critical_field() == 1.0);
}

TEST_CASE("parameter validation") {
    ModelParams p;
    p.gamma = 0.5;
    p.h = 0.7;
    CHECK_NOTHROW(p.validate());

    SUBCASE("gamma outside [0,1]") {
        p.gamma = 1.5;
        CHECK_THROWS_AS(p.validate(), InvalidParams);
    }
    SUBCASE("negative field") {
        p.h = -0.1;
        CHECK_THROWS_AS(p.validate(), InvalidParams);
    }
    SUBCASE("negative temperature") {
        p.temperature = -1.0;
        CHECK_THROWS_AS(p.validate(), InvalidParams);
    }
    SUBCASE("odd chain length") {
        p.size = 7;
        CHECK_THROWS_AS(p.validate(), InvalidParams);
    }
    SUBCASE("even chain length ok") {
        p.size = 8;
        CHECK_NOTHROW(p.validate());
    }
    SUBCASE("broken sector constraints") {
        p.sector = Sector::Broken;
        CHECK_NOTHROW(p.validate()); // infinite, T=0, gamma>0, h<1
        ModelParams q = p;
        q.size = 10;
        CHECK_THROWS_AS(q.validate(), InvalidParams);
        q = p;
        q.temperature = 0.1;
        CHECK_THROWS_AS(q.validate(), InvalidParams);
        q = p;
        q.gamma = 0.0;
        CHECK_THROWS_AS(q.validate(), InvalidParams);
        q = p;
        q.h = 1.2;
        CHECK_THROWS_AS(q.validate(), InvalidParams);
    }
}

TEST_CASE("sector names") {
    CHECK(std::string(to_string(Sector::Symmetric)) == "symmetric");
    CHECK(std::string(to_string(Sector::Broken)) == "broken");
}
