#pragma once

#include <cmath>
#include <string>

#include "xychain/errors.hpp"

namespace xychain {

enum class Sector { Symmetric, Broken };

inline const char* to_string(Sector s) {
    return s == Sector::Symmetric ? "symmetric" : "broken";
}

// Sentinel for the thermodynamic limit (chain length) and for the
// asymptotic-separation limit (two-point distance).
inline constexpr int kInfinite = -1;

// One physical point of the transverse-field XY chain.
struct ModelParams {
    double gamma = 1.0;        // anisotropy, in [0,1]
    double h = 0.0;            // transverse field, >= 0
    double temperature = 0.0;  // 0 = ground state
    int size = kInfinite;      // chain length N, or kInfinite
    Sector sector = Sector::Symmetric;

    bool infinite() const { return size == kInfinite; }

    // h_f = sqrt(1 - gamma^2): the field where the broken ground states factorize.
    double factorizing_field() const { return std::sqrt(std::max(0.0, 1.0 - gamma * gamma)); }
    static constexpr double critical_field() { return 1.0; }

    void validate() const {
        if (!(gamma >= 0.0 && gamma <= 1.0))
            throw InvalidParams("gamma must lie in [0,1]");
        if (!(h >= 0.0))
            throw InvalidParams("h must be >= 0");
        if (!(temperature >= 0.0))
            throw InvalidParams("temperature must be >= 0");
        if (!infinite()) {
            if (size < 2)
                throw InvalidParams("finite chain length must be >= 2");
            if (size % 2 != 0)
                throw InvalidParams("finite chain length must be even (sublattice rotation of the antiferromagnet)");
        }
        if (sector == Sector::Broken) {
            if (!infinite())
                throw InvalidParams("broken sector requires the thermodynamic limit");
            if (temperature != 0.0)
                throw InvalidParams("broken sector requires temperature = 0");
            if (!(gamma > 0.0))
                throw InvalidParams("broken sector requires gamma > 0");
            if (!(h < 1.0))
                throw InvalidParams("broken sector requires h < 1");
        }
    }
};

} // namespace xychain
