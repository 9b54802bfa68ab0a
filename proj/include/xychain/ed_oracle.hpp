#pragma once

#include <Eigen/Dense>

#include "xychain/correlators.hpp"
#include "xychain/measures.hpp"
#include "xychain/state.hpp"

namespace xychain::ed {

// Small-chain exact-diagonalization reference. Dense eigensolves up to n=12;
// n=13,14 ground states only, via Lanczos. The pinning field is staggered,
// -eps * sum_i (-1)^i sigma^x_i, matching the staggered order parameter of
// the antiferromagnetic chain and selecting the branch with positive
// staggered magnetization.
struct OracleConfig {
    int n = 8;
    double gamma = 1.0;
    double h = 0.0;
    double temperature = 0.0;
    double pinning_epsilon = 0.0;

    void validate() const {
        if (n < 2 || n > 14) throw BudgetExceeded("ed: chain length outside 2..14");
        if (temperature > 0.0 && n > 12)
            throw BudgetExceeded("ed: Gibbs states need the full spectrum, n <= 12");
        if (pinning_epsilon < 0.0) throw InvalidParams("ed: pinning_epsilon must be >= 0");
        if (pinning_epsilon > 0.0 && temperature != 0.0)
            throw InvalidParams("ed: pinning requires temperature = 0");
    }
};

// Dense 2^n x 2^n Hamiltonian of the periodic XY chain. Basis: bit j of the
// index is the spin at site j, 0 = up, sigma^z|up> = +|up>.
Eigen::MatrixXd build_hamiltonian(const OracleConfig& config);

double ground_energy(const OracleConfig& config);

// Lowest eigenvector; at an eps=0 near-degeneracy the even global phase-flip
// parity combination is selected.
Eigen::VectorXd ground_state(const OracleConfig& config);

// exp(-H/T)/Z from the full eigendecomposition (T=0 falls back to the
// ground-state projector).
Eigen::MatrixXd gibbs_state(const OracleConfig& config);

// Partial trace onto sites (i,j) with site i the first tensor factor.
Eigen::Matrix4d reduce_to_pair(const Eigen::VectorXd& state, int n, int i, int j);
Eigen::Matrix4d reduce_to_pair(const Eigen::MatrixXd& rho, int n, int i, int j);

Eigen::Matrix4d pair_state(const OracleConfig& config, int r);

// Correlators of the pair (0,r) read off the reduced matrix.
CorrelatorSet oracle_correlators(const OracleConfig& config, int r);

MeasureRecord oracle_measures(const OracleConfig& config, int r);

} // namespace xychain::ed
