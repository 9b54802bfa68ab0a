#pragma once

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include "xychain/correlators.hpp"

namespace xychain {

// Two-site reduced density matrix in the product basis |uu>,|ud>,|du>,|dd>
// with sigma^z|u> = +|u>. Real symmetric since the Hamiltonian is real.
struct TwoSiteDensityMatrix {
    Eigen::Matrix4d elements = Eigen::Matrix4d::Zero();
    Sector sector = Sector::Symmetric;
    int r = 1;
    ModelParams params;

    double purity() const { return (elements * elements).trace(); }
};

// Pauli expansion of the pair state from its correlators; clamps rounding-level
// negative eigenvalues, throws PositivityViolation below -1e-6.
TwoSiteDensityMatrix build_rho(const CorrelatorSet& c);

// beta with tan(beta) = <sigma^x>/<sigma^z>; direction of the classical
// pointer operator O = cos(beta) sigma^z + sin(beta) sigma^x.
double classical_pointer_angle(const CorrelatorSet& c);

// Frobenius norm of [O(beta) x O(beta), rho]; zero iff rho is diagonal in the
// O x O eigenbasis structure.
double classicality_defect(const TwoSiteDensityMatrix& rho, double beta);

nlohmann::json density_matrix_to_json(const TwoSiteDensityMatrix& rho);
TwoSiteDensityMatrix density_matrix_from_json(const nlohmann::json& j);

} // namespace xychain
