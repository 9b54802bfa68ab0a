#pragma once

#include <complex>
#include <functional>

#include <Eigen/Dense>

#include "xychain/model.hpp"

namespace xychain {

// Point on the unit sphere; n.sigma is the d=2 root-of-unity local unitary.
struct BlochDirection {
    double theta = 0.0; // polar, [0,pi]
    double phi = 0.0;   // azimuth, [0,2pi)
    Eigen::Vector3d unit() const {
        return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
    }
};

enum class Metric { Trace, HilbertSchmidt };

struct MeasureRecord {
    ModelParams params;
    int r = 1;
    double concurrence = 0.0;
    double entanglement_of_response = 0.0;
    double discord_tr = 0.0;
    double discord_hs = 0.0;
    BlochDirection argmin_direction;
    int optimizer_evals = 0;
    bool converged = false;
};

// D_Tr(rho,sigma) = 1/2 Tr|rho - sigma|.
double trace_distance(const Eigen::Matrix4cd& rho, const Eigen::Matrix4cd& sigma);

// Frobenius distance normalized so two orthogonal pure states give 1.
double hilbert_schmidt_distance(const Eigen::Matrix4cd& rho, const Eigen::Matrix4cd& sigma);

// Wootters concurrence of a real two-qubit density matrix.
double concurrence(const Eigen::Matrix4d& rho);

// Two-qubit closed form: squared concurrence.
double entanglement_of_response(const Eigen::Matrix4d& rho);

// Direct minimization of Eq.-(1)-type squared trace distance for a pure state;
// equals 4 l1^2 l2^2 in terms of the Schmidt coefficients.
double pure_entanglement_of_response(const Eigen::Vector4cd& psi);

struct SphereOptimum {
    double value = 0.0;
    BlochDirection argmin;
    int evals = 0;
    bool converged = false;
};

// Deterministic two-stage global search: 256-point Fibonacci hemisphere
// lattice, then Nelder-Mead refinement around the best three seeds.
SphereOptimum optimize_over_sphere(const std::function<double(const BlochDirection&)>& objective);

// Minimal squared distance between rho and (n.sigma x I) rho (n.sigma x I).
SphereOptimum discord_of_response(const Eigen::Matrix4d& rho, Metric metric);

// Full record for a pair state (concurrence, E, both discords).
MeasureRecord measure_state(const Eigen::Matrix4d& rho, const ModelParams& params, int r);

// The conjugated state (n.sigma x I) rho (n.sigma x I); exposed for tests.
Eigen::Matrix4cd unitary_image(const Eigen::Matrix4cd& rho, const BlochDirection& n);

} // namespace xychain
