#include "xychain/state.hpp"

#include <cmath>
#include <string>

#include <nlohmann/json.hpp>

namespace xychain {

namespace {

Eigen::Matrix4d kron2(const Eigen::Matrix2d& p, const Eigen::Matrix2d& q) {
    Eigen::Matrix4d k;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) k.block<2, 2>(2 * a, 2 * b) = p(a, b) * q;
    return k;
}

const Eigen::Matrix2d kId = Eigen::Matrix2d::Identity();

Eigen::Matrix2d pauli_x() {
    Eigen::Matrix2d m;
    m << 0, 1, 1, 0;
    return m;
}

Eigen::Matrix2d pauli_z() {
    Eigen::Matrix2d m;
    m << 1, 0, 0, -1;
    return m;
}

// sigma^y x sigma^y is real
Eigen::Matrix4d pauli_yy() {
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m(0, 3) = -1;
    m(1, 2) = 1;
    m(2, 1) = 1;
    m(3, 0) = -1;
    return m;
}

std::string size_to_json_field(int size) {
    return size == kInfinite ? "inf" : std::to_string(size);
}

} // namespace

TwoSiteDensityMatrix build_rho(const CorrelatorSet& c) {
    const Eigen::Matrix2d sx = pauli_x(), sz = pauli_z();
    Eigen::Matrix4d rho = Eigen::Matrix4d::Identity();
    rho += c.sz * (kron2(sz, kId) + kron2(kId, sz));
    rho += c.mx * (kron2(sx, kId) + kron2(kId, sx));
    rho += c.xx * kron2(sx, sx);
    rho += c.yy * pauli_yy();
    rho += c.zz * kron2(sz, sz);
    rho += c.xz * kron2(sx, sz);
    rho += c.zx * kron2(sz, sx);
    rho *= 0.25;

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(rho);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -1e-6)
        throw PositivityViolation("two-site state: eigenvalue " +
                                  std::to_string(min_eig) + " below -1e-6");
    if (min_eig < 0.0) {
        Eigen::Vector4d lam = es.eigenvalues().cwiseMax(0.0);
        lam /= lam.sum();
        rho = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
    }

    TwoSiteDensityMatrix out;
    out.elements = 0.5 * (rho + rho.transpose());
    out.sector = c.params.sector;
    out.r = c.r;
    out.params = c.params;
    return out;
}

double classical_pointer_angle(const CorrelatorSet& c) {
    if (std::abs(c.mx) < 1e-12 && std::abs(c.sz) < 1e-12)
        throw DegenerateAngle("pointer angle undefined: <sigma^x> = <sigma^z> = 0");
    return std::atan2(c.mx, c.sz);
}

double classicality_defect(const TwoSiteDensityMatrix& rho, double beta) {
    const Eigen::Matrix2d o =
        std::cos(beta) * pauli_z() + std::sin(beta) * pauli_x();
    const Eigen::Matrix4d oo = kron2(o, o);
    return (oo * rho.elements - rho.elements * oo).norm();
}

nlohmann::json density_matrix_to_json(const TwoSiteDensityMatrix& rho) {
    nlohmann::json j;
    j["basis"] = "uu ud du dd";
    std::vector<double> elems;
    elems.reserve(16);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) elems.push_back(rho.elements(a, b));
    j["elements"] = elems;
    j["sector"] = to_string(rho.sector);
    j["r"] = rho.r == kInfinite ? nlohmann::json("inf") : nlohmann::json(rho.r);
    j["params"] = {{"gamma", rho.params.gamma},
                   {"h", rho.params.h},
                   {"temperature", rho.params.temperature},
                   {"size", size_to_json_field(rho.params.size)},
                   {"sector", to_string(rho.params.sector)}};
    return j;
}

TwoSiteDensityMatrix density_matrix_from_json(const nlohmann::json& j) {
    TwoSiteDensityMatrix rho;
    const auto& elems = j.at("elements");
    if (elems.size() != 16)
        throw InvalidParams("density matrix json: need 16 elements");
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            rho.elements(a, b) = elems[static_cast<size_t>(4 * a + b)].get<double>();
    const std::string sec = j.at("sector").get<std::string>();
    rho.sector = sec == "broken" ? Sector::Broken : Sector::Symmetric;
    const auto& jr = j.at("r");
    rho.r = jr.is_string() ? kInfinite : jr.get<int>();
    const auto& p = j.at("params");
    rho.params.gamma = p.at("gamma").get<double>();
    rho.params.h = p.at("h").get<double>();
    rho.params.temperature = p.at("temperature").get<double>();
    const auto& js = p.at("size");
    rho.params.size = js.is_string() ? kInfinite : js.get<int>();
    rho.params.sector = p.at("sector").get<std::string>() == "broken"
                            ? Sector::Broken
                            : Sector::Symmetric;
    return rho;
}

} // namespace xychain
