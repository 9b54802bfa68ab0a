#include "xychain/measures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "xychain/errors.hpp"

namespace xychain {

namespace {

constexpr double kPi = 3.14159265358979323846;

Eigen::Matrix2cd direction_unitary(const BlochDirection& n) {
    const Eigen::Vector3d u = n.unit();
    Eigen::Matrix2cd m;
    m << u.z(), std::complex<double>(u.x(), -u.y()),
         std::complex<double>(u.x(), u.y()), -u.z();
    return m;
}

Eigen::Matrix4cd kron_with_identity(const Eigen::Matrix2cd& p) {
    Eigen::Matrix4cd k = Eigen::Matrix4cd::Zero();
    k.block<2, 2>(0, 0) = p(0, 0) * Eigen::Matrix2cd::Identity();
    k.block<2, 2>(0, 2) = p(0, 1) * Eigen::Matrix2cd::Identity();
    k.block<2, 2>(2, 0) = p(1, 0) * Eigen::Matrix2cd::Identity();
    k.block<2, 2>(2, 2) = p(1, 1) * Eigen::Matrix2cd::Identity();
    return k;
}

// Nelder-Mead on (theta, phi); the objective is smooth and 2pi-periodic, so
// the parametrization needs no constraints.
struct NmResult {
    double value;
    std::array<double, 2> x;
    int evals;
    bool converged;
};

NmResult nelder_mead(const std::function<double(const BlochDirection&)>& f,
                     std::array<double, 2> seed, double step) {
    struct Vertex {
        std::array<double, 2> x;
        double v;
    };
    int evals = 0;
    auto eval = [&](const std::array<double, 2>& x) {
        ++evals;
        return f(BlochDirection{x[0], x[1]});
    };
    std::array<Vertex, 3> s{Vertex{seed, eval(seed)},
                            Vertex{{seed[0] + step, seed[1]}, 0.0},
                            Vertex{{seed[0], seed[1] + step}, 0.0}};
    s[1].v = eval(s[1].x);
    s[2].v = eval(s[2].x);
    bool converged = false;
    for (int it = 0; it < 400; ++it) {
        std::sort(s.begin(), s.end(),
                  [](const Vertex& a, const Vertex& b) { return a.v < b.v; });
        const double spread = s[2].v - s[0].v;
        const double size = std::max(
            std::hypot(s[1].x[0] - s[0].x[0], s[1].x[1] - s[0].x[1]),
            std::hypot(s[2].x[0] - s[0].x[0], s[2].x[1] - s[0].x[1]));
        if (spread < 1e-13 && size < 1e-8) {
            converged = true;
            break;
        }
        const std::array<double, 2> c{0.5 * (s[0].x[0] + s[1].x[0]),
                                      0.5 * (s[0].x[1] + s[1].x[1])};
        auto along = [&](double t) {
            return std::array<double, 2>{c[0] + t * (c[0] - s[2].x[0]),
                                         c[1] + t * (c[1] - s[2].x[1])};
        };
        const auto xr = along(1.0);
        const double vr = eval(xr);
        if (vr < s[0].v) {
            const auto xe = along(2.0);
            const double ve = eval(xe);
            if (ve < vr) s[2] = {xe, ve};
            else s[2] = {xr, vr};
        } else if (vr < s[1].v) {
            s[2] = {xr, vr};
        } else {
            const auto xc = along(vr < s[2].v ? 0.5 : -0.5);
            const double vc = eval(xc);
            if (vc < std::min(vr, s[2].v)) {
                s[2] = {xc, vc};
            } else { // shrink toward the best vertex
                for (int i = 1; i < 3; ++i) {
                    s[i].x = {0.5 * (s[i].x[0] + s[0].x[0]),
                              0.5 * (s[i].x[1] + s[0].x[1])};
                    s[i].v = eval(s[i].x);
                }
            }
        }
    }
    std::sort(s.begin(), s.end(),
              [](const Vertex& a, const Vertex& b) { return a.v < b.v; });
    return {s[0].v, s[0].x, evals, converged};
}

} // namespace

double trace_distance(const Eigen::Matrix4cd& rho, const Eigen::Matrix4cd& sigma) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho - sigma,
                                                       Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double hilbert_schmidt_distance(const Eigen::Matrix4cd& rho,
                                const Eigen::Matrix4cd& sigma) {
    return std::sqrt(0.5 * (rho - sigma).squaredNorm());
}

double concurrence(const Eigen::Matrix4d& rho) {
    Eigen::Matrix4d yy = Eigen::Matrix4d::Zero();
    yy(0, 3) = -1;
    yy(1, 2) = 1;
    yy(2, 1) = 1;
    yy(3, 0) = -1;
    const Eigen::Matrix4d r = rho * yy * rho * yy; // rho real: conj(rho) = rho
    Eigen::EigenSolver<Eigen::Matrix4d> es(r, /*computeEigenvectors=*/false);
    std::array<double, 4> lam{};
    for (int i = 0; i < 4; ++i)
        lam[static_cast<size_t>(i)] =
            std::sqrt(std::max(0.0, es.eigenvalues()(i).real()));
    std::sort(lam.begin(), lam.end(), std::greater<double>());
    return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

double entanglement_of_response(const Eigen::Matrix4d& rho) {
    const double c = concurrence(rho);
    return c * c;
}

double pure_entanglement_of_response(const Eigen::Vector4cd& psi) {
    auto objective = [&](const BlochDirection& n) {
        const Eigen::Matrix4cd u = kron_with_identity(direction_unitary(n));
        const std::complex<double> overlap = psi.dot(u * psi);
        return 1.0 - std::norm(overlap);
    };
    return optimize_over_sphere(objective).value;
}

SphereOptimum optimize_over_sphere(
    const std::function<double(const BlochDirection&)>& objective) {
    // Stage 1: Fibonacci lattice on the upper hemisphere. The conjugation is
    // insensitive to n -> -n, so half the sphere suffices.
    constexpr int kLatticePoints = 256;
    const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
    struct Seed {
        double value;
        std::array<double, 2> x;
    };
    std::vector<Seed> seeds;
    seeds.reserve(kLatticePoints);
    int evals = 0;
    for (int i = 0; i < kLatticePoints; ++i) {
        const double z = (i + 0.5) / kLatticePoints;
        const double theta = std::acos(z);
        double phi = 2.0 * kPi * std::fmod(i * golden, 1.0);
        ++evals;
        seeds.push_back({objective(BlochDirection{theta, phi}), {theta, phi}});
    }
    std::sort(seeds.begin(), seeds.end(),
              [](const Seed& a, const Seed& b) { return a.value < b.value; });

    SphereOptimum best;
    best.value = seeds[0].value;
    best.argmin = BlochDirection{seeds[0].x[0], seeds[0].x[1]};
    best.converged = false;
    for (int k = 0; k < 3; ++k) {
        const NmResult nm = nelder_mead(objective, seeds[static_cast<size_t>(k)].x, 0.15);
        evals += nm.evals;
        if (nm.value < best.value) {
            best.value = nm.value;
            best.argmin = BlochDirection{nm.x[0], nm.x[1]};
        }
        best.converged = best.converged || nm.converged;
    }
    // fold back into theta in [0,pi], phi in [0,2pi)
    double th = std::fmod(best.argmin.theta, 2.0 * kPi);
    if (th < 0) th += 2.0 * kPi;
    double ph = best.argmin.phi;
    if (th > kPi) {
        th = 2.0 * kPi - th;
        ph += kPi;
    }
    ph = std::fmod(ph, 2.0 * kPi);
    if (ph < 0) ph += 2.0 * kPi;
    best.argmin = BlochDirection{th, ph};
    best.evals = evals;
    return best;
}

Eigen::Matrix4cd unitary_image(const Eigen::Matrix4cd& rho, const BlochDirection& n) {
    const Eigen::Matrix4cd u = kron_with_identity(direction_unitary(n));
    return u * rho * u; // n.sigma is Hermitian and involutive
}

SphereOptimum discord_of_response(const Eigen::Matrix4d& rho, Metric metric) {
    const Eigen::Matrix4cd rc = rho.cast<std::complex<double>>();
    auto objective = [&, metric](const BlochDirection& n) {
        const Eigen::Matrix4cd img = unitary_image(rc, n);
        const double d = metric == Metric::Trace ? trace_distance(rc, img)
                                                 : hilbert_schmidt_distance(rc, img);
        return d * d;
    };
    return optimize_over_sphere(objective);
}

MeasureRecord measure_state(const Eigen::Matrix4d& rho, const ModelParams& params,
                            int r) {
    MeasureRecord rec;
    rec.params = params;
    rec.r = r;
    rec.concurrence = concurrence(rho);
    rec.entanglement_of_response = rec.concurrence * rec.concurrence;
    const SphereOptimum tr = discord_of_response(rho, Metric::Trace);
    const SphereOptimum hs = discord_of_response(rho, Metric::HilbertSchmidt);
    rec.discord_tr = tr.value;
    rec.discord_hs = hs.value;
    rec.argmin_direction = tr.argmin;
    rec.optimizer_evals = tr.evals + hs.evals;
    rec.converged = tr.converged && hs.converged;
    return rec;
}

} // namespace xychain
