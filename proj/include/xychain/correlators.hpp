#pragma once

#include <map>

#include "xychain/model.hpp"

namespace xychain {

// All one- and two-point spin expectation values entering the two-site
// density matrix at separation r. In the symmetric sector mx = xz = zx = 0.
// Broken-sector values are reported in the sublattice-rotated frame where
// <sigma^x> = +m_x on both sites (see docs/conventions.md).
struct CorrelatorSet {
    double sz = 0.0;   // <sigma^z_i>
    double xx = 0.0;   // <sigma^x_i sigma^x_{i+r}>
    double yy = 0.0;   // <sigma^y_i sigma^y_{i+r}>
    double zz = 0.0;   // <sigma^z_i sigma^z_{i+r}>
    double mx = 0.0;   // <sigma^x_i> (order parameter, broken sector only)
    double xz = 0.0;   // <sigma^x_i sigma^z_{i+r}>
    double zx = 0.0;   // <sigma^z_i sigma^x_{i+r}>
    int r = 1;         // separation, or kInfinite for the asymptotic limit
    ModelParams params;
};

// Single-mode energy of the diagonalized chain; omega(0) = |1-h|.
double dispersion(double phi, const ModelParams& params);

// tanh(omega/2T) occupation weight; the (energy=0, T->0) limit is defined as 1.
double thermal_factor(double energy, double temperature);

// Jordan-Wigner contraction G(k) on the antiperiodic momentum grid (finite N)
// or by quadrature (thermodynamic limit), at temperature params.temperature.
double g_contraction(int k, const ModelParams& params);

// Immutable table of G(k) for k in [kmin, kmax]; safe for concurrent reads.
class ContractionTable {
  public:
    ContractionTable(const ModelParams& params, int kmin, int kmax,
                     double quadrature_tolerance = 1e-10);
    double g(int k) const;
    const ModelParams& params() const { return params_; }
    double quadrature_tolerance() const { return tol_; }

  private:
    std::map<int, double> entries_;
    ModelParams params_;
    double tol_;
};

double transverse_magnetization(const ModelParams& params);
double xx_correlator(int r, const ModelParams& params);
double yy_correlator(int r, const ModelParams& params);
double zz_correlator(int r, const ModelParams& params);

// Broken sector (thermodynamic limit, T=0): order parameter m_x >= 0 from the
// large-r limit of the symmetric-sector string correlator; 0 for h >= 1.
double spontaneous_magnetization(const ModelParams& params);

// Broken sector <sigma^x_i sigma^z_{i+r}> / <sigma^z_i sigma^x_{i+r}> from the
// asymptotic factorization of a three-point string, via Wick's theorem and a
// Pfaffian of the Majorana contraction matrix.
double xz_correlator(int r, const ModelParams& params);
double zx_correlator(int r, const ModelParams& params);

// Bundles everything consistent with the sector flag.
// r = kInfinite gives the cluster-decomposition asymptotics.
CorrelatorSet correlator_set(int r, const ModelParams& params);

namespace testing {
// Test hook: flips the sign convention of the contraction so oracle-check's
// negative control can observe a detectable corruption.
void corrupt_contraction_sign(bool on);
} // namespace testing

} // namespace xychain
