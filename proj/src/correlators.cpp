#include "xychain/correlators.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "xychain/pfaffian.hpp"
#include "xychain/quadrature.hpp"

// Conventions (see docs/conventions.md). All fermionic algebra lives in the
// ferromagnetic frame obtained from the antiferromagnetic couplings by the
// sublattice rotation sigma^{x,y} -> -sigma^{x,y} on odd sites (even N,
// periodic chain). Lab-frame spin correlators follow as
//   <xx>(r) = (-1)^r xx_fm(r),  <yy>(r) = (-1)^r yy_fm(r),
// with sz and zz frame-independent. The contraction is
//   G(k) = (1/N) sum_phi [cos(k phi)(cos phi - h) + gamma sin(k phi) sin phi]
//          * w(beta*omega) / omega
// (momentum sum or its quadrature limit), with w = tanh for thermal traces,
// w = coth for parity-weighted traces and w = 1 at T = 0. Note omega =
// sqrt((cos phi - h)^2 + gamma^2 sin^2 phi) is HALF the single-quasiparticle
// excitation energy 2*omega, hence tanh(beta*omega) and not tanh(beta*omega/2).
// Under this fixed convention:
//   <sigma^z>      = -G(0)
//   xx_fm(r)       = det[ G(j-i+1) ]_{r x r}
//   yy_fm(r)       = det[ G(j-i-1) ]_{r x r}
//   <sz_0 sz_r>    = G(0)^2 - G(r)G(-r)
// all validated against the exact-diagonalization oracle.

namespace xychain {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::atomic<bool> g_corrupt_sign{false};

double g_numerator(double phi, int k, double gamma, double h) {
    const double s1 = g_corrupt_sign.load(std::memory_order_relaxed) ? -1.0 : 1.0;
    return std::cos(k * phi) * (std::cos(phi) - h) +
           s1 * gamma * std::sin(k * phi) * std::sin(phi);
}

enum class Weight { One, Tanh, Coth };

// G(k) as an exact sum over one momentum grid. skip_zero omits the phi = 0
// mode of the periodic grid (its coth contribution is restored analytically
// by the caller, which keeps h = h_c finite).
double g_lattice(int k, const ModelParams& p, bool antiperiodic, Weight wt,
                 bool skip_zero = false) {
    const int n = p.size;
    const double beta = p.temperature > 0.0 ? 1.0 / p.temperature : 0.0;
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
        if (skip_zero && !antiperiodic && j == 0) continue;
        const double phi = antiperiodic ? kPi * (2 * j + 1) / n : 2.0 * kPi * j / n;
        const double w = dispersion(phi, p);
        if (w < 1e-14) {
            if (wt == Weight::Coth)
                throw ConvergenceFailure("contraction: zero mode in a parity-weighted trace");
            continue; // tanh(0) = 0; T=0 zero mode taken half-filled
        }
        double f = 1.0;
        if (wt == Weight::Tanh) f = std::tanh(beta * w);
        else if (wt == Weight::Coth) f = 1.0 / std::tanh(beta * w);
        sum += g_numerator(phi, k, p.gamma, p.h) / w * f;
    }
    return sum / n;
}

double g_quadrature(int k, const ModelParams& p, double tol) {
    auto f = [&](double phi) {
        const double w = dispersion(phi, p);
        if (w < 1e-15) return 0.0;
        return g_numerator(phi, k, p.gamma, p.h) * thermal_factor(2.0 * w, p.temperature) / w;
    };
    try {
        return integrate(f, 0.0, kPi, tol) / kPi;
    } catch (const QuadratureFailure&) {
        throw QuadratureFailure("contraction G(" + std::to_string(k) +
                                "): quadrature did not reach tolerance");
    }
}

// near the critical point the T=0 integrand has a kink at phi=0
double quad_tol_for(const ModelParams& p) {
    return std::abs(p.h - 1.0) < 1e-3 ? 1e-8 : 1e-10;
}

// Dense table of G(k) for k in [kmin,kmax], one momentum/weight choice.
struct GTable {
    std::vector<double> v;
    int kmin = 0;
    double operator()(int k) const { return v[static_cast<size_t>(k - kmin)]; }
};

GTable build_table(const ModelParams& p, int kmin, int kmax, bool antiperiodic,
                   Weight wt, bool skip_zero, double tol) {
    GTable t;
    t.kmin = kmin;
    t.v.resize(static_cast<size_t>(kmax - kmin + 1));
    for (int k = kmin; k <= kmax; ++k) {
        t.v[static_cast<size_t>(k - kmin)] =
            p.infinite() ? g_quadrature(k, p, tol)
                         : g_lattice(k, p, antiperiodic, wt, skip_zero);
    }
    return t;
}

// det of the r x r Toeplitz matrix with entries G(j-i+shift) + delta.
double toeplitz_det(const GTable& g, int r, int shift, double delta = 0.0) {
    if (r == 0) return 1.0;
    Eigen::MatrixXd m(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) m(i, j) = g(j - i + shift) + delta;
    return m.partialPivLu().determinant();
}

// Raw symmetric-sector observables of one Gaussian trace, ferromagnetic frame.
struct RawCorrs {
    double sz, xx_fm, yy_fm, zz;
};

RawCorrs raw_from_table(const GTable& g, int r, double delta = 0.0) {
    RawCorrs c{};
    c.sz = -(g(0) + delta);
    c.xx_fm = toeplitz_det(g, r, 1, delta);
    c.yy_fm = toeplitz_det(g, r, -1, delta);
    c.zz = (g(0) + delta) * (g(0) + delta) - (g(r) + delta) * (g(-r) + delta);
    return c;
}

double log2cosh(double x) {
    x = std::abs(x);
    return x + std::log1p(std::exp(-2.0 * x));
}

// log|2 sinh x| and its sign
std::pair<double, double> log2sinh(double x) {
    const double s = x < 0 ? -1.0 : 1.0;
    x = std::abs(x);
    return {x + std::log1p(-std::exp(-2.0 * x)), s};
}

// Exact finite-N thermal correlators. The Gibbs state mixes both fermion
// parity sectors, so the spin expectation is a weighted combination of four
// Gaussian traces: {antiperiodic, periodic} momentum grids x {plain,
// parity-weighted}. Signed single-fermion energies are h - cos(phi) at the
// unpaired periodic momenta phi = 0, pi and +omega elsewhere. The phi = 0
// coth contribution is linear in an additive shift of G, so it is split off
// and recombined exactly (sinh * coth = cosh), which stays finite at h = 1.
RawCorrs finite_thermal(int r, const ModelParams& p) {
    const int n = p.size;
    const double beta = 1.0 / p.temperature;
    const int kmin = -r - 1, kmax = r + 1;

    double num[4] = {0, 0, 0, 0}; // per-observable accumulators: sz,xx,yy,zz
    double den = 0.0;

    // log-weights of the four terms, relative to a common scale
    struct Term {
        double logw;
        double sign;
        RawCorrs c;
        bool composite = false;
        RawCorrs c_slope{}; // composite terms: d/d(delta) parts pre-combined
        double logw_den = 0.0;
        double den_val = 1.0;
    };
    std::vector<Term> terms;

    auto mode_energies = [&](bool antiperiodic) {
        std::vector<double> eps;
        eps.reserve(n);
        for (int j = 0; j < n; ++j) {
            const double phi = antiperiodic ? kPi * (2 * j + 1) / n : 2.0 * kPi * j / n;
            const double s = std::sin(phi);
            if (p.gamma * std::abs(s) < 1e-14 || std::abs(s) < 1e-14) {
                eps.push_back(p.h - std::cos(phi)); // unpaired, signed
            } else {
                eps.push_back(dispersion(phi, p));
            }
        }
        return eps;
    };

    // term 1: antiperiodic, plain trace
    {
        Term t;
        t.logw = 0.0;
        t.sign = 1.0;
        for (double e : mode_energies(true)) t.logw += log2cosh(beta * e);
        t.c = raw_from_table(build_table(p, kmin, kmax, true, Weight::Tanh, false, 0), r);
        terms.push_back(t);
    }
    // term 2: antiperiodic, parity-weighted
    {
        Term t;
        t.logw = 0.0;
        t.sign = 1.0;
        for (double e : mode_energies(true)) {
            if (std::abs(e) < 1e-12)
                throw ConvergenceFailure("thermal correlators: degenerate antiperiodic mode");
            auto [l, s] = log2sinh(beta * e);
            t.logw += l;
            t.sign *= s;
        }
        t.c = raw_from_table(build_table(p, kmin, kmax, true, Weight::Coth, false, 0), r);
        terms.push_back(t);
    }
    // term 3: periodic, plain trace
    {
        Term t;
        t.logw = 0.0;
        t.sign = 1.0;
        for (double e : mode_energies(false)) t.logw += log2cosh(beta * e);
        t.c = raw_from_table(build_table(p, kmin, kmax, false, Weight::Tanh, false, 0), r);
        terms.push_back(t);
    }
    // term 4: periodic, parity-weighted, overall minus; phi = 0 mode split off
    {
        Term t;
        t.composite = true;
        t.logw = 0.0;
        t.sign = -1.0;
        auto eps = mode_energies(false);
        for (size_t j = 1; j < eps.size(); ++j) {
            if (std::abs(eps[j]) < 1e-12)
                throw ConvergenceFailure("thermal correlators: degenerate periodic mode");
            auto [l, s] = log2sinh(beta * eps[j]);
            t.logw += l;
            t.sign *= s;
        }
        const double x0 = beta * eps[0]; // eps[0] = h - 1
        GTable g = build_table(p, kmin, kmax, false, Weight::Coth, true, 0);
        const RawCorrs f0 = raw_from_table(g, r, 0.0);
        const RawCorrs f1 = raw_from_table(g, r, 1.0 / n);
        // value at delta = -coth(x0)/n, times the 2 sinh(x0) mode factor;
        // sinh * coth = cosh keeps this finite at h = 1
        const double sh = 2.0 * std::sinh(x0), ch = 2.0 * std::cosh(x0);
        auto combine = [&](double v0, double v1) { return sh * v0 - ch * (v1 - v0); };
        t.c = RawCorrs{combine(f0.sz, f1.sz), combine(f0.xx_fm, f1.xx_fm),
                       combine(f0.yy_fm, f1.yy_fm), combine(f0.zz, f1.zz)};
        t.den_val = sh; // F == 1 has zero slope
        terms.push_back(t);
    }

    double lmax = terms[0].logw;
    for (const Term& t : terms) lmax = std::max(lmax, t.logw);
    for (const Term& t : terms) {
        const double w = t.sign * std::exp(t.logw - lmax);
        const double dval = t.composite ? t.den_val : 1.0;
        den += w * dval;
        num[0] += w * t.c.sz;
        num[1] += w * t.c.xx_fm;
        num[2] += w * t.c.yy_fm;
        num[3] += w * t.c.zz;
    }
    if (!(std::abs(den) > 0.0))
        throw ConvergenceFailure("thermal correlators: vanishing partition combination");
    return RawCorrs{num[0] / den, num[1] / den, num[2] / den, num[3] / den};
}

RawCorrs symmetric_raw(int r, const ModelParams& p) {
    if (!p.infinite() && p.temperature > 0.0) return finite_thermal(r, p);
    const bool ap = true;
    const Weight wt = p.temperature > 0.0 ? Weight::Tanh : Weight::One;
    GTable g = build_table(p, -r - 1, r + 1, ap, wt, false, quad_tol_for(p));
    return raw_from_table(g, r);
}

// ---- broken sector: Majorana strings, Wick's theorem, Pfaffians ----------

struct Maj {
    int site;
    bool b; // false = a-type, true = b-type
    bool operator==(const Maj& o) const { return site == o.site && b == o.b; }
    bool operator<(const Maj& o) const { return site != o.site ? site < o.site : b < o.b; }
};

// canonically order an operator product of Majoranas; squares drop out
std::pair<std::complex<double>, std::vector<Maj>> reduce_string(
    std::vector<Maj> ops, std::complex<double> pref) {
    // insertion sort, one sign per transposition
    double sign = 1.0;
    for (size_t i = 1; i < ops.size(); ++i) {
        Maj key = ops[i];
        size_t j = i;
        while (j > 0 && key < ops[j - 1]) {
            ops[j] = ops[j - 1];
            --j;
            sign = -sign;
        }
        ops[j] = key;
    }
    std::vector<Maj> out;
    out.reserve(ops.size());
    for (size_t i = 0; i < ops.size(); ++i) {
        if (i + 1 < ops.size() && ops[i] == ops[i + 1]) {
            ++i; // mu^2 = 1
            continue;
        }
        out.push_back(ops[i]);
    }
    return {pref * sign, out};
}

// sigma^x_j as Majoranas: (prod_{l<j} -i a_l b_l) a_j ; sigma^z_j = -i a_j b_j
void append_sigma_x(std::vector<Maj>& ops, std::complex<double>& pref, int j) {
    for (int l = 0; l < j; ++l) {
        pref *= std::complex<double>(0.0, -1.0);
        ops.push_back({l, false});
        ops.push_back({l, true});
    }
    ops.push_back({j, false});
}

void append_sigma_z(std::vector<Maj>& ops, std::complex<double>& pref, int j) {
    pref *= std::complex<double>(0.0, -1.0);
    ops.push_back({j, false});
    ops.push_back({j, true});
}

// Wick expectation of a canonical Majorana string. Nonzero contractions:
// <b_i a_j> = i G(j-i), <a_i b_j> = -i G(i-j); so the full matrix is i times
// a real skew-symmetric one whose Pfaffian we take.
double wick_expectation(const std::vector<Maj>& ops, std::complex<double> pref,
                        const GTable& g) {
    const size_t m2 = ops.size();
    if (m2 % 2 != 0) return 0.0;
    const size_t m = m2 / 2;
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m2),
                                              static_cast<Eigen::Index>(m2));
    for (size_t i = 0; i < m2; ++i) {
        for (size_t j = i + 1; j < m2; ++j) {
            double v = 0.0;
            if (ops[i].b && !ops[j].b) v = g(ops[j].site - ops[i].site);
            else if (!ops[i].b && ops[j].b) v = -g(ops[i].site - ops[j].site);
            s(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
            s(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = -v;
        }
    }
    const double pf = pfaffian(s);
    // i^m from pulling the common factor i out of the contraction matrix
    std::complex<double> val = pref * std::pow(std::complex<double>(0.0, 1.0),
                                               static_cast<double>(m)) * pf;
    if (std::abs(val.imag()) > 1e-8 * std::max(1.0, std::abs(val.real())))
        throw PfaffianDegeneracy("wick expectation: non-real string value");
    return val.real();
}

// <sigma^x_0 sigma^z_r sigma^x_R> in the ferromagnetic frame
double three_point_xzx(int r, int big_r, const GTable& g) {
    std::vector<Maj> ops;
    std::complex<double> pref(1.0, 0.0);
    append_sigma_x(ops, pref, 0);
    append_sigma_z(ops, pref, r);
    append_sigma_x(ops, pref, big_r);
    auto [q, canon] = reduce_string(std::move(ops), pref);
    return wick_expectation(canon, q, g);
}

// <sigma^z_0 sigma^x_r sigma^x_{r+R}>
double three_point_zxx(int r, int big_r, const GTable& g) {
    std::vector<Maj> ops;
    std::complex<double> pref(1.0, 0.0);
    append_sigma_z(ops, pref, 0);
    append_sigma_x(ops, pref, r);
    append_sigma_x(ops, pref, r + big_r);
    auto [q, canon] = reduce_string(std::move(ops), pref);
    return wick_expectation(canon, q, g);
}

constexpr int kAsymptoticCap = 512;

// large-r limit of the ferromagnetic-frame xx determinant, with one Aitken
// delta-squared step when the plain doubling tail is still visible
double xx_fm_asymptote(const ModelParams& p) {
    GTable g = build_table(p, -kAsymptoticCap - 1, kAsymptoticCap + 1, true,
                           Weight::One, false, quad_tol_for(p));
    double d1 = 0, d2 = 0, d3 = 0;
    int r = 64;
    d1 = toeplitz_det(g, r / 4, 1);
    d2 = toeplitz_det(g, r / 2, 1);
    d3 = toeplitz_det(g, r, 1);
    while (std::abs(d3 - d2) > 1e-10 && r < kAsymptoticCap) {
        r *= 2;
        d1 = d2;
        d2 = d3;
        d3 = toeplitz_det(g, r, 1);
    }
    const double denom = (d3 - d2) - (d2 - d1);
    double lim = d3;
    if (std::abs(denom) > 1e-14) {
        const double aitken = d3 - (d3 - d2) * (d3 - d2) / denom;
        if (std::abs(aitken - d3) < 0.25 * std::abs(d3) + 1e-12) lim = aitken;
    }
    if (std::abs(d3 - d2) > 1e-4 * std::max(1.0, std::abs(d3)))
        throw ConvergenceFailure("spontaneous magnetization: xx determinant tail not converged by r=512");
    return lim;
}

double broken_string_limit(int r, const ModelParams& p, bool zx) {
    const double m = spontaneous_magnetization(p);
    if (m < 1e-8)
        throw ConvergenceFailure("broken-sector string: vanishing order parameter");
    GTable g = build_table(p, -(kAsymptoticCap + r) - 1, kAsymptoticCap + r + 1,
                           true, Weight::One, false, quad_tol_for(p));
    double prev = 0.0;
    bool have_prev = false;
    for (int big_r = 64; big_r <= kAsymptoticCap; big_r *= 2) {
        const double v = (zx ? three_point_zxx(r, big_r, g)
                             : three_point_xzx(r, big_r, g)) / m;
        if (have_prev && std::abs(v - prev) < 1e-8) return v;
        prev = v;
        have_prev = true;
    }
    throw ConvergenceFailure("broken-sector string: asymptotic separation not converged by R=512");
}

} // namespace

namespace testing {
void corrupt_contraction_sign(bool on) { g_corrupt_sign.store(on); }
} // namespace testing

double dispersion(double phi, const ModelParams& params) {
    const double c = std::cos(phi) - params.h;
    const double s = params.gamma * std::sin(phi);
    return std::sqrt(c * c + s * s);
}

double thermal_factor(double energy, double temperature) {
    if (temperature <= 0.0) return 1.0; // includes the (0,0) limit
    if (energy <= 0.0) return 0.0;
    return std::tanh(0.5 * energy / temperature);
}

double g_contraction(int k, const ModelParams& params) {
    params.validate();
    if (params.infinite()) return g_quadrature(k, params, quad_tol_for(params));
    return g_lattice(k, params, true,
                     params.temperature > 0.0 ? Weight::Tanh : Weight::One);
}

ContractionTable::ContractionTable(const ModelParams& params, int kmin, int kmax,
                                   double quadrature_tolerance)
    : params_(params), tol_(quadrature_tolerance) {
    params.validate();
    for (int k = kmin; k <= kmax; ++k) {
        entries_[k] = params.infinite()
                          ? g_quadrature(k, params, tol_)
                          : g_lattice(k, params, true,
                                      params.temperature > 0.0 ? Weight::Tanh
                                                               : Weight::One);
    }
}

double ContractionTable::g(int k) const {
    auto it = entries_.find(k);
    if (it == entries_.end())
        throw InvalidParams("ContractionTable: offset outside precomputed range");
    return it->second;
}

double transverse_magnetization(const ModelParams& params) {
    params.validate();
    if (!params.infinite() && params.temperature > 0.0)
        return finite_thermal(1, params).sz;
    return -g_contraction(0, params);
}

double xx_correlator(int r, const ModelParams& params) {
    params.validate();
    if (r < 1) throw InvalidParams("xx_correlator: r must be >= 1");
    const double fm = symmetric_raw(r, params).xx_fm;
    return (r % 2 == 0 ? 1.0 : -1.0) * fm;
}

double yy_correlator(int r, const ModelParams& params) {
    params.validate();
    if (r < 1) throw InvalidParams("yy_correlator: r must be >= 1");
    const double fm = symmetric_raw(r, params).yy_fm;
    return (r % 2 == 0 ? 1.0 : -1.0) * fm;
}

double zz_correlator(int r, const ModelParams& params) {
    params.validate();
    if (r < 1) throw InvalidParams("zz_correlator: r must be >= 1");
    return symmetric_raw(r, params).zz;
}

double spontaneous_magnetization(const ModelParams& params) {
    ModelParams p = params;
    p.sector = Sector::Symmetric;
    p.validate();
    if (!p.infinite() || p.temperature != 0.0)
        throw InvalidParams("spontaneous magnetization: thermodynamic limit, T=0 only");
    if (p.h >= 1.0 || p.gamma == 0.0) return 0.0;
    const double m2 = xx_fm_asymptote(p);
    return std::sqrt(std::max(0.0, m2));
}

double xz_correlator(int r, const ModelParams& params) {
    params.validate();
    if (params.sector != Sector::Broken)
        throw InvalidParams("xz_correlator: broken sector only");
    if (r < 1) throw InvalidParams("xz_correlator: r must be >= 1");
    return broken_string_limit(r, params, false);
}

double zx_correlator(int r, const ModelParams& params) {
    params.validate();
    if (params.sector != Sector::Broken)
        throw InvalidParams("zx_correlator: broken sector only");
    if (r < 1) throw InvalidParams("zx_correlator: r must be >= 1");
    return broken_string_limit(r, params, true);
}

CorrelatorSet correlator_set(int r, const ModelParams& params) {
    params.validate();
    if (r != kInfinite && r < 1)
        throw InvalidParams("correlator_set: r must be >= 1 or infinite");
    if (r == kInfinite && !params.infinite())
        throw InvalidParams("correlator_set: r = infinite needs the thermodynamic limit");
    if (r != kInfinite && !params.infinite() && r >= params.size)
        throw InvalidParams("correlator_set: r must be smaller than the chain length");

    CorrelatorSet c;
    c.r = r;
    c.params = params;

    if (params.sector == Sector::Symmetric) {
        if (r == kInfinite) {
            c.sz = transverse_magnetization(params);
            c.zz = c.sz * c.sz;
            c.yy = 0.0;
            if (params.gamma > 0.0 && params.h < 1.0 && params.temperature == 0.0) {
                const double m = spontaneous_magnetization(params);
                c.xx = m * m; // even-separation asymptote of the staggered order
            } else {
                c.xx = 0.0;
            }
        } else {
            const RawCorrs raw = symmetric_raw(r, params);
            const double stag = (r % 2 == 0) ? 1.0 : -1.0;
            c.sz = raw.sz;
            c.xx = stag * raw.xx_fm;
            c.yy = stag * raw.yy_fm;
            c.zz = raw.zz;
        }
        return c;
    }

    // broken sector: uniform (sublattice-rotated) frame
    const double m = spontaneous_magnetization(params);
    c.mx = m;
    c.sz = transverse_magnetization(params);
    if (r == kInfinite) {
        c.xx = m * m;
        c.yy = 0.0;
        c.zz = c.sz * c.sz;
        c.xz = m * c.sz;
        c.zx = m * c.sz;
    } else {
        const RawCorrs raw = symmetric_raw(r, params);
        c.xx = raw.xx_fm;
        c.yy = raw.yy_fm;
        c.zz = raw.zz;
        c.xz = xz_correlator(r, params);
        c.zx = zx_correlator(r, params);
    }
    return c;
}

} // namespace xychain
