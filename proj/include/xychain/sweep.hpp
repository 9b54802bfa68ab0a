#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "xychain/measures.hpp"
#include "xychain/model.hpp"

namespace xychain {

// One grid point of a sweep: model parameters plus the pair separation.
struct GridPoint {
    ModelParams params;
    int r = 1;
};

struct SweepRow {
    GridPoint point;
    MeasureRecord record;
    bool ok = false;
    std::string error;
};

// Grid sweep over gamma x h x T x N x r (row order fixed in that nesting).
// "inf" is accepted for size and separation entries in JSON configs.
struct SweepConfig {
    std::vector<double> gamma{1.0};
    std::vector<double> h{0.0};
    std::vector<double> temperature{0.0};
    std::vector<int> sizes{kInfinite};
    std::vector<int> separations{1};
    Sector sector = Sector::Symmetric;
    std::string output;  // path; empty writes to stdout
    int parallelism = 0; // 0: take XYCHAIN_THREADS, else 1

    static SweepConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

// correlators -> two-site state -> measures for one grid point
MeasureRecord evaluate_point(const ModelParams& params, int r);

// Deterministic regardless of parallelism: rows come back in grid order.
std::vector<SweepRow> run_sweep(const SweepConfig& config);

// CSV with the fixed header
// gamma,h,T,N,sector,r,concurrence,E,Q_tr,Q_hs,argmin_theta,argmin_phi,evals,converged
// and 12 significant digits; failed rows keep the coordinates and leave the
// measure columns empty.
std::string sweep_csv(const std::vector<SweepRow>& rows);

nlohmann::json record_to_json(const MeasureRecord& rec);

// Finite-size + thermodynamic-limit scaling pipeline for the derivative of
// one nearest-neighbor measure ("E": entanglement of response, "Q": trace
// discord of response) across the critical field.
struct ScalingConfig {
    std::string measure = "E";
    double gamma = 1.0;
    std::vector<int> sizes{64, 128, 256, 512};
    double h_lo = 0.90;
    double h_hi = 1.10;
    double dh = 1e-3; // companion half-step grid added automatically
    bool include_thermo = true;
    double w_lo = 3e-5; // |1 - h| window for the thermodynamic-limit fit
    double w_hi = 1e-3;
    int thermo_points = 10;
    double derivative_step = 0.05; // centered step as a fraction of |1 - h|
    // side of h_c for the thermodynamic-limit window: "auto" picks the branch
    // free of optimizer-axis switches (ordered side for E, disordered for Q)
    std::string thermo_side = "auto";

    static ScalingConfig from_json(const nlohmann::json& j);
};

// Report: per-size extrema, ln N fit, ln|1-h| fit, nu, collapse spread.
nlohmann::json run_scaling(const ScalingConfig& config);

// Free-fermion layer vs the exact-diagonalization oracle on a fixed grid.
struct OracleCheckConfig {
    double tolerance = 1e-6;
    bool include_broken = false;     // pinned-chain comparison, loose bound
    double broken_tolerance = 0.10;  // relative, finite-size + pinning bias
    bool corrupt_sign = false;       // negative control
    int max_size = 10;               // cap on ED chain lengths (quick runs)

    static OracleCheckConfig from_json(const nlohmann::json& j);
};

struct OracleCheckReport {
    bool pass = false;
    double max_correlator_dev = 0.0;
    double max_rho_dev = 0.0;
    double max_entanglement_dev = 0.0;
    double max_discord_dev = 0.0;
    double max_broken_rel_dev = 0.0;
    int points = 0;
    nlohmann::json detail;
};

OracleCheckReport run_oracle_check(const OracleCheckConfig& config);

} // namespace xychain
