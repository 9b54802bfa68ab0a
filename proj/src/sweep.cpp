#include "xychain/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <thread>

#include <nlohmann/json.hpp>

#include "xychain/correlators.hpp"
#include "xychain/ed_oracle.hpp"
#include "xychain/scaling.hpp"
#include "xychain/state.hpp"

namespace xychain {

namespace {

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// scalar, array, or {"from","to","step"} inclusive range
std::vector<double> parse_reals(const nlohmann::json& j) {
    std::vector<double> out;
    if (j.is_number()) {
        out.push_back(j.get<double>());
    } else if (j.is_array()) {
        for (const auto& v : j) out.push_back(v.get<double>());
    } else if (j.is_object()) {
        const double from = j.at("from").get<double>();
        const double to = j.at("to").get<double>();
        const double step = j.at("step").get<double>();
        if (step <= 0.0) throw InvalidParams("config: range step must be positive");
        for (double x = from; x <= to + 1e-12 * std::max(1.0, std::abs(to)); x += step)
            out.push_back(x);
    } else {
        throw InvalidParams("config: expected number, array, or range object");
    }
    if (out.empty()) throw InvalidParams("config: empty parameter list");
    return out;
}

// int entries with "inf" allowed
std::vector<int> parse_extents(const nlohmann::json& j) {
    std::vector<int> out;
    auto one = [&](const nlohmann::json& v) {
        if (v.is_string()) {
            if (v.get<std::string>() != "inf")
                throw InvalidParams("config: only \"inf\" is accepted as a string extent");
            out.push_back(kInfinite);
        } else {
            out.push_back(v.get<int>());
        }
    };
    if (j.is_array())
        for (const auto& v : j) one(v);
    else
        one(j);
    if (out.empty()) throw InvalidParams("config: empty extent list");
    return out;
}

nlohmann::json extent_to_json(int v) {
    return v == kInfinite ? nlohmann::json("inf") : nlohmann::json(v);
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("XYCHAIN_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 1;
}

double measure_value(const std::string& measure, const ModelParams& p) {
    const TwoSiteDensityMatrix rho = build_rho(correlator_set(1, p));
    if (measure == "E") return entanglement_of_response(rho.elements);
    return discord_of_response(rho.elements, Metric::Trace).value;
}

nlohmann::json fit_to_json(const FitResult& f, const std::vector<double>& t,
                           const std::vector<double>& y) {
    nlohmann::json j;
    j["slope"] = f.slope;
    j["intercept"] = f.intercept;
    j["rms_residual"] = f.rms_residual;
    j["n_points"] = f.n_points;
    j["window"] = {f.x_min, f.x_max};
    nlohmann::json pts = nlohmann::json::array();
    for (size_t i = 0; i < t.size(); ++i) pts.push_back({t[i], y[i]});
    j["points"] = pts;
    return j;
}

struct SignGuard {
    explicit SignGuard(bool on) : active(on) {
        if (active) testing::corrupt_contraction_sign(true);
    }
    ~SignGuard() {
        if (active) testing::corrupt_contraction_sign(false);
    }
    bool active;
};

} // namespace

SweepConfig SweepConfig::from_json(const nlohmann::json& j) {
    SweepConfig c;
    if (j.contains("gamma")) c.gamma = parse_reals(j.at("gamma"));
    if (j.contains("h")) c.h = parse_reals(j.at("h"));
    if (j.contains("temperature")) c.temperature = parse_reals(j.at("temperature"));
    if (j.contains("N")) c.sizes = parse_extents(j.at("N"));
    if (j.contains("r")) c.separations = parse_extents(j.at("r"));
    if (j.contains("sector")) {
        const std::string s = j.at("sector").get<std::string>();
        if (s == "broken") c.sector = Sector::Broken;
        else if (s == "symmetric") c.sector = Sector::Symmetric;
        else throw InvalidParams("config: sector must be \"symmetric\" or \"broken\"");
    }
    if (j.contains("output")) c.output = j.at("output").get<std::string>();
    if (j.contains("parallelism")) c.parallelism = j.at("parallelism").get<int>();
    return c;
}

nlohmann::json SweepConfig::to_json() const {
    nlohmann::json j;
    j["gamma"] = gamma;
    j["h"] = h;
    j["temperature"] = temperature;
    nlohmann::json sizes_j = nlohmann::json::array();
    for (int n : sizes) sizes_j.push_back(extent_to_json(n));
    j["N"] = sizes_j;
    nlohmann::json r_j = nlohmann::json::array();
    for (int r : separations) r_j.push_back(extent_to_json(r));
    j["r"] = r_j;
    j["sector"] = to_string(sector);
    j["output"] = output;
    j["parallelism"] = parallelism;
    return j;
}

MeasureRecord evaluate_point(const ModelParams& params, int r) {
    const TwoSiteDensityMatrix rho = build_rho(correlator_set(r, params));
    return measure_state(rho.elements, params, r);
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
    std::vector<GridPoint> grid;
    for (double g : config.gamma)
        for (double hh : config.h)
            for (double t : config.temperature)
                for (int n : config.sizes)
                    for (int r : config.separations) {
                        GridPoint p;
                        p.params.gamma = g;
                        p.params.h = hh;
                        p.params.temperature = t;
                        p.params.size = n;
                        p.params.sector = config.sector;
                        p.r = r;
                        grid.push_back(p);
                    }
    std::vector<SweepRow> rows(grid.size());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= grid.size()) return;
            SweepRow& row = rows[i];
            row.point = grid[i];
            try {
                row.record = evaluate_point(grid[i].params, grid[i].r);
                row.ok = true;
            } catch (const std::exception& e) {
                row.ok = false;
                row.error = e.what();
            }
        }
    };
    const int threads = std::min<int>(resolve_threads(config.parallelism),
                                      static_cast<int>(grid.size()));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(threads));
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out =
        "gamma,h,T,N,sector,r,concurrence,E,Q_tr,Q_hs,argmin_theta,argmin_phi,"
        "evals,converged\n";
    for (const SweepRow& row : rows) {
        const ModelParams& p = row.point.params;
        out += fmt12(p.gamma) + ',' + fmt12(p.h) + ',' + fmt12(p.temperature) + ',';
        out += (p.size == kInfinite ? std::string("inf") : std::to_string(p.size)) + ',';
        out += std::string(to_string(p.sector)) + ',';
        out += (row.point.r == kInfinite ? std::string("inf")
                                         : std::to_string(row.point.r)) + ',';
        if (row.ok) {
            const MeasureRecord& m = row.record;
            out += fmt12(m.concurrence) + ',' + fmt12(m.entanglement_of_response) +
                   ',' + fmt12(m.discord_tr) + ',' + fmt12(m.discord_hs) + ',' +
                   fmt12(m.argmin_direction.theta) + ',' +
                   fmt12(m.argmin_direction.phi) + ',' +
                   std::to_string(m.optimizer_evals) + ',' +
                   (m.converged ? "true" : "false");
        } else {
            out += ",,,,,,,false";
        }
        out += '\n';
    }
    return out;
}

nlohmann::json record_to_json(const MeasureRecord& rec) {
    nlohmann::json j;
    j["gamma"] = rec.params.gamma;
    j["h"] = rec.params.h;
    j["T"] = rec.params.temperature;
    j["N"] = extent_to_json(rec.params.size);
    j["sector"] = to_string(rec.params.sector);
    j["r"] = extent_to_json(rec.r);
    j["concurrence"] = rec.concurrence;
    j["E"] = rec.entanglement_of_response;
    j["Q_tr"] = rec.discord_tr;
    j["Q_hs"] = rec.discord_hs;
    j["argmin"] = {{"theta", rec.argmin_direction.theta},
                   {"phi", rec.argmin_direction.phi}};
    j["evals"] = rec.optimizer_evals;
    j["converged"] = rec.converged;
    return j;
}

ScalingConfig ScalingConfig::from_json(const nlohmann::json& j) {
    ScalingConfig c;
    if (j.contains("measure")) c.measure = j.at("measure").get<std::string>();
    if (c.measure != "E" && c.measure != "Q")
        throw InvalidParams("scaling config: measure must be \"E\" or \"Q\"");
    if (j.contains("gamma")) c.gamma = j.at("gamma").get<double>();
    if (j.contains("N")) c.sizes = parse_extents(j.at("N"));
    if (j.contains("h_lo")) c.h_lo = j.at("h_lo").get<double>();
    if (j.contains("h_hi")) c.h_hi = j.at("h_hi").get<double>();
    if (j.contains("dh")) c.dh = j.at("dh").get<double>();
    if (j.contains("include_thermo")) c.include_thermo = j.at("include_thermo").get<bool>();
    if (j.contains("w_lo")) c.w_lo = j.at("w_lo").get<double>();
    if (j.contains("w_hi")) c.w_hi = j.at("w_hi").get<double>();
    if (j.contains("thermo_points")) c.thermo_points = j.at("thermo_points").get<int>();
    if (j.contains("derivative_step")) c.derivative_step = j.at("derivative_step").get<double>();
    if (j.contains("thermo_side")) c.thermo_side = j.at("thermo_side").get<std::string>();
    if (c.thermo_side != "auto" && c.thermo_side != "below" && c.thermo_side != "above")
        throw InvalidParams("scaling config: thermo_side must be auto, below, or above");
    for (int n : c.sizes)
        if (n == kInfinite || n < 4 || n % 2 != 0)
            throw InvalidParams("scaling config: sizes must be finite even chains");
    if (!(c.h_lo < 1.0 && 1.0 < c.h_hi))
        throw InvalidParams("scaling config: window must straddle the critical field");
    if (c.dh <= 0.0 || c.derivative_step <= 0.0)
        throw InvalidParams("scaling config: steps must be positive");
    return c;
}

nlohmann::json run_scaling(const ScalingConfig& cfg) {
    const ExtremumKind kind =
        cfg.measure == "E" ? ExtremumKind::Maximum : ExtremumKind::Minimum;

    auto grid_series = [&](int n, double step) {
        Series s;
        s.label = "N=" + std::to_string(n);
        const int count = static_cast<int>(std::lround((cfg.h_hi - cfg.h_lo) / step)) + 1;
        s.x.reserve(static_cast<size_t>(count));
        s.y.reserve(static_cast<size_t>(count));
        ModelParams p;
        p.gamma = cfg.gamma;
        p.size = n;
        for (int i = 0; i < count; ++i) {
            p.h = cfg.h_lo + i * step;
            s.x.push_back(p.h);
            s.y.push_back(measure_value(cfg.measure, p));
        }
        return s;
    };

    nlohmann::json report;
    report["measure"] = cfg.measure;
    report["gamma"] = cfg.gamma;
    report["h_window"] = {cfg.h_lo, cfg.h_hi};

    std::vector<Series> derivative_curves;
    std::vector<double> sizes_as_double, peak_heights, size_list;
    nlohmann::json per_size = nlohmann::json::array();
    for (int n : cfg.sizes) {
        const Series coarse = grid_series(n, cfg.dh);
        const Series fine = grid_series(n, 0.5 * cfg.dh);
        Series d = numeric_derivative(coarse, fine);
        const Extremum e = locate_extremum(d, kind);
        per_size.push_back({{"N", n}, {"h_m", e.x}, {"d_m", e.y}});
        derivative_curves.push_back(std::move(d));
        sizes_as_double.push_back(static_cast<double>(n));
        peak_heights.push_back(e.y);
        size_list.push_back(static_cast<double>(n));
    }
    report["per_size"] = per_size;

    Series peaks;
    peaks.x = size_list;
    peaks.y = peak_heights;
    peaks.label = "peaks";
    const FitResult fit_n = log_linear_fit(peaks, Abscissa::LnN);
    std::vector<double> lnn;
    for (double n : size_list) lnn.push_back(std::log(n));
    report["fit_N"] = fit_to_json(fit_n, lnn, peak_heights);

    double nu = 0.0;
    if (cfg.include_thermo) {
        // the trace-discord argmin axis switches branch on the ordered side,
        // which puts a cusp inside the window; fit Q from the disordered side
        const bool above = cfg.thermo_side == "above" ||
                           (cfg.thermo_side == "auto" && cfg.measure == "Q");
        Series thermo;
        thermo.label = "thermo";
        ModelParams p;
        p.gamma = cfg.gamma;
        p.size = kInfinite;
        std::vector<double> lnw;
        for (int i = 0; i < cfg.thermo_points; ++i) {
            const double t = cfg.thermo_points == 1
                                 ? 0.0
                                 : static_cast<double>(i) / (cfg.thermo_points - 1);
            const double w = cfg.w_hi * std::pow(cfg.w_lo / cfg.w_hi, t);
            const double h0 = above ? 1.0 + w : 1.0 - w;
            auto deriv = [&](double step) {
                ModelParams q = p;
                q.h = h0 + step;
                const double up = measure_value(cfg.measure, q);
                q.h = h0 - step;
                const double dn = measure_value(cfg.measure, q);
                return (up - dn) / (2.0 * step);
            };
            const double base_step = cfg.derivative_step * w;
            const double d1 = deriv(base_step);
            const double d2 = deriv(0.5 * base_step);
            thermo.x.push_back(h0);
            thermo.y.push_back((4.0 * d2 - d1) / 3.0);
            lnw.push_back(std::log(w));
        }
        // ascending in h
        std::vector<size_t> order(thermo.x.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](size_t a, size_t b) { return thermo.x[a] < thermo.x[b]; });
        Series sorted;
        sorted.label = thermo.label;
        for (size_t i : order) {
            sorted.x.push_back(thermo.x[i]);
            sorted.y.push_back(thermo.y[i]);
        }
        const FitResult fit_h = log_linear_fit(sorted, Abscissa::LnDistanceToHc);
        std::vector<double> lnw_sorted, y_sorted;
        for (size_t i : order) {
            lnw_sorted.push_back(std::log(std::abs(1.0 - thermo.x[i])));
            y_sorted.push_back(thermo.y[i]);
        }
        report["fit_h"] = fit_to_json(fit_h, lnw_sorted, y_sorted);
        nu = critical_exponent(fit_n.slope, fit_h.slope);
        report["nu"] = nu;
    }

    if (derivative_curves.size() >= 3) {
        const double nu_used = cfg.include_thermo ? nu : 1.0;
        report["collapse_rms"] =
            collapse_check(derivative_curves, sizes_as_double, nu_used);
        report["collapse_nu"] = nu_used;
    }
    return report;
}

OracleCheckConfig OracleCheckConfig::from_json(const nlohmann::json& j) {
    OracleCheckConfig c;
    if (j.contains("tolerance")) c.tolerance = j.at("tolerance").get<double>();
    if (j.contains("include_broken")) c.include_broken = j.at("include_broken").get<bool>();
    if (j.contains("broken_tolerance"))
        c.broken_tolerance = j.at("broken_tolerance").get<double>();
    if (j.contains("corrupt_sign")) c.corrupt_sign = j.at("corrupt_sign").get<bool>();
    if (j.contains("max_size")) c.max_size = j.at("max_size").get<int>();
    return c;
}

OracleCheckReport run_oracle_check(const OracleCheckConfig& cfg) {
    SignGuard guard(cfg.corrupt_sign);
    OracleCheckReport rep;
    nlohmann::json detail = nlohmann::json::array();

    const double gammas[] = {0.3, 0.5, 1.0};
    const double fields[] = {0.3, 1.0, 1.7};
    const double temps[] = {0.0, 0.5};
    const int sizes[] = {6, 8, 10};
    const int seps[] = {1, 2};

    for (double g : gammas)
        for (double hh : fields)
            for (double t : temps)
                for (int n : sizes) {
                    if (n > cfg.max_size) continue;
                    for (int r : seps) {
                        ed::OracleConfig oc;
                        oc.n = n;
                        oc.gamma = g;
                        oc.h = hh;
                        oc.temperature = t;
                        ModelParams p;
                        p.gamma = g;
                        p.h = hh;
                        p.temperature = t;
                        p.size = n;
                        p.sector = Sector::Symmetric;

                        const CorrelatorSet ours = correlator_set(r, p);
                        const CorrelatorSet ref = ed::oracle_correlators(oc, r);
                        double cdev = std::max(
                            {std::abs(ours.sz - ref.sz), std::abs(ours.xx - ref.xx),
                             std::abs(ours.yy - ref.yy), std::abs(ours.zz - ref.zz)});

                        const TwoSiteDensityMatrix rho = build_rho(ours);
                        const Eigen::Matrix4d rho_ref = ed::pair_state(oc, r);
                        const double rdev =
                            (rho.elements - rho_ref).cwiseAbs().maxCoeff();

                        const double e_dev =
                            std::abs(entanglement_of_response(rho.elements) -
                                     entanglement_of_response(rho_ref));
                        const double q_dev = std::abs(
                            discord_of_response(rho.elements, Metric::Trace).value -
                            discord_of_response(rho_ref, Metric::Trace).value);

                        rep.max_correlator_dev = std::max(rep.max_correlator_dev, cdev);
                        rep.max_rho_dev = std::max(rep.max_rho_dev, rdev);
                        rep.max_entanglement_dev = std::max(rep.max_entanglement_dev, e_dev);
                        rep.max_discord_dev = std::max(rep.max_discord_dev, q_dev);
                        ++rep.points;
                        detail.push_back({{"gamma", g},
                                          {"h", hh},
                                          {"T", t},
                                          {"N", n},
                                          {"r", r},
                                          {"correlator_dev", cdev},
                                          {"rho_dev", rdev},
                                          {"E_dev", e_dev},
                                          {"Q_dev", q_dev}});
                    }
                }

    rep.pass = rep.max_correlator_dev < cfg.tolerance &&
               rep.max_rho_dev < cfg.tolerance &&
               rep.max_entanglement_dev < cfg.tolerance &&
               rep.max_discord_dev < cfg.tolerance;

    if (cfg.include_broken) {
        // Pinned finite chain vs the thermodynamic-limit broken sector; the
        // comparison is loose by construction (finite size + explicit field).
        ed::OracleConfig oc;
        oc.n = 10;
        oc.gamma = 0.5;
        oc.h = 0.4;
        oc.pinning_epsilon = 0.1;
        ModelParams p;
        p.gamma = oc.gamma;
        p.h = oc.h;
        p.sector = Sector::Broken;
        const CorrelatorSet ours = correlator_set(1, p);
        const CorrelatorSet ref = ed::oracle_correlators(oc, 1);
        auto rel = [](double a, double b) {
            return std::abs(a - b) / std::max(1e-3, std::abs(b));
        };
        rep.max_broken_rel_dev =
            std::max({rel(ours.mx, ref.mx), rel(ours.xx, ref.xx),
                      rel(ours.xz, ref.xz), rel(ours.zx, ref.zx)});
        rep.pass = rep.pass && rep.max_broken_rel_dev < cfg.broken_tolerance;
        detail.push_back({{"broken_rel_dev", rep.max_broken_rel_dev}});
    }

    rep.detail = nlohmann::json{{"pass", rep.pass},
                                {"points", rep.points},
                                {"max_correlator_dev", rep.max_correlator_dev},
                                {"max_rho_dev", rep.max_rho_dev},
                                {"max_E_dev", rep.max_entanglement_dev},
                                {"max_Q_dev", rep.max_discord_dev},
                                {"max_broken_rel_dev", rep.max_broken_rel_dev},
                                {"tolerance", cfg.tolerance},
                                {"corrupt_sign", cfg.corrupt_sign},
                                {"grid", detail}};
    return rep;
}

} // namespace xychain
