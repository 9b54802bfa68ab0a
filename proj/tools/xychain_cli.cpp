#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "xychain/correlators.hpp"
#include "xychain/errors.hpp"
#include "xychain/state.hpp"
#include "xychain/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

int parse_extent(const std::string& s, const char* what) {
    if (s == "inf") return xychain::kInfinite;
    try {
        size_t pos = 0;
        const int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw xychain::InvalidParams(std::string(what) + ": expected an integer or \"inf\"");
    }
}

nlohmann::json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw xychain::InvalidParams("cannot open config file: " + path);
    nlohmann::json j;
    in >> j;
    return j;
}

void emit(const std::string& text, const std::string& output) {
    if (output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(output);
    if (!out) throw xychain::InvalidParams("cannot open output file: " + output);
    out << text;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "xychain: entanglement and discord of response in the XY spin chain.\n"
        "Exit codes: 0 success, 1 oracle-check deviation above tolerance,\n"
        "2 invalid usage or parameters, 3 numerical failure."};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print help"); // keep -h free for the field

    // measure
    auto* measure = app.add_subcommand(
        "measure", "One grid point: correlators, pair state, and all measures (JSON)");
    measure->set_help_flag("--help", "print help");
    double m_gamma = 1.0, m_h = 0.0, m_temp = 0.0;
    std::string m_size = "inf", m_r = "1", m_sector = "symmetric", m_output;
    bool m_dump_rho = false;
    measure->add_option("--gamma", m_gamma, "anisotropy in [0,1]")->capture_default_str();
    measure->add_option("--h", m_h, "transverse field >= 0")->capture_default_str();
    measure->add_option("-T,--temperature", m_temp, "temperature >= 0")->capture_default_str();
    measure->add_option("-N,--size", m_size, "even chain length or \"inf\"")->capture_default_str();
    measure->add_option("-r,--separation", m_r, "pair separation or \"inf\"")->capture_default_str();
    measure->add_option("--sector", m_sector, "symmetric | broken")->capture_default_str();
    measure->add_option("-o,--output", m_output, "write JSON here instead of stdout");
    measure->add_flag("--dump-rho", m_dump_rho, "include the two-site density matrix");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Grid sweep from a JSON config; CSV output");
    std::string s_config, s_output;
    sweep->add_option("-c,--config", s_config, "JSON config path")->required();
    sweep->add_option("-o,--output", s_output, "override the config output path");

    // scaling
    auto* scaling = app.add_subcommand(
        "scaling", "Finite-size + thermodynamic-limit scaling analysis (JSON report)");
    std::string g_config, g_output;
    scaling->add_option("-c,--config", g_config, "JSON config path")->required();
    scaling->add_option("-o,--output", g_output, "write the report here");

    // oracle-check
    auto* oracle = app.add_subcommand(
        "oracle-check", "Compare the free-fermion layer against exact diagonalization");
    std::string o_config, o_output;
    double o_tol = 1e-6;
    int o_max_size = 10;
    bool o_broken = false, o_corrupt = false;
    oracle->add_option("-c,--config", o_config, "optional JSON config path");
    oracle->add_option("-o,--output", o_output, "write the report here");
    oracle->add_option("--tolerance", o_tol, "absolute deviation bound")->capture_default_str();
    oracle->add_option("--max-size", o_max_size, "cap on ED chain lengths")->capture_default_str();
    oracle->add_flag("--broken", o_broken, "also compare the pinned broken-sector chain");
    auto* corrupt = oracle->add_flag("--corrupt-sign", o_corrupt,
                                     "negative control: corrupt a contraction sign");
    corrupt->group(""); // hidden test hook

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (measure->parsed()) {
            xychain::ModelParams p;
            p.gamma = m_gamma;
            p.h = m_h;
            p.temperature = m_temp;
            p.size = parse_extent(m_size, "--size");
            if (m_sector == "broken") p.sector = xychain::Sector::Broken;
            else if (m_sector == "symmetric") p.sector = xychain::Sector::Symmetric;
            else throw xychain::InvalidParams("--sector must be symmetric or broken");
            const int r = parse_extent(m_r, "--separation");
            const xychain::CorrelatorSet c = xychain::correlator_set(r, p);
            const xychain::MeasureRecord rec = xychain::evaluate_point(p, r);
            nlohmann::json j = xychain::record_to_json(rec);
            j["correlators"] = {{"sz", c.sz}, {"xx", c.xx}, {"yy", c.yy},
                                {"zz", c.zz}, {"mx", c.mx}, {"xz", c.xz},
                                {"zx", c.zx}};
            if (m_dump_rho)
                j["rho"] = xychain::density_matrix_to_json(xychain::build_rho(c));
            emit(j.dump(2) + "\n", m_output);
            return kExitOk;
        }
        if (sweep->parsed()) {
            xychain::SweepConfig cfg = xychain::SweepConfig::from_json(load_config(s_config));
            if (!s_output.empty()) cfg.output = s_output;
            const auto rows = xychain::run_sweep(cfg);
            emit(xychain::sweep_csv(rows), cfg.output);
            return kExitOk;
        }
        if (scaling->parsed()) {
            const xychain::ScalingConfig cfg =
                xychain::ScalingConfig::from_json(load_config(g_config));
            const nlohmann::json report = xychain::run_scaling(cfg);
            emit(report.dump(2) + "\n", g_output);
            return kExitOk;
        }
        if (oracle->parsed()) {
            xychain::OracleCheckConfig cfg;
            if (!o_config.empty())
                cfg = xychain::OracleCheckConfig::from_json(load_config(o_config));
            if (oracle->count("--tolerance") > 0) cfg.tolerance = o_tol;
            if (oracle->count("--max-size") > 0) cfg.max_size = o_max_size;
            if (o_broken) cfg.include_broken = true;
            if (o_corrupt) cfg.corrupt_sign = true;
            const xychain::OracleCheckReport rep = xychain::run_oracle_check(cfg);
            emit(rep.detail.dump(2) + "\n", o_output);
            return rep.pass ? kExitOk : kExitCheckFailed;
        }
    } catch (const xychain::InvalidParams& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: config: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitUsage;
}
