// Command-line driver: solve / sweep / layer / verify subcommands reading a
// flat key-value config and writing CSV results plus a manifest.
//
// Exit codes: 0 success, 1 usage or config error, 2 numerical failure,
// 3 verification failure.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mhd1d/config.hpp"
#include "mhd1d/io.hpp"
#include "mhd1d/parallel.hpp"
#include "mhd1d/verify.hpp"

namespace fs = std::filesystem;
using namespace mhd1d;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    bool strict = true;
    bool quiet = false;
};

/// Tracks files written into the output directory so a failing command can
/// remove its partial outputs.
class OutputTracker {
public:
    explicit OutputTracker(const std::string& dir) : dir_(dir) {
        fs::create_directories(dir_);
    }

    std::string path(const std::string& name) {
        written_.push_back(name);
        return (dir_ / name).string();
    }

    void discard() {
        for (const std::string& name : written_) {
            std::error_code ec;
            fs::remove(dir_ / name, ec);
        }
        written_.clear();
    }

    const std::vector<std::string>& files() const { return written_; }
    std::string dir() const { return fs::absolute(dir_).string(); }

private:
    fs::path dir_;
    std::vector<std::string> written_;
};

std::string hash_of_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("config file not found: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    return hash_hex(std::span(text.data(), text.size()));
}

void finish_manifest(OutputTracker& out, const std::string& config_path,
                     const std::string& description) {
    RunManifest m;
    m.created_utc = utc_timestamp_now();
    m.config_hash = config_path.empty() ? "none" : hash_of_file(config_path);
    m.description = description;
    m.output_dir = out.dir();
    m.files = out.files();
    write_manifest((fs::path(out.dir()) / "manifest.txt").string(), m);
}

int cmd_solve(const CommonOpts& opts) {
    ParsedConfig parsed = parse_config(opts.config_path, opts.strict);
    if (parsed.kind != ParsedConfig::Kind::solve)
        throw UsageError("config describes a different study; use the matching subcommand");
    ScenarioConfig cfg = parsed.scenario;
    if (cfg.snapshot_times.empty()) cfg.snapshot_times = {cfg.t_final};

    OutputTracker out(opts.out_dir);
    try {
        const RunResult res = run(cfg);
        const Grid grid(cfg.grid_n);
        for (std::size_t k = 0; k < res.snapshots.size(); ++k) {
            char name[32];
            std::snprintf(name, sizeof name, "snapshot_%03zu.csv", k);
            write_snapshot_csv(out.path(name), res.snapshots[k].state, grid);
        }
        write_invariants_csv(out.path("invariants.csv"), res.invariants);
        finish_manifest(out, opts.config_path, parsed.description);
        if (!opts.quiet)
            std::printf("solve: %ld steps, %zu snapshots, wall %.3fs\n", res.step_count,
                        res.snapshots.size(), res.wall_time_s);
    } catch (...) {
        out.discard();
        throw;
    }
    return 0;
}

int cmd_sweep(const CommonOpts& opts) {
    ParsedConfig parsed = parse_config(opts.config_path, opts.strict);
    if (parsed.kind != ParsedConfig::Kind::sweep)
        throw UsageError("config describes a different study; use the matching subcommand");

    OutputTracker out(opts.out_dir);
    try {
        const SweepReport report = run_sweep(parsed.sweep);
        write_sweep_report_csv(out.path("sweep_report.csv"), report);
        finish_manifest(out, opts.config_path, parsed.description);
        if (!opts.quiet) {
            for (const std::string& w : report.warnings)
                std::fprintf(stderr, "warning: %s\n", w.c_str());
            if (report.rows.size() < 3)
                std::fprintf(stderr, "warning: fewer than 3 ladder points, no exponent fits\n");
            std::printf("sweep: %zu ladder entries written\n", report.rows.size());
        }
    } catch (...) {
        out.discard();
        throw;
    }
    return 0;
}

int cmd_layer(const CommonOpts& opts) {
    ParsedConfig parsed = parse_config(opts.config_path, opts.strict);
    if (parsed.kind != ParsedConfig::Kind::layer)
        throw UsageError("config describes a different study; use the matching subcommand");

    OutputTracker out(opts.out_dir);
    try {
        const LayerScenario& scn = parsed.layer;
        const LayerReport report = run_layer_study(scn);
        write_layer_report_csv(out.path("layer_report.csv"), report);

        // per-nu final b profiles for plotting
        const Grid grid(scn.grid_n);
        for (std::size_t i = 0; i < report.final_b.size(); ++i) {
            char name[32];
            std::snprintf(name, sizeof name, "b_profile_%03zu.csv", i);
            write_profile_csv(out.path(name), grid, report.final_b[i]);
        }
        finish_manifest(out, opts.config_path, parsed.description);
        if (!opts.quiet)
            std::printf("layer: %zu ladder entries written\n", report.rows.size());
    } catch (...) {
        out.discard();
        throw;
    }
    return 0;
}

struct VerifyCheck {
    std::string name;
    double value = 0.0;
    std::string threshold;
    bool pass = false;
};

int cmd_verify(const CommonOpts& opts) {
    OutputTracker out(opts.out_dir);
    std::vector<VerifyCheck> checks;

    const auto note = [&](const std::string& name, double value, const std::string& threshold,
                          bool pass) {
        checks.push_back({name, value, threshold, pass});
        if (!opts.quiet)
            std::printf("[%s] %-34s value=%.3e (%s)\n", pass ? "PASS" : "FAIL", name.c_str(),
                        value, threshold.c_str());
    };

    try {
        double dev = trivial_solution_check(1.0, 0.0, 256, 1.0);
        note("trivial_nonresistive", dev, "<= 1e-12", dev <= 1e-12);
        dev = trivial_solution_check(1.0, 1e-3, 256, 1.0);
        note("trivial_resistive", dev, "<= 1e-12", dev <= 1e-12);

        const FluidParams params;
        const std::vector<int> grids = {128, 256, 512};
        for (double nu : {0.0, 0.01}) {
            const MmsStudy study = mms_order_study(smooth_decay_case(params, nu), nu, grids,
                                                   0.1, params);
            const std::string tag = nu > 0.0 ? "mms_resistive" : "mms_nonresistive";
            bool orders_ok = study.errors_monotone;
            double worst = 0.0;
            for (const auto& field_orders : study.orders) {
                for (double p : field_orders) {
                    if (worst == 0.0 || std::abs(p - 1.0) > std::abs(worst - 1.0)) worst = p;
                    if (!(p >= 0.8 && p <= 2.2)) orders_ok = false;
                }
            }
            note(tag + "_order", worst, "in [0.8, 2.2], errors monotone", orders_ok);
        }

        ScenarioConfig smooth;
        smooth.nu = 0.0;
        smooth.grid_n = 128;
        smooth.t_final = 0.1;
        smooth.initial = InitialData::smooth(1.0, 0.1, 0.1, 0.1);
        const SelfConvergence sc = self_convergence(smooth, 3);
        bool ratios_ok = sc.applicable;
        double worst_ratio = 0.0;
        for (double r : sc.ratios) {
            if (worst_ratio == 0.0 || std::abs(r - 2.0) > std::abs(worst_ratio - 2.0))
                worst_ratio = r;
            if (!(r >= 1.7 && r <= 2.3)) ratios_ok = false;
        }
        note("self_convergence_ratio", worst_ratio, "in [1.7, 2.3]", ratios_ok);

        std::string path = out.path("verify_report.csv");
        std::FILE* f = std::fopen(path.c_str(), "wb");
        if (!f) throw UsageError("cannot open for writing: " + path);
        std::fprintf(f, "check,value,threshold,status\n");
        for (const VerifyCheck& c : checks)
            std::fprintf(f, "%s,%s,%s,%s\n", c.name.c_str(), format_full(c.value).c_str(),
                         c.threshold.c_str(), c.pass ? "pass" : "fail");
        std::fclose(f);
        finish_manifest(out, opts.config_path, "built-in verification suite");
    } catch (...) {
        out.discard();
        throw;
    }

    for (const VerifyCheck& c : checks)
        if (!c.pass) return 3;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"1D compressible viscous MHD laboratory"};
    app.require_subcommand(1);
    app.footer(
        "Config sections and defaults:\n"
        "  [fluid]    A=1, gamma=1.4, lambda=1, nu=0 (solve only; ladder studies set nu)\n"
        "  [grid]     n (required)\n"
        "  [time]     T (required), cfl=0.8, snapshot_times= or snapshot_count=\n"
        "  [initial]  kind=constant rho=1 | kind=smooth rho_base=1 rho_amp=0 u_amp=0\n"
        "             b_amp=0 b_shape=sin_pi (sin_pi|sin_2pi|cos_pi)\n"
        "  [boundary] kind=none | constant c1 c2 | ramp c1 c2 t_rise |\n"
        "             sinusoid a1 omega1 a2 omega2   (nu=0 <-> kind=none)\n"
        "  [study]    kind=solve | kind=sweep nu_ladder= comparison_count=32\n"
        "             estimate_floor=true | kind=layer nu_ladder= delta_p=0.4 epsilon=0.01\n"
        "Environment: MHD1D_THREADS caps the worker pool for ladder studies.");

    CommonOpts opts;
    const auto add_common = [&](CLI::App* sub, bool needs_config) {
        if (needs_config)
            sub->add_option("--config", opts.config_path, "config file")->required();
        sub->add_option("--out", opts.out_dir, "output directory")->required();
        sub->add_flag("--strict,!--no-strict", opts.strict,
                      "treat unknown config keys as errors (default on)");
        sub->add_flag("--quiet", opts.quiet, "suppress progress output");
    };

    CLI::App* solve = app.add_subcommand("solve", "integrate one scenario");
    add_common(solve, true);
    CLI::App* sweep = app.add_subcommand("sweep", "vanishing-resistivity sweep");
    add_common(sweep, true);
    CLI::App* layer = app.add_subcommand("layer", "boundary-layer study");
    add_common(layer, true);
    CLI::App* verify = app.add_subcommand("verify", "run the built-in verification suite");
    add_common(verify, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (solve->parsed()) return cmd_solve(opts);
        if (sweep->parsed()) return cmd_sweep(opts);
        if (layer->parsed()) return cmd_layer(opts);
        if (verify->parsed()) return cmd_verify(opts);
    } catch (const SolverError& e) {
        std::fprintf(stderr, "numerical failure at t=%.6g: %s\n", e.failure_time(), e.what());
        return 2;
    } catch (const UsageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
