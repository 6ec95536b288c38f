// Command-line front end: every computation in the library is exposed as a
// subcommand with machine-readable CSV/JSON output plus a JSON manifest that
// records everything needed to reproduce the run.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "cascade/cascade_mc.hpp"
#include "cascade/io.hpp"
#include "cascade/recurrence.hpp"
#include "cascade/series.hpp"
#include "cascade/size_stats.hpp"
#include "cascade/version.hpp"
#include "cascade/wave.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommonOpts {
    std::string out_dir;
    int threads = 1;
};

void add_common(CLI::App* cmd, CommonOpts& common, bool with_threads) {
    const char* env_dir = std::getenv("CASCADE_OUT_DIR");
    common.out_dir = env_dir ? env_dir : ".";
    cmd->add_option("--out-dir", common.out_dir, "Output directory")
        ->capture_default_str();
    if (with_threads)
        cmd->add_option("--threads", common.threads, "Monte Carlo worker count")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
}

fs::path prepare_out_dir(const CommonOpts& common) {
    fs::path dir(common.out_dir);
    fs::create_directories(dir);
    return dir;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
    os << text;
}

void write_manifest(const fs::path& dir, const std::string& command, json parameters,
                    std::vector<std::string> outputs) {
    json m;
    m["command"] = command;
    m["code_version"] = cascade::kVersion;
    m["parameters"] = std::move(parameters);
    m["outputs"] = std::move(outputs);
    write_text(dir / "manifest.json", m.dump(2) + "\n");
}

// ---------------------------------------------------------------- recur ----

int cmd_recur(int n_max, double h, double front_level, std::vector<int> store,
              std::vector<double> mean_height_at, const CommonOpts& common) {
    cascade::RunOptions opts;
    opts.h = h;
    opts.front_level = front_level;
    opts.store = store;
    const cascade::RecurrenceRun run = cascade::run(n_max, opts);
    const fs::path dir = prepare_out_dir(common);
    std::vector<std::string> outputs;

    {
        std::ofstream os(dir / "fronts.csv", std::ios::binary);
        cascade::io::write_front_csv(os, cascade::wave::trace_from_run(run));
        outputs.push_back("fronts.csv");
    }
    for (const auto& [n, profile] : run.profiles) {
        const std::string name = "profile_n" + std::to_string(n) + ".csv";
        std::ofstream os(dir / name, std::ios::binary);
        cascade::io::write_grid_csv(os, profile);
        outputs.push_back(name);
    }
    if (!mean_height_at.empty()) {
        std::ofstream os(dir / "mean_heights.csv", std::ios::binary);
        os << "x,mean_height\n";
        for (double x : mean_height_at)
            os << cascade::io::fmt_double(x) << ","
               << cascade::io::fmt_double(cascade::mean_height(x, run)) << "\n";
        outputs.push_back("mean_heights.csv");
    }

    json params = {{"n_max", n_max},
                   {"h", h},
                   {"x_max", run.spec.x_max},
                   {"front_level", front_level},
                   {"store", store},
                   {"mean_height_at", mean_height_at}};
    write_manifest(dir, "recur", params, outputs);
    return 0;
}

// ----------------------------------------------------------------- wave ----

int cmd_wave(double dispersion_v, int n_max, int profile_n, int fit_lo, int fit_hi,
             bool no_log, const CommonOpts& common) {
    const fs::path dir = prepare_out_dir(common);
    std::vector<std::string> outputs;
    json out;

    const auto sel = cascade::wave::selected_velocity();
    out["selected_velocity"] = {{"v", sel.v}, {"a", sel.a}};

    if (dispersion_v > 0.0) {
        const auto disp = cascade::wave::dispersion_roots(dispersion_v);
        out["dispersion"] = {{"v", disp.v}, {"roots", disp.roots}};
    } else {
        if (profile_n < 0) profile_n = n_max;
        if (fit_hi < 0) fit_hi = n_max;
        cascade::RunOptions ropts;
        ropts.store = {profile_n};
        const cascade::RecurrenceRun run = cascade::run(n_max, ropts);
        const auto trace = cascade::wave::trace_from_run(run);

        const auto fit = cascade::wave::fit_velocity(trace, fit_lo, fit_hi, !no_log);
        out["velocity_fit"] = {{"v", fit.v},
                               {"b", fit.b},
                               {"c0", fit.c0},
                               {"residual_rms", fit.residual_rms},
                               {"window", {fit.window_lo, fit.window_hi}},
                               {"with_log", fit.with_log}};

        const auto disp = cascade::wave::dispersion_roots(sel.v);
        out["dispersion"] = {{"v", disp.v}, {"roots", disp.roots}};

        const auto prof = cascade::wave::extract_profile(run.profiles.at(profile_n), profile_n);
        const std::string pname = "profile_n" + std::to_string(profile_n) + ".csv";
        {
            std::ofstream os(dir / pname, std::ios::binary);
            cascade::io::write_grid_csv(os, prof.pi, prof.xi_lo, "xi,pi");
            outputs.push_back(pname);
        }
        out["profile"] = {{"n", prof.n},
                          {"x_front", prof.x_front},
                          {"L", prof.l_integral},
                          {"R", prof.r_integral},
                          {"L_tail_correction", prof.l_tail_correction},
                          {"R_tail_correction", prof.r_tail_correction}};

        for (auto side : {cascade::wave::TailSide::ahead, cascade::wave::TailSide::behind}) {
            const auto tf = cascade::wave::tail_fit(prof, side);
            out["tail_fits"].push_back(
                {{"side", side == cascade::wave::TailSide::ahead ? "ahead" : "behind"},
                 {"slope", tf.slope},
                 {"intercept", tf.intercept},
                 {"window", {tf.window_lo, tf.window_hi}},
                 {"r_squared", tf.r_squared}});
        }

        const double v_eff = run.fronts[static_cast<std::size_t>(profile_n)] -
                             run.fronts[static_cast<std::size_t>(profile_n) - 1];
        out["wave_equation_residual"] = {
            {"v_effective", v_eff},
            {"residual", cascade::wave::wave_equation_residual(prof, v_eff)}};

        std::ofstream os(dir / "fronts.csv", std::ios::binary);
        cascade::io::write_front_csv(os, trace);
        outputs.push_back("fronts.csv");
    }

    write_text(dir / "wave.json", out.dump(2) + "\n");
    outputs.push_back("wave.json");
    json params = {{"dispersion_v", dispersion_v}, {"n_max", n_max},
                   {"profile_n", profile_n},       {"fit_lo", fit_lo},
                   {"fit_hi", fit_hi},             {"no_log", no_log}};
    write_manifest(dir, "wave", params, outputs);
    return 0;
}

// ------------------------------------------------------------------- mc ----

int cmd_mc(double x, std::uint64_t replicates, std::uint64_t seed, std::uint64_t node_cap,
           bool dump_samples, const CommonOpts& common) {
    cascade::mc::McOptions opts;
    opts.threads = common.threads;
    opts.node_cap = node_cap;
    const auto cdf = cascade::mc::height_cdf(x, replicates, seed, opts);
    const fs::path dir = prepare_out_dir(common);
    std::vector<std::string> outputs;

    {
        std::ofstream os(dir / "height_cdf.csv", std::ios::binary);
        os << "n,prob,std_error\n";
        for (const auto& pt : cdf.points)
            os << pt.n << "," << cascade::io::fmt_double(pt.prob) << ","
               << cascade::io::fmt_double(pt.std_error) << "\n";
        outputs.push_back("height_cdf.csv");
    }
    {
        json stats = {{"x", x},
                      {"replicates", replicates},
                      {"mean_height", cdf.mean_height},
                      {"mean_height_se", cdf.mean_height_se},
                      {"mean_size", cdf.mean_size},
                      {"mean_size_se", cdf.mean_size_se},
                      {"single_node_fraction", cdf.single_node_fraction},
                      {"mean_terminals", cdf.mean_terminals}};
        write_text(dir / "mc_stats.json", stats.dump(2) + "\n");
        outputs.push_back("mc_stats.json");
    }
    if (dump_samples) {
        std::ofstream os(dir / "samples.csv", std::ios::binary);
        os << "replicate,size,height,terminals\n";
        for (std::uint64_t r = 0; r < replicates; ++r) {
            const auto t = cascade::mc::sample_tree(x, {seed, r}, node_cap);
            os << r << "," << t.size << "," << t.height << "," << t.terminal_count << "\n";
        }
        outputs.push_back("samples.csv");
    }

    json params = {{"x", x},
                   {"replicates", replicates},
                   {"seed", seed},
                   {"node_cap", node_cap},
                   {"threads", common.threads},
                   {"dump_samples", dump_samples}};
    write_manifest(dir, "mc", params, outputs);
    return 0;
}

// -------------------------------------------------------------- discrete ----

int cmd_discrete(int m, double c, std::uint64_t replicates, std::uint64_t seed,
                 const CommonOpts& common) {
    cascade::mc::McOptions opts;
    opts.threads = common.threads;
    const auto s = cascade::mc::sample_discrete_ensemble(m, c, replicates, seed, opts);
    const fs::path dir = prepare_out_dir(common);

    json stats = {{"m", m},
                  {"c", c},
                  {"x", c * m},
                  {"replicates", replicates},
                  {"mean_reach_size", s.mean_reach_size},
                  {"reach_size_se", s.reach_size_se},
                  {"mean_longest_from_0", s.mean_longest},
                  {"longest_se", s.longest_se},
                  {"no_out_fraction", s.no_out_fraction},
                  {"no_out_se", s.no_out_se},
                  {"no_in_fraction", s.no_in_fraction},
                  {"no_in_se", s.no_in_se},
                  {"neutral_fraction", s.neutral_fraction},
                  {"neutral_se", s.neutral_se}};
    write_text(dir / "discrete_stats.json", stats.dump(2) + "\n");

    json params = {{"m", m},
                   {"c", c},
                   {"replicates", replicates},
                   {"seed", seed},
                   {"threads", common.threads}};
    write_manifest(dir, "discrete", params, {"discrete_stats.json"});
    return 0;
}

// ----------------------------------------------------------------- size ----

int cmd_size(double x, std::uint64_t replicates, std::uint64_t seed, int p_max, bool scaled,
             int bins, std::uint64_t node_cap, const CommonOpts& common) {
    cascade::mc::McOptions opts;
    opts.threads = common.threads;
    opts.node_cap = node_cap;
    const auto sizes = cascade::mc::size_sample(x, replicates, seed, opts);
    const fs::path dir = prepare_out_dir(common);
    std::vector<std::string> outputs;

    {
        const auto reports = cascade::stats::moments_from_sizes(x, sizes, p_max);
        json arr = json::array();
        for (const auto& r : reports) {
            json j = {{"x", r.x},
                      {"p", r.p},
                      {"estimate", r.estimate},
                      {"std_error", r.std_error},
                      {"replicates", r.replicates}};
            if (r.exact) j["exact"] = *r.exact;
            arr.push_back(j);
        }
        write_text(dir / "size_moments.json", arr.dump(2) + "\n");
        outputs.push_back("size_moments.json");
    }

    if (scaled) {
        const auto rep = cascade::stats::scaled_report_from_sizes(x, sizes, bins);
        json moments = json::array();
        for (const auto& m : rep.moments)
            moments.push_back({{"p", m.p},
                               {"estimate", m.estimate},
                               {"std_error", m.std_error},
                               {"jackknife_se", m.jackknife_se}});
        json j = {{"x", rep.x},
                  {"replicates", rep.replicates},
                  {"sigma_mean", rep.sigma_mean},
                  {"sigma_variance", rep.sigma_variance},
                  {"moments", moments}};
        write_text(dir / "scaled_moments.json", j.dump(2) + "\n");
        outputs.push_back("scaled_moments.json");

        std::ofstream os(dir / "sigma_histogram.csv", std::ios::binary);
        os << "sigma_lo,sigma_hi,count\n";
        const double w = (rep.histogram.hi - rep.histogram.lo) /
                         static_cast<double>(rep.histogram.counts.size());
        for (std::size_t b = 0; b < rep.histogram.counts.size(); ++b)
            os << cascade::io::fmt_double(rep.histogram.lo + w * static_cast<double>(b)) << ","
               << cascade::io::fmt_double(rep.histogram.lo + w * static_cast<double>(b + 1))
               << "," << rep.histogram.counts[b] << "\n";
        os << cascade::io::fmt_double(rep.histogram.hi) << ",inf," << rep.histogram.overflow
           << "\n";
        outputs.push_back("sigma_histogram.csv");
    }

    json params = {{"x", x},       {"replicates", replicates}, {"seed", seed},
                   {"p_max", p_max}, {"scaled", scaled},       {"bins", bins},
                   {"node_cap", node_cap}, {"threads", common.threads}};
    write_manifest(dir, "size", params, outputs);
    return 0;
}

// --------------------------------------------------------------- series ----

int cmd_series(int n, int order, const CommonOpts& common) {
    if (order < 0) order = n + 6;
    const auto p = cascade::series::pn_expansion(n, order);
    const fs::path dir = prepare_out_dir(common);

    std::ostringstream coeffs;
    cascade::io::write_series_json(coeffs, p);
    json j;
    j["n"] = n;
    j["order"] = order;
    j["front_estimate"] = cascade::series::front_estimate_from_series(n);
    j["coefficients"] = json::parse(coeffs.str());
    write_text(dir / "series.json", j.dump(2) + "\n");

    write_manifest(dir, "series", {{"n", n}, {"order", order}}, {"series.json"});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Continuum cascade model toolkit: height-CDF recurrence, traveling-wave "
                 "analysis, series expansions, and Monte Carlo tree statistics"};
    app.require_subcommand(1);
    app.set_config("--config")->configurable(false);

    // recur
    auto* recur = app.add_subcommand("recur", "Iterate the height-CDF recurrence");
    recur->set_help_flag("--help", "Print help");  // frees -h for the spacing option
    int n_max = 100;
    double h = 1e-3, front_level = 0.5;
    std::vector<int> store;
    std::vector<double> mean_height_at;
    CommonOpts recur_common;
    recur->add_option("--n-max", n_max, "Number of iterations")
        ->required()
        ->check(CLI::Range(1, 100000));
    recur->add_option("--h", h, "Grid spacing")->check(CLI::PositiveNumber);
    recur->add_option("--front-level", front_level, "Front crossing level in (0,1)")
        ->check(CLI::Range(1e-9, 1.0 - 1e-9));
    recur->add_option("--store", store, "Iterations whose profiles are written")
        ->delimiter(',');
    recur->add_option("--mean-height-at", mean_height_at, "x values for E[H(x)]")
        ->delimiter(',');
    add_common(recur, recur_common, false);

    // wave
    auto* wave = app.add_subcommand("wave", "Traveling-wave analysis");
    double dispersion_v = -1.0;
    int wave_n_max = 300, profile_n = -1, fit_lo = 50, fit_hi = -1;
    bool no_log = false;
    CommonOpts wave_common;
    wave->add_option("--v", dispersion_v, "Dispersion-only mode: solve a e^{-a v} = 1")
        ->check(CLI::PositiveNumber);
    wave->add_option("--n-max", wave_n_max, "Iterations for the front trace")
        ->check(CLI::Range(2, 100000));
    wave->add_option("--profile-n", profile_n, "Iteration whose profile is analyzed");
    wave->add_option("--fit-lo", fit_lo, "Velocity fit window start");
    wave->add_option("--fit-hi", fit_hi, "Velocity fit window end (default n-max)");
    wave->add_flag("--no-log", no_log, "Fit x_f = v n + c0 without the ln n term");
    add_common(wave, wave_common, false);

    // mc
    auto* mcc = app.add_subcommand("mc", "Monte Carlo cascade trees: height CDF");
    double mc_x = 1.0;
    std::uint64_t mc_replicates = 100000, mc_seed = 0, mc_node_cap = 100'000'000;
    bool dump_samples = false;
    CommonOpts mc_common;
    mcc->add_option("--x", mc_x, "Interval length")->required()->check(CLI::NonNegativeNumber);
    mcc->add_option("--replicates", mc_replicates, "Number of trees")
        ->required()
        ->check(CLI::PositiveNumber);
    mcc->add_option("--seed", mc_seed, "Master seed (recorded in the manifest)")->required();
    mcc->add_option("--node-cap", mc_node_cap, "Per-tree node budget")
        ->check(CLI::PositiveNumber);
    mcc->add_flag("--dump-samples", dump_samples, "Write per-replicate samples.csv");
    add_common(mcc, mc_common, true);

    // discrete
    auto* disc = app.add_subcommand("discrete", "Discrete cascade graphs on 0..m");
    int disc_m = 1000;
    double disc_c = 0.001;
    std::uint64_t disc_replicates = 1000, disc_seed = 0;
    CommonOpts disc_common;
    disc->add_option("--m", disc_m, "Largest vertex index")->required()->check(CLI::PositiveNumber);
    disc->add_option("--c", disc_c, "Link probability")->required()->check(CLI::Range(0.0, 1.0));
    disc->add_option("--replicates", disc_replicates, "Number of graphs")
        ->required()
        ->check(CLI::PositiveNumber);
    disc->add_option("--seed", disc_seed, "Master seed")->required();
    add_common(disc, disc_common, true);

    // size
    auto* size = app.add_subcommand("size", "Cascade tree size moments");
    double size_x = 3.0;
    std::uint64_t size_replicates = 100000, size_seed = 0, size_node_cap = 100'000'000;
    int p_max = 3, bins = 200;
    bool scaled = false;
    CommonOpts size_common;
    size->add_option("--x", size_x, "Interval length")->required()->check(CLI::NonNegativeNumber);
    size->add_option("--replicates", size_replicates, "Number of trees")
        ->required()
        ->check(CLI::PositiveNumber);
    size->add_option("--seed", size_seed, "Master seed")->required();
    size->add_option("--p-max", p_max, "Highest moment order")->check(CLI::Range(1, 5));
    size->add_flag("--scaled", scaled, "Also report sigma = e^{-x} S moments and histogram");
    size->add_option("--bins", bins, "Histogram bins on [0,10]")->check(CLI::PositiveNumber);
    size->add_option("--node-cap", size_node_cap, "Per-tree node budget")
        ->check(CLI::PositiveNumber);
    add_common(size, size_common, true);

    // series
    auto* ser = app.add_subcommand("series", "Exact small-x expansion of P_n");
    int ser_n = 4, ser_order = -1;
    CommonOpts ser_common;
    ser->add_option("--n", ser_n, "Expansion index n")->required()->check(CLI::Range(0, 64));
    ser->add_option("--order", ser_order, "Truncation order (default n+6)");
    add_common(ser, ser_common, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage errors are exit 2, --help is 0
    }

    try {
        if (recur->parsed())
            return cmd_recur(n_max, h, front_level, store, mean_height_at, recur_common);
        if (wave->parsed())
            return cmd_wave(dispersion_v, wave_n_max, profile_n, fit_lo, fit_hi, no_log,
                            wave_common);
        if (mcc->parsed())
            return cmd_mc(mc_x, mc_replicates, mc_seed, mc_node_cap, dump_samples, mc_common);
        if (disc->parsed())
            return cmd_discrete(disc_m, disc_c, disc_replicates, disc_seed, disc_common);
        if (size->parsed())
            return cmd_size(size_x, size_replicates, size_seed, p_max, scaled, bins,
                            size_node_cap, size_common);
        if (ser->parsed()) return cmd_series(ser_n, ser_order, ser_common);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
