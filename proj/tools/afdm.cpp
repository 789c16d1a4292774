// afdm.cpp - Command line simulator: layouts, trials, sweeps and front-end demo
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "afdm/daft.hpp"
#include "afdm/experiment.hpp"
#include "afdm/fft.hpp"
#include "afdm/frame.hpp"
#include "afdm/sic.hpp"

namespace {

using nlohmann::json;

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << text;
}

json index_set_json(const afdm::IndexSet& set) {
    json arr = json::array();
    for (std::size_t m : set) arr.push_back(m);
    return arr;
}

json layout_json(const afdm::FrameLayout& layout) {
    json j;
    j["m0"] = layout.m0;
    j["p_gi"] = index_set_json(layout.p_gi);
    j["d_gi"] = index_set_json(layout.d_gi);
    j["d_data"] = index_set_json(layout.d_data);
    j["boost"] = layout.boost;
    j["overhead"] = layout.overhead();
    return j;
}

json trial_json(const afdm::ExperimentConfig& cfg, const afdm::TrialRecord& rec,
                double snr_db, std::size_t trial) {
    json j;
    j["version"] = afdm::kVersionString;
    j["seed"] = cfg.seed;
    j["snr_db"] = snr_db;
    j["trial"] = trial;
    j["mode"] = cfg.mode == afdm::SensingMode::PilotOnly ? "pilot" : "full";
    j["sic"] = cfg.sic;

    json scene;
    scene["targets"] = json::array();
    for (const auto& t : rec.scene.targets)
        scene["targets"].push_back({{"h_re", t.h.real()},
                                    {"h_im", t.h.imag()},
                                    {"tau_s", t.tau},
                                    {"f_hz", t.f}});
    scene["h0_re"] = rec.scene.h0.real();
    scene["h0_im"] = rec.scene.h0.imag();
    scene["n0"] = rec.N0;
    j["scene"] = scene;

    j["estimates"] = json::array();
    for (const auto& e : rec.estimate.targets) {
        const afdm::PhysicalEstimate phys = afdm::to_range_velocity(e, cfg.f_c);
        j["estimates"].push_back({{"tau_s", e.tau},
                                  {"f_hz", e.f},
                                  {"range_m", phys.range_m},
                                  {"velocity_mps", phys.velocity_mps},
                                  {"metric", e.metric}});
    }

    j["errors"] = json::array();
    for (const auto& e : rec.result.errors)
        j["errors"].push_back({{"range_m", e.range_m},
                               {"velocity_mps", e.velocity_mps},
                               {"delay_samples", e.delay_samples},
                               {"doppler_bins", e.doppler_bins}});
    j["degraded"] = rec.result.degraded;

    j["grid"] = {{"d_tau", cfg.d_tau},
                 {"d_f", cfg.d_f},
                 {"l_max", cfg.frame.l_max},
                 {"k_max", cfg.frame.k_max},
                 {"strategy", cfg.strategy == afdm::GridSpec::Strategy::TwoStage
                                  ? "two_stage"
                                  : "full_fine"}};
    return j;
}

/**
 * Power spectrum of the oversampled frame body as CSV (freq_hz, power_db),
 * rows ordered from -fs/2 to +fs/2; bin spacing is 1/T for any l_os.
 */
std::string spectrum_csv(const afdm::OversampledFrame& sig,
                         const afdm::ChirpParams& p) {
    const std::size_t L = sig.l_os * p.N;
    afdm::CVec body(sig.samples.end() - static_cast<long>(L), sig.samples.end());
    afdm::fft::forward(body);

    std::string out = "freq_hz,power_db\n";
    char buf[80];
    const double df = 1.0 / p.T();
    auto emit = [&](long k) {
        const double power = std::norm(body[static_cast<std::size_t>(
                                 k < 0 ? k + static_cast<long>(L) : k)]) /
                             static_cast<double>(L);
        const double power_db = power > 0.0 ? 10.0 * std::log10(power) : -300.0;
        std::snprintf(buf, sizeof buf, "%.10g,%.6f\n",
                      static_cast<double>(k) * df, power_db);
        out += buf;
    };
    for (long k = -static_cast<long>(L / 2) + 1; k <= static_cast<long>(L / 2); ++k)
        emit(k);
    return out;
}

std::string pilot_vector_csv(const afdm::CVec& y_p) {
    std::string out = "index,re,im,power_db\n";
    char buf[120];
    for (std::size_t i = 0; i < y_p.size(); ++i) {
        const double power = std::norm(y_p[i]);
        std::snprintf(buf, sizeof buf, "%zu,%.10g,%.10g,%.6f\n", i,
                      y_p[i].real(), y_p[i].imag(),
                      power > 0.0 ? 10.0 * std::log10(power) : -300.0);
        out += buf;
    }
    return out;
}

struct Cli {
    std::string config_path;
    std::string out_dir = ".";
    std::string mode;
    std::string sic;
    std::uint64_t seed = 0;
    std::size_t threads = 0;
    double snr_db = 30.0;
    std::size_t trial = 0;

    bool out_set = false;
    bool seed_set = false;
    bool threads_set = false;

    afdm::ExperimentConfig config() const {
        afdm::ExperimentConfig cfg = config_path.empty()
                                         ? afdm::desk_config()
                                         : afdm::load_config(config_path);
        if (seed_set) cfg.seed = seed;
        if (threads_set) cfg.threads = threads;
        if (!mode.empty())
            cfg.mode = mode == "pilot" ? afdm::SensingMode::PilotOnly
                                       : afdm::SensingMode::WholeFrame;
        if (!sic.empty()) cfg.sic = sic == "on";
        return cfg;
    }

    std::filesystem::path out_path(const std::string& name) const {
        std::filesystem::create_directories(out_dir);
        return std::filesystem::path(out_dir) / name;
    }
};

int cmd_layout(const Cli& cli) {
    const afdm::ExperimentConfig cfg = cli.config();
    const afdm::FrameLayout layout = afdm::build_layout(cfg.frame, cfg.chirp());
    const std::string text = layout_json(layout).dump(2) + "\n";
    std::cout << text;
    if (cli.out_set) write_text(cli.out_path("layout.json"), text);
    return 0;
}

int cmd_simulate(const Cli& cli) {
    const afdm::ExperimentConfig cfg = cli.config();
    const afdm::TrialRecord rec =
        afdm::run_trial_detailed(cfg, cli.snr_db, cli.trial);
    const std::string text =
        trial_json(cfg, rec, cli.snr_db, cli.trial).dump(2) + "\n";
    std::cout << text;
    if (cli.out_set) write_text(cli.out_path("simulate.json"), text);
    return 0;
}

int cmd_sweep(const Cli& cli) {
    const afdm::ExperimentConfig cfg = cli.config();
    const afdm::RmseTable table = afdm::run_sweep(cfg);
    const std::string csv = afdm::rmse_csv(table);
    std::cout << csv;
    write_text(cli.out_path("rmse.csv"), csv);
    write_text(cli.out_path("rmse.json"), afdm::rmse_json(cfg, table));
    std::cerr << "wrote " << cli.out_path("rmse.csv").string() << " and "
              << cli.out_path("rmse.json").string() << "\n";
    return 0;
}

int cmd_throughput(const Cli& cli) {
    const afdm::ExperimentConfig cfg = cli.config();
    std::string csv = "overhead_requested,overhead,data_tones,boost,throughput_bps\n";
    char buf[160];
    for (const double rho : {0.0, 0.35, 0.5, 0.65, 0.8}) {
        afdm::ExperimentConfig point = cfg;
        point.frame.overhead = rho;
        afdm::FrameLayout layout;
        try {
            layout = afdm::build_layout(point.frame, point.chirp());
        } catch (const afdm::ConfigError& e) {
            std::cerr << "skipping overhead " << rho << ": " << e.what() << "\n";
            continue;
        }
        std::snprintf(buf, sizeof buf, "%.10g,%.10g,%zu,%zu,%.10g\n", rho,
                      layout.overhead(), layout.d_data.size(), layout.boost,
                      afdm::throughput(point));
        csv += buf;
    }
    std::cout << csv;
    if (cli.out_set) write_text(cli.out_path("throughput.csv"), csv);
    return 0;
}

int cmd_sic_demo(const Cli& cli) {
    afdm::ExperimentConfig cfg = cli.config();
    cfg.sic = true;
    cfg.mode = afdm::SensingMode::PilotOnly;
    if (cfg.l_os < 2) cfg.l_os = 8;

    const afdm::ChirpParams p = cfg.chirp();
    const afdm::TrialRecord rec =
        afdm::run_trial_detailed(cfg, cli.snr_db, cli.trial);
    const afdm::FrameLayout& layout = rec.frame.layout;

    // Replay the front-end stage by stage. The noise stream below is the one
    // the trial consumed, so the spectra match the estimate in the record.
    afdm::RngStream noise_rng = afdm::trial_noise_stream(cfg, cli.trial);
    afdm::OversampledFrame received =
        afdm::oversample_scene(rec.frame.x, rec.scene, p, cfg.l_os);
    if (rec.scene.N0 > 0.0) afdm::add_noise_os(received, rec.scene.N0, noise_rng);
    const afdm::OversampledFrame dechirped =
        afdm::dechirp(received, layout.m0, p);
    const afdm::BandPlan plan = afdm::make_band_plan(layout, p, cfg.l_os);
    const afdm::OversampledFrame filtered =
        afdm::tri_band_filter(dechirped, plan, p);
    const afdm::CVec y_p = afdm::to_pilot_vector(filtered, layout, p);

    afdm::RngStream report_rng = afdm::trial_noise_stream(cfg, cli.trial);
    const afdm::SicResult sic =
        afdm::run_sic(rec.frame, rec.scene, p, cfg.l_os, &report_rng);
    const afdm::SiReport report = afdm::si_report(sic.diag);

    write_text(cli.out_path("sic_spectrum_received.csv"), spectrum_csv(received, p));
    write_text(cli.out_path("sic_spectrum_dechirped.csv"), spectrum_csv(dechirped, p));
    write_text(cli.out_path("sic_spectrum_filtered.csv"), spectrum_csv(filtered, p));
    write_text(cli.out_path("sic_pilot_vector.csv"), pilot_vector_csv(y_p));

    json j;
    j["version"] = afdm::kVersionString;
    j["seed"] = cfg.seed;
    j["snr_db"] = cli.snr_db;
    j["trial"] = cli.trial;
    j["l_os"] = cfg.l_os;
    j["si_power_db"] = cfg.si_power_db;
    j["si_suppression_db"] = report.si_suppression_db;
    j["data_suppression_db"] = report.data_suppression_db;
    j["desired_power"] = report.desired_power;
    j["diagnostics"] = {{"si_before", sic.diag.si_before},
                        {"si_after", sic.diag.si_after},
                        {"data_before", sic.diag.data_before},
                        {"data_after", sic.diag.data_after},
                        {"desired_power", sic.diag.desired_power}};
    const std::string text = j.dump(2) + "\n";
    std::cout << text;
    write_text(cli.out_path("sic_report.json"), text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"AFDM integrated sensing and communications simulator"};
    app.require_subcommand(1);

    Cli cli;
    app.add_option("--config", cli.config_path, "experiment configuration file");
    auto* out_opt = app.add_option("--out", cli.out_dir, "output directory");
    auto* seed_opt = app.add_option("--seed", cli.seed, "master seed");
    auto* threads_opt = app.add_option("--threads", cli.threads, "worker threads");
    app.add_option("--mode", cli.mode, "sensing observation")
        ->check(CLI::IsMember({"pilot", "full"}));
    app.add_option("--sic", cli.sic, "front-end cancellation")
        ->check(CLI::IsMember({"on", "off"}));
    app.fallthrough();

    auto* layout = app.add_subcommand("layout", "dump the frame layout as JSON");
    auto* simulate = app.add_subcommand("simulate", "run one trial, dump scene and estimates");
    simulate->add_option("--snr", cli.snr_db, "SNR in dB");
    simulate->add_option("--trial", cli.trial, "trial index");
    auto* sweep = app.add_subcommand("sweep", "RMSE table over the SNR grid (CSV + JSON)");
    auto* sic_demo = app.add_subcommand("sic-demo", "per-stage spectra and suppression report");
    sic_demo->add_option("--snr", cli.snr_db, "SNR in dB");
    sic_demo->add_option("--trial", cli.trial, "trial index");
    auto* rate = app.add_subcommand("throughput", "rate table over an overhead grid");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    cli.out_set = out_opt->count() > 0;
    cli.seed_set = seed_opt->count() > 0;
    cli.threads_set = threads_opt->count() > 0;

    try {
        if (layout->parsed()) return cmd_layout(cli);
        if (simulate->parsed()) return cmd_simulate(cli);
        if (sweep->parsed()) return cmd_sweep(cli);
        if (sic_demo->parsed()) return cmd_sic_demo(cli);
        if (rate->parsed()) return cmd_throughput(cli);
    } catch (const afdm::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
