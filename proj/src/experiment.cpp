// experiment.cpp - Trial protocol, sweep runner, config parsing and writers
#include "afdm/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "afdm/daft.hpp"
#include "afdm/sic.hpp"

namespace afdm {

namespace {

// Per-trial stream ids; SNR is deliberately absent so every sweep point
// sees the same scene, data and noise draws (only the noise scale changes).
enum StreamKind : std::uint64_t { kDataStream = 0, kSceneStream = 1, kNoiseStream = 2 };

RngStream trial_stream(const ExperimentConfig& cfg, std::size_t trial,
                       StreamKind kind) {
    return RngStream(cfg.seed, trial * 4 + kind);
}

Scene gen_trial_scene(const ExperimentConfig& cfg, const ChirpParams& p,
                      RngStream& rng) {
    Scene scene;
    scene.targets.resize(cfg.P);
    const double T = p.T();
    for (auto& tg : scene.targets) {
        if (cfg.integer_shifts) {
            const auto l = rng.raw() % static_cast<std::uint64_t>(cfg.frame.l_max + 1);
            const auto span = static_cast<std::uint64_t>(2 * cfg.frame.k_max + 1);
            const long k = static_cast<long>(rng.raw() % span) - cfg.frame.k_max;
            tg.tau = static_cast<double>(l) * p.dt;
            tg.f = static_cast<double>(k) / T;
        } else {
            tg.tau = rng.uniform(0.0, cfg.effective_tau_max());
            tg.f = rng.uniform(-cfg.effective_f_max(), cfg.effective_f_max());
        }
        tg.h = rng.cnormal(1.0);
    }
    // The direct-path phase is always drawn so sic on/off share the rest of
    // the stream; the path itself enters only when the front-end is in use.
    const double phase = rng.uniform();
    if (cfg.sic)
        scene.h0 = std::polar(std::pow(10.0, cfg.si_power_db / 20.0),
                              kTwoPi * phase);
    return scene;
}

std::string mode_name(SensingMode mode) {
    return mode == SensingMode::PilotOnly ? "pilot" : "full";
}

[[noreturn]] void bad_key(const std::string& section, const std::string& key) {
    throw ConfigError("config: unknown key [" + section + "] " + key);
}

double to_double(const std::string& s) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw ConfigError("config: bad number '" + s + "'");
    }
    if (pos != s.size()) throw ConfigError("config: bad number '" + s + "'");
    return v;
}

long to_long(const std::string& s) {
    const double v = to_double(s);
    if (v != std::nearbyint(v)) throw ConfigError("config: expected integer '" + s + "'");
    return static_cast<long>(v);
}

std::size_t to_size(const std::string& s) {
    const long v = to_long(s);
    if (v < 0) throw ConfigError("config: expected non-negative '" + s + "'");
    return static_cast<std::size_t>(v);
}

bool to_bool(const std::string& s) {
    if (s == "true" || s == "on" || s == "1") return true;
    if (s == "false" || s == "off" || s == "0") return false;
    throw ConfigError("config: bad flag '" + s + "'");
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

ChirpParams ExperimentConfig::chirp() const {
    ChirpParams p;
    p.N = frame.N;
    p.M = M;
    p.c1 = c1 < 0.0 ? ChirpParams::default_c1(frame.N, frame.k_f, frame.k_max) : c1;
    p.c2 = c2;
    p.dt = dt;
    return p;
}

GridSpec ExperimentConfig::grid_spec() const {
    GridSpec g;
    g.l_max = frame.l_max;
    g.k_max = frame.k_max;
    g.d_tau = d_tau;
    g.d_f = d_f;
    g.strategy = strategy;
    return g;
}

double ExperimentConfig::effective_tau_max() const {
    return tau_max < 0.0 ? static_cast<double>(frame.l_max) * dt : tau_max;
}

double ExperimentConfig::effective_f_max() const {
    return f_max < 0.0 ? static_cast<double>(frame.k_max) / chirp().T() : f_max;
}

void ExperimentConfig::validate() const {
    const ChirpParams p = chirp();
    p.validate();
    grid_spec().validate();
    if (trials < 1) throw ConfigError("ExperimentConfig: trials must be >= 1");
    if (snr_db.empty()) throw ConfigError("ExperimentConfig: SNR grid is empty");
    if (P < 1 || P > 4) throw ConfigError("ExperimentConfig: P must be 1..4");
    if (effective_tau_max() < 0.0 ||
        effective_tau_max() > static_cast<double>(M) * dt)
        throw ConfigError("ExperimentConfig: tau_max outside [0, M*dt]");
    if (effective_f_max() < 0.0 || effective_f_max() * dt > 0.5)
        throw ConfigError("ExperimentConfig: f_max outside the digital band");
    if (f_c <= 0.0) throw ConfigError("ExperimentConfig: carrier must be positive");
    if (threads < 1) throw ConfigError("ExperimentConfig: threads must be >= 1");
    if (sic && mode != SensingMode::PilotOnly)
        throw ConfigError("ExperimentConfig: the front-end produces a pilot observation");
    if (sic && l_os < 2)
        throw ConfigError("ExperimentConfig: l_os must be >= 2 when sic is on");
}

std::vector<TargetError> match_to_truth(const std::vector<TargetEstimate>& est,
                                        const std::vector<Target>& truth,
                                        const ChirpParams& p, double f_c) {
    if (est.size() != truth.size())
        throw ConfigError("match_to_truth: estimate/truth size mismatch");
    if (truth.size() > 4)
        throw ConfigError("match_to_truth: exhaustive matching limited to P <= 4");
    const double T = p.T();

    std::vector<std::size_t> perm(truth.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::size_t> best = perm;
    double best_cost = -1.0;
    do {
        double cost = 0.0;
        for (std::size_t i = 0; i < truth.size(); ++i) {
            const double dl = (est[perm[i]].tau - truth[i].tau) / p.dt;
            const double dk = (est[perm[i]].f - truth[i].f) * T;
            cost += dl * dl + dk * dk;
        }
        if (best_cost < 0.0 || cost < best_cost) {
            best_cost = cost;
            best = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::vector<TargetError> errors(truth.size());
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const TargetEstimate& e = est[best[i]];
        TargetEstimate t;
        t.tau = truth[i].tau;
        t.f = truth[i].f;
        const PhysicalEstimate a = to_range_velocity(e, f_c);
        const PhysicalEstimate b = to_range_velocity(t, f_c);
        errors[i].range_m = a.range_m - b.range_m;
        errors[i].velocity_mps = a.velocity_mps - b.velocity_mps;
        errors[i].delay_samples = (e.tau - truth[i].tau) / p.dt;
        errors[i].doppler_bins = (e.f - truth[i].f) * T;
    }
    return errors;
}

TrialRecord run_trial_detailed(const ExperimentConfig& cfg, double snr_db,
                               std::size_t trial_index) {
    cfg.validate();
    const ChirpParams p = cfg.chirp();
    const FrameLayout layout = build_layout(cfg.frame, p);

    RngStream data_rng = trial_stream(cfg, trial_index, kDataStream);
    RngStream scene_rng = trial_stream(cfg, trial_index, kSceneStream);
    RngStream noise_rng = trial_stream(cfg, trial_index, kNoiseStream);

    TrialRecord rec;
    rec.frame = assemble_frame(layout, data_rng);
    rec.scene = gen_trial_scene(cfg, p, scene_rng);
    rec.N0 = std::pow(10.0, -snr_db / 10.0);

    if (cfg.sic) {
        rec.scene.N0 = rec.N0;
        const SicResult sr = run_sic(rec.frame, rec.scene, p, cfg.l_os, &noise_rng);
        rec.estimate = estimate(sr.y_p, rec.frame, cfg.grid_spec(), cfg.P, p,
                                SensingMode::PilotOnly);
    } else {
        CVec r = apply_channel(rec.frame.x, rec.scene, p);
        r = add_noise(r, rec.N0, noise_rng);
        const CVec y = daft(r, p);
        const CVec obs = cfg.mode == SensingMode::PilotOnly
                             ? extract_pilot_slice(y, layout)
                             : y;
        rec.estimate = estimate(obs, rec.frame, cfg.grid_spec(), cfg.P, p, cfg.mode);
    }

    rec.result.errors =
        match_to_truth(rec.estimate.targets, rec.scene.targets, p, cfg.f_c);
    rec.result.degraded = rec.estimate.degraded;
    return rec;
}

TrialResult run_trial(const ExperimentConfig& cfg, double snr_db,
                      std::size_t trial_index) {
    return run_trial_detailed(cfg, snr_db, trial_index).result;
}

RngStream trial_noise_stream(const ExperimentConfig& cfg,
                             std::size_t trial_index) {
    return trial_stream(cfg, trial_index, kNoiseStream);
}

RmseTable run_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    const ChirpParams p = cfg.chirp();
    const FrameLayout layout = build_layout(cfg.frame, p);

    RmseTable table;
    for (const double snr : cfg.snr_db) {
        std::vector<TrialResult> results(cfg.trials);
        const std::size_t workers = std::min(cfg.threads, cfg.trials);
        if (workers <= 1) {
            for (std::size_t t = 0; t < cfg.trials; ++t)
                results[t] = run_trial(cfg, snr, t);
        } else {
            std::atomic<std::size_t> next{0};
            std::exception_ptr failure;
            std::mutex failure_mutex;
            auto worker = [&]() {
                for (;;) {
                    const std::size_t t = next.fetch_add(1);
                    if (t >= cfg.trials) return;
                    try {
                        results[t] = run_trial(cfg, snr, t);
                    } catch (...) {
                        std::lock_guard<std::mutex> lk(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        return;
                    }
                }
            };
            std::vector<std::thread> pool;
            for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
            if (failure) std::rethrow_exception(failure);
        }

        RmseRow row;
        row.snr_db = snr;
        row.trials = cfg.trials;
        row.mode = cfg.mode;
        row.overhead = layout.overhead();
        double sq_range = 0.0, sq_vel = 0.0;
        std::size_t count = 0;
        for (const auto& res : results) {
            row.degraded_trials += res.degraded ? 1 : 0;
            for (const auto& e : res.errors) {
                sq_range += e.range_m * e.range_m;
                sq_vel += e.velocity_mps * e.velocity_mps;
                ++count;
            }
        }
        row.range_rmse_m = std::sqrt(sq_range / static_cast<double>(count));
        row.velocity_rmse_mps = std::sqrt(sq_vel / static_cast<double>(count));
        table.rows.push_back(row);
    }
    return table;
}

double throughput(const ExperimentConfig& cfg) {
    const ChirpParams p = cfg.chirp();
    p.validate();
    const FrameLayout layout = build_layout(cfg.frame, p);
    const double frame_time = static_cast<double>(p.N + p.M) * p.dt;
    return static_cast<double>(layout.d_data.size()) *
           static_cast<double>(cfg.frame.modulation_bits) / frame_time;
}

ExperimentConfig table1_config() {
    ExperimentConfig cfg;
    cfg.frame = FrameConfig{2048, 4, 3, 20, -1, 0.0, 2};
    cfg.M = 20;
    cfg.dt = 1.0 / 30.72e6;
    cfg.d_tau = 0.1;
    cfg.d_f = 0.1;
    cfg.P = 2;
    cfg.trials = 100;
    cfg.snr_db = {0.0, 10.0, 20.0, 30.0};
    return cfg;
}

ExperimentConfig desk_config() {
    ExperimentConfig cfg;
    cfg.frame = FrameConfig{1024, 4, 3, 10, -1, 0.0, 2};
    cfg.M = 16;
    cfg.dt = 1.0 / 30.72e6;
    cfg.d_tau = 0.1;
    cfg.d_f = 0.1;
    cfg.P = 2;
    cfg.trials = 500;
    cfg.snr_db = {-10.0, 0.0, 10.0, 20.0, 30.0};
    return cfg;
}

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig cfg;
    std::string line, section;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config: bad section header at line " +
                                  std::to_string(line_no));
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: expected key = value at line " +
                              std::to_string(line_no));
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (section == "frame") {
            if (key == "n") cfg.frame.N = to_size(value);
            else if (key == "k_f") cfg.frame.k_f = static_cast<int>(to_long(value));
            else if (key == "k_max") cfg.frame.k_max = static_cast<int>(to_long(value));
            else if (key == "l_max") cfg.frame.l_max = static_cast<int>(to_long(value));
            else if (key == "m0") cfg.frame.m0 = to_long(value);
            else if (key == "overhead") cfg.frame.overhead = to_double(value);
            else if (key == "modulation_bits")
                cfg.frame.modulation_bits = static_cast<int>(to_long(value));
            else bad_key(section, key);
        } else if (section == "chirp") {
            if (key == "m") cfg.M = to_size(value);
            else if (key == "c1") cfg.c1 = to_double(value);
            else if (key == "c2") cfg.c2 = to_double(value);
            else if (key == "dt") cfg.dt = to_double(value);
            else bad_key(section, key);
        } else if (section == "grid") {
            if (key == "d_tau") cfg.d_tau = to_double(value);
            else if (key == "d_f") cfg.d_f = to_double(value);
            else if (key == "strategy") {
                if (value == "two_stage") cfg.strategy = GridSpec::Strategy::TwoStage;
                else if (value == "full_fine") cfg.strategy = GridSpec::Strategy::FullFine;
                else throw ConfigError("config: bad strategy '" + value + "'");
            } else bad_key(section, key);
        } else if (section == "scene") {
            if (key == "p") cfg.P = to_size(value);
            else if (key == "tau_max") cfg.tau_max = to_double(value);
            else if (key == "f_max") cfg.f_max = to_double(value);
            else if (key == "integer_shifts") cfg.integer_shifts = to_bool(value);
            else if (key == "si_power_db") cfg.si_power_db = to_double(value);
            else bad_key(section, key);
        } else if (section == "sweep") {
            if (key == "snr_db") {
                cfg.snr_db.clear();
                std::stringstream ss(value);
                std::string item;
                while (std::getline(ss, item, ','))
                    cfg.snr_db.push_back(to_double(trim(item)));
            } else if (key == "trials") cfg.trials = to_size(value);
            else if (key == "mode") {
                if (value == "pilot") cfg.mode = SensingMode::PilotOnly;
                else if (value == "full") cfg.mode = SensingMode::WholeFrame;
                else throw ConfigError("config: bad mode '" + value + "'");
            } else if (key == "sic") cfg.sic = to_bool(value);
            else if (key == "l_os") cfg.l_os = to_size(value);
            else if (key == "f_c") cfg.f_c = to_double(value);
            else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(to_long(value));
            else if (key == "threads") cfg.threads = to_size(value);
            else bad_key(section, key);
        } else {
            throw ConfigError("config: unknown section '" + section + "'");
        }
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    return parse_config(in);
}

std::string rmse_csv(const RmseTable& table) {
    std::string out =
        "snr_db,range_rmse_m,velocity_rmse_mps,trials,mode,overhead,degraded_trials\n";
    char buf[160];
    for (const auto& r : table.rows) {
        std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.10g,%zu,%s,%.10g,%zu\n",
                      r.snr_db, r.range_rmse_m, r.velocity_rmse_mps, r.trials,
                      mode_name(r.mode).c_str(), r.overhead, r.degraded_trials);
        out += buf;
    }
    return out;
}

std::string rmse_json(const ExperimentConfig& cfg, const RmseTable& table) {
    nlohmann::json j;
    j["version"] = kVersionString;
    j["seed"] = cfg.seed;
    nlohmann::json jc;
    jc["frame"] = {{"n", cfg.frame.N},       {"k_f", cfg.frame.k_f},
                   {"k_max", cfg.frame.k_max}, {"l_max", cfg.frame.l_max},
                   {"m0", cfg.frame.m0},     {"overhead", cfg.frame.overhead},
                   {"modulation_bits", cfg.frame.modulation_bits}};
    jc["chirp"] = {{"m", cfg.M},
                   {"c1", cfg.chirp().c1},
                   {"c2", cfg.c2},
                   {"dt", cfg.dt}};
    jc["grid"] = {{"d_tau", cfg.d_tau},
                  {"d_f", cfg.d_f},
                  {"strategy", cfg.strategy == GridSpec::Strategy::TwoStage
                                   ? "two_stage"
                                   : "full_fine"}};
    jc["scene"] = {{"p", cfg.P},
                   {"tau_max", cfg.effective_tau_max()},
                   {"f_max", cfg.effective_f_max()},
                   {"integer_shifts", cfg.integer_shifts},
                   {"si_power_db", cfg.si_power_db}};
    jc["sweep"] = {{"snr_db", cfg.snr_db}, {"trials", cfg.trials},
                   {"mode", mode_name(cfg.mode)}, {"sic", cfg.sic},
                   {"l_os", cfg.l_os},     {"f_c", cfg.f_c},
                   {"threads", cfg.threads}};
    j["config"] = jc;
    j["rows"] = nlohmann::json::array();
    for (const auto& r : table.rows)
        j["rows"].push_back({{"snr_db", r.snr_db},
                             {"range_rmse_m", r.range_rmse_m},
                             {"velocity_rmse_mps", r.velocity_rmse_mps},
                             {"trials", r.trials},
                             {"mode", mode_name(r.mode)},
                             {"overhead", r.overhead},
                             {"degraded_trials", r.degraded_trials}});
    return j.dump(2) + "\n";
}

}  // namespace afdm
