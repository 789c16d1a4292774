// sic.cpp - Dechirp, DC blocking, passband filtering and pilot extraction
#include "afdm/sic.hpp"

#include <algorithm>
#include <cmath>

#include "afdm/chirp_time.hpp"
#include "afdm/fft.hpp"

namespace afdm {

namespace {

std::size_t record_length(const ChirpParams& p, std::size_t l_os) {
    return l_os * (p.M + p.N);
}

void check_frame(const OversampledFrame& sig, const ChirpParams& p) {
    if (sig.l_os < 1) throw ConfigError("OversampledFrame: l_os must be >= 1");
    if (sig.samples.size() != record_length(p, sig.l_os))
        throw ConfigError("OversampledFrame: sample count does not match l_os*(M+N)");
}

OversampledFrame empty_frame(const ChirpParams& p, std::size_t l_os) {
    if (l_os < 1) throw ConfigError("oversample: l_os must be >= 1");
    OversampledFrame out;
    out.l_os = l_os;
    out.dt_os = p.dt / static_cast<double>(l_os);
    out.samples.assign(record_length(p, l_os), cd{0.0, 0.0});
    return out;
}

/// Accumulates h * exp(-i 2 pi f t) * sqrt(dt) * s_cpp(t - tau) over the record.
void accumulate_path(OversampledFrame& out, const ContinuousSignal& sig,
                     const cd& h, double tau, double f, const ChirpParams& p) {
    const double prefix_span = static_cast<double>(p.M) * p.dt;
    const double root_dt = std::sqrt(p.dt);
    const double inv_os = 1.0 / static_cast<double>(out.l_os);
    for (std::size_t j = 0; j < out.samples.size(); ++j) {
        const double t =
            (static_cast<double>(j) * inv_os - static_cast<double>(p.M)) * p.dt;
        const double targ = t - tau;
        if (targ < -prefix_span || targ >= p.T()) continue;
        out.samples[j] += h * cis_cycles(-f * t) * root_dt * sig.eval_cpp(targ);
    }
}

double power(const CVec& v) {
    double acc = 0.0;
    for (const auto& z : v) acc += std::norm(z);
    return acc;
}

}  // namespace

OversampledFrame oversample_tx(const CVec& x, const ChirpParams& p,
                               std::size_t l_os) {
    p.validate();
    OversampledFrame out = empty_frame(p, l_os);
    const ContinuousSignal sig(x, p);
    accumulate_path(out, sig, cd{1.0, 0.0}, 0.0, 0.0, p);
    return out;
}

OversampledFrame oversample_scene(const CVec& x, const Scene& scene,
                                  const ChirpParams& p, std::size_t l_os) {
    p.validate();
    const double prefix_span = static_cast<double>(p.M) * p.dt;
    for (const auto& tg : scene.targets) {
        if (tg.tau < 0.0) throw ConfigError("oversample_scene: negative delay");
        if (tg.tau > prefix_span)
            throw ConfigError("oversample_scene: delay exceeds the prefix span M*dt");
    }
    OversampledFrame out = empty_frame(p, l_os);
    const ContinuousSignal sig(x, p);
    for (const auto& tg : scene.targets)
        accumulate_path(out, sig, tg.h, tg.tau, tg.f, p);
    if (scene.h0 != cd{0.0, 0.0})
        accumulate_path(out, sig, scene.h0, 0.0, 0.0, p);
    return out;
}

OversampledFrame add_noise_os(const OversampledFrame& sig, double N0,
                              RngStream& rng) {
    if (N0 < 0.0) throw ConfigError("add_noise_os: negative noise power");
    OversampledFrame out = sig;
    if (N0 == 0.0) return out;
    const double var = N0 * static_cast<double>(sig.l_os);
    for (auto& v : out.samples) v += rng.cnormal(var);
    return out;
}

OversampledFrame dechirp(const OversampledFrame& r_os, std::size_t m0,
                         const ChirpParams& p) {
    p.validate();
    check_frame(r_os, p);
    if (m0 >= p.N) throw ConfigError("dechirp: pilot index out of range");
    const double Nd = static_cast<double>(p.N);
    const double root_T = std::sqrt(p.T());
    const double inv_os = 1.0 / static_cast<double>(r_os.l_os);
    OversampledFrame out = r_os;
    for (std::size_t j = 0; j < out.samples.size(); ++j) {
        const double u =
            static_cast<double>(j) * inv_os - static_cast<double>(p.M);
        // Reference chirp phase in cycles, extended over the prefix by the
        // same law that builds the chirp-periodic prefix.
        double cycles;
        if (u >= 0.0) {
            cycles = phi(m0, u * p.dt, p);
        } else {
            cycles = phi(m0, (u + Nd) * p.dt, p) -
                     p.c1 * (Nd * Nd + 2.0 * Nd * u);
        }
        out.samples[j] *= cis_cycles(-cycles) / root_T;
    }
    return out;
}

std::vector<std::size_t> BandPlan::all_bins() const {
    std::vector<std::size_t> bins;
    bins.reserve(central.size() + upper.size() + lower.size());
    bins.insert(bins.end(), central.begin(), central.end());
    bins.insert(bins.end(), upper.begin(), upper.end());
    bins.insert(bins.end(), lower.begin(), lower.end());
    std::sort(bins.begin(), bins.end());
    return bins;
}

BandPlan make_band_plan(const FrameLayout& layout, const ChirpParams& p,
                        std::size_t l_os) {
    p.validate();
    if (layout.N != p.N)
        throw ConfigError("make_band_plan: layout and params disagree on N");
    if (l_os < 2)
        throw ConfigError("make_band_plan: l_os must be >= 2 for the edge bands");
    const std::size_t N = p.N;
    const std::size_t L = l_os * N;
    const std::size_t wlo = layout.window_lo;
    const std::size_t whi = layout.window_hi;

    BandPlan plan;
    plan.N = N;
    plan.l_os = l_os;
    for (std::size_t k = 0; k <= whi; ++k) plan.central.push_back(k);
    for (std::size_t k = L - wlo; k < L; ++k) plan.central.push_back(k);
    for (std::size_t k = N - wlo; k < N; ++k) plan.upper.push_back(k);
    for (std::size_t k = 1; k <= whi; ++k) plan.lower.push_back(L - N + k);

    // Every chirp at window offset d from the pilot dechirps to the tone
    // pair {d, d-N}/T; the plan must not admit any pair member of a data or
    // guard chirp.
    std::vector<char> keep(L, 0);
    for (std::size_t k : plan.all_bins()) keep[k] = 1;
    auto check_clear = [&](const IndexSet& set) {
        for (std::size_t m : set) {
            const std::size_t d = (m + N - layout.m0) % N;
            if (d == 0 || keep[d] || keep[L - N + d])
                throw ConfigError("make_band_plan: passband reaches a data tone");
        }
    };
    check_clear(layout.d_gi);
    check_clear(layout.d_data);
    return plan;
}

OversampledFrame tri_band_filter(const OversampledFrame& sig,
                                 const BandPlan& plan, const ChirpParams& p) {
    p.validate();
    check_frame(sig, p);
    if (plan.N != p.N || plan.l_os != sig.l_os)
        throw ConfigError("tri_band_filter: plan does not match the frame");
    const std::size_t L = sig.l_os * p.N;
    const std::size_t prefix = sig.l_os * p.M;

    CVec body(sig.samples.begin() + static_cast<long>(prefix),
              sig.samples.end());
    fft::forward(body);
    std::vector<char> keep(L, 0);
    for (std::size_t k : plan.all_bins()) keep[k] = 1;
    keep[0] = 0;  // DC blocker
    for (std::size_t k = 0; k < L; ++k)
        if (!keep[k]) body[k] = cd{0.0, 0.0};
    fft::inverse(body);
    const double scale = 1.0 / static_cast<double>(L);

    OversampledFrame out = sig;
    std::fill(out.samples.begin(), out.samples.begin() + static_cast<long>(prefix),
              cd{0.0, 0.0});
    for (std::size_t k = 0; k < L; ++k) out.samples[prefix + k] = body[k] * scale;
    return out;
}

CVec to_pilot_vector(const OversampledFrame& sig, const FrameLayout& layout,
                     const ChirpParams& p) {
    p.validate();
    check_frame(sig, p);
    if (layout.N != p.N)
        throw ConfigError("to_pilot_vector: layout and params disagree on N");
    const std::size_t prefix = sig.l_os * p.M;

    CVec b(p.N);
    for (std::size_t n = 0; n < p.N; ++n)
        b[n] = sig.samples[prefix + n * sig.l_os];
    fft::forward(b);

    const IndexSet window = layout.pilot_window();
    const double root_dt = std::sqrt(p.dt);
    CVec y_p(window.size());
    for (std::size_t j = 0; j < window.size(); ++j) {
        const std::size_t m = window[j];
        const std::size_t k = (m + p.N - layout.m0) % p.N;
        const double mm = static_cast<double>(m);
        y_p[j] = root_dt * cis_cycles(-p.c2 * mm * mm) * b[k];
    }
    return y_p;
}

SicResult run_sic(const DaftFrame& frame, const Scene& scene,
                  const ChirpParams& p, std::size_t l_os, RngStream* rng) {
    p.validate();
    if (frame.x.size() != p.N)
        throw ConfigError("run_sic: frame symbol count does not match N");
    const FrameLayout& layout = frame.layout;
    const BandPlan plan = make_band_plan(layout, p, l_os);

    CVec x_pilot(p.N, cd{0.0, 0.0});
    x_pilot[layout.m0] = frame.x[layout.m0];
    CVec x_data = frame.x;
    x_data[layout.m0] = cd{0.0, 0.0};

    Scene targets_only;
    targets_only.targets = scene.targets;
    Scene direct_only;
    direct_only.h0 = scene.h0;

    const OversampledFrame desired =
        scene.targets.empty() ? empty_frame(p, l_os)
                              : oversample_scene(x_pilot, targets_only, p, l_os);
    const OversampledFrame data_echo =
        scene.targets.empty() ? empty_frame(p, l_os)
                              : oversample_scene(x_data, targets_only, p, l_os);
    const OversampledFrame si =
        scene.h0 == cd{0.0, 0.0} ? empty_frame(p, l_os)
                                 : oversample_scene(frame.x, direct_only, p, l_os);

    OversampledFrame composite = empty_frame(p, l_os);
    for (std::size_t j = 0; j < composite.samples.size(); ++j)
        composite.samples[j] =
            desired.samples[j] + data_echo.samples[j] + si.samples[j];
    if (rng != nullptr && scene.N0 > 0.0)
        composite = add_noise_os(composite, scene.N0, *rng);

    auto pilot_vec = [&](const OversampledFrame& in, bool filtered) {
        OversampledFrame stage = dechirp(in, layout.m0, p);
        if (filtered) stage = tri_band_filter(stage, plan, p);
        return to_pilot_vector(stage, layout, p);
    };

    SicResult out;
    out.y_p = pilot_vec(composite, true);
    out.diag.si_before = power(pilot_vec(si, false));
    out.diag.si_after = power(pilot_vec(si, true));
    out.diag.data_before = power(pilot_vec(data_echo, false));
    out.diag.data_after = power(pilot_vec(data_echo, true));
    out.diag.desired_power = power(pilot_vec(desired, true));
    return out;
}

SiReport si_report(const SicDiagnostics& diag) {
    auto suppression = [](double before, double after) {
        if (before <= 0.0) return 0.0;
        if (after <= 0.0) return 150.0;
        const double db = 10.0 * std::log10(before / after);
        return std::clamp(db, -150.0, 150.0);
    };
    SiReport report;
    report.si_suppression_db = suppression(diag.si_before, diag.si_after);
    report.data_suppression_db = suppression(diag.data_before, diag.data_after);
    report.desired_power = diag.desired_power;
    return report;
}

}  // namespace afdm
