// channel.cpp - Analytic channel application, noise and scene generation
#include "afdm/channel.hpp"

#include <cmath>

#include "afdm/chirp_time.hpp"

namespace afdm {

ShiftParts split_shift(double x) {
    ShiftParts out;
    out.whole = static_cast<long>(std::ceil(x - 0.5));
    out.frac = x - static_cast<double>(out.whole);
    return out;
}

CVec apply_channel(const CVec& x, const Scene& scene, const ChirpParams& p) {
    p.validate();
    const double T = p.T();
    const double cpp_span = static_cast<double>(p.M) * p.dt;
    for (const auto& tg : scene.targets) {
        if (tg.tau < 0.0) throw ConfigError("apply_channel: negative delay");
        if (tg.tau > cpp_span)
            throw ConfigError("apply_channel: delay exceeds the prefix span M*dt");
    }

    const ContinuousSignal sig(x, p);
    const double root_dt = std::sqrt(p.dt);
    CVec r(p.N, cd{0.0, 0.0});

    auto accumulate = [&](const cd& h, double tau, double f) {
        for (std::size_t n = 0; n < p.N; ++n) {
            const double t = static_cast<double>(n) * p.dt;
            const double targ = t - tau;
            if (targ >= T) continue;  // cannot happen for tau >= 0; guards rounding
            r[n] += h * cis_cycles(-f * t) * sig.eval_cpp(targ);
        }
    };

    for (const auto& tg : scene.targets) accumulate(tg.h, tg.tau, tg.f);
    if (scene.h0 != cd{0.0, 0.0}) accumulate(scene.h0, 0.0, 0.0);
    for (auto& v : r) v *= root_dt;
    return r;
}

CVec apply_channel(const DaftFrame& frame, const Scene& scene, const ChirpParams& p) {
    return apply_channel(frame.x, scene, p);
}

CVec add_noise(const CVec& r, double N0, RngStream& rng) {
    if (N0 < 0.0) throw ConfigError("add_noise: negative noise power");
    CVec out = r;
    if (N0 == 0.0) return out;
    for (auto& v : out) v += rng.cnormal(N0);
    return out;
}

Scene gen_scene(std::size_t P, double tau_max, double f_max, RngStream& rng) {
    if (P < 1) throw ConfigError("gen_scene: at least one target required");
    if (tau_max < 0.0 || f_max < 0.0) throw ConfigError("gen_scene: negative bounds");
    Scene scene;
    scene.targets.resize(P);
    for (auto& tg : scene.targets) {
        tg.tau = rng.uniform(0.0, tau_max);
        tg.f = rng.uniform(-f_max, f_max);
        tg.h = rng.cnormal(1.0);
    }
    return scene;
}

}  // namespace afdm
