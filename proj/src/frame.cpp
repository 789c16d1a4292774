// frame.cpp - Layout construction and frame assembly
#include "afdm/frame.hpp"

#include <algorithm>
#include <cmath>

namespace afdm {

namespace {

std::size_t wrap(long v, std::size_t N) {
    const long n = static_cast<long>(N);
    long r = v % n;
    if (r < 0) r += n;
    return static_cast<std::size_t>(r);
}

}  // namespace

int delay_bins(double tau_max, double dt) {
    if (tau_max < 0.0 || dt <= 0.0) throw ConfigError("delay_bins: bad bounds");
    return static_cast<int>(std::ceil(tau_max / dt - 1e-12));
}

int doppler_bins(double f_max, double T) {
    if (f_max < 0.0 || T <= 0.0) throw ConfigError("doppler_bins: bad bounds");
    return static_cast<int>(std::ceil(T * f_max - 1e-12));
}

IndexSet FrameLayout::pilot_window() const {
    IndexSet out;
    out.reserve(window_lo + window_hi + 1);
    const long start = static_cast<long>(m0) - static_cast<long>(window_lo);
    for (std::size_t j = 0; j < window_lo + window_hi + 1; ++j)
        out.push_back(wrap(start + static_cast<long>(j), N));
    return out;
}

long FrameLayout::window_position(std::size_t m) const {
    const std::size_t offr =
        wrap(static_cast<long>(m) - static_cast<long>(m0) + static_cast<long>(window_lo),
             N);
    if (offr <= window_lo + window_hi) return static_cast<long>(offr);
    return -1;
}

FrameLayout build_layout(const FrameConfig& cfg, const ChirpParams& params) {
    params.validate();
    const std::size_t N = cfg.N;
    if (N != params.N) throw ConfigError("build_layout: FrameConfig/ChirpParams N mismatch");
    if (cfg.k_f < 0 || cfg.k_max < 0 || cfg.l_max < 0)
        throw ConfigError("build_layout: negative delay/Doppler bounds");

    const double Wreal = params.C() * static_cast<double>(cfg.l_max);
    const double Wround = std::nearbyint(Wreal);
    if (std::abs(Wreal - Wround) > 1e-9)
        throw ConfigError("build_layout: C*l_max must be an integer for guard sizing");
    const std::size_t W = static_cast<std::size_t>(Wround);
    const std::size_t G = static_cast<std::size_t>(cfg.k_f + cfg.k_max);

    const std::size_t window_lo = G + W;  // reach below the pilot
    const std::size_t window_hi = G;      // reach above the pilot
    const std::size_t p_gi_count = window_lo + window_hi;

    long m0l = cfg.m0;
    if (m0l < 0) m0l = static_cast<long>(window_lo);
    if (m0l >= static_cast<long>(N))
        throw ConfigError("build_layout: pilot index m0 out of range");
    const std::size_t m0 = static_cast<std::size_t>(m0l);

    // Null budget: pilot plus all guard nulls. The minimum places |P_GI|
    // pilot-echo nulls and an equal number of data-guard nulls around them.
    const std::size_t minimum = 2 * p_gi_count + 1;
    std::size_t budget = minimum;
    if (cfg.overhead > 0.0) {
        if (cfg.overhead >= 1.0)
            throw ConfigError("build_layout: overhead fraction must be below 1");
        budget = static_cast<std::size_t>(
            std::nearbyint(cfg.overhead * static_cast<double>(N)));
        if (budget < minimum)
            throw ConfigError("build_layout: overhead budget below the minimum " +
                              std::to_string(minimum) + "/" + std::to_string(N));
    }
    if (budget > N) throw ConfigError("build_layout: overhead budget exceeds frame");
    const std::size_t pairs = (budget - minimum) / 2;  // odd remainder left to data

    FrameLayout out;
    out.N = N;
    out.m0 = m0;
    out.window_lo = window_lo;
    out.window_hi = window_hi;

    const long base = static_cast<long>(m0);
    for (std::size_t j = 1; j <= window_lo; ++j)
        out.p_gi.push_back(wrap(base - static_cast<long>(j), N));
    for (std::size_t j = 1; j <= window_hi; ++j)
        out.p_gi.push_back(wrap(base + static_cast<long>(j), N));

    const std::size_t left_width = G + pairs;
    const std::size_t right_width = G + W + pairs;
    for (std::size_t j = 1; j <= left_width; ++j)
        out.d_gi.push_back(wrap(base - static_cast<long>(window_lo + j), N));
    for (std::size_t j = 1; j <= right_width; ++j)
        out.d_gi.push_back(wrap(base + static_cast<long>(window_hi + j), N));

    std::sort(out.p_gi.begin(), out.p_gi.end());
    std::sort(out.d_gi.begin(), out.d_gi.end());
    out.boost = out.p_gi.size() + out.d_gi.size();

    std::vector<char> used(N, 0);
    used[m0] = 1;
    for (auto i : out.p_gi) used[i] = 1;
    for (auto i : out.d_gi) used[i] = 1;
    for (std::size_t i = 0; i < N; ++i)
        if (!used[i]) out.d_data.push_back(i);
    if (1 + out.p_gi.size() + out.d_gi.size() + out.d_data.size() != N)
        throw ConfigError("build_layout: index sets overlap (internal error)");
    return out;
}

DaftFrame assemble_frame(const FrameLayout& layout, const CVec& data) {
    if (data.size() != layout.d_data.size())
        throw ConfigError("assemble_frame: data length does not match |D_data|");
    DaftFrame frame;
    frame.layout = layout;
    frame.x.assign(layout.N, cd{0.0, 0.0});
    frame.x[layout.m0] = std::sqrt(static_cast<double>(layout.boost));
    for (std::size_t i = 0; i < data.size(); ++i) frame.x[layout.d_data[i]] = data[i];
    return frame;
}

DaftFrame assemble_frame(const FrameLayout& layout, RngStream& rng) {
    return assemble_frame(layout, random_qpsk(layout.d_data.size(), rng));
}

CVec random_qpsk(std::size_t count, RngStream& rng) {
    static const double a = 1.0 / std::sqrt(2.0);
    CVec out(count);
    for (auto& v : out) {
        const std::uint64_t bits = rng.raw();
        v = {bits & 1 ? a : -a, bits & 2 ? a : -a};
    }
    return out;
}

CVec extract_pilot_slice(const CVec& y_tot, const FrameLayout& layout) {
    if (y_tot.size() != layout.N)
        throw ConfigError("extract_pilot_slice: vector length mismatch");
    const IndexSet window = layout.pilot_window();
    CVec out;
    out.reserve(window.size());
    for (auto i : window) out.push_back(y_tot[i]);
    return out;
}

}  // namespace afdm
