// fft.cpp - FFTW3 plan cache and execution helpers
#include "afdm/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <unordered_map>

namespace afdm::fft {

namespace {

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan inv = nullptr;
};

std::mutex plan_mutex;
std::unordered_map<std::size_t, PlanPair>& plan_cache() {
    static std::unordered_map<std::size_t, PlanPair> cache;
    return cache;
}

// Plans are created with FFTW_UNALIGNED on a scratch buffer so they can be
// executed on any array of the right length via fftw_execute_dft (which is
// thread safe; only plan creation needs the lock).
PlanPair& plans_for(std::size_t n) {
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto& cache = plan_cache();
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    CVec scratch(n);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    PlanPair pair;
    pair.fwd = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_FORWARD,
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
    pair.inv = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_BACKWARD,
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
    return cache.emplace(n, pair).first->second;
}

}  // namespace

void forward(CVec& data) {
    if (data.empty()) return;
    auto& p = plans_for(data.size());
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(p.fwd, buf, buf);
}

void inverse(CVec& data) {
    if (data.empty()) return;
    auto& p = plans_for(data.size());
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(p.inv, buf, buf);
}

CVec forward_copy(const CVec& data) {
    CVec out = data;
    forward(out);
    return out;
}

CVec inverse_copy(const CVec& data) {
    CVec out = data;
    inverse(out);
    return out;
}

}  // namespace afdm::fft
