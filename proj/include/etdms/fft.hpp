#pragma once

// FFTW-backed complex 2-D transforms with a per-size plan cache.
// Plans are created under a lock (FFTW planning is not thread-safe) with
// FFTW_UNALIGNED so one in-place plan serves any buffer; execution through
// the new-array interface is safe to run concurrently on distinct buffers.

#include <complex>
#include <map>
#include <mutex>
#include <utility>

#include <fftw3.h>

namespace etdms::detail {

class FftCache {
  public:
    static FftCache& instance() {
        static FftCache cache;
        return cache;
    }

    fftw_plan get(int n, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto key = std::make_pair(n, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::vector<std::complex<double>> scratch(static_cast<std::size_t>(n) * n);
        fftw_plan plan = fftw_plan_dft_2d(
            n, n, reinterpret_cast<fftw_complex*>(scratch.data()),
            reinterpret_cast<fftw_complex*>(scratch.data()), sign,
            FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, plan);
        return plan;
    }

    FftCache(const FftCache&) = delete;
    FftCache& operator=(const FftCache&) = delete;

  private:
    FftCache() = default;
    ~FftCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }
    std::mutex mutex_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

// In-place unnormalized transform; sign = FFTW_FORWARD or FFTW_BACKWARD.
inline void fft2_inplace(int n, std::complex<double>* data, int sign) {
    fftw_plan plan = FftCache::instance().get(n, sign);
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(data),
                     reinterpret_cast<fftw_complex*>(data));
}

}  // namespace etdms::detail
