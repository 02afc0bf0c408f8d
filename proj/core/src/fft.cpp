#include "olct/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace olct::fft {

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

namespace {

// Shared plan per (size, direction). Plans are created once with a scratch
// buffer and replayed on caller arrays via fftw_execute_dft, which is safe
// for concurrent use on distinct buffers.
fftw_plan plan_for(std::size_t n, int sign) {
    static std::mutex mu;
    static std::map<std::pair<std::size_t, int>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({n, sign});
    if (it != cache.end()) return it->second;
    fftw_complex* scratch = fftw_alloc_complex(n);
    fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), scratch, scratch, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
    cache.emplace(std::pair<std::size_t, int>{n, sign}, p);
    return p;
}

void execute(std::vector<Complex>& data, int sign) {
    const std::size_t n = data.size();
    if (n == 0 || (n & (n - 1)) != 0) {
        throw std::invalid_argument("fft size must be a nonzero power of two");
    }
    fftw_plan p = plan_for(n, sign);
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(p, buf, buf);
}

}  // namespace

void forward_pow2(std::vector<Complex>& data) { execute(data, FFTW_FORWARD); }

void inverse_pow2(std::vector<Complex>& data) {
    execute(data, FFTW_BACKWARD);
    const double inv = 1.0 / static_cast<double>(data.size());
    for (Complex& v : data) v *= inv;
}

}  // namespace olct::fft
