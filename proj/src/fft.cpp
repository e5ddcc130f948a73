#include "predictorlab/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <mutex>

#include "predictorlab/errors.hpp"

namespace predictorlab {

namespace {

// FFTW planning and plan destruction are not thread-safe; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

struct FftwFree {
    void operator()(void* p) const noexcept { fftw_free(p); }
};

template <class T>
std::unique_ptr<T[], FftwFree> fftw_buffer(std::size_t n) {
    void* p = fftw_malloc(sizeof(T) * n);
    if (p == nullptr) throw std::bad_alloc();
    return std::unique_ptr<T[], FftwFree>(static_cast<T*>(p));
}

}  // namespace

struct HankelCorrelator::Plans {
    fftw_plan forward = nullptr;
    fftw_plan inverse = nullptr;

    explicit Plans(std::size_t size) {
        auto real = fftw_buffer<double>(size);
        auto spec = fftw_buffer<fftw_complex>(size / 2 + 1);
        const int n = static_cast<int>(size);
        std::lock_guard lock(planner_mutex());
        // FFTW_ESTIMATE keeps the chosen algorithm, and hence every rounding, fixed
        // from run to run.
        forward = fftw_plan_dft_r2c_1d(n, real.get(), spec.get(), FFTW_ESTIMATE);
        inverse = fftw_plan_dft_c2r_1d(n, spec.get(), real.get(), FFTW_ESTIMATE);
    }
    ~Plans() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(forward);
        fftw_destroy_plan(inverse);
    }
    Plans(const Plans&) = delete;
    Plans& operator=(const Plans&) = delete;
};

HankelCorrelator::HankelCorrelator(std::span<const double> kernel, std::size_t out_len,
                                   std::size_t in_len)
    : out_len_(out_len), in_len_(in_len), size_(next_pow2(std::max<std::size_t>(out_len + in_len, 2))) {
    if (out_len == 0 || in_len == 0) {
        throw ArgumentError("HankelCorrelator: empty input or output");
    }
    if (kernel.size() < out_len + in_len - 1) {
        throw ArgumentError("HankelCorrelator: kernel shorter than out_len + in_len - 1");
    }
    plans_ = std::make_shared<const Plans>(size_);
    auto real = fftw_buffer<double>(size_);
    auto spec = fftw_buffer<fftw_complex>(size_ / 2 + 1);
    std::fill(real.get(), real.get() + size_, 0.0);
    std::copy_n(kernel.begin(), out_len + in_len - 1, real.get());
    fftw_execute_dft_r2c(plans_->forward, real.get(), spec.get());
    kernel_spectrum_.resize(size_ / 2 + 1);
    const double scale = 1.0 / static_cast<double>(size_);
    for (std::size_t i = 0; i < kernel_spectrum_.size(); ++i) {
        kernel_spectrum_[i] = std::complex<double>(spec[i][0], spec[i][1]) * scale;
    }
}

void HankelCorrelator::apply(std::span<const double> x, std::span<double> y) const {
    if (x.size() != in_len_ || y.size() != out_len_) {
        throw ArgumentError("HankelCorrelator::apply: length mismatch");
    }
    auto real = fftw_buffer<double>(size_);
    auto spec = fftw_buffer<fftw_complex>(size_ / 2 + 1);
    std::fill(real.get(), real.get() + size_, 0.0);
    // Correlation as convolution with the reversed input.
    for (std::size_t v = 0; v < in_len_; ++v) {
        real[in_len_ - 1 - v] = x[v];
    }
    fftw_execute_dft_r2c(plans_->forward, real.get(), spec.get());
    for (std::size_t i = 0; i < kernel_spectrum_.size(); ++i) {
        const std::complex<double> z =
            std::complex<double>(spec[i][0], spec[i][1]) * kernel_spectrum_[i];
        spec[i][0] = z.real();
        spec[i][1] = z.imag();
    }
    fftw_execute_dft_c2r(plans_->inverse, spec.get(), real.get());
    std::copy_n(real.get() + (in_len_ - 1), out_len_, y.begin());
}

std::vector<double> HankelCorrelator::apply(std::span<const double> x) const {
    std::vector<double> y(out_len_);
    apply(x, y);
    return y;
}

std::vector<double> hankel_product_naive(std::span<const double> kernel, std::span<const double> x,
                                         std::size_t out_len) {
    if (kernel.size() + 1 < out_len + x.size()) {
        throw ArgumentError("hankel_product_naive: kernel too short");
    }
    std::vector<double> y(out_len, 0.0);
    for (std::size_t j = 0; j < out_len; ++j) {
        double acc = 0.0;
        for (std::size_t v = 0; v < x.size(); ++v) {
            acc += kernel[j + v] * x[v];
        }
        y[j] = acc;
    }
    return y;
}

std::vector<double> cross_correlation(std::span<const double> x, std::span<const double> y,
                                      std::size_t lags) {
    if (x.empty() || y.empty() || lags == 0) {
        return std::vector<double>(lags, 0.0);
    }
    // r[n] = sum_v y[n + v] x[v]: Hankel product with kernel y padded to lags + |x| - 1.
    std::vector<double> kernel(lags + x.size() - 1, 0.0);
    std::copy_n(y.begin(), std::min(y.size(), kernel.size()), kernel.begin());
    HankelCorrelator corr(kernel, lags, x.size());
    return corr.apply(x);
}

}  // namespace predictorlab
