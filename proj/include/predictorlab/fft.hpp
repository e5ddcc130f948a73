#ifndef PREDICTORLAB_FFT_HPP
#define PREDICTORLAB_FFT_HPP

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace predictorlab {

/// Fast product with the Hankel matrix built from a fixed kernel segment:
///
///     y[j] = sum_{v < in_len} kernel[j + v] * x[v],   j = 0 .. out_len - 1,
///
/// where kernel has length out_len + in_len - 1. The kernel spectrum is
/// computed once; each apply() is one forward and one inverse real FFT.
/// apply() is const and allocates its own scratch, so one correlator can be
/// shared between threads.
class HankelCorrelator {
public:
    HankelCorrelator(std::span<const double> kernel, std::size_t out_len, std::size_t in_len);

    void apply(std::span<const double> x, std::span<double> y) const;
    std::vector<double> apply(std::span<const double> x) const;

    std::size_t out_len() const noexcept { return out_len_; }
    std::size_t in_len() const noexcept { return in_len_; }
    std::size_t fft_size() const noexcept { return size_; }

private:
    struct Plans;
    std::size_t out_len_;
    std::size_t in_len_;
    std::size_t size_;
    std::shared_ptr<const Plans> plans_;
    std::vector<std::complex<double>> kernel_spectrum_;
};

/// Reference O(out_len * in_len) evaluation of the same product.
std::vector<double> hankel_product_naive(std::span<const double> kernel, std::span<const double> x,
                                         std::size_t out_len);

/// Cross-correlation r[n] = sum_{v} x[v] * y[v + n] for n = 0 .. lags - 1, with
/// both sequences treated as zero beyond their stored length.
std::vector<double> cross_correlation(std::span<const double> x, std::span<const double> y,
                                      std::size_t lags);

}  // namespace predictorlab

#endif  // PREDICTORLAB_FFT_HPP
