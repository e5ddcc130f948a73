#ifndef PREDICTORLAB_COEFFS_HPP
#define PREDICTORLAB_COEFFS_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "predictorlab/model.hpp"
#include "predictorlab/numerics.hpp"

namespace predictorlab {

enum class CoeffKind { MA, AR };

/// Truncated power-series coefficients of the outer function h(z) (MA kind,
/// the c_n) or of -1/h(z) (AR kind, the a_n), indices 0..N.
///
/// Long-memory sequences also carry a fitted large-index expansion so that
/// they can be evaluated past N and at non-integer arguments.
struct CoeffSeq {
    CoeffKind kind = CoeffKind::MA;
    std::vector<double> values;
    Regime regime = Regime::ShortMemory;
    double d = 0.0;
    std::optional<AsymptoticTail> tail;

    std::size_t truncation_length() const noexcept { return values.empty() ? 0 : values.size() - 1; }
    double operator[](std::size_t i) const { return values[i]; }

    /// Value at a real index x >= 0. Integer indices inside the stored range come
    /// from `values`; anything else uses the fitted tail (long memory) or is zero.
    double at(double x) const noexcept;
};

/// c_0..c_N of h(z). Throws ModelError for invalid models (validation happens
/// when the ProcessModel is built, so in practice this cannot fail).
CoeffSeq expand_ma(const ProcessModel& model, std::size_t N);

/// a_0..a_N of -1/h(z).
CoeffSeq expand_ar(const ProcessModel& model, std::size_t N);

/// Truncated autocovariance gamma(0..N) together with the bound on the error
/// of the truncated inner sums.
class AutocovSeq {
public:
    AutocovSeq() = default;
    /// Validates gamma(0) > 0 and |gamma(n)| <= gamma(0) (up to rounding).
    explicit AutocovSeq(std::vector<double> values, double tail_bound = 0.0);

    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    std::span<const double> values() const noexcept { return values_; }
    double tail_bound() const noexcept { return tail_bound_; }

    AutocovSeq scaled(double lambda) const;

private:
    std::vector<double> values_;
    double tail_bound_ = 0.0;
};

/// Default MA truncation for autocovariance and cross-correlation sums: large
/// enough that the tail correction is accurate (long memory) or the
/// geometric remainder is negligible (short memory).
std::size_t default_series_length(const ProcessModel& model, std::size_t N);

/// gamma(n) = sum_k c_{n+k} c_k for n = 0..N with c truncated at M >= N.
/// Long-memory tails are added from the fitted MA expansion; throws
/// TruncationError if the achieved error bound exceeds `tol`.
AutocovSeq autocov(const ProcessModel& model, std::size_t N, std::size_t M, double tol = 1e-9);
AutocovSeq autocov(const ProcessModel& model, std::size_t N);

/// Infinite-past predictor coefficients phi_j = c_0 a_j, j = 1..N.
struct InfinitePredictor {
    std::vector<double> values;  ///< values[j - 1] = phi_j
    double c0 = 1.0;
    Regime regime = Regime::ShortMemory;
    double d = 0.0;
    std::optional<AsymptoticTail> ar_tail;

    std::size_t size() const noexcept { return values.size(); }
    double at(std::size_t j) const { return values.at(j - 1); }
};

InfinitePredictor infinite_predictor(const CoeffSeq& ma, const CoeffSeq& ar, std::size_t N);

enum class TailSum { Absolute, Signed };

/// sum_{k > n} |phi_k| (or the signed sum). The finite part runs to the stored
/// length; long-memory predictors add the integral of the fitted AR tail beyond
/// it. Throws ArgumentError if n >= the stored length.
double tail_sum_phi(const InfinitePredictor& phi, std::size_t n, TailSum mode = TailSum::Absolute);

}  // namespace predictorlab

#endif  // PREDICTORLAB_COEFFS_HPP
