#include "predictorlab/coeffs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <type_traits>

#include "predictorlab/errors.hpp"
#include "predictorlab/fft.hpp"

namespace predictorlab {

namespace {

constexpr std::size_t kMinFitLength = 8192;
constexpr std::size_t kMaxFitLength = std::size_t{1} << 21;
constexpr double kFitResidualTarget = 1e-9;

// Coefficients of (1 - z)^{-e}, indices 0..N.
std::vector<double> binomial_series(double e, std::size_t N) {
    std::vector<double> out(N + 1);
    out[0] = 1.0;
    for (std::size_t k = 1; k <= N; ++k) {
        const auto kd = static_cast<double>(k);
        out[k] = out[k - 1] * (kd - 1.0 + e) / kd;
    }
    return out;
}

// Power series of s(z) * num(z) / den(z), truncated at the length of s.
std::vector<double> rational_times(const std::vector<double>& s, const RealPolynomial& num,
                                   const RealPolynomial& den) {
    const std::size_t len = s.size();
    std::vector<double> out(len, 0.0);
    const auto nc = num.coefficients();
    const auto dc = den.coefficients();
    for (std::size_t k = 0; k < len; ++k) {
        double acc = 0.0;
        const std::size_t pn = std::min(k, nc.size() - 1);
        for (std::size_t i = 0; i <= pn; ++i) acc += nc[i] * s[k - i];
        const std::size_t pd = std::min(k, dc.size() - 1);
        for (std::size_t i = 1; i <= pd; ++i) acc -= dc[i] * out[k - i];
        out[k] = acc / dc[0];
    }
    return out;
}

struct Expansion {
    std::vector<double> values;
    std::optional<AsymptoticTail> tail;
};

// Expands a FARIMA series and, for d > 0, fits its power-law tail on a window
// long enough that the ARMA transients have died out.
template <class Gen>
Expansion expand_with_tail(std::size_t N, double d, double exponent, Gen&& gen) {
    if (d == 0.0) {
        return {gen(N), std::nullopt};
    }
    std::size_t len = std::max(N, kMinFitLength);
    for (;;) {
        std::vector<double> v = gen(len);
        AsymptoticTail tail = fit_asymptotic_tail(v, exponent, len / 8, len);
        if (tail.fit_residual() <= kFitResidualTarget || len >= kMaxFitLength) {
            v.resize(N + 1);
            return {std::move(v), std::move(tail)};
        }
        len *= 2;
    }
}

}  // namespace

double CoeffSeq::at(double x) const noexcept {
    const double r = std::round(x);
    if (r == x && r >= 0.0 && r <= static_cast<double>(truncation_length())) {
        return values[static_cast<std::size_t>(r)];
    }
    if (tail) return (*tail)(x);
    if (r >= 0.0 && r <= static_cast<double>(truncation_length())) {
        return values[static_cast<std::size_t>(r)];
    }
    return 0.0;
}

CoeffSeq expand_ma(const ProcessModel& model, std::size_t N) {
    CoeffSeq seq;
    seq.kind = CoeffKind::MA;
    seq.regime = model.regime();
    seq.d = model.memory_parameter();
    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Farima>) {
                Expansion e = expand_with_tail(N, m.d, 1.0 - m.d, [&](std::size_t len) {
                    return rational_times(binomial_series(m.d, len), m.ma_poly, m.ar_poly);
                });
                seq.values = std::move(e.values);
                seq.tail = std::move(e.tail);
            } else if constexpr (std::is_same_v<T, Ar1>) {
                seq.values.resize(N + 1);
                double p = 1.0;
                for (std::size_t k = 0; k <= N; ++k) {
                    seq.values[k] = p;
                    p *= m.r;
                }
            } else {
                seq.values.assign(N + 1, 0.0);
                std::copy_n(m.ma.begin(), std::min(m.ma.size(), N + 1), seq.values.begin());
            }
        },
        model.variant());
    return seq;
}

CoeffSeq expand_ar(const ProcessModel& model, std::size_t N) {
    CoeffSeq seq;
    seq.kind = CoeffKind::AR;
    seq.regime = model.regime();
    seq.d = model.memory_parameter();
    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Farima>) {
                Expansion e = expand_with_tail(N, m.d, 1.0 + m.d, [&](std::size_t len) {
                    std::vector<double> v =
                        rational_times(binomial_series(-m.d, len), m.ar_poly, m.ma_poly);
                    for (double& x : v) x = -x;
                    return v;
                });
                seq.values = std::move(e.values);
                seq.tail = std::move(e.tail);
            } else if constexpr (std::is_same_v<T, Ar1>) {
                seq.values.assign(N + 1, 0.0);
                seq.values[0] = -1.0;
                if (N >= 1) seq.values[1] = m.r;
            } else {
                seq.values.assign(N + 1, 0.0);
                std::copy_n(m.ar.begin(), std::min(m.ar.size(), N + 1), seq.values.begin());
            }
        },
        model.variant());
    return seq;
}

AutocovSeq::AutocovSeq(std::vector<double> values, double tail_bound)
    : values_(std::move(values)), tail_bound_(tail_bound) {
    if (values_.empty() || !(values_[0] > 0.0) || !std::isfinite(values_[0])) {
        throw ArgumentError("autocovariance needs gamma(0) > 0");
    }
    const double cap = values_[0] * (1.0 + 1e-12);
    for (std::size_t n = 1; n < values_.size(); ++n) {
        if (!std::isfinite(values_[n]) || std::abs(values_[n]) > cap) {
            throw ArgumentError("autocovariance has |gamma(" + std::to_string(n) + ")| > gamma(0)");
        }
    }
}

AutocovSeq AutocovSeq::scaled(double lambda) const {
    if (!(lambda > 0.0)) throw ArgumentError("autocovariance scale must be positive");
    std::vector<double> v(values_.begin(), values_.end());
    for (double& x : v) x *= lambda;
    return AutocovSeq(std::move(v), tail_bound_ * lambda);
}

std::size_t default_series_length(const ProcessModel& model, std::size_t N) {
    if (const auto* e = std::get_if<ExplicitCoefficients>(&model.variant())) {
        return std::max(N, e->ma.size() - 1);
    }
    if (model.regime() == Regime::LongMemory) {
        std::size_t M = std::size_t{1} << 18;
        while (M < 16 * N) M <<= 1;
        return M;
    }
    std::size_t M = std::max<std::size_t>(256, 2 * N);
    for (; M < (std::size_t{1} << 22); M *= 2) {
        const CoeffSeq c = expand_ma(model, M);
        double peak = 0.0;
        for (double v : c.values) peak = std::max(peak, std::abs(v));
        if (geometric_tail_bound(c.values) <= 1e-17 * peak) break;
    }
    return M;
}

AutocovSeq autocov(const ProcessModel& model, std::size_t N, std::size_t M, double tol) {
    if (M < N) throw ArgumentError("autocov needs M >= N");
    const CoeffSeq c = expand_ma(model, M);
    std::vector<double> gamma;
    if (static_cast<double>(N + 1) * static_cast<double>(M + 1) <= 1.6e7) {
        gamma.assign(N + 1, 0.0);
        for (std::size_t n = 0; n <= N; ++n) {
            double acc = 0.0;
            for (std::size_t k = 0; k + n <= M; ++k) acc += c.values[k + n] * c.values[k];
            gamma[n] = acc;
        }
    } else {
        gamma = cross_correlation(c.values, c.values, N + 1);
    }

    double bound = 0.0;
    if (c.tail) {
        const AsymptoticTail& t = *c.tail;
        const double amp = t.leading() * t.leading();
        const double expo = 2.0 * t.exponent();
        for (std::size_t n = 0; n <= N; ++n) {
            const double x0 = static_cast<double>(M - n) + 0.5;
            if (x0 < 0.5 * t.x_ref()) {
                throw TruncationError("autocov: M too short for lag " + std::to_string(n) +
                                          " (the fitted MA tail is not valid there)",
                                      std::numeric_limits<double>::infinity());
            }
            const double nd = static_cast<double>(n);
            const double tail_int = integrate_power_tail(
                [&](double x) { return t(x) * t(x + nd); }, x0, amp, expo);
            gamma[n] += tail_int;
            const double midpoint_err = std::abs(t(x0) * t(x0 + nd)) * expo / (24.0 * x0);
            bound = std::max(bound, 2.0 * t.fit_residual() * std::abs(tail_int) + midpoint_err);
        }
    } else if (const auto* e = std::get_if<ExplicitCoefficients>(&model.variant());
               e == nullptr || e->ma.size() > M + 1) {
        double peak = 0.0;
        for (double v : c.values) peak = std::max(peak, std::abs(v));
        bound = peak * geometric_tail_bound(c.values);
    }
    if (!(bound <= tol)) {
        throw TruncationError("autocov: truncation bound " + std::to_string(bound) +
                                  " exceeds tolerance; increase M",
                              bound);
    }
    return AutocovSeq(std::move(gamma), bound);
}

AutocovSeq autocov(const ProcessModel& model, std::size_t N) {
    return autocov(model, N, default_series_length(model, N));
}

InfinitePredictor infinite_predictor(const CoeffSeq& ma, const CoeffSeq& ar, std::size_t N) {
    if (ma.kind != CoeffKind::MA || ar.kind != CoeffKind::AR || ma.values.empty()) {
        throw ArgumentError("infinite_predictor needs an MA and an AR sequence");
    }
    if (N > ar.truncation_length()) {
        throw ArgumentError("infinite_predictor: AR sequence shorter than N");
    }
    InfinitePredictor phi;
    phi.c0 = ma.values[0];
    phi.regime = ar.regime;
    phi.d = ar.d;
    phi.values.resize(N);
    for (std::size_t j = 1; j <= N; ++j) phi.values[j - 1] = phi.c0 * ar.values[j];
    if (ar.tail) {
        std::vector<double> coeffs(ar.tail->coefficients().begin(), ar.tail->coefficients().end());
        for (double& x : coeffs) x *= phi.c0;
        phi.ar_tail = AsymptoticTail(ar.tail->exponent(), ar.tail->x_ref(), std::move(coeffs),
                                     ar.tail->fit_residual());
    }
    return phi;
}

double tail_sum_phi(const InfinitePredictor& phi, std::size_t n, TailSum mode) {
    const std::size_t N = phi.size();
    if (n >= N) throw ArgumentError("tail_sum_phi needs n < stored length");
    double acc = 0.0;
    for (std::size_t k = N; k > n; --k) {
        const double v = phi.values[k - 1];
        acc += mode == TailSum::Absolute ? std::abs(v) : v;
    }
    if (phi.ar_tail) {
        const AsymptoticTail& t = *phi.ar_tail;
        const double x0 = static_cast<double>(N) + 0.5;
        const double rest = integrate_power_tail(t, x0, t.leading(), t.exponent());
        acc += mode == TailSum::Absolute ? std::abs(rest) : rest;
    }
    return acc;
}

}  // namespace predictorlab
