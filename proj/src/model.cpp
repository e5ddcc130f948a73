#include "predictorlab/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "predictorlab/errors.hpp"

namespace predictorlab {

const char* error_code(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Argument: return "argument";
        case ErrorKind::Model: return "model_invalid";
        case ErrorKind::Regime: return "regime";
        case ErrorKind::Truncation: return "truncation";
        case ErrorKind::Degeneracy: return "degenerate";
        case ErrorKind::Disagreement: return "disagreement";
    }
    return "unknown";
}

const char* to_string(Regime regime) noexcept {
    return regime == Regime::LongMemory ? "long_memory" : "short_memory";
}

namespace {

void check_outside_unit_disk(const RealPolynomial& p, const char* name) {
    for (const auto& root : p.roots()) {
        if (std::abs(root) <= 1.0 + kUnitDiskMargin) {
            std::ostringstream os;
            os << name << " has a zero at " << root << " inside the closed unit disk";
            throw ModelError(os.str());
        }
    }
}

}  // namespace

ProcessModel ProcessModel::farima(double d, RealPolynomial ar_poly, RealPolynomial ma_poly) {
    if (!(d >= 0.0 && d <= kMaxMemoryParameter)) {
        std::ostringstream os;
        os << "differencing parameter d = " << d << " outside [0, " << kMaxMemoryParameter << "]";
        throw ModelError(os.str());
    }
    check_outside_unit_disk(ar_poly, "AR polynomial");
    check_outside_unit_disk(ma_poly, "MA polynomial");
    for (const auto& za : ar_poly.roots()) {
        for (const auto& zm : ma_poly.roots()) {
            if (std::abs(za - zm) < kCommonZeroDistance) {
                std::ostringstream os;
                os << "AR and MA polynomials share the zero " << za;
                throw ModelError(os.str());
            }
        }
    }
    if (!(ma_poly[0] / ar_poly[0] > 0.0)) {
        throw ModelError("sign condition violated: ma_poly(0) / ar_poly(0) must be positive");
    }
    return ProcessModel(Farima{d, std::move(ar_poly), std::move(ma_poly)});
}

ProcessModel ProcessModel::ar1(double r) {
    if (!(r > -1.0 && r < 1.0)) {
        std::ostringstream os;
        os << "AR(1) coefficient r = " << r << " outside (-1, 1)";
        throw ModelError(os.str());
    }
    return ProcessModel(Ar1{r});
}

ProcessModel ProcessModel::explicit_coefficients(std::vector<double> ma, std::vector<double> ar) {
    if (ma.empty() || ar.empty()) {
        throw ModelError("explicit model needs nonempty MA and AR sequences");
    }
    for (double v : ma) {
        if (!std::isfinite(v)) throw ModelError("explicit MA coefficients must be finite");
    }
    for (double v : ar) {
        if (!std::isfinite(v)) throw ModelError("explicit AR coefficients must be finite");
    }
    if (!(ma[0] > 0.0)) {
        throw ModelError("explicit MA sequence must have c_0 > 0");
    }
    // c * a = -delta_0 over the range both sequences cover.
    const std::size_t len = std::min(ma.size(), ar.size());
    for (std::size_t n = 0; n < len; ++n) {
        double acc = (n == 0) ? 1.0 : 0.0;
        for (std::size_t k = 0; k <= n; ++k) {
            acc += ma[k] * ar[n - k];
        }
        if (std::abs(acc) > 1e-10) {
            std::ostringstream os;
            os << "explicit sequences violate the convolution identity at n = " << n
               << " (residual " << acc << ")";
            throw ModelError(os.str());
        }
    }
    return ProcessModel(ExplicitCoefficients{std::move(ma), std::move(ar)});
}

Regime ProcessModel::regime() const noexcept {
    if (const auto* f = std::get_if<Farima>(&variant_); f != nullptr && f->d > 0.0) {
        return Regime::LongMemory;
    }
    return Regime::ShortMemory;
}

double ProcessModel::memory_parameter() const noexcept {
    if (const auto* f = std::get_if<Farima>(&variant_)) {
        return f->d;
    }
    return 0.0;
}

std::string ProcessModel::describe() const {
    std::ostringstream os;
    os.precision(17);
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            auto poly = [&](const RealPolynomial& p) {
                os << '[';
                for (int i = 0; i <= p.degree(); ++i) {
                    os << (i ? "," : "") << p[i];
                }
                os << ']';
            };
            if constexpr (std::is_same_v<T, Farima>) {
                os << "farima(d=" << v.d << ",ar=";
                poly(v.ar_poly);
                os << ",ma=";
                poly(v.ma_poly);
                os << ')';
            } else if constexpr (std::is_same_v<T, Ar1>) {
                os << "ar1(r=" << v.r << ')';
            } else {
                os << "explicit(ma_len=" << v.ma.size() << ",ar_len=" << v.ar.size() << ')';
            }
        },
        variant_);
    return os.str();
}

}  // namespace predictorlab
