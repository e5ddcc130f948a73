#ifndef PREDICTORLAB_MODEL_HPP
#define PREDICTORLAB_MODEL_HPP

#include <string>
#include <variant>
#include <vector>

#include "predictorlab/polynomial.hpp"

namespace predictorlab {

/// Memory regime of a stationary process.
///
/// ShortMemory: the MA and AR coefficients are absolutely summable.
/// LongMemory: c_n ~ n^{-(1-d)} l and a_n ~ n^{-(1+d)} d sin(pi d) / (pi l) with
/// 0 < d < 1/2 and l constant.
enum class Regime { ShortMemory, LongMemory };

const char* to_string(Regime regime) noexcept;

/// Largest admissible fractional differencing parameter.
inline constexpr double kMaxMemoryParameter = 0.5 - 1e-6;
/// Roots with modulus at or below 1 + this margin count as inside the closed unit disk.
inline constexpr double kUnitDiskMargin = 1e-9;
/// Roots of the AR and MA polynomials closer than this are treated as common zeros.
inline constexpr double kCommonZeroDistance = 1e-8;

/// Fractional ARIMA(p, d, q): outer function h(z) = (1 - z)^{-d} theta(z) / phi(z).
struct Farima {
    double d = 0.0;
    RealPolynomial ar_poly;  ///< phi(z)
    RealPolynomial ma_poly;  ///< theta(z)
};

/// Causal AR(1) with h(z) = 1 / (1 - r z).
struct Ar1 {
    double r = 0.0;
};

/// Raw MA and AR coefficient sequences, treated as finitely supported.
struct ExplicitCoefficients {
    std::vector<double> ma;
    std::vector<double> ar;
};

/// Parametric description of a purely nondeterministic stationary process.
///
/// Construction validates the parameters and throws ModelError on failure, so
/// every ProcessModel value in circulation is valid.
class ProcessModel {
public:
    using Variant = std::variant<Farima, Ar1, ExplicitCoefficients>;

    static ProcessModel farima(double d, RealPolynomial ar_poly = {}, RealPolynomial ma_poly = {});
    static ProcessModel fractional_noise(double d) { return farima(d); }
    static ProcessModel ar1(double r);
    static ProcessModel white_noise() { return farima(0.0); }
    static ProcessModel explicit_coefficients(std::vector<double> ma, std::vector<double> ar);

    const Variant& variant() const noexcept { return variant_; }
    Regime regime() const noexcept;
    /// The differencing parameter d (zero outside the fractional family).
    double memory_parameter() const noexcept;
    std::string describe() const;

private:
    explicit ProcessModel(Variant v) : variant_(std::move(v)) {}
    Variant variant_;
};

}  // namespace predictorlab

#endif  // PREDICTORLAB_MODEL_HPP
