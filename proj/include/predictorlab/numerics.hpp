#ifndef PREDICTORLAB_NUMERICS_HPP
#define PREDICTORLAB_NUMERICS_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace predictorlab {

/// Nodes and weights of a quadrature rule.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const noexcept { return nodes.size(); }
};

/// Gauss-Legendre rule of the given order on [-1, 1].
QuadratureRule gauss_legendre(int order);

/// Composite Gauss-Legendre rule for integrals over [x0, x0 e^{t_max}] in the
/// logarithmic variable x = x0 e^t, panels of width `panel_width` in t.
/// The Jacobian is folded into the weights.
QuadratureRule log_panel_rule(double x0, double t_max, double panel_width = 1.5, int order = 8);

/// Fitted large-x expansion f(x) ~ x^{-exponent} * sum_k coeff[k] (x_ref / x)^k.
///
/// Used to evaluate MA, AR and beta sequences at non-integer arguments and
/// beyond their computed range. Only meaningful for x >= x_ref / 2.
class AsymptoticTail {
public:
    AsymptoticTail() = default;
    AsymptoticTail(double exponent, double x_ref, std::vector<double> coeffs, double fit_residual)
        : exponent_(exponent), x_ref_(x_ref), coeffs_(std::move(coeffs)), residual_(fit_residual) {}

    double operator()(double x) const noexcept {
        const double y = x_ref_ / x;
        double acc = 0.0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            acc = acc * y + *it;
        }
        return acc * std::pow(x, -exponent_);
    }

    double exponent() const noexcept { return exponent_; }
    /// Amplitude A of the leading behaviour A x^{-exponent}.
    double leading() const noexcept { return coeffs_.empty() ? 0.0 : coeffs_.front(); }
    double x_ref() const noexcept { return x_ref_; }
    /// Largest relative misfit over the fitting window.
    double fit_residual() const noexcept { return residual_; }
    std::span<const double> coefficients() const noexcept { return coeffs_; }

private:
    double exponent_ = 1.0;
    double x_ref_ = 1.0;
    std::vector<double> coeffs_;
    double residual_ = 0.0;
};

/// Least-squares fit of an AsymptoticTail to seq[lo..hi] (inclusive), sampled
/// on a geometric grid of indices.
AsymptoticTail fit_asymptotic_tail(std::span<const double> seq, double exponent, std::size_t lo,
                                   std::size_t hi, int terms = 5);

/// Integral of f over [x0, infinity) where f(x) ~ amplitude * x^{-exponent} with
/// exponent > 1. The bulk is done by log_panel_rule and the far remainder by the
/// leading power law.
template <class F>
double integrate_power_tail(F&& f, double x0, double amplitude, double exponent) {
    const double decay = exponent - 1.0;
    double t_max = 40.0 / decay;
    const double t_cap = std::log(1e300 / x0);
    if (t_max > t_cap) t_max = t_cap;
    if (t_max < 3.0) t_max = 3.0;
    const QuadratureRule rule = log_panel_rule(x0, t_max, 1.5, 8);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        acc += rule.weights[i] * f(rule.nodes[i]);
    }
    const double x_end = x0 * std::exp(t_max);
    acc += amplitude * std::pow(x_end, -decay) / decay;
    return acc;
}

/// Bound on sum_{k > last} |seq[k]| for a geometrically decaying sequence,
/// extrapolated from the decay observed over the final quarter of `seq`.
/// Returns 0 when the final quarter vanishes and +inf when no decay is seen.
double geometric_tail_bound(std::span<const double> seq);

}  // namespace predictorlab

#endif  // PREDICTORLAB_NUMERICS_HPP
