#ifndef PREDICTORLAB_LEVINSON_HPP
#define PREDICTORLAB_LEVINSON_HPP

#include <cstddef>
#include <vector>

#include "predictorlab/coeffs.hpp"

namespace predictorlab {

enum class PredictorSource { Levinson, NormalEquations, ExplicitSeries };

const char* to_string(PredictorSource source) noexcept;

/// Finite predictor coefficients for one n and horizon m (m = 0 is one step).
struct PredictorTable {
    std::size_t n = 0;
    std::size_t horizon = 0;
    std::vector<double> coefficients;  ///< coefficients[j - 1] is the weight on X_{-j}
    double sigma2 = 0.0;               ///< prediction-error variance (one-step Levinson only)
    PredictorSource source = PredictorSource::Levinson;

    double at(std::size_t j) const { return coefficients.at(j - 1); }
};

/// Relative floor on the prediction-error variance below which the recursion
/// reports degeneracy.
inline constexpr double kDegeneracyFloor = 1e-14;

/// Durbin-Levinson recursion. Returns the tables for orders 1..n, in order.
/// Throws DegeneracyError naming the order k at which sigma_k^2 < floor*gamma(0).
std::vector<PredictorTable> durbin_levinson(const AutocovSeq& gamma, std::size_t n);

/// Solves Gamma_n x = (gamma(m+1), ..., gamma(m+n)) by Cholesky. Throws
/// DegeneracyError with a reciprocal condition estimate when the Toeplitz
/// matrix is not numerically positive definite or the residual check fails.
PredictorTable multistep_normal_solve(const AutocovSeq& gamma, std::size_t n, std::size_t m);

/// max_j |sum_i gamma(|j-i|) x_i - gamma(m+j)| for the table's system.
double normal_equations_residual(const AutocovSeq& gamma, const PredictorTable& table);

}  // namespace predictorlab

#endif  // PREDICTORLAB_LEVINSON_HPP
