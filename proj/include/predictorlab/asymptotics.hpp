#ifndef PREDICTORLAB_ASYMPTOTICS_HPP
#define PREDICTORLAB_ASYMPTOTICS_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "predictorlab/explicit.hpp"

namespace predictorlab {

/// f_1(0)..f_K(0): odd k are the Taylor coefficients of arcsin(x)/pi, even k
/// those of (arcsin(x)/pi)^2.
std::vector<double> fk0(std::size_t K);

/// The functions f_k(u), u >= 0, tabulated by quadrature on a logarithmic
/// grid through f_{k+1}(u) = int_0^inf f_1(s + u) f_k(s) ds.
class FkQuadrature {
public:
    explicit FkQuadrature(std::size_t k_max, double t_max = 60.0, int panel_order = 16);

    std::size_t k_max() const noexcept { return table_.size(); }
    /// f_k(u) for 1 <= k <= k_max.
    double operator()(std::size_t k, double u) const;
    /// int_0^inf f_i(u) f_j(u) du.
    double inner(std::size_t i, std::size_t j) const;

private:
    QuadratureRule rule_;
    std::vector<std::vector<double>> table_;  ///< table_[k-1][l] = f_k(s_l)
};

/// Tolerance on explicit-versus-Levinson agreement inside the experiments.
inline constexpr double kCrossCheckTolerance = 1e-6;

struct RateEntry {
    std::size_t n = 0;
    double phi_nj = 0.0;
    double rate = 0.0;          ///< n (phi_{n,j} - phi_j)
    double extrapolated = 0.0;  ///< from this n and the previous one; NaN for the first
    double levinson_diff = 0.0; ///< max_j |explicit - Levinson| at this n
};

struct RateReport {
    std::size_t j = 0;
    double phi_j = 0.0;
    double theoretical_limit = 0.0;  ///< d^2 sum_{u >= j} phi_u
    std::vector<RateEntry> entries;  ///< ascending n

    /// Extrapolated rate from the two largest n.
    double richardson() const;
};

/// Throws RegimeError for short-memory models and DisagreementError if the
/// explicit and Levinson predictors differ by more than kCrossCheckTolerance.
RateReport rate_experiment(const ProcessModel& model, std::size_t j, std::span<const std::size_t> n_list,
                           const TruncationPolicy& policy = {});

struct BaxterEntry {
    std::size_t n = 0;
    double lhs = 0.0;  ///< sum_{j <= n} |phi_{n,j} - phi_j|
    double rhs = 0.0;  ///< sum_{k > n} |phi_k|
    double ratio = 0.0;
    double levinson_diff = 0.0;
};

struct BaxterReport {
    std::vector<BaxterEntry> entries;
    double sup_ratio = 0.0;
};

BaxterReport baxter_experiment(const ProcessModel& model, std::span<const std::size_t> n_list,
                               const TruncationPolicy& policy = {});

struct DkScalingEntry {
    std::size_t k = 0;
    std::size_t n = 0;
    std::size_t u = 0;
    double n_dk = 0.0;    ///< n d_k(n, u)
    double target = 0.0;  ///< f_k(0) sin^k(pi d)
};

/// Rows ordered by n, then k.
std::vector<DkScalingEntry> dk_scaling_experiment(const ProcessModel& model,
                                                  std::span<const std::size_t> k_list, std::size_t u,
                                                  std::span<const std::size_t> n_list,
                                                  const TruncationPolicy& policy = {});

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace predictorlab

#endif  // PREDICTORLAB_ASYMPTOTICS_HPP
