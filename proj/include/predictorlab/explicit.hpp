#ifndef PREDICTORLAB_EXPLICIT_HPP
#define PREDICTORLAB_EXPLICIT_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "predictorlab/coeffs.hpp"
#include "predictorlab/fft.hpp"
#include "predictorlab/levinson.hpp"
#include "predictorlab/numerics.hpp"

namespace predictorlab {

/// beta_n = sum_v c_v a_{v+n} for n = 0..L.
struct BetaSeq {
    std::vector<double> values;
    double tail_bound = 0.0;  ///< bound on the error from truncating the inner sums
    Regime regime = Regime::ShortMemory;
    double d = 0.0;

    std::size_t size() const noexcept { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
};

/// Inner sums are truncated at M = min(N_c, N_a - L); long-memory sequences add
/// the integral of their fitted tails past M. Throws TruncationError when the
/// reported bound exceeds `tol` or the fitted tails do not reach down to M.
BetaSeq beta_seq(const CoeffSeq& c, const CoeffSeq& a, std::size_t L, double tol = 1e-12);

enum class HankelPath { Fast, Naive };

/// y_j = sum_{v < V} beta_{offset + j + v} x_v, j = 0..V-1, with V = |x|.
/// Throws ArgumentError if beta is shorter than offset + 2V - 1.
std::vector<double> hankel_apply(const BetaSeq& beta, std::size_t offset, std::span<const double> x,
                                 HankelPath path = HankelPath::Fast);

enum class TailStrategy {
    /// Integer head 0..V-1 plus a logarithmic quadrature grid covering [V - 1/2, inf)
    /// on which the kernel and AR sequence are evaluated from fitted tails.
    IntegralBound,
    /// Plain truncation at V, 2V and 4V with extrapolation in V.
    RichardsonDouble,
};

const char* to_string(TailStrategy s) noexcept;

/// Controls for the two infinite-sum axes. Zero V, K or series_length selects
/// the default for the request.
struct TruncationPolicy {
    std::size_t V = 0;              ///< inner-index cutoff (head length)
    std::size_t K = 0;              ///< maximum series depth
    double tol_term = 1e-13;        ///< stop once terms and iterates fall below this
    TailStrategy tail_strategy = TailStrategy::IntegralBound;
    double tol_tail = 1e-8;         ///< largest acceptable inner-tail estimate
    std::size_t series_length = 0;  ///< MA/AR truncation for the beta inner sums

    void validate() const;
};

/// Default head length for offset n under the given strategy.
std::size_t resolve_inner_cutoff(const TruncationPolicy& policy, std::size_t n);


/// Coefficient and kernel data shared by every request on one model up to a
/// maximum n. Immutable once built and safe to share between threads.
class SeriesContext {
public:
    SeriesContext(const ProcessModel& model, std::size_t n_max, const TruncationPolicy& policy);

    const ProcessModel& model() const noexcept { return model_; }
    const CoeffSeq& ma() const noexcept { return c_; }
    const CoeffSeq& ar() const noexcept { return a_; }
    const BetaSeq& beta() const noexcept { return beta_; }
    std::size_t n_max() const noexcept { return n_max_; }
    const TruncationPolicy& policy() const noexcept { return policy_; }

    /// (sum_j |c_j|) (sum_{k > n} |a_k|): below 1 the short-memory series
    /// converges absolutely with at least this geometric rate.
    double short_memory_ratio(std::size_t n) const;
    /// Series depth K for offset n: the policy's K if set, else from the
    /// geometric rate sin(pi d) (long memory) or short_memory_ratio.
    std::size_t series_depth(std::size_t n) const;

private:
    ProcessModel model_;
    std::size_t n_max_;
    TruncationPolicy policy_;
    CoeffSeq c_;
    CoeffSeq a_;
    BetaSeq beta_;
};

/// A function on the inner index: exact values at integers 0..V-1 and values at
/// the nodes of the operator's tail grid.
struct HybridVector {
    std::vector<double> head;
    std::vector<double> tail;

    double sup_norm() const noexcept;
};

/// Discretized Hankel operator (Hx)(u) = sum_w beta_{offset+u+w} x(w) together
/// with the AR projection b(j) = sum_u a_{j+u} x(u), j = 1..rows.
class HankelOperator {
public:
    HankelOperator(const SeriesContext& ctx, std::size_t offset, std::size_t V, std::size_t rows,
                   bool with_tail);

    std::size_t head_size() const noexcept { return V_; }
    std::size_t tail_size() const noexcept { return grid_.size(); }
    std::size_t offset() const noexcept { return offset_; }
    const QuadratureRule& tail_grid() const noexcept { return grid_; }

    HybridVector zero() const;
    /// Unit vector at the integer index v < V.
    HybridVector unit(std::size_t v) const;

    void apply(const HybridVector& x, HybridVector& y) const;
    /// b[j - 1] = sum_u a_{j+u} x(u) for j = 1..rows.
    void project(const HybridVector& x, std::span<double> b) const;
    /// Largest contribution of the outermost tail panel to project(x) or to the
    /// head of apply(x); a proxy for the part of the inner sums beyond the grid.
    double outer_panel_contribution(const HybridVector& x) const;
    /// Estimate of the neglected inner-sum tail for iterates bounded by `sup`
    /// (plain truncation, short memory).
    double truncation_estimate(double sup) const noexcept { return sup * neglected_beta_; }

private:
    std::size_t offset_;
    std::size_t V_;
    std::size_t rows_;
    HankelCorrelator head_;
    HankelCorrelator ar_head_;
    QuadratureRule grid_;
    std::size_t panel_nodes_ = 8;
    Eigen::MatrixXd cross_;       ///< beta(offset + u + w_t), u head, t tail
    Eigen::MatrixXd tail_tail_;   ///< beta(offset + u_s + w_t) * W_t
    Eigen::MatrixXd ar_tail_;     ///< a(j + w_t) * W_t
    double neglected_beta_ = 0.0;
};

/// d_k(n, u) = (H_n^k e_0)(u) on the integer head u < V, k = 1..k_used.
struct DVectors {
    std::vector<std::vector<double>> d;
    std::size_t k_used = 0;
    bool converged = false;
};

DVectors d_vectors(const SeriesContext& ctx, std::size_t n, const TruncationPolicy& policy);

/// delta_k(n, u, v) for k = 0..k_used, u < V, v = 0..v_max.
struct DeltaBlock {
    std::size_t V = 0;
    std::size_t v_max = 0;
    std::size_t k_used = 0;
    bool converged = false;
    std::vector<std::vector<double>> values;  ///< values[k][v * V + u]

    double operator()(std::size_t k, std::size_t u, std::size_t v) const {
        return values.at(k).at(v * V + u);
    }
};

DeltaBlock delta_block(const SeriesContext& ctx, std::size_t n, std::size_t v_max,
                       const TruncationPolicy& policy);

/// Per-j diagnostics of the explicit series.
struct SeriesTerms {
    std::size_t n = 0;
    std::size_t j = 0;
    std::size_t m = 0;
    std::vector<double> terms;         ///< g_k for k = 1..k_used
    std::vector<double> partial_sums;  ///< running sums of `terms`
    bool converged = false;
    double tail_estimate = 0.0;        ///< estimated remainder of the k-series
};

struct ExplicitResult {
    PredictorTable table;
    std::vector<SeriesTerms> series;   ///< series[j - 1]
    std::size_t V = 0;
    std::size_t k_used = 0;
    bool converged = false;
    double inner_tail_estimate = 0.0;  ///< estimated error from the inner-index truncation
    std::vector<std::string> warnings;
};

/// One-step finite predictor phi_{n,j} from the explicit series.
ExplicitResult finite_predictor_explicit(const SeriesContext& ctx, std::size_t n,
                                         const TruncationPolicy& policy);
ExplicitResult finite_predictor_explicit(const ProcessModel& model, std::size_t n,
                                         const TruncationPolicy& policy = {});

/// (m+1)-step finite predictor phi^m_{n,j}; m = 0 is the one-step predictor.
ExplicitResult finite_predictor_multistep(const SeriesContext& ctx, std::size_t n, std::size_t m,
                                          const TruncationPolicy& policy);
ExplicitResult finite_predictor_multistep(const ProcessModel& model, std::size_t n, std::size_t m,
                                          const TruncationPolicy& policy = {});

/// Partial sums sum_{l <= k} g^m_l(n, j) for k = 1..K: the coefficient of X_{-j}
/// after k alternating projections, first onto the infinite past and then onto
/// the window starting at -n. Entries past convergence repeat the final sum.
std::vector<double> projection_iterates(const ProcessModel& model, std::size_t n, std::size_t j,
                                        std::size_t m, std::size_t K,
                                        const TruncationPolicy& policy = {});

}  // namespace predictorlab

#endif  // PREDICTORLAB_EXPLICIT_HPP
