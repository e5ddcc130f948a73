#include "predictorlab/explicit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "predictorlab/errors.hpp"

namespace predictorlab {

namespace {

constexpr double kPanelWidth = 1.5;
constexpr int kPanelOrder = 8;
// Extra depth of the tail grid beyond ln(1 / tol_tail), in e-folds.
constexpr double kGridMargin = 9.2;

std::span<const double> kernel_slice(std::span<const double> seq, std::size_t first,
                                     std::size_t count, const char* what) {
    if (first + count > seq.size()) {
        throw ArgumentError(std::string(what) + ": sequence too short for the requested window");
    }
    return seq.subspan(first, count);
}

double sup_abs(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s = std::max(s, std::abs(x));
    return s;
}

}  // namespace

BetaSeq beta_seq(const CoeffSeq& c, const CoeffSeq& a, std::size_t L, double tol) {
    if (c.kind != CoeffKind::MA || a.kind != CoeffKind::AR) {
        throw ArgumentError("beta_seq needs an MA and an AR sequence");
    }
    if (a.truncation_length() < L) throw ArgumentError("beta_seq: AR sequence shorter than L");
    const std::size_t M = std::min(c.truncation_length(), a.truncation_length() - L);
    std::span<const double> cv(c.values.data(), M + 1);
    std::span<const double> av(a.values.data(), M + L + 1);

    BetaSeq beta;
    beta.regime = c.regime;
    beta.d = c.d;
    if (static_cast<double>(L + 1) * static_cast<double>(M + 1) <= 1.6e7) {
        beta.values.assign(L + 1, 0.0);
        for (std::size_t n = 0; n <= L; ++n) {
            double acc = 0.0;
            for (std::size_t v = 0; v <= M; ++v) acc += cv[v] * av[v + n];
            beta.values[n] = acc;
        }
    } else {
        beta.values = cross_correlation(cv, av, L + 1);
    }

    double bound = 0.0;
    if (c.tail && a.tail) {
        const AsymptoticTail& ct = *c.tail;
        const AsymptoticTail& at = *a.tail;
        const double x0 = static_cast<double>(M) + 0.5;
        if (x0 < 0.5 * std::max(ct.x_ref(), at.x_ref())) {
            throw TruncationError("beta_seq: inner truncation lies below the fitted tails",
                                  std::numeric_limits<double>::infinity());
        }
        const double amp = ct.leading() * at.leading();
        const double expo = ct.exponent() + at.exponent();
        const double rel = ct.fit_residual() + at.fit_residual();
        for (std::size_t n = 0; n <= L; ++n) {
            const double nd = static_cast<double>(n);
            const double rest =
                integrate_power_tail([&](double x) { return ct(x) * at(x + nd); }, x0, amp, expo);
            beta.values[n] += rest;
            const double midpoint_err = std::abs(ct(x0) * at(x0 + nd)) * expo / (24.0 * x0);
            bound = std::max(bound, rel * std::abs(rest) + midpoint_err);
        }
    } else if (c.truncation_length() > M) {
        bound = sup_abs(av) * geometric_tail_bound(c.values);
    }
    beta.tail_bound = bound;
    if (!(bound <= tol)) {
        throw TruncationError("beta_seq: inner-sum tail bound " + std::to_string(bound) +
                                  " exceeds tolerance; lengthen the MA/AR expansions",
                              bound);
    }
    return beta;
}

std::vector<double> hankel_apply(const BetaSeq& beta, std::size_t offset, std::span<const double> x,
                                 HankelPath path) {
    const std::size_t V = x.size();
    if (V == 0) return {};
    const auto kernel = kernel_slice(beta.values, offset, 2 * V - 1, "hankel_apply");
    if (path == HankelPath::Naive) return hankel_product_naive(kernel, x, V);
    return HankelCorrelator(kernel, V, V).apply(x);
}

const char* to_string(TailStrategy s) noexcept {
    switch (s) {
        case TailStrategy::IntegralBound: return "integral_bound";
        case TailStrategy::RichardsonDouble: return "richardson_double";
    }
    return "unknown";
}

void TruncationPolicy::validate() const {
    if (!(tol_term > 0.0) || !(tol_tail > 0.0)) {
        throw ArgumentError("truncation tolerances must be positive");
    }
}

std::size_t resolve_inner_cutoff(const TruncationPolicy& policy, std::size_t n) {
    if (policy.V > 0) return policy.V;
    if (policy.tail_strategy == TailStrategy::RichardsonDouble) {
        return std::max<std::size_t>(4096, 32 * n);
    }
    return std::max<std::size_t>(1024, 8 * n);
}

SeriesContext::SeriesContext(const ProcessModel& model, std::size_t n_max,
                             const TruncationPolicy& policy)
    : model_(model), n_max_(n_max), policy_(policy) {
    policy_.validate();
    if (n_max == 0) throw ArgumentError("SeriesContext needs n_max >= 1");
    const bool richardson = policy_.tail_strategy == TailStrategy::RichardsonDouble;
    const bool long_memory = model.regime() == Regime::LongMemory;
    const std::size_t v_top = resolve_inner_cutoff(policy_, n_max) * (richardson ? 4 : 1);
    const std::size_t offset_top = n_max + 1;

    std::size_t L = offset_top + 2 * v_top;
    std::size_t a_len = n_max + v_top + 1;
    if (long_memory && !richardson) {
        L = std::max(L, 8 * (offset_top + v_top) + 8);
        a_len = std::max(a_len, 8 * v_top + 8);
    }
    std::size_t M = policy_.series_length;
    if (M == 0) {
        M = long_memory ? (std::size_t{1} << 18) : default_series_length(model, 0);
    }
    c_ = expand_ma(model, M);
    a_ = expand_ar(model, std::max(M + L, a_len));
    beta_ = beta_seq(c_, a_, L);
}

double SeriesContext::short_memory_ratio(std::size_t n) const {
    double sc = 0.0;
    for (double v : c_.values) sc += std::abs(v);
    double sa = 0.0;
    for (std::size_t k = a_.values.size(); k > n + 1; --k) sa += std::abs(a_.values[k - 1]);
    return sc * sa;
}

std::size_t SeriesContext::series_depth(std::size_t n) const {
    if (policy_.K > 0) return policy_.K;
    const double lt = std::log(policy_.tol_term);
    if (model_.regime() == Regime::LongMemory) {
        const double s = std::sin(std::numbers::pi * c_.d);
        return static_cast<std::size_t>(std::ceil(lt / std::log(s))) + 8;
    }
    const double q = short_memory_ratio(n);
    if (q == 0.0) return 2;
    if (q < 1.0) return std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(lt / std::log(q))) + 8);
    return 10000;
}

double HybridVector::sup_norm() const noexcept {
    return std::max(sup_abs(head), sup_abs(tail));
}

HankelOperator::HankelOperator(const SeriesContext& ctx, std::size_t offset, std::size_t V,
                               std::size_t rows, bool with_tail)
    : offset_(offset),
      V_(V),
      rows_(rows),
      head_(kernel_slice(ctx.beta().values, offset, 2 * V - 1, "HankelOperator"), V, V),
      ar_head_(kernel_slice(ctx.ar().values, 1, rows + V - 1, "HankelOperator"), rows, V) {
    const auto& beta = ctx.beta().values;
    const double d = ctx.model().memory_parameter();
    if (ctx.model().regime() == Regime::LongMemory && with_tail) {
        const std::size_t lo_b = offset + V - 1;
        const std::size_t lo_a = V;
        if (8 * lo_b >= beta.size() || 8 * lo_a >= ctx.ar().values.size()) {
            throw ArgumentError("HankelOperator: context too short for offset and V");
        }
        const AsymptoticTail beta_fit = fit_asymptotic_tail(beta, 1.0, lo_b, 8 * lo_b);
        const AsymptoticTail ar_fit = fit_asymptotic_tail(ctx.ar().values, 1.0 + d, lo_a, 8 * lo_a);

        const double x0 = static_cast<double>(V) - 0.5;
        const double depth = (std::log(1.0 / ctx.policy().tol_tail) + kGridMargin) / (1.0 - 2.0 * d);
        const double cap = std::log(1e300 / (static_cast<double>(offset) + 2.0 * x0 + 1.0));
        grid_ = log_panel_rule(x0, std::min(depth, cap), kPanelWidth, kPanelOrder);
        panel_nodes_ = kPanelOrder;

        const auto T = static_cast<Eigen::Index>(grid_.size());
        const auto Vi = static_cast<Eigen::Index>(V);
        const double off = static_cast<double>(offset);
        cross_.resize(Vi, T);
        tail_tail_.resize(T, T);
        ar_tail_.resize(static_cast<Eigen::Index>(rows), T);
        for (Eigen::Index t = 0; t < T; ++t) {
            const double w = grid_.nodes[static_cast<std::size_t>(t)];
            const double wt = grid_.weights[static_cast<std::size_t>(t)];
            for (Eigen::Index u = 0; u < Vi; ++u) {
                cross_(u, t) = beta_fit(off + static_cast<double>(u) + w);
            }
            for (Eigen::Index s = 0; s < T; ++s) {
                tail_tail_(s, t) = beta_fit(off + grid_.nodes[static_cast<std::size_t>(s)] + w) * wt;
            }
            for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(rows); ++j) {
                ar_tail_(j, t) = ar_fit(static_cast<double>(j + 1) + w) * wt;
            }
        }
    } else {
        // Sum of |beta| past the head: stored part plus geometric extrapolation.
        double acc = 0.0;
        for (std::size_t i = offset + V; i < beta.size(); ++i) acc += std::abs(beta[i]);
        acc += geometric_tail_bound(beta);
        neglected_beta_ = acc;
    }
}

HybridVector HankelOperator::zero() const {
    return HybridVector{std::vector<double>(V_, 0.0), std::vector<double>(grid_.size(), 0.0)};
}

HybridVector HankelOperator::unit(std::size_t v) const {
    if (v >= V_) throw ArgumentError("unit vector index outside the head");
    HybridVector x = zero();
    x.head[v] = 1.0;
    return x;
}

void HankelOperator::apply(const HybridVector& x, HybridVector& y) const {
    y.head.resize(V_);
    y.tail.resize(grid_.size());
    head_.apply(x.head, y.head);
    if (grid_.size() == 0) return;
    const auto T = static_cast<Eigen::Index>(grid_.size());
    Eigen::Map<const Eigen::VectorXd> xh(x.head.data(), static_cast<Eigen::Index>(V_));
    Eigen::Map<const Eigen::VectorXd> xt(x.tail.data(), T);
    Eigen::Map<const Eigen::VectorXd> wt(grid_.weights.data(), T);
    Eigen::Map<Eigen::VectorXd> yh(y.head.data(), static_cast<Eigen::Index>(V_));
    Eigen::Map<Eigen::VectorXd> yt(y.tail.data(), T);
    yh.noalias() += cross_ * xt.cwiseProduct(wt);
    yt.noalias() = cross_.transpose() * xh;
    yt.noalias() += tail_tail_ * xt;
}

void HankelOperator::project(const HybridVector& x, std::span<double> b) const {
    if (b.size() != rows_) throw ArgumentError("HankelOperator::project: output length mismatch");
    ar_head_.apply(x.head, b);
    if (grid_.size() == 0) return;
    const auto T = static_cast<Eigen::Index>(grid_.size());
    Eigen::Map<const Eigen::VectorXd> xt(x.tail.data(), T);
    Eigen::Map<Eigen::VectorXd> bv(b.data(), static_cast<Eigen::Index>(rows_));
    bv.noalias() += ar_tail_ * xt;
}

double HankelOperator::outer_panel_contribution(const HybridVector& x) const {
    if (grid_.size() < panel_nodes_) return 0.0;
    const auto T = static_cast<Eigen::Index>(grid_.size());
    const auto P = static_cast<Eigen::Index>(panel_nodes_);
    Eigen::Map<const Eigen::VectorXd> xt(x.tail.data(), T);
    Eigen::Map<const Eigen::VectorXd> wt(grid_.weights.data(), T);
    const Eigen::VectorXd direct = ar_tail_.rightCols(P) * xt.tail(P);
    const Eigen::VectorXd feedback = cross_.rightCols(P) * xt.tail(P).cwiseProduct(wt.tail(P));
    return std::max(direct.cwiseAbs().maxCoeff(), feedback.cwiseAbs().maxCoeff());
}

namespace {

struct RawSeries {
    std::vector<double> phi;
    std::vector<SeriesTerms> series;
    std::size_t k_used = 0;
    bool converged = false;
    double inner_tail = 0.0;
    double final_sup = 0.0;
};

// Sums the explicit series for phi^m_{n,j}, j = 1..n, with the combined iterate
// z_k(u) = sum_v c_{m-v} delta_k(n+1, u, v).
RawSeries run_series(const SeriesContext& ctx, std::size_t n, std::size_t m, std::size_t V,
                     bool with_tail, std::size_t K, double tol_term) {
    const auto& c = ctx.ma().values;
    const auto& a = ctx.ar().values;
    if (m >= V) throw ArgumentError("horizon m must be below the inner cutoff V");
    if (m >= c.size() || n + m >= a.size()) {
        throw ArgumentError("series context too short for the requested horizon");
    }
    const HankelOperator op(ctx, n + 1, V, n, with_tail);
    const double d = ctx.model().memory_parameter();
    const double panel_decay = std::exp(-(1.0 - 2.0 * d) * kPanelWidth);

    RawSeries out;
    out.series.resize(n);
    for (std::size_t j = 1; j <= n; ++j) {
        out.series[j - 1].n = n;
        out.series[j - 1].j = j;
        out.series[j - 1].m = m;
    }
    std::vector<double> odd(n, 0.0);
    std::vector<double> even(n, 0.0);
    std::vector<double> running(n, 0.0);
    std::vector<double> b(n);

    HybridVector z = op.zero();
    for (std::size_t u = 0; u <= m; ++u) z.head[u] = c[m - u];
    HybridVector next = op.zero();

    for (std::size_t k = 1; k <= K; ++k) {
        if (k == 1) {
            for (std::size_t j = 1; j <= n; ++j) {
                double acc = 0.0;
                for (std::size_t i = 0; i <= m; ++i) acc += c[i] * a[j + m - i];
                b[j - 1] = acc;
            }
        } else {
            op.project(z, b);
            const double sup = z.sup_norm();
            if (with_tail && op.tail_size() > 0) {
                out.inner_tail += op.outer_panel_contribution(z) * panel_decay / (1.0 - panel_decay);
            } else {
                out.inner_tail += op.truncation_estimate(sup) * (1.0 + std::abs(a[0]));
            }
        }
        const bool odd_k = (k % 2) == 1;
        for (std::size_t j = 1; j <= n; ++j) {
            const double g = odd_k ? b[j - 1] : b[n - j];
            (odd_k ? odd : even)[j - 1] += g;
            running[j - 1] += g;
            out.series[j - 1].terms.push_back(g);
            out.series[j - 1].partial_sums.push_back(running[j - 1]);
        }
        out.k_used = k;
        op.apply(z, next);
        std::swap(z, next);
        out.final_sup = z.sup_norm();
        if (out.final_sup < tol_term) {
            out.converged = true;
            break;
        }
    }

    out.phi.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        out.phi[j] = odd[j] + even[j];
        SeriesTerms& s = out.series[j];
        s.converged = out.converged;
        const std::size_t K_used = s.terms.size();
        if (out.converged && out.final_sup == 0.0) {
            s.tail_estimate = 0.0;
        } else if (K_used >= 3) {
            const double last = std::abs(s.terms[K_used - 1]);
            const double prev = std::abs(s.terms[K_used - 3]);
            const double rho = prev > 0.0 ? std::sqrt(last / prev) : 0.0;
            s.tail_estimate = rho < 1.0
                                  ? (last + std::abs(s.terms[K_used - 2])) * rho / (1.0 - rho)
                                  : std::numeric_limits<double>::infinity();
            if (!out.converged && !(rho < 1.0)) s.converged = false;
        } else {
            s.tail_estimate = std::abs(s.terms.back());
        }
    }
    return out;
}

ExplicitResult assemble(RawSeries raw, std::size_t n, std::size_t m, std::size_t V) {
    ExplicitResult r;
    r.table.n = n;
    r.table.horizon = m;
    r.table.coefficients = std::move(raw.phi);
    r.table.source = PredictorSource::ExplicitSeries;
    r.series = std::move(raw.series);
    r.V = V;
    r.k_used = raw.k_used;
    r.converged = raw.converged;
    r.inner_tail_estimate = raw.inner_tail;
    return r;
}

void check_request(const SeriesContext& ctx, std::size_t n, const TruncationPolicy& policy) {
    policy.validate();
    if (n == 0) throw ArgumentError("finite predictor needs n >= 1");
    if (n > ctx.n_max()) throw ArgumentError("n exceeds the series context's n_max");
}

}  // namespace

ExplicitResult finite_predictor_multistep(const SeriesContext& ctx, std::size_t n, std::size_t m,
                                          const TruncationPolicy& policy) {
    check_request(ctx, n, policy);
    const bool long_memory = ctx.model().regime() == Regime::LongMemory;
    std::vector<std::string> warnings;
    if (!long_memory && ctx.short_memory_ratio(n) >= 1.0) {
        warnings.push_back("n is below the short-memory absolute-convergence threshold");
    }
    TruncationPolicy eff = policy;
    if (eff.K == 0) eff.K = ctx.series_depth(n);
    const std::size_t K = eff.K;
    const std::size_t V = resolve_inner_cutoff(policy, n);

    ExplicitResult result;
    if (policy.tail_strategy == TailStrategy::RichardsonDouble) {
        const double p = long_memory ? 1.0 - 2.0 * ctx.model().memory_parameter() : 1.0;
        const double denom = std::pow(2.0, p) - 1.0;
        RawSeries r1 = run_series(ctx, n, m, V, false, K, policy.tol_term);
        RawSeries r2 = run_series(ctx, n, m, 2 * V, false, K, policy.tol_term);
        RawSeries r4 = run_series(ctx, n, m, 4 * V, false, K, policy.tol_term);
        std::vector<double> phi(n);
        double spread = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double e1 = r2.phi[j] + (r2.phi[j] - r1.phi[j]) / denom;
            const double e2 = r4.phi[j] + (r4.phi[j] - r2.phi[j]) / denom;
            phi[j] = e2;
            spread = std::max(spread, std::abs(e2 - e1));
        }
        const bool conv = r1.converged && r2.converged && r4.converged;
        r4.phi = std::move(phi);
        r4.inner_tail = spread;
        r4.converged = conv;
        result = assemble(std::move(r4), n, m, 4 * V);
    } else {
        result = assemble(run_series(ctx, n, m, V, true, K, policy.tol_term), n, m, V);
    }
    result.warnings = std::move(warnings);
    if (!result.converged) {
        throw TruncationError("explicit series did not reach tol_term within K = " +
                                  std::to_string(K) + " terms; increase kmax",
                              result.series.empty() ? 0.0 : result.series.front().tail_estimate);
    }
    if (!(result.inner_tail_estimate <= policy.tol_tail)) {
        throw TruncationError("inner-index tail estimate " +
                                  std::to_string(result.inner_tail_estimate) +
                                  " exceeds tol_tail; increase vmax",
                              result.inner_tail_estimate);
    }
    return result;
}

ExplicitResult finite_predictor_multistep(const ProcessModel& model, std::size_t n, std::size_t m,
                                          const TruncationPolicy& policy) {
    const SeriesContext ctx(model, n, policy);
    return finite_predictor_multistep(ctx, n, m, policy);
}

ExplicitResult finite_predictor_explicit(const SeriesContext& ctx, std::size_t n,
                                         const TruncationPolicy& policy) {
    return finite_predictor_multistep(ctx, n, 0, policy);
}

ExplicitResult finite_predictor_explicit(const ProcessModel& model, std::size_t n,
                                         const TruncationPolicy& policy) {
    return finite_predictor_multistep(model, n, 0, policy);
}

std::vector<double> projection_iterates(const ProcessModel& model, std::size_t n, std::size_t j,
                                        std::size_t m, std::size_t K,
                                        const TruncationPolicy& policy) {
    if (j == 0 || j > n) throw ArgumentError("projection_iterates needs 1 <= j <= n");
    if (K == 0) throw ArgumentError("projection_iterates needs K >= 1");
    const SeriesContext ctx(model, n, policy);
    const std::size_t V = resolve_inner_cutoff(policy, n);
    RawSeries raw = run_series(ctx, n, m, V, true, K, policy.tol_term);
    std::vector<double> sums = raw.series[j - 1].partial_sums;
    sums.resize(K, sums.back());
    return sums;
}

DVectors d_vectors(const SeriesContext& ctx, std::size_t n, const TruncationPolicy& policy) {
    check_request(ctx, n, policy);
    const std::size_t V = resolve_inner_cutoff(policy, n);
    const std::size_t K = policy.K > 0 ? policy.K : ctx.series_depth(n);
    const bool with_tail = policy.tail_strategy == TailStrategy::IntegralBound;
    const HankelOperator op(ctx, n, V, 1, with_tail);
    DVectors out;
    HybridVector z = op.unit(0);
    HybridVector next = op.zero();
    for (std::size_t k = 1; k <= K; ++k) {
        op.apply(z, next);
        std::swap(z, next);
        out.d.push_back(z.head);
        out.k_used = k;
        if (z.sup_norm() < policy.tol_term) {
            out.converged = true;
            break;
        }
    }
    return out;
}

DeltaBlock delta_block(const SeriesContext& ctx, std::size_t n, std::size_t v_max,
                       const TruncationPolicy& policy) {
    check_request(ctx, n, policy);
    const std::size_t V = resolve_inner_cutoff(policy, n);
    if (v_max >= V) throw ArgumentError("delta_block needs v_max < V");
    const std::size_t K = policy.K > 0 ? policy.K : ctx.series_depth(n);
    const bool with_tail = policy.tail_strategy == TailStrategy::IntegralBound;
    const HankelOperator op(ctx, n, V, 1, with_tail);

    DeltaBlock out;
    out.V = V;
    out.v_max = v_max;
    std::vector<HybridVector> z;
    std::vector<double> identity((v_max + 1) * V, 0.0);
    for (std::size_t v = 0; v <= v_max; ++v) {
        z.push_back(op.unit(v));
        identity[v * V + v] = 1.0;
    }
    out.values.push_back(std::move(identity));
    HybridVector next = op.zero();
    for (std::size_t k = 1; k <= K; ++k) {
        std::vector<double> layer((v_max + 1) * V);
        double sup = 0.0;
        for (std::size_t v = 0; v <= v_max; ++v) {
            op.apply(z[v], next);
            std::swap(z[v], next);
            std::copy(z[v].head.begin(), z[v].head.end(), layer.begin() + static_cast<std::ptrdiff_t>(v * V));
            sup = std::max(sup, z[v].sup_norm());
        }
        out.values.push_back(std::move(layer));
        out.k_used = k;
        if (sup < policy.tol_term) {
            out.converged = true;
            break;
        }
    }
    return out;
}

}  // namespace predictorlab
