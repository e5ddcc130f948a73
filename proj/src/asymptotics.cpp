#include "predictorlab/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "predictorlab/errors.hpp"
#include "predictorlab/levinson.hpp"
#include "predictorlab/parallel.hpp"

namespace predictorlab {

std::vector<double> fk0(std::size_t K) {
    if (K == 0) throw ArgumentError("fk0 needs K >= 1");
    std::vector<double> f(K + 1, 0.0);
    double central = 1.0;  // (2m)! / (4^m (m!)^2)
    for (std::size_t m = 0; 2 * m + 1 <= K; ++m) {
        if (m > 0) central *= (2.0 * m - 1.0) / (2.0 * m);
        f[2 * m + 1] = central / (2.0 * m + 1.0) / std::numbers::pi;
    }
    for (std::size_t k = 2; k <= K; k += 2) {
        double acc = 0.0;
        for (std::size_t i = 1; i < k; i += 2) acc += f[i] * f[k - i];
        f[k] = acc;
    }
    f.erase(f.begin());
    return f;
}

namespace {

double f1(double u) { return 1.0 / (std::numbers::pi * (1.0 + u)); }

}  // namespace

FkQuadrature::FkQuadrature(std::size_t k_max, double t_max, int panel_order) {
    if (k_max == 0) throw ArgumentError("FkQuadrature needs k_max >= 1");
    const QuadratureRule base = gauss_legendre(panel_order);
    const auto panels = static_cast<std::size_t>(std::ceil(t_max));
    const double h = t_max / static_cast<double>(panels);
    for (std::size_t p = 0; p < panels; ++p) {
        for (std::size_t i = 0; i < base.size(); ++i) {
            const double t = (static_cast<double>(p) + 0.5) * h + 0.5 * h * base.nodes[i];
            const double et = std::exp(t);
            rule_.nodes.push_back(et - 1.0);
            rule_.weights.push_back(0.5 * h * base.weights[i] * et);
        }
    }
    const std::size_t L = rule_.size();
    table_.assign(k_max, std::vector<double>(L));
    for (std::size_t l = 0; l < L; ++l) table_[0][l] = f1(rule_.nodes[l]);
    for (std::size_t k = 1; k < k_max; ++k) {
        for (std::size_t l = 0; l < L; ++l) {
            double acc = 0.0;
            for (std::size_t q = 0; q < L; ++q) {
                acc += rule_.weights[q] * f1(rule_.nodes[q] + rule_.nodes[l]) * table_[k - 1][q];
            }
            table_[k][l] = acc;
        }
    }
}

double FkQuadrature::operator()(std::size_t k, double u) const {
    if (k == 0 || k > table_.size()) throw ArgumentError("FkQuadrature: k out of range");
    if (k == 1) return f1(u);
    double acc = 0.0;
    for (std::size_t q = 0; q < rule_.size(); ++q) {
        acc += rule_.weights[q] * f1(rule_.nodes[q] + u) * table_[k - 2][q];
    }
    return acc;
}

double FkQuadrature::inner(std::size_t i, std::size_t j) const {
    if (i == 0 || j == 0 || i > table_.size() || j > table_.size()) {
        throw ArgumentError("FkQuadrature: index out of range");
    }
    double acc = 0.0;
    for (std::size_t l = 0; l < rule_.size(); ++l) {
        acc += rule_.weights[l] * table_[i - 1][l] * table_[j - 1][l];
    }
    return acc;
}

double RateReport::richardson() const {
    if (entries.empty()) return std::numeric_limits<double>::quiet_NaN();
    return entries.size() == 1 ? entries.back().rate : entries.back().extrapolated;
}

namespace {

void require_long_memory(const ProcessModel& model, const char* what) {
    if (model.regime() != Regime::LongMemory) {
        throw RegimeError(std::string(what) + " requires a long-memory model (0 < d < 1/2)");
    }
}

std::vector<std::size_t> sorted_unique(std::span<const std::size_t> n_list) {
    std::vector<std::size_t> ns(n_list.begin(), n_list.end());
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    if (ns.empty() || ns.front() == 0) throw ArgumentError("n list must be nonempty and positive");
    return ns;
}

struct CheckedPredictor {
    std::vector<double> phi;
    double diff = 0.0;
};

// Explicit predictor with a Durbin-Levinson cross-check.
CheckedPredictor checked_predictor(const SeriesContext& ctx, std::size_t n,
                                   const TruncationPolicy& policy) {
    const ExplicitResult ex = finite_predictor_explicit(ctx, n, policy);
    const PredictorTable lev = durbin_levinson(autocov(ctx.model(), n), n).back();
    double diff = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        diff = std::max(diff, std::abs(ex.table.coefficients[j] - lev.coefficients[j]));
    }
    if (!(diff <= kCrossCheckTolerance)) {
        throw DisagreementError("explicit and Levinson predictors differ by " + std::to_string(diff) +
                                    " at n = " + std::to_string(n),
                                diff);
    }
    return {ex.table.coefficients, diff};
}

}  // namespace

RateReport rate_experiment(const ProcessModel& model, std::size_t j, std::span<const std::size_t> n_list,
                           const TruncationPolicy& policy) {
    require_long_memory(model, "rate experiment");
    if (j == 0) throw ArgumentError("rate experiment needs j >= 1");
    const std::vector<std::size_t> ns = sorted_unique(n_list);
    if (ns.front() < j) throw ArgumentError("rate experiment needs every n >= j");
    const SeriesContext ctx(model, ns.back(), policy);
    const InfinitePredictor phi =
        infinite_predictor(ctx.ma(), ctx.ar(), ctx.ar().truncation_length());

    RateReport report;
    report.j = j;
    report.phi_j = phi.at(j);
    const double d = model.memory_parameter();
    report.theoretical_limit = d * d * tail_sum_phi(phi, j - 1, TailSum::Signed);

    const auto results = parallel_map(ns.size(), [&](std::size_t i) {
        return checked_predictor(ctx, ns[i], policy);
    });
    for (std::size_t i = 0; i < ns.size(); ++i) {
        RateEntry e;
        e.n = ns[i];
        e.phi_nj = results[i].phi[j - 1];
        e.rate = static_cast<double>(ns[i]) * (e.phi_nj - report.phi_j);
        e.levinson_diff = results[i].diff;
        e.extrapolated = std::numeric_limits<double>::quiet_NaN();
        if (i > 0) {
            // rate(n) = limit + A / n + ...
            const auto& p = report.entries.back();
            const double n1 = static_cast<double>(p.n);
            const double n2 = static_cast<double>(e.n);
            e.extrapolated = (n2 * e.rate - n1 * p.rate) / (n2 - n1);
        }
        report.entries.push_back(e);
    }
    return report;
}

BaxterReport baxter_experiment(const ProcessModel& model, std::span<const std::size_t> n_list,
                               const TruncationPolicy& policy) {
    require_long_memory(model, "Baxter experiment");
    const std::vector<std::size_t> ns = sorted_unique(n_list);
    const SeriesContext ctx(model, ns.back(), policy);
    const InfinitePredictor phi =
        infinite_predictor(ctx.ma(), ctx.ar(), ctx.ar().truncation_length());

    const auto results = parallel_map(ns.size(), [&](std::size_t i) {
        return checked_predictor(ctx, ns[i], policy);
    });
    BaxterReport report;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        BaxterEntry e;
        e.n = ns[i];
        for (std::size_t j = 1; j <= e.n; ++j) e.lhs += std::abs(results[i].phi[j - 1] - phi.at(j));
        e.rhs = tail_sum_phi(phi, e.n, TailSum::Absolute);
        e.ratio = e.lhs / e.rhs;
        e.levinson_diff = results[i].diff;
        report.sup_ratio = std::max(report.sup_ratio, e.ratio);
        report.entries.push_back(e);
    }
    return report;
}

std::vector<DkScalingEntry> dk_scaling_experiment(const ProcessModel& model,
                                                  std::span<const std::size_t> k_list, std::size_t u,
                                                  std::span<const std::size_t> n_list,
                                                  const TruncationPolicy& policy) {
    require_long_memory(model, "d_k scaling experiment");
    if (k_list.empty()) throw ArgumentError("k list must be nonempty");
    const std::size_t k_top = *std::max_element(k_list.begin(), k_list.end());
    if (k_top == 0) throw ArgumentError("k must be >= 1");
    const std::vector<std::size_t> ns = sorted_unique(n_list);
    const SeriesContext ctx(model, ns.back(), policy);
    TruncationPolicy eff = policy;
    eff.K = k_top;
    const std::vector<double> f = fk0(k_top);
    const double s = std::sin(std::numbers::pi * model.memory_parameter());

    const auto dvs = parallel_map(ns.size(), [&](std::size_t i) {
        if (u >= resolve_inner_cutoff(eff, ns[i])) throw ArgumentError("u must be below V");
        return d_vectors(ctx, ns[i], eff);
    });
    std::vector<DkScalingEntry> rows;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        for (std::size_t k : k_list) {
            if (k == 0) throw ArgumentError("k must be >= 1");
            DkScalingEntry e;
            e.k = k;
            e.n = ns[i];
            e.u = u;
            const double dk = k <= dvs[i].d.size() ? dvs[i].d[k - 1][u] : 0.0;
            e.n_dk = static_cast<double>(ns[i]) * dk;
            e.target = f[k - 1] * std::pow(s, static_cast<double>(k));
            rows.push_back(e);
        }
    }
    return rows;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw ArgumentError("loglog_slope needs two or more points");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const auto n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace predictorlab
