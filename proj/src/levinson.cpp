#include "predictorlab/levinson.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <cmath>
#include <string>

#include "predictorlab/errors.hpp"

namespace predictorlab {

const char* to_string(PredictorSource source) noexcept {
    switch (source) {
        case PredictorSource::Levinson: return "levinson";
        case PredictorSource::NormalEquations: return "normal_equations";
        case PredictorSource::ExplicitSeries: return "explicit";
    }
    return "unknown";
}

std::vector<PredictorTable> durbin_levinson(const AutocovSeq& gamma, std::size_t n) {
    if (n == 0) throw ArgumentError("durbin_levinson needs n >= 1");
    if (gamma.size() < n + 1) throw ArgumentError("durbin_levinson needs gamma(0..n)");
    const double g0 = gamma[0];
    std::vector<PredictorTable> tables;
    tables.reserve(n);
    std::vector<double> prev;
    double sigma2 = g0;
    for (std::size_t k = 1; k <= n; ++k) {
        double num = gamma[k];
        for (std::size_t j = 1; j < k; ++j) num -= prev[j - 1] * gamma[k - j];
        const double kk = num / sigma2;
        std::vector<double> cur(k);
        for (std::size_t j = 1; j < k; ++j) cur[j - 1] = prev[j - 1] - kk * prev[k - j - 1];
        cur[k - 1] = kk;
        sigma2 *= (1.0 - kk * kk);
        if (!(sigma2 >= kDegeneracyFloor * g0)) {
            throw DegeneracyError("durbin_levinson: prediction-error variance collapsed at order " +
                                      std::to_string(k),
                                  static_cast<int>(k));
        }
        PredictorTable t;
        t.n = k;
        t.horizon = 0;
        t.coefficients = cur;
        t.sigma2 = sigma2;
        t.source = PredictorSource::Levinson;
        tables.push_back(std::move(t));
        prev = std::move(cur);
    }
    return tables;
}

double normal_equations_residual(const AutocovSeq& gamma, const PredictorTable& table) {
    const std::size_t n = table.n;
    const std::size_t m = table.horizon;
    double worst = 0.0;
    for (std::size_t j = 1; j <= n; ++j) {
        double acc = -gamma[m + j];
        for (std::size_t i = 1; i <= n; ++i) {
            acc += gamma[j > i ? j - i : i - j] * table.coefficients[i - 1];
        }
        worst = std::max(worst, std::abs(acc));
    }
    return worst;
}

PredictorTable multistep_normal_solve(const AutocovSeq& gamma, std::size_t n, std::size_t m) {
    if (n == 0) throw ArgumentError("multistep_normal_solve needs n >= 1");
    if (gamma.size() < n + m + 1) throw ArgumentError("multistep_normal_solve needs gamma(0..n+m)");
    const auto N = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd G(N, N);
    Eigen::VectorXd rhs(N);
    for (Eigen::Index i = 0; i < N; ++i) {
        for (Eigen::Index j = 0; j < N; ++j) {
            G(i, j) = gamma[static_cast<std::size_t>(std::abs(i - j))];
        }
        rhs(i) = gamma[m + 1 + static_cast<std::size_t>(i)];
    }
    const Eigen::LLT<Eigen::MatrixXd> llt(G);
    if (llt.info() != Eigen::Success) {
        throw DegeneracyError("multistep_normal_solve: Toeplitz matrix not positive definite",
                              static_cast<int>(n));
    }
    const double rcond = llt.rcond();
    if (!(rcond > 1e-15)) {
        throw DegeneracyError("multistep_normal_solve: Toeplitz matrix is ill-conditioned",
                              static_cast<int>(n), rcond);
    }
    const Eigen::VectorXd x = llt.solve(rhs);
    PredictorTable t;
    t.n = n;
    t.horizon = m;
    t.coefficients.assign(x.data(), x.data() + x.size());
    t.source = PredictorSource::NormalEquations;
    if (m == 0) {
        double s = gamma[0];
        for (std::size_t j = 1; j <= n; ++j) s -= t.coefficients[j - 1] * gamma[j];
        t.sigma2 = s;
    }
    const double res = normal_equations_residual(gamma, t);
    if (!(res < 1e-10 * gamma[0])) {
        throw DegeneracyError("multistep_normal_solve: residual " + std::to_string(res) +
                                  " above 1e-10 gamma(0)",
                              static_cast<int>(n), rcond);
    }
    return t;
}

}  // namespace predictorlab
