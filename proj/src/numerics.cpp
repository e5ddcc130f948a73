#include "predictorlab/numerics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <limits>
#include <numbers>

#include "predictorlab/errors.hpp"

namespace predictorlab {

QuadratureRule gauss_legendre(int order) {
    if (order < 1) {
        throw ArgumentError("Gauss-Legendre order must be positive");
    }
    QuadratureRule rule;
    rule.nodes.resize(static_cast<std::size_t>(order));
    rule.weights.resize(static_cast<std::size_t>(order));
    const int half = (order + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[static_cast<std::size_t>(i)] = -x;
        rule.nodes[static_cast<std::size_t>(order - 1 - i)] = x;
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.weights[static_cast<std::size_t>(order - 1 - i)] = w;
    }
    if (order == 1) {
        rule.nodes[0] = 0.0;
        rule.weights[0] = 2.0;
    }
    return rule;
}

QuadratureRule log_panel_rule(double x0, double t_max, double panel_width, int order) {
    if (!(x0 > 0.0) || !(t_max > 0.0) || !(panel_width > 0.0)) {
        throw ArgumentError("log_panel_rule needs positive x0, t_max and panel width");
    }
    const QuadratureRule base = gauss_legendre(order);
    const int panels = static_cast<int>(std::ceil(t_max / panel_width));
    const double h = t_max / panels;
    QuadratureRule rule;
    rule.nodes.reserve(static_cast<std::size_t>(panels * order));
    rule.weights.reserve(static_cast<std::size_t>(panels * order));
    for (int p = 0; p < panels; ++p) {
        const double mid = (p + 0.5) * h;
        for (std::size_t i = 0; i < base.size(); ++i) {
            const double t = mid + 0.5 * h * base.nodes[i];
            const double x = x0 * std::exp(t);
            rule.nodes.push_back(x);
            rule.weights.push_back(0.5 * h * base.weights[i] * x);
        }
    }
    return rule;
}

AsymptoticTail fit_asymptotic_tail(std::span<const double> seq, double exponent, std::size_t lo,
                                   std::size_t hi, int terms) {
    if (hi >= seq.size() || lo == 0 || hi <= lo || terms < 1) {
        throw ArgumentError("fit_asymptotic_tail: invalid fitting window");
    }
    std::vector<std::size_t> idx;
    const int samples = 96;
    const double ratio = static_cast<double>(hi) / static_cast<double>(lo);
    for (int s = 0; s < samples; ++s) {
        const auto k = static_cast<std::size_t>(
            std::llround(static_cast<double>(lo) * std::pow(ratio, s / double(samples - 1))));
        if (idx.empty() || idx.back() != k) idx.push_back(std::min(k, hi));
    }
    const auto rows = static_cast<Eigen::Index>(idx.size());
    if (rows < terms) {
        throw ArgumentError("fit_asymptotic_tail: window too narrow for the requested terms");
    }
    const double x_ref = static_cast<double>(lo);
    Eigen::MatrixXd basis(rows, terms);
    Eigen::VectorXd target(rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const double x = static_cast<double>(idx[static_cast<std::size_t>(r)]);
        const double y = x_ref / x;
        double yk = 1.0;
        for (int k = 0; k < terms; ++k) {
            basis(r, k) = yk;
            yk *= y;
        }
        target(r) = seq[idx[static_cast<std::size_t>(r)]] * std::pow(x, exponent);
    }
    const Eigen::VectorXd sol = basis.colPivHouseholderQr().solve(target);
    std::vector<double> coeffs(sol.data(), sol.data() + sol.size());
    AsymptoticTail fitted(exponent, x_ref, coeffs, 0.0);
    double residual = 0.0;
    for (std::size_t k : idx) {
        const double v = seq[k];
        if (v != 0.0) {
            residual = std::max(residual, std::abs(fitted(static_cast<double>(k)) - v) / std::abs(v));
        }
    }
    return AsymptoticTail(exponent, x_ref, std::move(coeffs), residual);
}

double geometric_tail_bound(std::span<const double> seq) {
    const std::size_t len = seq.size();
    if (len < 8) {
        return std::numeric_limits<double>::infinity();
    }
    const std::size_t q = len / 4;
    double m3 = 0.0;
    double m4 = 0.0;
    for (std::size_t k = len - 2 * q; k < len - q; ++k) m3 = std::max(m3, std::abs(seq[k]));
    for (std::size_t k = len - q; k < len; ++k) m4 = std::max(m4, std::abs(seq[k]));
    if (m4 == 0.0) return 0.0;
    if (m3 == 0.0 || m4 >= m3) return std::numeric_limits<double>::infinity();
    const double rho = std::pow(m4 / m3, 1.0 / static_cast<double>(q));
    if (rho >= 1.0) return std::numeric_limits<double>::infinity();
    return m4 * rho / (1.0 - rho);
}

}  // namespace predictorlab
