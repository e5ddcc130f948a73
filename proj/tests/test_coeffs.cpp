#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "predictorlab/coeffs.hpp"
#include "predictorlab/errors.hpp"

using namespace predictorlab;

namespace {

// Fractional-noise autocovariance from the Gamma ratio recurrence.
std::vector<double> fn_autocov(double d, std::size_t N) {
    std::vector<double> g(N + 1);
    g[0] = std::exp(std::lgamma(1.0 - 2.0 * d) - 2.0 * std::lgamma(1.0 - d));
    for (std::size_t n = 1; n <= N; ++n) {
        const double k = static_cast<double>(n);
        g[n] = g[n - 1] * (k - 1.0 + d) / (k - d);
    }
    return g;
}

std::vector<double> binomial_ma(double d, std::size_t N) {
    std::vector<double> c(N + 1, 1.0);
    for (std::size_t n = 1; n <= N; ++n) c[n] = c[n - 1] * (n - 1.0 + d) / n;
    return c;
}

std::vector<double> binomial_ar(double d, std::size_t N) {
    std::vector<double> a(N + 1, -1.0);
    for (std::size_t n = 1; n <= N; ++n) a[n] = a[n - 1] * (n - 1.0 - d) / n;
    return a;
}

// Product of (1 - z / root) over real roots outside the unit disk.
RealPolynomial poly_from_roots(const std::vector<double>& roots) {
    std::vector<double> p{1.0};
    for (double r : roots) {
        std::vector<double> q(p.size() + 1, 0.0);
        for (std::size_t i = 0; i < p.size(); ++i) {
            q[i] += p[i];
            q[i + 1] -= p[i] / r;
        }
        p = q;
    }
    return RealPolynomial(p);
}

std::vector<ProcessModel> random_models(unsigned seed, int count) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist_d(0.0, 0.45);
    std::uniform_real_distribution<double> mag(1.3, 4.0);
    std::uniform_int_distribution<int> deg(0, 2);
    std::bernoulli_distribution sign;
    std::vector<ProcessModel> out;
    for (int i = 0; i < count; ++i) {
        auto roots = [&] {
            std::vector<double> r(static_cast<std::size_t>(deg(rng)));
            for (double& x : r) x = sign(rng) ? mag(rng) : -mag(rng);
            return r;
        };
        out.push_back(ProcessModel::farima(dist_d(rng), poly_from_roots(roots()), poly_from_roots(roots())));
    }
    out.push_back(ProcessModel::ar1(-0.7));
    out.push_back(ProcessModel::white_noise());
    return out;
}

}  // namespace

TEST(ExpandMa, Ar1Powers) {
    const auto c = expand_ma(ProcessModel::ar1(0.5), 3);
    ASSERT_EQ(c.values.size(), 4u);
    EXPECT_DOUBLE_EQ(c[0], 1.0);
    EXPECT_DOUBLE_EQ(c[1], 0.5);
    EXPECT_DOUBLE_EQ(c[2], 0.25);
    EXPECT_DOUBLE_EQ(c[3], 0.125);
}

TEST(ExpandMa, FractionalNoiseMatchesBinomial) {
    const auto c = expand_ma(ProcessModel::fractional_noise(0.3), 2);
    EXPECT_NEAR(c[0], 1.0, 1e-15);
    EXPECT_NEAR(c[1], 0.3, 1e-15);
    EXPECT_NEAR(c[2], 0.195, 1e-15);
    const auto oracle = binomial_ma(0.3, 2000);
    const auto long_c = expand_ma(ProcessModel::fractional_noise(0.3), 2000);
    for (std::size_t n = 0; n <= 2000; ++n) EXPECT_NEAR(long_c[n], oracle[n], 1e-14 * oracle[n]);
}

TEST(ExpandMa, WhiteNoise) {
    const auto c = expand_ma(ProcessModel::white_noise(), 2);
    EXPECT_EQ(c.values, (std::vector<double>{1.0, 0.0, 0.0}));
}

TEST(ExpandAr, Ar1) {
    const auto a = expand_ar(ProcessModel::ar1(0.5), 3);
    EXPECT_EQ(a.values, (std::vector<double>{-1.0, 0.5, 0.0, 0.0}));
}

TEST(ExpandAr, FractionalNoiseMatchesBinomial) {
    const auto a = expand_ar(ProcessModel::fractional_noise(0.3), 2);
    EXPECT_NEAR(a[0], -1.0, 1e-15);
    EXPECT_NEAR(a[1], 0.3, 1e-15);
    EXPECT_NEAR(a[2], 0.105, 1e-15);
    const auto oracle = binomial_ar(0.3, 2000);
    const auto long_a = expand_ar(ProcessModel::fractional_noise(0.3), 2000);
    for (std::size_t n = 0; n <= 2000; ++n) {
        EXPECT_NEAR(long_a[n], oracle[n], 1e-14 * std::abs(oracle[n]));
    }
}

TEST(ExpandAr, ZeroLengthIsReciprocal) {
    const auto m = ProcessModel::farima(0.2, {1.0, -0.5}, {2.0, 0.4});
    const auto c = expand_ma(m, 0);
    const auto a = expand_ar(m, 0);
    ASSERT_EQ(a.values.size(), 1u);
    EXPECT_NEAR(a[0], -1.0 / c[0], 1e-15);
}

TEST(Coefficients, ConvolutionIdentityRandomModels) {
    for (const auto& m : random_models(20240611u, 40)) {
        const std::size_t N = 400;
        const auto c = expand_ma(m, N);
        const auto a = expand_ar(m, N);
        for (std::size_t n = 0; n <= N; ++n) {
            double acc = n == 0 ? 1.0 : 0.0;
            for (std::size_t k = 0; k <= n; ++k) acc += c[k] * a[n - k];
            ASSERT_LT(std::abs(acc), 1e-10) << m.describe() << " n=" << n;
        }
    }
}

TEST(Coefficients, FractionalNoiseSigns) {
    for (double d : {0.05, 0.25, 0.45}) {
        const auto c = expand_ma(ProcessModel::fractional_noise(d), 5000);
        const auto a = expand_ar(ProcessModel::fractional_noise(d), 5000);
        EXPECT_EQ(a[0], -1.0);
        for (std::size_t n = 0; n <= 5000; ++n) ASSERT_GT(c[n], 0.0);
        for (std::size_t n = 1; n <= 5000; ++n) ASSERT_GT(a[n], 0.0);
    }
}

TEST(Coefficients, LargeIndexSlowlyVaryingFactor) {
    for (double d : {0.1, 0.3, 0.45}) {
        const auto m = ProcessModel::farima(d, {1.0, -0.4}, {1.0, 0.3});
        const std::size_t N = 20000;
        const auto c = expand_ma(m, N);
        const auto a = expand_ar(m, N);
        for (std::size_t n : {10000u, 20000u}) {
            const double x = static_cast<double>(n);
            const double from_c = c[n] * std::pow(x, 1.0 - d);
            const double from_a = d * std::sin(std::numbers::pi * d) /
                                  (std::numbers::pi * a[n] * std::pow(x, 1.0 + d));
            const double ell = 1.3 / 0.6 / std::tgamma(d);
            EXPECT_NEAR(from_c / ell, 1.0, 0.02) << "d=" << d << " n=" << n;
            EXPECT_NEAR(from_a / ell, 1.0, 0.02) << "d=" << d << " n=" << n;
        }
    }
}

TEST(Coefficients, FittedTailExtendsSequence) {
    const auto m = ProcessModel::fractional_noise(0.3);
    const auto a = expand_ar(m, 8192);
    const auto oracle = binomial_ar(0.3, 40000);
    ASSERT_TRUE(a.tail.has_value());
    for (std::size_t n : {9000u, 20000u, 40000u}) {
        EXPECT_NEAR(a.at(static_cast<double>(n)) / oracle[n], 1.0, 1e-8);
    }
}

TEST(Autocov, Ar1Closed) {
    const auto g = autocov(ProcessModel::ar1(0.5), 5);
    EXPECT_NEAR(g[0], 4.0 / 3.0, 1e-14);
    EXPECT_NEAR(g[1], 2.0 / 3.0, 1e-14);
    for (std::size_t n = 0; n <= 5; ++n) EXPECT_NEAR(g[n], std::pow(0.5, n) / 0.75, 1e-14);
}

TEST(Autocov, WhiteNoise) {
    const auto g = autocov(ProcessModel::white_noise(), 6);
    EXPECT_DOUBLE_EQ(g[0], 1.0);
    for (std::size_t n = 1; n <= 6; ++n) EXPECT_EQ(g[n], 0.0);
}

TEST(Autocov, FractionalNoiseGammaRatio) {
    for (double d : {0.1, 0.25, 0.3, 0.4}) {
        const auto g = autocov(ProcessModel::fractional_noise(d), 600);
        const auto oracle = fn_autocov(d, 600);
        for (std::size_t n = 0; n <= 600; ++n) ASSERT_NEAR(g[n], oracle[n], 1e-10) << "d=" << d;
    }
    const auto g = autocov(ProcessModel::fractional_noise(0.3), 1);
    EXPECT_NEAR(g[1] / g[0], 3.0 / 7.0, 1e-11);
}

TEST(Autocov, LargeLagConstant) {
    const double d = 0.3;
    const auto g = autocov(ProcessModel::fractional_noise(d), 2000);
    const double ell = 1.0 / std::tgamma(d);
    const double beta = std::tgamma(d) * std::tgamma(1.0 - 2.0 * d) / std::tgamma(1.0 - d);
    const double target = ell * ell * beta;
    const double at1k = g[1000] * std::pow(1000.0, 1.0 - 2.0 * d);
    const double at2k = g[2000] * std::pow(2000.0, 1.0 - 2.0 * d);
    EXPECT_NEAR(at1k / target, 1.0, 0.05);
    EXPECT_NEAR(at2k / target, 1.0, 0.05);
    EXPECT_LT(std::abs(at2k - target), std::abs(at1k - target));
}

TEST(Autocov, ToeplitzPositiveDefinite) {
    for (const auto& m : random_models(77u, 20)) {
        const auto g = autocov(m, 20);
        for (int order = 1; order <= 20; ++order) {
            Eigen::MatrixXd T(order, order);
            for (int i = 0; i < order; ++i)
                for (int j = 0; j < order; ++j) T(i, j) = g[static_cast<std::size_t>(std::abs(i - j))];
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
            ASSERT_GT(es.eigenvalues().minCoeff(), 0.0) << m.describe() << " order " << order;
        }
    }
}

TEST(Autocov, ExplicitMaFinite) {
    const auto m = ProcessModel::explicit_coefficients({1.0, 0.5}, {-1.0, 0.5, -0.25, 0.125});
    const auto g = autocov(m, 3);
    EXPECT_NEAR(g[0], 1.25, 1e-15);
    EXPECT_NEAR(g[1], 0.5, 1e-15);
    EXPECT_EQ(g[2], 0.0);
}

TEST(AutocovSeq, Validation) {
    EXPECT_THROW(AutocovSeq({0.0, 0.0}), ArgumentError);
    EXPECT_THROW(AutocovSeq({1.0, 1.5}), ArgumentError);
    const AutocovSeq g({2.0, 1.0});
    const auto s = g.scaled(3.0);
    EXPECT_DOUBLE_EQ(s[0], 6.0);
    EXPECT_DOUBLE_EQ(s[1], 3.0);
    EXPECT_THROW(autocov(ProcessModel::ar1(0.5), 10, 5), ArgumentError);
}

TEST(InfinitePredictor, Examples) {
    const auto ar1 = ProcessModel::ar1(0.5);
    const auto p = infinite_predictor(expand_ma(ar1, 6), expand_ar(ar1, 6), 6);
    EXPECT_DOUBLE_EQ(p.at(1), 0.5);
    for (std::size_t j = 2; j <= 6; ++j) EXPECT_EQ(p.at(j), 0.0);

    const auto fn = ProcessModel::fractional_noise(0.3);
    const auto q = infinite_predictor(expand_ma(fn, 4), expand_ar(fn, 4), 4);
    EXPECT_NEAR(q.at(1), 0.3, 1e-15);
    EXPECT_NEAR(q.at(2), 0.105, 1e-15);

    CoeffSeq c{CoeffKind::MA, {2.0}};
    CoeffSeq a{CoeffKind::AR, {-0.5, 0.25}};
    EXPECT_DOUBLE_EQ(infinite_predictor(c, a, 1).at(1), 0.5);
}

TEST(TailSum, Ar1IsZeroPastOne) {
    const auto m = ProcessModel::ar1(0.5);
    const auto p = infinite_predictor(expand_ma(m, 64), expand_ar(m, 64), 64);
    EXPECT_EQ(tail_sum_phi(p, 1), 0.0);
    EXPECT_DOUBLE_EQ(tail_sum_phi(p, 0), 0.5);
    EXPECT_THROW(tail_sum_phi(p, 64), ArgumentError);
}

TEST(TailSum, FractionalNoiseWholeSumIsOne) {
    const auto m = ProcessModel::fractional_noise(0.3);
    const std::size_t N = 1u << 16;
    const auto p = infinite_predictor(expand_ma(m, N), expand_ar(m, N), N);
    EXPECT_NEAR(tail_sum_phi(p, 0), 1.0, 1e-7);
    EXPECT_NEAR(tail_sum_phi(p, 0, TailSum::Signed), 1.0, 1e-7);
}

TEST(TailSum, FractionalNoiseAgainstDirectSum) {
    const double d = 0.3;
    const auto m = ProcessModel::fractional_noise(d);
    const std::size_t N = 1u << 16;
    const auto p = infinite_predictor(expand_ma(m, N), expand_ar(m, N), N);

    const std::size_t K = 1000000;
    const auto a = binomial_ar(d, K);
    double direct = 0.0;
    for (std::size_t k = K; k > 100; --k) direct += a[k];
    direct += std::pow(K + 0.5, -d) / std::tgamma(1.0 - d);

    const double got = tail_sum_phi(p, 100);
    EXPECT_NEAR(got, direct, 1e-6);
    // sin(pi d) / (pi n^d l) with l = 1 / Gamma(d)
    const double leading = std::sin(std::numbers::pi * d) * std::tgamma(d) / std::numbers::pi / std::pow(100.0, d);
    EXPECT_NEAR(got / leading, 1.0, 0.1);
}
