#include "predictorlab/polynomial.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

#include "predictorlab/errors.hpp"

namespace predictorlab {

RealPolynomial::RealPolynomial(std::vector<double> coefficients) : coeffs_(std::move(coefficients)) {
    if (coeffs_.empty()) {
        throw ArgumentError("polynomial needs at least one coefficient");
    }
    for (double c : coeffs_) {
        if (!std::isfinite(c)) {
            throw ArgumentError("polynomial coefficients must be finite");
        }
    }
    if (coeffs_.back() == 0.0) {
        throw ArgumentError("polynomial leading coefficient must be nonzero (degree " +
                            std::to_string(coeffs_.size() - 1) + ")");
    }
}

double RealPolynomial::operator()(double x) const noexcept {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

std::complex<double> RealPolynomial::operator()(std::complex<double> z) const noexcept {
    std::complex<double> acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * z + *it;
    }
    return acc;
}

std::vector<std::complex<double>> RealPolynomial::roots() const {
    const int deg = degree();
    if (deg == 0) {
        return {};
    }
    // Companion matrix of the monic polynomial z^deg + (c[deg-1]/c[deg]) z^(deg-1) + ...
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
    const double lead = coeffs_.back();
    for (int i = 0; i < deg; ++i) {
        companion(0, i) = -coeffs_[static_cast<std::size_t>(deg - 1 - i)] / lead;
    }
    for (int i = 1; i < deg; ++i) {
        companion(i, i - 1) = 1.0;
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw ArgumentError("polynomial root finding failed to converge");
    }
    std::vector<std::complex<double>> out;
    out.reserve(static_cast<std::size_t>(deg));
    for (int i = 0; i < deg; ++i) {
        out.push_back(solver.eigenvalues()[i]);
    }
    return out;
}

}  // namespace predictorlab
