#ifndef PREDICTORLAB_POLYNOMIAL_HPP
#define PREDICTORLAB_POLYNOMIAL_HPP

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

namespace predictorlab {

/// Real polynomial p(z) = c[0] + c[1] z + ... + c[deg] z^deg.
///
/// The leading coefficient is nonzero; the constant polynomial 1 is the
/// default-constructed value.
class RealPolynomial {
public:
    RealPolynomial() : coeffs_{1.0} {}
    explicit RealPolynomial(std::vector<double> coefficients);
    RealPolynomial(std::initializer_list<double> coefficients)
        : RealPolynomial(std::vector<double>(coefficients)) {}

    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    std::span<const double> coefficients() const noexcept { return coeffs_; }
    double operator[](int i) const { return coeffs_[static_cast<std::size_t>(i)]; }

    double operator()(double x) const noexcept;
    std::complex<double> operator()(std::complex<double> z) const noexcept;

    /// All complex roots (empty for a constant polynomial), via the
    /// eigenvalues of the companion matrix.
    std::vector<std::complex<double>> roots() const;

    bool operator==(const RealPolynomial&) const = default;

private:
    std::vector<double> coeffs_;
};

}  // namespace predictorlab

#endif  // PREDICTORLAB_POLYNOMIAL_HPP
