#ifndef PREDICTORLAB_ERRORS_HPP
#define PREDICTORLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace predictorlab {

/// Category of a library failure. The CLI maps each category to an exit code.
enum class ErrorKind {
    Argument,      ///< caller supplied an out-of-contract argument
    Model,         ///< process model fails validation
    Regime,        ///< operation requires a memory regime the model is not in
    Truncation,    ///< a truncated infinite sum could not meet its tolerance
    Degeneracy,    ///< autocovariance lost positive definiteness
    Disagreement,  ///< two independent routes disagree beyond tolerance
};

const char* error_code(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ArgumentError : public Error {
public:
    explicit ArgumentError(const std::string& what) : Error(ErrorKind::Argument, what) {}
};

class ModelError : public Error {
public:
    explicit ModelError(const std::string& what) : Error(ErrorKind::Model, what) {}
};

class RegimeError : public Error {
public:
    explicit RegimeError(const std::string& what) : Error(ErrorKind::Regime, what) {}
};

/// Carries the bound that was actually achieved so callers can decide to retry
/// with a larger truncation.
class TruncationError : public Error {
public:
    TruncationError(const std::string& what, double achieved_bound)
        : Error(ErrorKind::Truncation, what), achieved_bound_(achieved_bound) {}

    double achieved_bound() const noexcept { return achieved_bound_; }

private:
    double achieved_bound_;
};

class DegeneracyError : public Error {
public:
    DegeneracyError(const std::string& what, int order, double condition_estimate = 0.0)
        : Error(ErrorKind::Degeneracy, what), order_(order), condition_(condition_estimate) {}

    /// Order k at which the recursion or solve broke down.
    int order() const noexcept { return order_; }
    /// Reciprocal condition estimate when known, zero otherwise.
    double condition_estimate() const noexcept { return condition_; }

private:
    int order_;
    double condition_;
};

class DisagreementError : public Error {
public:
    DisagreementError(const std::string& what, double max_abs_diff)
        : Error(ErrorKind::Disagreement, what), max_abs_diff_(max_abs_diff) {}

    double max_abs_diff() const noexcept { return max_abs_diff_; }

private:
    double max_abs_diff_;
};

}  // namespace predictorlab

#endif  // PREDICTORLAB_ERRORS_HPP
