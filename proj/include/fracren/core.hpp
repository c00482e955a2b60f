#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fracren {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Fractional order beta, constrained to (0, 1].  beta == 1 marks the
/// degenerate branch (exponential waiting times / delta densities) which
/// every consumer special-cases analytically instead of approaching the
/// limit numerically.
class Order {
public:
    explicit Order(double beta) : beta_(beta) {
        if (!(beta > 0.0 && beta <= 1.0))
            throw std::domain_error("Order: beta must lie in (0,1], got " +
                                    std::to_string(beta));
    }
    double value() const noexcept { return beta_; }
    bool degenerate() const noexcept { return beta_ == 1.0; }

private:
    double beta_;
};

enum class Method { series, asymptotic, closed_form, laplace_inversion };

inline const char* method_name(Method m) noexcept {
    switch (m) {
        case Method::series: return "series";
        case Method::asymptotic: return "asymptotic";
        case Method::closed_form: return "closed_form";
        case Method::laplace_inversion: return "laplace_inversion";
    }
    return "unknown";
}

/// A computed value together with an absolute error bound that the
/// producing routine guarantees, and a tag naming the route taken.
struct EvalResult {
    double value = 0.0;
    double abs_err_bound = 0.0;
    Method method = Method::series;
};

/// Requested tolerance could not be met; carries the best estimate and the
/// bound actually achieved so callers can decide whether to keep it.
class ToleranceError : public std::runtime_error {
public:
    ToleranceError(const std::string& msg, EvalResult best)
        : std::runtime_error(msg), best_(best) {}
    const EvalResult& best() const noexcept { return best_; }

private:
    EvalResult best_;
};

/// Series summation would need more working precision than the configured
/// cap.  Callers should switch to the Laplace-inversion route.
class CancellationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Pointwise evaluation was requested for a degenerate (delta) law.
class DegenerateLawError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace fracren
