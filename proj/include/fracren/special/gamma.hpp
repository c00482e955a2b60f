#pragma once

// Gamma-family helpers.  Every formula in this library funnels through the
// gamma function, so the accuracy contract matters: |rel err| <= 1e-13 on
// (0, 171), checked by the test suite against exact factorials and
// half-integer values.  Backed by the Lanczos rational approximations in
// Boost.Math; reciprocal gamma handles the negative arguments arising in
// Wright-type series via the reflection formula.

#include <boost/math/special_functions/cos_pi.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/sin_pi.hpp>

#include <cmath>
#include <limits>
#include <utility>

#include "fracren/core.hpp"

namespace fracren {

template <class T>
T gamma_fn(T x) {
    return boost::math::tgamma(x);
}

template <class T>
T lgamma_fn(T x) {
    return boost::math::lgamma(x);
}

template <class T>
T sinpi(T x) {
    return boost::math::sin_pi(x);
}

template <class T>
T cospi(T x) {
    return boost::math::cos_pi(x);
}

template <class T>
T erfc_fn(T x) {
    return boost::math::erfc(x);
}

template <class T>
T erf_fn(T x) {
    return boost::math::erf(x);
}

inline bool is_nonpositive_integer(double x, double tol = 0.0) {
    if (x > 0.5) return false;
    const double r = std::nearbyint(x);
    return std::abs(x - r) <= tol * std::max(1.0, std::abs(x));
}

/// 1/Gamma(x) for any real x; zero at the poles x = 0, -1, -2, ...
/// For x <= 0.5 uses 1/Gamma(x) = sin(pi x) Gamma(1-x) / pi, switching to
/// log form when Gamma(1-x) would overflow.
template <class T>
T rgamma(T x) {
    if (x > T(0.5)) {
        if (x < T(170)) return T(1) / boost::math::tgamma(x);
        return std::exp(-boost::math::lgamma(x));
    }
    const T r = std::nearbyint(static_cast<double>(x));
    if (x == r) return T(0);  // pole
    const T s = boost::math::sin_pi(x);
    if (x > T(-169.5)) return s * boost::math::tgamma(T(1) - x) / boost::math::constants::pi<T>();
    // log route for deeply negative arguments
    const T lg = boost::math::lgamma(T(1) - x);
    const T mag = lg + std::log(std::abs(s) / boost::math::constants::pi<T>());
    T v = std::exp(mag);
    return s < T(0) ? -v : v;
}

/// log|1/Gamma(x)| and its sign; sign 0 at poles.  Used by series code that
/// sizes terms before summing them.
template <class T>
std::pair<T, int> log_abs_rgamma(T x) {
    if (x > T(0.5)) return {-boost::math::lgamma(x), 1};
    const T r = std::nearbyint(static_cast<double>(x));
    if (x == r) return {-std::numeric_limits<T>::infinity(), 0};
    const T s = boost::math::sin_pi(x);
    const T mag = boost::math::lgamma(T(1) - x) +
                  std::log(std::abs(s) / boost::math::constants::pi<T>());
    return {mag, s < T(0) ? -1 : 1};
}

}  // namespace fracren
