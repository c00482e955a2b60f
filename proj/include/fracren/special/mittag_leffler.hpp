#pragma once

// Mittag-Leffler family: E_{alpha,mu}(z) and the n-th derivative of
// E_alpha on the negative real axis.
//
// For z < 0 the defining series is alternating and loses roughly
// exp(|z|^(1/alpha)) of dynamic range to cancellation, so evaluation walks
// a ladder of routes, cheapest first, until one meets the requested
// absolute tolerance:
//   1. series in double,
//   2. large-argument asymptotic expansion (0 < alpha < 1, z << 0),
//   3. series in long double,
//   4. series in MPFR at a precision sized from the scanned peak term.
// Every route reports an honest absolute error bound (truncation estimate
// plus rounding at the peak-term scale).

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "fracren/core.hpp"
#include "fracren/special/gamma.hpp"
#include "fracren/special/mpfloat.hpp"

namespace fracren {
namespace detail {

inline constexpr int kMlMaxTerms = 200000;
inline constexpr long kMlPrecCap = 16384;  // bits; beyond this we give up
inline constexpr int kMlDerivMaxOrder = 50;

// log of a series term: k*alpha + mu must stay positive (true for the
// Mittag-Leffler family with mu > 0).
struct SeriesScan {
    double max_log = -std::numeric_limits<double>::infinity();
    int n_peak = 0;
    int n_stop = 0;   // index where terms have fallen below the floor
    bool converged = false;
};

// Scan term magnitudes log|z^k / Gamma(alpha k + mu)| (deriv_order == 0) or
// of the term-wise differentiated series (deriv_order = n) without summing.
inline SeriesScan scan_terms(double alpha, double mu, double z, int deriv_order,
                             double log_floor) {
    SeriesScan s;
    const double lz = std::log(std::abs(z));
    int below = 0;
    for (int k = 0; k < kMlMaxTerms; ++k) {
        double lt;
        if (z == 0.0 && k > 0) break;
        if (deriv_order == 0) {
            lt = k * lz - std::lgamma(alpha * k + mu);
        } else {
            lt = std::lgamma(double(k + deriv_order) + 1.0) - std::lgamma(k + 1.0) +
                 k * lz - std::lgamma(alpha * (k + deriv_order) + mu);
        }
        if (lt > s.max_log) {
            s.max_log = lt;
            s.n_peak = k;
        }
        if (k > s.n_peak && lt < log_floor) {
            if (++below >= 3) {
                s.n_stop = k;
                s.converged = true;
                return s;
            }
        } else {
            below = 0;
        }
    }
    s.n_stop = kMlMaxTerms;
    return s;
}

// Series sum in native floating point T.  Stops once three consecutive
// terms satisfy both the relative and the absolute guard.  Returns value,
// bound (truncation + rounding) and the accumulated sum of |terms|.
template <class T>
EvalResult ml_series_fp(double alpha, double mu, double z, int deriv_order,
                        double stop_abs, double unit_round) {
    const T a = static_cast<T>(alpha);
    const T m = static_cast<T>(mu);
    const T zz = static_cast<T>(z);
    T sum = 0, comp = 0, zpow = 1, sum_abs = 0;
    T fac = 1;  // Gamma(k+n+1)/Gamma(k+1), by recurrence
    if (deriv_order > 0)
        for (int j = 1; j <= deriv_order; ++j) fac *= T(j);
    T last = std::numeric_limits<T>::infinity();
    int ok = 0;
    const int cap = kMlMaxTerms;
    for (int k = 0; k < cap; ++k) {
        const T garg = a * T(k + deriv_order) + m;
        T term;
        if (garg < T(170)) {
            term = zpow * fac / gamma_fn(garg);
        } else {
            // avoid tgamma overflow; magnitude via logs
            const T lt = std::log(std::abs(zpow)) + std::log(fac) - lgamma_fn(garg);
            term = (zpow < T(0) ? T(-1) : T(1)) * std::exp(lt);
        }
        // Kahan update
        const T y = term - comp;
        const T t2 = sum + y;
        comp = (t2 - sum) - y;
        sum = t2;
        sum_abs += std::abs(term);
        last = std::abs(term);
        const bool small = last <= stop_abs && last <= T(1e-6) * std::max(std::abs(sum), T(1e-30)) + stop_abs;
        ok = small ? ok + 1 : 0;
        if (ok >= 3) break;
        zpow *= zz;
        if (deriv_order > 0) fac *= T(k + deriv_order + 1) / T(k + 1);
        if (!std::isfinite(double(zpow)) || !std::isfinite(double(fac))) {
            // overflow: this route cannot finish
            return {double(sum), std::numeric_limits<double>::infinity(), Method::series};
        }
    }
    const double trunc = 10.0 * double(last);
    const double round = double(sum_abs) * unit_round;
    return {double(sum), trunc + round, Method::series};
}

// Series sum in MPFR.  prec sized by the caller from the scanned peak.
inline EvalResult ml_series_mpfr(double alpha, double mu, double z, int deriv_order,
                                 long prec) {
    MpFloat sum(prec), zpow(1.0, prec), fac(1.0, prec), term(prec), garg(prec);
    MpFloat alpha_mp(alpha, prec), mu_mp(mu, prec), zmp(z, prec);
    if (deriv_order > 0)
        for (int j = 1; j <= deriv_order; ++j) fac.mul_ui(static_cast<unsigned long>(j));
    long max_exp = -1000000000L, last_exp = 0;
    int ok = 0;
    for (int k = 0; k < kMlMaxTerms; ++k) {
        garg.set(alpha_mp);
        garg.mul_ui(static_cast<unsigned long>(k + deriv_order));
        garg.add(mu_mp);
        term = MpFloat::gamma_of(garg);
        MpFloat num(prec);
        num.set(zpow);
        num.mul(fac);
        num.div(term);
        sum.add(num);
        last_exp = num.exponent();
        max_exp = std::max(max_exp, last_exp);
        const long sum_exp = sum.is_zero() ? 0 : sum.exponent();
        if (k > 0 && last_exp < sum_exp - (prec + 16) && last_exp < -64) {
            if (++ok >= 3) break;
        } else {
            ok = 0;
        }
        zpow.mul(zmp);
        if (deriv_order > 0) {
            fac.mul_ui(static_cast<unsigned long>(k + deriv_order + 1));
            fac.div_ui(static_cast<unsigned long>(k + 1));
        }
    }
    const double value = sum.to_double();
    double bound = std::ldexp(1.0, static_cast<int>(std::max(
                       max_exp + 8 - prec, long(-1060))));
    bound += std::abs(value) * 4.4e-16 + 1e-300;  // final double rounding
    return {value, bound, Method::series};
}

// Asymptotic expansion of E_{alpha,mu}(z) (and term-wise derivatives) for
// z -> -inf, 0 < alpha < 1:
//   E^{(n)}_{alpha,mu}(-x) ~ sum_{k>=1} (-1)^{k+1} [Gamma(k+n)/Gamma(k)]
//                            * rgamma(mu - alpha k) * x^{-k-n}.
// Factorially divergent: truncate at the smallest term; the bound is the
// first omitted term.
inline std::optional<EvalResult> ml_asymptotic(double alpha, double mu, double z,
                                               int deriv_order) {
    if (!(alpha > 0.0 && alpha < 1.0) || z >= -1.0) return std::nullopt;
    const long double x = -static_cast<long double>(z);
    long double sum = 0;
    long double best_small = std::numeric_limits<long double>::infinity();
    long double xp = 1;
    for (int j = 0; j < deriv_order + 1; ++j) xp /= x;  // x^{-1-n} start at k=1
    long double fac = 1;  // Gamma(k+n)/Gamma(k) at k=1 -> n!
    for (int j = 1; j <= deriv_order; ++j) fac *= j;
    const int kmax = 170;
    for (int k = 1; k <= kmax; ++k) {
        const long double rg = rgamma(static_cast<long double>(mu - alpha * k));
        const long double term = (k % 2 ? 1.0L : -1.0L) * fac * rg * xp;
        const long double at = std::abs(term);
        if (rg != 0.0L) {
            if (at > best_small && k > 2) {
                // past the optimal truncation point
                return EvalResult{double(sum), double(at) * 2.0 + 1e-300,
                                  Method::asymptotic};
            }
            best_small = std::min(best_small, at);
        }
        sum += term;
        xp /= x;
        fac *= static_cast<long double>(k + deriv_order) / k;
        if (at < 1e-310L && k > 2)
            return EvalResult{double(sum), double(at) + 1e-300, Method::asymptotic};
    }
    return EvalResult{double(sum), double(best_small) * 2.0, Method::asymptotic};
}

inline EvalResult ml_eval(double alpha, double mu, double z, int deriv_order,
                          double tol) {
    if (!(alpha > 0.0))
        throw std::domain_error("ml: alpha must be positive");
    if (!std::isfinite(z) || !std::isfinite(mu))
        throw std::domain_error("ml: non-finite argument");

    // closed forms
    if (deriv_order == 0 && z == 0.0)
        return {rgamma(mu), 2e-16 * std::abs(rgamma(mu)), Method::closed_form};
    if (alpha == 1.0 && mu == 1.0) {
        const double v = std::exp(z);
        return {v, 4.0 * v * 2.2e-16, Method::closed_form};
    }
    if (deriv_order == 0 && alpha == 2.0 && mu == 1.0) {
        const double v = z < 0 ? std::cos(std::sqrt(-z)) : std::cosh(std::sqrt(z));
        return {v, 4.0 * std::max(1.0, std::abs(v)) * 2.2e-16, Method::closed_form};
    }

    std::optional<EvalResult> best;
    auto consider = [&](const EvalResult& r) {
        if (!best || r.abs_err_bound < best->abs_err_bound) best = r;
    };

    // Asymptotic shortcut: predicted error ~ exp(-|z|^(1/alpha)).
    const bool asym_domain = z < 0.0 && alpha < 1.0;
    if (asym_domain) {
        const double B = std::pow(-z, 1.0 / alpha);
        if (B > std::log(10.0 / std::max(tol, 1e-300))) {
            auto a = ml_asymptotic(alpha, mu, z, deriv_order);
            if (a && a->abs_err_bound <= tol) return *a;
            if (a) consider(*a);
        }
    }

    const double stop_abs = std::max(tol * 1e-3, 1e-320);
    SeriesScan scan = scan_terms(alpha, mu, z, deriv_order,
                                 std::log(stop_abs) - 3.0);
    if (scan.converged) {
        if (scan.max_log < 690.0) {
            EvalResult r = ml_series_fp<double>(alpha, mu, z, deriv_order,
                                                stop_abs, 2e-15);
            if (r.abs_err_bound <= tol) return r;
            consider(r);
        }
        if (scan.max_log < 11300.0) {
            EvalResult r = ml_series_fp<long double>(alpha, mu, z, deriv_order,
                                                     stop_abs, 2e-18);
            if (r.abs_err_bound <= tol) return r;
            consider(r);
        }
    }
    if (asym_domain) {
        auto a = ml_asymptotic(alpha, mu, z, deriv_order);
        if (a && a->abs_err_bound <= tol) return *a;
        if (a) consider(*a);
    }
    // MPFR route
    if (scan.converged || scan.max_log < 1e8) {
        const long need = static_cast<long>(scan.max_log / 0.6931471805599453) + 128;
        if (need <= kMlPrecCap) {
            EvalResult r = ml_series_mpfr(alpha, mu, z, deriv_order,
                                          std::max(need, 128L));
            if (r.abs_err_bound <= tol) return r;
            consider(r);
        }
    }
    if (best) {
        throw ToleranceError(
            "ml: requested tolerance " + std::to_string(tol) +
                " unachievable; best bound " + std::to_string(best->abs_err_bound),
            *best);
    }
    throw CancellationError(
        "ml: series cancellation exceeds the supported precision cap; "
        "use the Laplace-inversion route (counting_prob_by_inversion)");
}

}  // namespace detail

/// E_{alpha,mu}(z) with an absolute error bound <= tol (default 1e-12).
/// Throws ToleranceError (carrying the best estimate) if the tolerance is
/// unachievable, std::domain_error for alpha <= 0.
inline EvalResult ml(double alpha, double mu, double z, double tol = 1e-12) {
    return detail::ml_eval(alpha, mu, z, 0, tol);
}

/// n-th derivative E_alpha^(n)(z) for z <= 0, alpha in (0,1], by the
/// term-wise differentiated series.  n = 0 agrees with ml(alpha, 1, z).
/// Throws CancellationError when the required precision exceeds the cap or
/// n exceeds the supported order; callers then use the inversion route.
inline EvalResult ml_deriv(int n, double alpha, double z, double tol = 1e-12) {
    if (n < 0) throw std::domain_error("ml_deriv: n must be >= 0");
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::domain_error("ml_deriv: alpha must lie in (0,1]");
    if (z > 0.0) throw std::domain_error("ml_deriv: requires z <= 0");
    if (n > detail::kMlDerivMaxOrder)
        throw CancellationError(
            "ml_deriv: derivative order beyond supported range; "
            "use the Laplace-inversion route (counting_prob_by_inversion)");
    if (alpha == 1.0) {
        const double v = std::exp(z);
        return {v, 4.0 * v * 2.2e-16, Method::closed_form};
    }
    return detail::ml_eval(alpha, 1.0, z, n, tol);
}

}  // namespace fracren
