#pragma once

// Wright function W_{lambda,mu}(z) (first kind lambda >= 0, second kind
// -1 < lambda < 0) and the M-Wright function M_nu(x) = W_{-nu,1-nu}(-x).
//
// M_nu is summed through the equivalent form
//   M_nu(x) = (1/pi) sum_{n>=1} (-x)^{n-1}/(n-1)! Gamma(nu n) sin(pi nu n),
// which keeps every gamma argument positive, and switches to the
// saddle-point approximation once the decay exponent makes the value
// negligible at double scale.  The same double / long double / MPFR ladder
// as the Mittag-Leffler series handles cancellation.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "fracren/core.hpp"
#include "fracren/special/gamma.hpp"
#include "fracren/special/mpfloat.hpp"

namespace fracren {
namespace detail {

inline constexpr int kWrightMaxTerms = 200000;
inline constexpr long kWrightPrecCap = 16384;

struct WrightScan {
    double max_log = -std::numeric_limits<double>::infinity();
    int n_stop = 0;
    bool converged = false;
};

inline WrightScan scan_wright(double lambda, double mu, double z, double log_floor) {
    WrightScan s;
    const double lz = z == 0.0 ? -std::numeric_limits<double>::infinity()
                               : std::log(std::abs(z));
    int below = 0, peak = 0;
    for (int n = 0; n < kWrightMaxTerms; ++n) {
        const auto [lrg, sgn] = log_abs_rgamma(lambda * n + mu);
        double lt = (n == 0 ? 0.0 : n * lz) - std::lgamma(n + 1.0);
        lt += (sgn == 0 ? -1e30 : lrg);
        if (lt > s.max_log) {
            s.max_log = lt;
            peak = n;
        }
        if (n > peak && lt < log_floor) {
            if (++below >= 4) {
                s.n_stop = n;
                s.converged = true;
                return s;
            }
        } else {
            below = 0;
        }
    }
    s.n_stop = kWrightMaxTerms;
    return s;
}

template <class T>
EvalResult wright_series_fp(double lambda, double mu, double z, double stop_abs,
                            double unit_round) {
    const T zz = static_cast<T>(z);
    T sum = 0, comp = 0, zpow = 1, fact = 1, sum_abs = 0;
    T last = std::numeric_limits<T>::infinity();
    int ok = 0;
    for (int n = 0; n < kWrightMaxTerms; ++n) {
        const T arg = static_cast<T>(lambda) * T(n) + static_cast<T>(mu);
        T term;
        if (std::abs(double(arg)) < 160.0) {
            term = zpow / fact * rgamma(arg);
        } else {
            const auto [lrg, sgn] = log_abs_rgamma(arg);
            if (sgn == 0) {
                term = 0;
            } else {
                const T lt = std::log(std::abs(zpow)) - std::log(fact) + lrg;
                term = T(sgn) * (zpow < T(0) ? T(-1) : T(1)) * std::exp(lt);
            }
        }
        const T y = term - comp;
        const T t2 = sum + y;
        comp = (t2 - sum) - y;
        sum = t2;
        sum_abs += std::abs(term);
        last = std::abs(term);
        ok = (last <= stop_abs) ? ok + 1 : 0;
        if (ok >= 4) break;
        zpow *= zz;
        fact *= T(n + 1);
        if (!std::isfinite(double(sum_abs))) {
            return {double(sum), std::numeric_limits<double>::infinity(), Method::series};
        }
        if (fact > std::numeric_limits<T>::max() / T(1e10)) {
            // renormalize z^n/n! pair to dodge overflow
            zpow /= fact;
            fact = 1;
        }
    }
    const double trunc = 10.0 * double(last);
    return {double(sum), trunc + double(sum_abs) * unit_round, Method::series};
}

inline EvalResult wright_series_mpfr(double lambda, double mu, double z, long prec) {
    MpFloat sum(prec), zpow(1.0, prec), fact(1.0, prec), arg(prec);
    MpFloat lam_mp(lambda, prec), mu_mp(mu, prec), zmp(z, prec);
    long max_exp = -1000000000L;
    int ok = 0;
    for (int n = 0; n < kWrightMaxTerms; ++n) {
        arg.set(lam_mp);
        arg.mul_ui(static_cast<unsigned long>(n));
        arg.add(mu_mp);
        bool pole = arg.is_integer() && arg.sign() <= 0;
        long texp = -1000000000L;
        if (!pole) {
            MpFloat g = MpFloat::gamma_of(arg);
            MpFloat term(prec);
            term.set(zpow);
            term.div(fact);
            term.div(g);
            sum.add(term);
            texp = term.exponent();
            max_exp = std::max(max_exp, texp);
        }
        const long sum_exp = sum.is_zero() ? 0 : sum.exponent();
        if (n > 2 && texp < sum_exp - (prec + 16) && texp < -64) {
            if (++ok >= 4) break;
        } else {
            ok = 0;
        }
        zpow.mul(zmp);
        fact.mul_ui(static_cast<unsigned long>(n + 1));
    }
    const double value = sum.to_double();
    double bound = std::ldexp(1.0, static_cast<int>(std::max(max_exp + 8 - prec,
                                                             long(-1060))));
    bound += std::abs(value) * 4.4e-16 + 1e-300;
    return {value, bound, Method::series};
}

inline EvalResult wright_eval(double lambda, double mu, double z, double tol) {
    if (!(lambda > -1.0))
        throw std::domain_error("wright: lambda must exceed -1");
    if (lambda == 0.0) {
        const double v = std::exp(z) * rgamma(mu);
        return {v, 8.0 * std::abs(v) * 2.2e-16 + 1e-300, Method::closed_form};
    }
    const double stop_abs = std::max(tol * 1e-3, 1e-320);
    WrightScan scan = scan_wright(lambda, mu, z, std::log(stop_abs) - 3.0);
    std::optional<EvalResult> best;
    auto consider = [&](const EvalResult& r) {
        if (!best || r.abs_err_bound < best->abs_err_bound) best = r;
    };
    if (scan.converged) {
        if (scan.max_log < 690.0) {
            EvalResult r = wright_series_fp<double>(lambda, mu, z, stop_abs, 4e-15);
            if (r.abs_err_bound <= tol) return r;
            consider(r);
        }
        if (scan.max_log < 11300.0) {
            EvalResult r = wright_series_fp<long double>(lambda, mu, z, stop_abs, 4e-18);
            if (r.abs_err_bound <= tol) return r;
            consider(r);
        }
        const long need = static_cast<long>(scan.max_log / 0.6931471805599453) + 128;
        if (need <= kWrightPrecCap) {
            EvalResult r = wright_series_mpfr(lambda, mu, z, std::max(need, 128L));
            if (r.abs_err_bound <= tol) return r;
            consider(r);
        }
    }
    if (best)
        throw ToleranceError("wright: requested tolerance unachievable", *best);
    throw CancellationError(
        "wright: series does not converge at the supported working precision");
}

// decay exponent of the M-Wright saddle-point form
inline double m_wright_saddle_exponent(double nu, double x) {
    return (1.0 - nu) / nu * std::pow(nu * x, 1.0 / (1.0 - nu));
}

inline EvalResult m_wright_saddle(double nu, double x) {
    const double e = m_wright_saddle_exponent(nu, x);
    const double a = 1.0 / std::sqrt(2.0 * kPi * (1.0 - nu));
    const double p = (nu - 0.5) / (1.0 - nu);
    const double v = a * std::pow(nu * x, p) * std::exp(-e);
    // leading saddle order only: generous relative margin, negligible at
    // the scales where this branch is taken
    return {v, 0.5 * v + 1e-300, Method::asymptotic};
}

template <class T>
EvalResult m_wright_series_fp(double nu, double x, double stop_abs,
                              double unit_round) {
    const T xx = static_cast<T>(x);
    T sum = 0, comp = 0, xpow = 1, fact = 1, sum_abs = 0;
    T last = std::numeric_limits<T>::infinity();
    int ok = 0;
    for (int n = 1; n < kWrightMaxTerms; ++n) {
        const T garg = static_cast<T>(nu) * T(n);
        T g;
        bool logroute = double(garg) >= 160.0;
        const T s = sinpi(static_cast<T>(nu) * T(n));
        T term;
        if (!logroute) {
            g = gamma_fn(garg);
            term = xpow / fact * g * s;
        } else {
            const T lt = std::log(std::abs(xpow)) - std::log(fact) + lgamma_fn(garg);
            term = (xpow < T(0) ? T(-1) : T(1)) * std::exp(lt) * s;
        }
        const T y = term - comp;
        const T t2 = sum + y;
        comp = (t2 - sum) - y;
        sum = t2;
        sum_abs += std::abs(term);
        last = std::abs(term);
        ok = (last <= stop_abs) ? ok + 1 : 0;
        if (ok >= 4) break;
        xpow *= -xx;
        fact *= T(n);
        if (fact > std::numeric_limits<T>::max() / T(1e10)) {
            xpow /= fact;
            fact = 1;
        }
    }
    const double pi_inv = 1.0 / kPi;
    return {double(sum) * pi_inv,
            (10.0 * double(last) + double(sum_abs) * unit_round) * pi_inv,
            Method::series};
}

inline EvalResult m_wright_series_mpfr(double nu, double x, long prec) {
    MpFloat sum(prec), xpow(1.0, prec), fact(1.0, prec), arg(prec);
    MpFloat nu_mp(nu, prec), xneg(-x, prec);
    MpFloat pi_mp = MpFloat::pi(prec);
    long max_exp = -1000000000L;
    int ok = 0;
    for (int n = 1; n < kWrightMaxTerms; ++n) {
        arg.set(nu_mp);
        arg.mul_ui(static_cast<unsigned long>(n));
        MpFloat g = MpFloat::gamma_of(arg);
        MpFloat sarg(prec);
        sarg.set(arg);
        sarg.mul(pi_mp);
        MpFloat s = MpFloat::sin_of(sarg);
        MpFloat term(prec);
        term.set(xpow);
        term.div(fact);
        term.mul(g);
        term.mul(s);
        sum.add(term);
        const long texp = term.exponent();
        max_exp = std::max(max_exp, texp);
        const long sum_exp = sum.is_zero() ? 0 : sum.exponent();
        if (n > 2 && texp < sum_exp - (prec + 16) && texp < -64) {
            if (++ok >= 4) break;
        } else {
            ok = 0;
        }
        xpow.mul(xneg);
        fact.mul_ui(static_cast<unsigned long>(n));
    }
    MpFloat v(mpfr_get_prec(sum.raw()));
    v.set(sum);
    v.div(pi_mp);
    const double value = v.to_double();
    double bound = std::ldexp(1.0, static_cast<int>(std::max(max_exp + 8 - prec,
                                                             long(-1060))));
    bound += std::abs(value) * 4.4e-16 + 1e-300;
    return {value, bound, Method::series};
}

}  // namespace detail

/// W_{lambda,mu}(z).  First kind lambda >= 0, second kind -1 < lambda < 0
/// (the library only exercises z <= 0 there).
inline EvalResult wright(double lambda, double mu, double z, double tol = 1e-12) {
    return detail::wright_eval(lambda, mu, z, tol);
}

/// M_nu(x) = W_{-nu,1-nu}(-x) for 0 < nu < 1, x >= 0.  Nonnegative density
/// kernel of both subordinator directions; unit integral over [0, inf).
inline EvalResult m_wright(double nu, double x, double tol = 1e-12) {
    if (!(nu > 0.0 && nu < 1.0))
        throw std::domain_error("m_wright: nu must lie in (0,1)");
    if (x < 0.0) throw std::domain_error("m_wright: x must be >= 0");
    if (x == 0.0) {
        const double v = rgamma(1.0 - nu);
        return {v, 4.0 * v * 2.2e-16, Method::closed_form};
    }
    if (nu == 0.5) {
        const double v = std::exp(-0.25 * x * x) / std::sqrt(kPi);
        return {v, 8.0 * v * 2.2e-16 + 1e-300, Method::closed_form};
    }
    if (detail::m_wright_saddle_exponent(nu, x) > 55.0)
        return detail::m_wright_saddle(nu, x);

    const double stop_abs = std::max(tol * 1e-3, 1e-320);
    detail::WrightScan scan{};  // scan the sin-form series
    {
        const double lx = std::log(x);
        int below = 0, peak = 0;
        for (int n = 1; n < detail::kWrightMaxTerms; ++n) {
            const double lt = (n - 1) * lx - std::lgamma(double(n)) +
                              std::lgamma(nu * n);
            if (lt > scan.max_log) {
                scan.max_log = lt;
                peak = n;
            }
            if (n > peak && lt < std::log(stop_abs) - 3.0) {
                if (++below >= 4) {
                    scan.converged = true;
                    break;
                }
            } else {
                below = 0;
            }
        }
    }
    std::optional<EvalResult> best;
    auto consider = [&](const EvalResult& r) {
        if (!best || r.abs_err_bound < best->abs_err_bound) best = r;
    };
    if (scan.converged) {
        if (scan.max_log < 690.0) {
            EvalResult r = detail::m_wright_series_fp<double>(nu, x, stop_abs, 4e-15);
            if (r.abs_err_bound <= tol) return r;
            consider(r);
        }
        if (scan.max_log < 11300.0) {
            EvalResult r =
                detail::m_wright_series_fp<long double>(nu, x, stop_abs, 4e-18);
            if (r.abs_err_bound <= tol) return r;
            consider(r);
        }
        const long need = static_cast<long>(scan.max_log / 0.6931471805599453) + 128;
        if (need <= detail::kWrightPrecCap) {
            EvalResult r = detail::m_wright_series_mpfr(nu, x, std::max(need, 128L));
            if (r.abs_err_bound <= tol) return r;
            consider(r);
        }
    }
    if (best) throw ToleranceError("m_wright: tolerance unachievable", *best);
    throw CancellationError("m_wright: series does not converge at working precision");
}

/// CDF of M_nu: integral of M_nu over [0, y], via the identity
/// int_0^y M_nu = 1 - W_{-nu,1}(-y).
inline EvalResult m_wright_cdf(double nu, double y, double tol = 1e-12) {
    if (!(nu > 0.0 && nu < 1.0))
        throw std::domain_error("m_wright_cdf: nu must lie in (0,1)");
    if (y < 0.0) throw std::domain_error("m_wright_cdf: y must be >= 0");
    if (y == 0.0) return {0.0, 0.0, Method::closed_form};
    if (nu == 0.5) {
        const double v = erf_fn(0.5 * y);
        return {v, 8.0 * std::abs(v) * 2.2e-16 + 1e-300, Method::closed_form};
    }
    // deep lower tail: W -> 0 superexponentially
    if (detail::m_wright_saddle_exponent(nu, y) > 55.0)
        return {1.0, 1e-22, Method::asymptotic};
    EvalResult w = wright(-nu, 1.0, -y, tol);
    return {1.0 - w.value, w.abs_err_bound + 2.2e-16, w.method};
}

}  // namespace fracren
