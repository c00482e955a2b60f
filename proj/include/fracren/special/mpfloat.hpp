#pragma once

// Minimal RAII wrapper around MPFR, used only inside series summation where
// alternating terms overwhelm double precision.  Not a general number type:
// just the handful of operations the summation loops need.

#include <mpfr.h>

#include <stdexcept>
#include <utility>

namespace fracren::detail {

class MpFloat {
public:
    explicit MpFloat(mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    MpFloat(double x, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_d(v_, x, MPFR_RNDN);
    }
    MpFloat(const MpFloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    MpFloat(MpFloat&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    MpFloat& operator=(MpFloat o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~MpFloat() { mpfr_clear(v_); }

    mpfr_ptr raw() noexcept { return v_; }
    mpfr_srcptr raw() const noexcept { return v_; }

    void set(double x) { mpfr_set_d(v_, x, MPFR_RNDN); }
    void set(const MpFloat& o) { mpfr_set(v_, o.v_, MPFR_RNDN); }

    void add(const MpFloat& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); }
    void sub(const MpFloat& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); }
    void mul(const MpFloat& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); }
    void mul_d(double x) { mpfr_mul_d(v_, v_, x, MPFR_RNDN); }
    void mul_ui(unsigned long n) { mpfr_mul_ui(v_, v_, n, MPFR_RNDN); }
    void div(const MpFloat& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); }
    void div_ui(unsigned long n) { mpfr_div_ui(v_, v_, n, MPFR_RNDN); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    // floor(log2 |x|); very negative for zero
    long exponent() const { return is_zero() ? -1000000000L : mpfr_get_exp(v_); }
    int sign() const { return mpfr_sgn(v_); }

    static MpFloat gamma_of(const MpFloat& x) {
        MpFloat g(mpfr_get_prec(x.v_));
        mpfr_gamma(g.v_, x.v_, MPFR_RNDN);
        return g;
    }
    static MpFloat sin_of(const MpFloat& x) {
        MpFloat s(mpfr_get_prec(x.v_));
        mpfr_sin(s.v_, x.v_, MPFR_RNDN);
        return s;
    }
    static MpFloat pi(mpfr_prec_t prec) {
        MpFloat p(prec);
        mpfr_const_pi(p.v_, MPFR_RNDN);
        return p;
    }
    bool is_integer() const { return mpfr_integer_p(v_) != 0; }

private:
    mpfr_t v_;
};

}  // namespace fracren::detail
