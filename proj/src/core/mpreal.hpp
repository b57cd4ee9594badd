#ifndef RELUANGLE_MPREAL_HPP
#define RELUANGLE_MPREAL_HPP

// Minimal RAII wrapper around mpfr_t with just the operations the templated
// J-function evaluators use. 384 bits leaves ~90 digits of headroom over the
// worst cancellation on the acceptance grid.

#include <mpfr.h>

#include <cstdint>
#include <utility>

namespace reluangle::hp {

inline constexpr mpfr_prec_t kPrecisionBits = 384;

class MpReal {
  public:
    MpReal() { mpfr_init2(v_, kPrecisionBits); mpfr_set_zero(v_, 1); }
    MpReal(int x) : MpReal() { mpfr_set_si(v_, x, MPFR_RNDN); }  // NOLINT(implicit)
    MpReal(std::int64_t x) : MpReal() { mpfr_set_sj(v_, x, MPFR_RNDN); }  // NOLINT(implicit)
    MpReal(double x) : MpReal() { mpfr_set_d(v_, x, MPFR_RNDN); }  // NOLINT(implicit)
    MpReal(const MpReal& o) : MpReal() { mpfr_set(v_, o.v_, MPFR_RNDN); }
    MpReal(MpReal&& o) noexcept {
        mpfr_init2(v_, kPrecisionBits);
        mpfr_swap(v_, o.v_);
    }
    MpReal& operator=(const MpReal& o) {
        if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
        return *this;
    }
    MpReal& operator=(MpReal&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~MpReal() { mpfr_clear(v_); }

    MpReal& operator+=(const MpReal& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    MpReal& operator-=(const MpReal& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    MpReal& operator*=(const MpReal& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    MpReal& operator/=(const MpReal& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

    friend MpReal operator+(MpReal a, const MpReal& b) { return a += b; }
    friend MpReal operator-(MpReal a, const MpReal& b) { return a -= b; }
    friend MpReal operator*(MpReal a, const MpReal& b) { return a *= b; }
    friend MpReal operator/(MpReal a, const MpReal& b) { return a /= b; }
    friend MpReal operator-(const MpReal& a) {
        MpReal r;
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    static MpReal pi() {
        MpReal r;
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }
    static MpReal sin(const MpReal& x) {
        MpReal r;
        mpfr_sin(r.v_, x.v_, MPFR_RNDN);
        return r;
    }
    static MpReal cos(const MpReal& x) {
        MpReal r;
        mpfr_cos(r.v_, x.v_, MPFR_RNDN);
        return r;
    }
    static MpReal sqrt(const MpReal& x) {
        MpReal r;
        mpfr_sqrt(r.v_, x.v_, MPFR_RNDN);
        return r;
    }
    static MpReal log(const MpReal& x) {
        MpReal r;
        mpfr_log(r.v_, x.v_, MPFR_RNDN);
        return r;
    }
    static MpReal abs(const MpReal& x) {
        MpReal r;
        mpfr_abs(r.v_, x.v_, MPFR_RNDN);
        return r;
    }
    static MpReal max(const MpReal& a, const MpReal& b) {
        MpReal r;
        mpfr_max(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }

  private:
    mpfr_t v_;
};

}  // namespace reluangle::hp

#endif
