#pragma once

#include <mpfr.h>

#include <string>

#include "graphenum/numbers.hpp"

namespace graphenum {

// Arbitrary-precision binary float (MPFR, round-to-nearest). Precision is
// carried per value: binary operations work at the larger operand precision,
// assignment adopts the source precision. No ambient precision state.
class BigFloat {
public:
    BigFloat() { mpfr_init2(v_, 64); mpfr_set_nan(v_); }
    explicit BigFloat(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_nan(v_); }
    BigFloat(const BigFloat& o) { mpfr_init2(v_, o.prec()); mpfr_set(v_, o.v_, MPFR_RNDN); }
    BigFloat(BigFloat&& o) noexcept { mpfr_init2(v_, 64); mpfr_swap(v_, o.v_); }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, o.prec());
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    static BigFloat from_long(long v, mpfr_prec_t prec) {
        BigFloat r(prec);
        mpfr_set_si(r.v_, v, MPFR_RNDN);
        return r;
    }
    static BigFloat from_rational(const Rational& q, mpfr_prec_t prec) {
        BigFloat r(prec);
        mpfr_set_q(r.v_, q.get_mpq_t(), MPFR_RNDN);
        return r;
    }
    static BigFloat from_bigint(const BigInt& z, mpfr_prec_t prec) {
        BigFloat r(prec);
        mpfr_set_z(r.v_, z.get_mpz_t(), MPFR_RNDN);
        return r;
    }
    static BigFloat from_string(const std::string& s, mpfr_prec_t prec) {
        BigFloat r(prec);
        mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN);
        return r;
    }
    static BigFloat pi(mpfr_prec_t prec) {
        BigFloat r(prec);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }
    // 2^e, handy for tolerances
    static BigFloat pow2(long e, mpfr_prec_t prec) {
        BigFloat r(prec);
        mpfr_set_si_2exp(r.v_, 1, e, MPFR_RNDN);
        return r;
    }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    int sign() const { return mpfr_sgn(v_); }
    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

    // Decimal string with the given number of significant digits; plain
    // positional notation for moderate exponents, scientific otherwise.
    std::string to_decimal(int sig_digits) const;

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
        BigFloat r(std::max(a.prec(), b.prec()));
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
        BigFloat r(std::max(a.prec(), b.prec()));
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
        BigFloat r(std::max(a.prec(), b.prec()));
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
        BigFloat r(std::max(a.prec(), b.prec()));
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator-(const BigFloat& a) {
        BigFloat r(a.prec());
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    BigFloat& operator+=(const BigFloat& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator-=(const BigFloat& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator*=(const BigFloat& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }

    friend BigFloat operator*(const BigFloat& a, long b) {
        BigFloat r(a.prec());
        mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator*(long a, const BigFloat& b) { return b * a; }
    friend BigFloat operator/(const BigFloat& a, long b) {
        BigFloat r(a.prec());
        mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator+(const BigFloat& a, long b) {
        BigFloat r(a.prec());
        mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator+(long a, const BigFloat& b) { return b + a; }
    friend BigFloat operator-(const BigFloat& a, long b) { return a + (-b); }
    friend BigFloat operator-(long a, const BigFloat& b) { return -(b - a); }

    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) == 0; }

    friend BigFloat sqrt(const BigFloat& a) {
        BigFloat r(a.prec());
        mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat exp(const BigFloat& a) {
        BigFloat r(a.prec());
        mpfr_exp(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat log(const BigFloat& a) {
        BigFloat r(a.prec());
        mpfr_log(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat abs(const BigFloat& a) {
        BigFloat r(a.prec());
        mpfr_abs(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat pow_si(const BigFloat& a, long e) {
        BigFloat r(a.prec());
        mpfr_pow_si(r.v_, a.v_, e, MPFR_RNDN);
        return r;
    }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

private:
    mpfr_t v_;
};

// Number of agreeing leading significant decimal digits of two values
// (0 when the signs or decimal exponents differ).
int agreed_decimal_digits(const BigFloat& a, const BigFloat& b, int max_digits = 60);

}  // namespace graphenum
