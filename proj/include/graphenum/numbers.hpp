#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace graphenum {

// Exact rational; gmp keeps it reduced with a positive denominator once
// canonicalized. All exact arithmetic in the library bottoms out here.
using Rational = mpq_class;
using BigInt = mpz_class;

inline Rational make_rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(const BigInt& num, const BigInt& den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline BigInt factorial(unsigned long n) {
    BigInt f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

inline BigInt binomial(unsigned long n, unsigned long k) {
    BigInt b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

inline BigInt pow_int(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

// Running row of Pascal's triangle; advance() moves from row n to n+1.
// Avoids a global binomial table in the convolution kernels.
class BinomRow {
public:
    BinomRow() : n_(0), row_(1, BigInt(1)) {}

    void advance() {
        row_.push_back(1);
        for (std::size_t k = row_.size() - 2; k >= 1; --k) row_[k] += row_[k - 1];
        ++n_;
    }

    void advance_to(int n) {
        while (n_ < n) advance();
    }

    int n() const { return n_; }
    const BigInt& at(int k) const { return row_[static_cast<std::size_t>(k)]; }

private:
    int n_;
    std::vector<BigInt> row_;
};

// Sparse polynomial in y over exact rationals, exponent -> coefficient.
// Zero coefficients are never stored.
using YPolynomial = std::map<unsigned, Rational>;

}  // namespace graphenum
