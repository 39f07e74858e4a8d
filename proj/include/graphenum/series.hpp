#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphenum/numbers.hpp"

namespace graphenum {

class SeriesError : public std::runtime_error {
public:
    explicit SeriesError(const std::string& what) : std::runtime_error(what) {}
};

// Truncated power series in x whose coefficients are polynomials in y over
// exact rationals. Three coefficient modes share one implementation:
//
//   ycap == kExactY   coefficients are honest polynomials in y,
//   ycap == 0         y is specialized to 1 (univariate series),
//   ycap == k > 0     y = 1 + eps with coefficients kept mod eps^{k+1},
//                     so slot q of a coefficient holds the q-th Taylor
//                     coefficient of the x^n coefficient around y = 1.
//
// Internally the x^n coefficient is stored as an integer polynomial P[n]
// with a single positive denominator shared by the whole series:
//
//   [x^n] S  =  P[n](y) / (n! * den)
//
// The n! scaling turns series multiplication into binomial convolution of
// integer polynomials, which keeps gcd work out of the inner loops while
// every externally visible value stays an exact rational.
class Series {
public:
    static constexpr int kExactY = -1;

    Series() : order_(0), ycap_(kExactY), den_(1), p_(1) {}
    Series(int order, int ycap);

    static Series zero(int order, int ycap) { return Series(order, ycap); }
    static Series constant(int order, int ycap, const Rational& c);
    // The series "x".
    static Series identity_x(int order, int ycap);
    // The edge marker: y itself in exact mode, 1 + eps (truncated) otherwise.
    static Series edge_marker(int order, int ycap);

    int order() const { return order_; }
    int ycap() const { return ycap_; }
    bool exact_y() const { return ycap_ == kExactY; }
    bool is_zero() const;

    // Exact coefficient extraction.
    Rational coeff(int n, unsigned q) const;
    Rational coeff_at_y0(int n) const { return coeff(n, 0); }
    YPolynomial coeff_poly(int n) const;
    int ydegree(int n) const;  // -1 for a zero coefficient

    // n! * [x^n y^q]; throws unless the scaled value is an exact integer.
    BigInt count(int n, unsigned q) const;
    // n! * [x^n] with y = 1 (exact mode sums the polynomial; cap mode reads
    // the eps^0 slot, which is the value at y = 1).
    BigInt count_at_y1(int n) const;

    void set_coeff(int n, unsigned q, const Rational& value);
    void set_coeff_poly(int n, const YPolynomial& poly);

    Series truncated(int new_order) const;

    // Enforces the family degree bound: deg_y [x^n] <= bound(n). Exact mode
    // only; a violation signals a pipeline bug.
    void assert_ydegree(const std::function<int(int)>& bound, const std::string& label) const;

    bool operator==(const Series& other) const;
    bool operator!=(const Series& other) const { return !(*this == other); }
    // Largest m <= min(orders) such that all coefficients 0..m agree, or -1.
    friend int agreement_order(const Series& a, const Series& b);

    friend Series operator+(const Series& a, const Series& b);
    friend Series operator-(const Series& a, const Series& b);
    friend Series operator-(const Series& a);
    friend Series operator*(const Series& a, const Series& b);
    friend Series mul_to_order(const Series& a, const Series& b, int out_order);
    friend Series operator*(const Series& a, const Rational& c);
    friend Series operator*(const Rational& c, const Series& a) { return a * c; }

    // Multiplicative inverse to the truncation order; the constant term must
    // be invertible in the coefficient ring.
    friend Series inverse(const Series& b);
    friend Series inverse_to_order(const Series& b, int out_order);
    friend Series divide(const Series& a, const Series& b);

    // Multiply / divide every coefficient by a fixed polynomial in y.
    // Exact mode divides exactly (throws if any remainder survives); cap
    // mode multiplies by the truncated inverse.
    friend Series scale_by_ypoly(const Series& a, const std::vector<long>& poly);
    friend Series divide_by_ypoly(const Series& a, const std::vector<long>& poly);

    friend Series exp_series(const Series& a);
    friend Series log_series(const Series& a);
    friend Series sqrt_series(const Series& a);

    friend Series derive_x(const Series& a);
    friend Series integrate_x(const Series& a);
    friend Series derive_y(const Series& a);
    friend Series shift_up_x(const Series& a);    // multiply by x
    friend Series shift_down_x(const Series& a);  // divide by x; [x^0] must vanish

    friend Series compose(const Series& outer, const Series& inner);

    // Evaluate y at an exact rational point (exact mode only), producing a
    // univariate (ycap 0) series.
    friend Series evaluate_y(const Series& a, const Rational& y0);

    std::string to_string(int max_order = -1) const;

private:
    using IPoly = std::vector<BigInt>;  // dense in y, trailing zeros trimmed

    int order_;
    int ycap_;
    BigInt den_;
    std::vector<IPoly> p_;

    void normalize();
    void trim_polys();
    void rescale_den(const BigInt& new_den);  // new_den must be a multiple of den_
    void check_same_shape(const Series& other, const char* op) const;
    static void poly_trim(IPoly& p);
    static bool poly_zero(const IPoly& p) { return p.empty(); }

    friend class SeriesOps;
};

// Fixed-point solver: iterates update() from seed until two successive
// iterates agree to the full truncation order. update must gain at least one
// order of agreement per application (contraction in the x-adic metric);
// otherwise a SeriesError reports divergence.
Series solve_fixed_point(const std::function<Series(const Series&)>& update, const Series& seed,
                         int order);

}  // namespace graphenum
