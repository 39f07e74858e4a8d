#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "graphenum/bigfloat.hpp"

namespace graphenum {

// Univariate truncated Taylor jet: c[k] is the k-th Taylor coefficient, so
// f^{(k)} = k! c[k]. Small fixed lengths (order <= 4) drive every derivative
// computation in the singularity solver.
class TJet {
public:
    TJet() = default;
    TJet(int order, mpfr_prec_t prec) : c_(static_cast<std::size_t>(order) + 1, BigFloat::from_long(0, prec)) {}

    static TJet constant(const BigFloat& v, int order) {
        TJet j(order, v.prec());
        j.c_[0] = v;
        return j;
    }
    static TJet variable(const BigFloat& v, int order) {
        TJet j = constant(v, order);
        if (order >= 1) j.c_[1] = BigFloat::from_long(1, v.prec());
        return j;
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const BigFloat& operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
    BigFloat& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }
    const BigFloat& value() const { return c_[0]; }
    // k-th derivative: k! * c[k]
    BigFloat derivative(int k) const {
        BigFloat f = BigFloat::from_long(1, c_[0].prec());
        for (int i = 2; i <= k; ++i) f = f * i;
        return c_[static_cast<std::size_t>(k)] * f;
    }

    friend TJet operator+(const TJet& a, const TJet& b) {
        TJet r = a;
        for (int k = 0; k <= r.order(); ++k) r[k] += b[k];
        return r;
    }
    friend TJet operator-(const TJet& a, const TJet& b) {
        TJet r = a;
        for (int k = 0; k <= r.order(); ++k) r[k] -= b[k];
        return r;
    }
    friend TJet operator-(const TJet& a) {
        TJet r = a;
        for (int k = 0; k <= r.order(); ++k) r[k] = -r[k];
        return r;
    }
    friend TJet operator*(const TJet& a, const TJet& b) {
        int K = a.order();
        TJet r(K, a[0].prec());
        for (int i = 0; i <= K; ++i)
            for (int j = 0; i + j <= K; ++j) r[i + j] += a[i] * b[j];
        return r;
    }
    friend TJet operator*(const TJet& a, const BigFloat& s) {
        TJet r = a;
        for (int k = 0; k <= r.order(); ++k) r[k] *= s;
        return r;
    }
    friend TJet operator*(const TJet& a, long s) {
        TJet r = a;
        for (int k = 0; k <= r.order(); ++k) r[k] = r[k] * s;
        return r;
    }
    friend TJet operator+(const TJet& a, long s) {
        TJet r = a;
        r[0] = r[0] + s;
        return r;
    }
    friend TJet operator-(const TJet& a, long s) { return a + (-s); }
    friend TJet operator-(long s, const TJet& a) { return -(a - s); }
    friend TJet operator+(const TJet& a, const BigFloat& s) {
        TJet r = a;
        r[0] += s;
        return r;
    }
    friend TJet operator-(const TJet& a, const BigFloat& s) {
        TJet r = a;
        r[0] -= s;
        return r;
    }
    friend TJet operator/(const TJet& a, const BigFloat& s) {
        TJet r = a;
        for (int k = 0; k <= r.order(); ++k) r[k] = r[k] / s;
        return r;
    }

    friend TJet inverse(const TJet& a) {
        int K = a.order();
        TJet w(K, a[0].prec());
        BigFloat inv0 = BigFloat::from_long(1, a[0].prec()) / a[0];
        w[0] = inv0;
        for (int n = 1; n <= K; ++n) {
            BigFloat s = BigFloat::from_long(0, a[0].prec());
            for (int k = 1; k <= n; ++k) s += a[k] * w[n - k];
            w[n] = -s * inv0;
        }
        return w;
    }
    friend TJet operator/(const TJet& a, const TJet& b) { return a * inverse(b); }

    friend TJet exp(const TJet& a) {
        int K = a.order();
        TJet e(K, a[0].prec());
        e[0] = exp(a[0]);
        for (int n = 1; n <= K; ++n) {
            BigFloat s = BigFloat::from_long(0, a[0].prec());
            for (int k = 1; k <= n; ++k) s += a[k] * e[n - k] * k;
            e[n] = s / n;
        }
        return e;
    }
    friend TJet log(const TJet& a) {
        int K = a.order();
        TJet l(K, a[0].prec());
        l[0] = log(a[0]);
        for (int n = 1; n <= K; ++n) {
            BigFloat s = a[n] * n;
            for (int j = 1; j < n; ++j) s -= a[j] * l[n - j] * (n - j);
            l[n] = s / (a[0] * n);
        }
        return l;
    }
    friend TJet sqrt(const TJet& a) {
        int K = a.order();
        TJet s(K, a[0].prec());
        s[0] = sqrt(a[0]);
        BigFloat two_s0 = s[0] * 2;
        for (int n = 1; n <= K; ++n) {
            BigFloat acc = a[n];
            for (int k = 1; k < n; ++k) acc -= s[k] * s[n - k];
            s[n] = acc / two_s0;
        }
        return s;
    }
    friend TJet pow_int(const TJet& a, int e) {
        TJet r = constant(BigFloat::from_long(1, a[0].prec()), a.order());
        for (int i = 0; i < e; ++i) r = r * a;
        return r;
    }

private:
    std::vector<BigFloat> c_;
};

// Second-order jet in M variables: value, gradient and (symmetric) Hessian.
template <int M>
struct Jet2 {
    BigFloat v;
    std::array<BigFloat, M> g;
    std::array<BigFloat, static_cast<std::size_t>(M*(M + 1) / 2)> h;

    static constexpr int hidx(int i, int j) {
        if (i > j) std::swap(i, j);
        // row-major upper triangle
        return i * M - i * (i - 1) / 2 + (j - i);
    }

    static Jet2 constant(const BigFloat& value) {
        Jet2 j;
        j.v = value;
        for (auto& x : j.g) x = BigFloat::from_long(0, value.prec());
        for (auto& x : j.h) x = BigFloat::from_long(0, value.prec());
        return j;
    }
    static Jet2 variable(int i, const BigFloat& value) {
        Jet2 j = constant(value);
        j.g[static_cast<std::size_t>(i)] = BigFloat::from_long(1, value.prec());
        return j;
    }

    const BigFloat& hess(int i, int j) const { return h[static_cast<std::size_t>(hidx(i, j))]; }
    BigFloat& hess(int i, int j) { return h[static_cast<std::size_t>(hidx(i, j))]; }

    friend Jet2 operator+(const Jet2& a, const Jet2& b) {
        Jet2 r = a;
        r.v += b.v;
        for (int i = 0; i < M; ++i) r.g[static_cast<std::size_t>(i)] += b.g[static_cast<std::size_t>(i)];
        for (std::size_t i = 0; i < a.h.size(); ++i) r.h[i] += b.h[i];
        return r;
    }
    friend Jet2 operator-(const Jet2& a, const Jet2& b) {
        Jet2 r = a;
        r.v -= b.v;
        for (int i = 0; i < M; ++i) r.g[static_cast<std::size_t>(i)] -= b.g[static_cast<std::size_t>(i)];
        for (std::size_t i = 0; i < a.h.size(); ++i) r.h[i] -= b.h[i];
        return r;
    }
    friend Jet2 operator-(const Jet2& a) {
        Jet2 r = a;
        r.v = -r.v;
        for (auto& x : r.g) x = -x;
        for (auto& x : r.h) x = -x;
        return r;
    }
    friend Jet2 operator*(const Jet2& a, const Jet2& b) {
        Jet2 r = constant(a.v * b.v);
        for (int i = 0; i < M; ++i)
            r.g[static_cast<std::size_t>(i)] =
                a.g[static_cast<std::size_t>(i)] * b.v + a.v * b.g[static_cast<std::size_t>(i)];
        for (int i = 0; i < M; ++i)
            for (int j = i; j < M; ++j)
                r.hess(i, j) = a.hess(i, j) * b.v + a.v * b.hess(i, j) +
                               a.g[static_cast<std::size_t>(i)] * b.g[static_cast<std::size_t>(j)] +
                               a.g[static_cast<std::size_t>(j)] * b.g[static_cast<std::size_t>(i)];
        return r;
    }
    friend Jet2 operator*(const Jet2& a, long s) {
        Jet2 r = a;
        r.v = r.v * s;
        for (auto& x : r.g) x = x * s;
        for (auto& x : r.h) x = x * s;
        return r;
    }
    friend Jet2 operator*(const Jet2& a, const BigFloat& s) {
        Jet2 r = a;
        r.v = r.v * s;
        for (auto& x : r.g) x = x * s;
        for (auto& x : r.h) x = x * s;
        return r;
    }
    friend Jet2 operator+(const Jet2& a, long s) {
        Jet2 r = a;
        r.v = r.v + s;
        return r;
    }
    friend Jet2 operator-(const Jet2& a, long s) { return a + (-s); }
    friend Jet2 operator-(long s, const Jet2& a) { return -(a - s); }
    friend Jet2 operator+(const Jet2& a, const BigFloat& s) {
        Jet2 r = a;
        r.v += s;
        return r;
    }
    friend Jet2 operator-(const Jet2& a, const BigFloat& s) {
        Jet2 r = a;
        r.v -= s;
        return r;
    }
    friend Jet2 operator/(const Jet2& a, const BigFloat& s) {
        Jet2 r = a;
        r.v = r.v / s;
        for (auto& x : r.g) x = x / s;
        for (auto& x : r.h) x = x / s;
        return r;
    }

    friend Jet2 inverse(const Jet2& a) {
        BigFloat iv = BigFloat::from_long(1, a.v.prec()) / a.v;
        BigFloat iv2 = iv * iv;
        Jet2 r = constant(iv);
        for (int i = 0; i < M; ++i) r.g[static_cast<std::size_t>(i)] = -a.g[static_cast<std::size_t>(i)] * iv2;
        for (int i = 0; i < M; ++i)
            for (int j = i; j < M; ++j)
                r.hess(i, j) = (a.g[static_cast<std::size_t>(i)] * a.g[static_cast<std::size_t>(j)] * 2 * iv -
                                a.hess(i, j)) *
                               iv2;
        return r;
    }
    friend Jet2 operator/(const Jet2& a, const Jet2& b) { return a * inverse(b); }

    friend Jet2 exp(const Jet2& a) {
        BigFloat e = exp(a.v);
        Jet2 r = constant(e);
        for (int i = 0; i < M; ++i) r.g[static_cast<std::size_t>(i)] = a.g[static_cast<std::size_t>(i)] * e;
        for (int i = 0; i < M; ++i)
            for (int j = i; j < M; ++j)
                r.hess(i, j) =
                    (a.hess(i, j) + a.g[static_cast<std::size_t>(i)] * a.g[static_cast<std::size_t>(j)]) * e;
        return r;
    }
    friend Jet2 log(const Jet2& a) {
        Jet2 r = constant(log(a.v));
        BigFloat iv = BigFloat::from_long(1, a.v.prec()) / a.v;
        for (int i = 0; i < M; ++i) r.g[static_cast<std::size_t>(i)] = a.g[static_cast<std::size_t>(i)] * iv;
        for (int i = 0; i < M; ++i)
            for (int j = i; j < M; ++j)
                r.hess(i, j) = a.hess(i, j) * iv -
                               a.g[static_cast<std::size_t>(i)] * a.g[static_cast<std::size_t>(j)] * iv * iv;
        return r;
    }
    friend Jet2 sqrt(const Jet2& a) {
        BigFloat s = sqrt(a.v);
        BigFloat half_inv_s = BigFloat::from_long(1, a.v.prec()) / (s * 2);
        Jet2 r = constant(s);
        for (int i = 0; i < M; ++i) r.g[static_cast<std::size_t>(i)] = a.g[static_cast<std::size_t>(i)] * half_inv_s;
        BigFloat q = half_inv_s / (a.v * 2);  // 1/(4 a^{3/2})
        for (int i = 0; i < M; ++i)
            for (int j = i; j < M; ++j)
                r.hess(i, j) = a.hess(i, j) * half_inv_s -
                               a.g[static_cast<std::size_t>(i)] * a.g[static_cast<std::size_t>(j)] * q;
        return r;
    }
    friend Jet2 pow_int(const Jet2& a, int e) {
        Jet2 r = constant(BigFloat::from_long(1, a.v.prec()));
        for (int i = 0; i < e; ++i) r = r * a;
        return r;
    }
};

}  // namespace graphenum
