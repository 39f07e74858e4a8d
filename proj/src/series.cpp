#include "graphenum/series.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace graphenum {

namespace {

using IPolyV = std::vector<BigInt>;

void ipoly_trim(IPolyV& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// dst += scale * a * b, truncating y-degree at ycap when ycap >= 0.
void ipoly_mul_acc(IPolyV& dst, const IPolyV& a, const IPolyV& b, const BigInt& scale, int ycap) {
    if (a.empty() || b.empty()) return;
    std::size_t max_deg = a.size() + b.size() - 2;
    if (ycap >= 0) max_deg = std::min(max_deg, static_cast<std::size_t>(ycap));
    if (dst.size() < max_deg + 1) dst.resize(max_deg + 1);
    BigInt t;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        mpz_mul(t.get_mpz_t(), a[i].get_mpz_t(), scale.get_mpz_t());
        std::size_t jmax = b.size();
        if (ycap >= 0 && i + jmax > max_deg + 1) jmax = max_deg + 1 - i;
        for (std::size_t j = 0; j < jmax; ++j) {
            if (b[j] == 0) continue;
            mpz_addmul(dst[i + j].get_mpz_t(), t.get_mpz_t(), b[j].get_mpz_t());
        }
        if (ycap >= 0 && i >= max_deg) break;
    }
}

// Rational-coefficient polynomial helpers for the slow (den > 1) paths and
// for inverting constant terms in cap mode.
using QPoly = std::vector<Rational>;

QPoly qpoly_mul(const QPoly& a, const QPoly& b, int ycap) {
    if (a.empty() || b.empty()) return {};
    std::size_t max_deg = a.size() + b.size() - 2;
    if (ycap >= 0) max_deg = std::min(max_deg, static_cast<std::size_t>(ycap));
    QPoly r(max_deg + 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size() && i + j <= max_deg; ++j) {
            if (b[j] == 0) continue;
            r[i + j] += a[i] * b[j];
        }
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

void qpoly_add_scaled(QPoly& dst, const QPoly& src, const Rational& s) {
    if (dst.size() < src.size()) dst.resize(src.size(), Rational(0));
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] += src[i] * s;
}

// Inverse of a polynomial with nonzero constant term, mod y^{cap+1}.
QPoly qpoly_inverse_capped(const QPoly& c, int cap) {
    if (c.empty() || c[0] == 0) throw SeriesError("non-invertible constant term");
    QPoly inv(static_cast<std::size_t>(cap) + 1, Rational(0));
    inv[0] = 1 / c[0];
    for (int j = 1; j <= cap; ++j) {
        Rational s(0);
        for (int i = 1; i <= j; ++i) {
            if (i < static_cast<int>(c.size())) s += c[static_cast<std::size_t>(i)] * inv[static_cast<std::size_t>(j - i)];
        }
        inv[static_cast<std::size_t>(j)] = -s / c[0];
    }
    while (!inv.empty() && inv.back() == 0) inv.pop_back();
    return inv;
}

BigInt lcm_1_to(int n) {
    BigInt l = 1;
    for (int k = 2; k <= n; ++k) mpz_lcm_ui(l.get_mpz_t(), l.get_mpz_t(), static_cast<unsigned long>(k));
    return l;
}

}  // namespace

Series::Series(int order, int ycap) : order_(order), ycap_(ycap), den_(1), p_(static_cast<std::size_t>(order) + 1) {
    if (order < 0) throw SeriesError("negative truncation order");
    if (ycap < kExactY) throw SeriesError("invalid y cap");
}

Series Series::constant(int order, int ycap, const Rational& c) {
    Series s(order, ycap);
    if (c != 0) s.set_coeff(0, 0, c);
    return s;
}

Series Series::identity_x(int order, int ycap) {
    Series s(order, ycap);
    if (order >= 1) s.set_coeff(1, 0, Rational(1));
    return s;
}

Series Series::edge_marker(int order, int ycap) {
    Series s(order, ycap);
    if (ycap == kExactY) {
        s.set_coeff(0, 1, Rational(1));
    } else {
        s.set_coeff(0, 0, Rational(1));
        if (ycap >= 1) s.set_coeff(0, 1, Rational(1));
    }
    return s;
}

bool Series::is_zero() const {
    for (const auto& poly : p_)
        if (!poly.empty()) return false;
    return true;
}

Rational Series::coeff(int n, unsigned q) const {
    if (n < 0 || n > order_) throw SeriesError("coefficient index out of range");
    const IPoly& poly = p_[static_cast<std::size_t>(n)];
    if (q >= poly.size()) return Rational(0);
    return make_rational(poly[q], factorial(static_cast<unsigned long>(n)) * den_);
}

YPolynomial Series::coeff_poly(int n) const {
    if (n < 0 || n > order_) throw SeriesError("coefficient index out of range");
    YPolynomial out;
    const IPoly& poly = p_[static_cast<std::size_t>(n)];
    const BigInt scale = factorial(static_cast<unsigned long>(n)) * den_;
    for (std::size_t q = 0; q < poly.size(); ++q) {
        if (poly[q] != 0) out[static_cast<unsigned>(q)] = make_rational(poly[q], scale);
    }
    return out;
}

int Series::ydegree(int n) const {
    if (n < 0 || n > order_) throw SeriesError("coefficient index out of range");
    return static_cast<int>(p_[static_cast<std::size_t>(n)].size()) - 1;
}

BigInt Series::count(int n, unsigned q) const {
    if (n < 0 || n > order_) throw SeriesError("count index out of range");
    const IPoly& poly = p_[static_cast<std::size_t>(n)];
    if (q >= poly.size()) return BigInt(0);
    if (!mpz_divisible_p(poly[q].get_mpz_t(), den_.get_mpz_t()))
        throw SeriesError("n! * coefficient is not an integer");
    BigInt r;
    mpz_divexact(r.get_mpz_t(), poly[q].get_mpz_t(), den_.get_mpz_t());
    return r;
}

BigInt Series::count_at_y1(int n) const {
    if (n < 0 || n > order_) throw SeriesError("count index out of range");
    const IPoly& poly = p_[static_cast<std::size_t>(n)];
    BigInt sum = 0;
    if (ycap_ == kExactY) {
        for (const BigInt& c : poly) sum += c;
    } else if (!poly.empty()) {
        sum = poly[0];
    }
    if (!mpz_divisible_p(sum.get_mpz_t(), den_.get_mpz_t()))
        throw SeriesError("n! * coefficient is not an integer");
    BigInt r;
    mpz_divexact(r.get_mpz_t(), sum.get_mpz_t(), den_.get_mpz_t());
    return r;
}

void Series::set_coeff(int n, unsigned q, const Rational& value) {
    if (n < 0 || n > order_) throw SeriesError("coefficient index out of range");
    if (ycap_ >= 0 && static_cast<int>(q) > ycap_) {
        if (value != 0) throw SeriesError("coefficient beyond y cap");
        return;
    }
    Rational scaled = value * Rational(factorial(static_cast<unsigned long>(n)));
    BigInt need = scaled.get_den();
    BigInt new_den;
    mpz_lcm(new_den.get_mpz_t(), den_.get_mpz_t(), need.get_mpz_t());
    if (new_den != den_) rescale_den(new_den);
    IPoly& poly = p_[static_cast<std::size_t>(n)];
    if (poly.size() < q + 1) poly.resize(q + 1);
    BigInt f;
    mpz_divexact(f.get_mpz_t(), den_.get_mpz_t(), scaled.get_den().get_mpz_t());
    poly[q] = scaled.get_num() * f;
    poly_trim(poly);
}

void Series::set_coeff_poly(int n, const YPolynomial& poly) {
    if (n < 0 || n > order_) throw SeriesError("coefficient index out of range");
    p_[static_cast<std::size_t>(n)].clear();
    for (const auto& [q, v] : poly) set_coeff(n, q, v);
}

Series Series::truncated(int new_order) const {
    if (new_order > order_) throw SeriesError("cannot extend truncation order");
    Series s(new_order, ycap_);
    s.den_ = den_;
    for (int n = 0; n <= new_order; ++n) s.p_[static_cast<std::size_t>(n)] = p_[static_cast<std::size_t>(n)];
    s.normalize();
    return s;
}

void Series::assert_ydegree(const std::function<int(int)>& bound, const std::string& label) const {
    if (ycap_ != kExactY) return;
    for (int n = 0; n <= order_; ++n) {
        int deg = ydegree(n);
        if (deg < 0) continue;
        if (deg > bound(n))
            throw SeriesError(label + ": y-degree " + std::to_string(deg) + " at x^" + std::to_string(n) +
                              " exceeds bound " + std::to_string(bound(n)));
    }
}

void Series::poly_trim(IPoly& p) { ipoly_trim(p); }

void Series::trim_polys() {
    for (auto& poly : p_) ipoly_trim(poly);
}

void Series::normalize() {
    trim_polys();
    if (den_ == 1) return;
    BigInt g = den_;
    for (const auto& poly : p_) {
        for (const BigInt& c : poly) {
            if (c == 0) continue;
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
            if (g == 1) return;
        }
    }
    bool any = false;
    for (const auto& poly : p_)
        if (!poly.empty()) any = true;
    if (!any) {
        den_ = 1;
        return;
    }
    for (auto& poly : p_)
        for (BigInt& c : poly)
            if (c != 0) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
}

void Series::rescale_den(const BigInt& new_den) {
    BigInt f;
    mpz_divexact(f.get_mpz_t(), new_den.get_mpz_t(), den_.get_mpz_t());
    if (f == 1) return;
    for (auto& poly : p_)
        for (BigInt& c : poly)
            if (c != 0) c *= f;
    den_ = new_den;
}

void Series::check_same_shape(const Series& other, const char* op) const {
    if (order_ != other.order_) throw SeriesError(std::string(op) + ": mismatched truncation orders");
    if (ycap_ != other.ycap_) throw SeriesError(std::string(op) + ": mismatched y modes");
}

bool Series::operator==(const Series& other) const {
    if (order_ != other.order_ || ycap_ != other.ycap_) return false;
    return agreement_order(*this, other) >= order_;
}

int agreement_order(const Series& a, const Series& b) {
    static const BigInt kZero(0);
    int m = std::min(a.order_, b.order_);
    BigInt lhs, rhs;
    for (int n = 0; n <= m; ++n) {
        const auto& pa = a.p_[static_cast<std::size_t>(n)];
        const auto& pb = b.p_[static_cast<std::size_t>(n)];
        std::size_t len = std::max(pa.size(), pb.size());
        for (std::size_t q = 0; q < len; ++q) {
            const BigInt& ca = q < pa.size() ? pa[q] : kZero;
            const BigInt& cb = q < pb.size() ? pb[q] : kZero;
            mpz_mul(lhs.get_mpz_t(), ca.get_mpz_t(), b.den_.get_mpz_t());
            mpz_mul(rhs.get_mpz_t(), cb.get_mpz_t(), a.den_.get_mpz_t());
            if (mpz_cmp(lhs.get_mpz_t(), rhs.get_mpz_t()) != 0) return n - 1;
        }
    }
    return m;
}

Series operator+(const Series& a, const Series& b) {
    a.check_same_shape(b, "add");
    Series r(a.order_, a.ycap_);
    BigInt L;
    mpz_lcm(L.get_mpz_t(), a.den_.get_mpz_t(), b.den_.get_mpz_t());
    BigInt fa, fb;
    mpz_divexact(fa.get_mpz_t(), L.get_mpz_t(), a.den_.get_mpz_t());
    mpz_divexact(fb.get_mpz_t(), L.get_mpz_t(), b.den_.get_mpz_t());
    r.den_ = L;
    for (int n = 0; n <= a.order_; ++n) {
        const auto& pa = a.p_[static_cast<std::size_t>(n)];
        const auto& pb = b.p_[static_cast<std::size_t>(n)];
        auto& pr = r.p_[static_cast<std::size_t>(n)];
        pr.resize(std::max(pa.size(), pb.size()));
        for (std::size_t q = 0; q < pr.size(); ++q) {
            if (q < pa.size()) pr[q] = pa[q] * fa;
            if (q < pb.size()) pr[q] += pb[q] * fb;
        }
    }
    r.normalize();
    return r;
}

Series operator-(const Series& a) {
    Series r = a;
    for (auto& poly : r.p_)
        for (BigInt& c : poly) c = -c;
    return r;
}

Series operator-(const Series& a, const Series& b) { return a + (-b); }

Series mul_to_order(const Series& a, const Series& b, int out_order) {
    if (a.ycap_ != b.ycap_) throw SeriesError("mul: mismatched y modes");
    Series r(out_order, a.ycap_);
    r.den_ = a.den_ * b.den_;
    BinomRow row;
    for (int n = 0; n <= out_order; ++n) {
        row.advance_to(n);
        auto& dst = r.p_[static_cast<std::size_t>(n)];
        for (int k = 0; k <= n; ++k) {
            if (k > a.order_ || n - k > b.order_) continue;
            const auto& pa = a.p_[static_cast<std::size_t>(k)];
            const auto& pb = b.p_[static_cast<std::size_t>(n - k)];
            if (pa.empty() || pb.empty()) continue;
            ipoly_mul_acc(dst, pa, pb, row.at(k), a.ycap_);
        }
        ipoly_trim(dst);
    }
    r.normalize();
    return r;
}

Series operator*(const Series& a, const Series& b) {
    a.check_same_shape(b, "mul");
    return mul_to_order(a, b, a.order_);
}

Series operator*(const Series& a, const Rational& c) {
    Series r = a;
    if (c == 0) return Series(a.order_, a.ycap_);
    r.den_ = a.den_ * c.get_den();
    for (auto& poly : r.p_)
        for (BigInt& x : poly) x *= c.get_num();
    r.normalize();
    return r;
}

Series inverse_to_order(const Series& b, int out_order) {
    const auto& c0 = b.p_[0];
    if (c0.empty()) throw SeriesError("inverse: non-invertible divisor (zero constant term)");
    Series w(out_order, b.ycap_);
    if (b.ycap_ == Series::kExactY) {
        if (c0.size() != 1)
            throw SeriesError("inverse: constant term must be y-free in exact mode");
        w.set_coeff(0, 0, make_rational(b.den_, c0[0]));
    } else {
        QPoly c(c0.size());
        for (std::size_t i = 0; i < c0.size(); ++i) c[i] = make_rational(c0[i], b.den_);
        QPoly inv = qpoly_inverse_capped(c, b.ycap_);
        for (std::size_t q = 0; q < inv.size(); ++q)
            if (inv[q] != 0) w.set_coeff(0, static_cast<unsigned>(q), inv[q]);
    }
    int m = 0;
    Series two = Series::constant(0, b.ycap_, Rational(2));
    while (m < out_order) {
        int m2 = std::min(out_order, 2 * m + 1);
        Series t = mul_to_order(b, w, m2);
        // w <- w * (2 - b*w)
        Series corr(m2, b.ycap_);
        corr.den_ = t.den_;
        corr.p_[0] = IPolyV{2 * t.den_};
        for (int n = 0; n <= m2; ++n) {
            auto& dst = corr.p_[static_cast<std::size_t>(n)];
            const auto& src = t.p_[static_cast<std::size_t>(n)];
            if (dst.size() < src.size()) dst.resize(src.size());
            for (std::size_t q = 0; q < src.size(); ++q) dst[q] -= src[q];
            ipoly_trim(dst);
        }
        corr.normalize();
        w = mul_to_order(w, corr, m2);
        m = m2;
    }
    return w;
}

Series inverse(const Series& b) { return inverse_to_order(b, b.order_); }

Series divide(const Series& a, const Series& b) {
    a.check_same_shape(b, "div");
    return mul_to_order(a, inverse_to_order(b, a.order_), a.order_);
}

Series scale_by_ypoly(const Series& a, const std::vector<long>& poly) {
    Series r(a.order_, a.ycap_);
    r.den_ = a.den_;
    IPolyV g(poly.size());
    for (std::size_t i = 0; i < poly.size(); ++i) g[i] = poly[i];
    ipoly_trim(g);
    for (int n = 0; n <= a.order_; ++n) {
        ipoly_mul_acc(r.p_[static_cast<std::size_t>(n)], a.p_[static_cast<std::size_t>(n)], g, BigInt(1), a.ycap_);
        ipoly_trim(r.p_[static_cast<std::size_t>(n)]);
    }
    r.normalize();
    return r;
}

Series divide_by_ypoly(const Series& a, const std::vector<long>& poly) {
    IPolyV g(poly.size());
    for (std::size_t i = 0; i < poly.size(); ++i) g[i] = poly[i];
    ipoly_trim(g);
    if (g.empty()) throw SeriesError("division by zero polynomial");

    if (a.ycap_ != Series::kExactY) {
        QPoly c(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) c[i] = Rational(g[i]);
        QPoly inv = qpoly_inverse_capped(c, a.ycap_);
        Series r(a.order_, a.ycap_);
        for (int n = 0; n <= a.order_; ++n) {
            QPoly an(a.p_[static_cast<std::size_t>(n)].size());
            for (std::size_t q = 0; q < an.size(); ++q)
                an[q] = make_rational(a.p_[static_cast<std::size_t>(n)][q],
                                      factorial(static_cast<unsigned long>(n)) * a.den_);
            QPoly rn = qpoly_mul(an, inv, a.ycap_);
            for (std::size_t q = 0; q < rn.size(); ++q)
                if (rn[q] != 0) r.set_coeff(n, static_cast<unsigned>(q), rn[q]);
        }
        return r;
    }

    // Exact mode: per-coefficient ascending exact division. The primitive
    // divisor must have unit low coefficient, which covers the (1+y)-shaped
    // divisors arising in the pipelines.
    BigInt content = g[0];
    for (const BigInt& c : g) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
    IPolyV gp(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) mpz_divexact(gp[i].get_mpz_t(), g[i].get_mpz_t(), content.get_mpz_t());
    if (!(gp[0] == 1 || gp[0] == -1))
        throw SeriesError("divide_by_ypoly: unsupported divisor shape");

    Series r(a.order_, a.ycap_);
    r.den_ = a.den_ * content;
    for (int n = 0; n <= a.order_; ++n) {
        IPolyV rem = a.p_[static_cast<std::size_t>(n)];
        if (rem.empty()) continue;
        if (rem.size() + 1 < gp.size())
            throw SeriesError("divide_by_ypoly: coefficient not divisible");
        IPolyV q(rem.size() >= gp.size() ? rem.size() - gp.size() + 1 : 0);
        for (std::size_t i = 0; i < q.size(); ++i) {
            BigInt qi = gp[0] == 1 ? rem[i] : -rem[i];
            q[i] = qi;
            if (qi == 0) continue;
            for (std::size_t j = 0; j < gp.size(); ++j) {
                rem[i + j] -= qi * gp[j];
            }
        }
        for (const BigInt& c : rem)
            if (c != 0) throw SeriesError("divide_by_ypoly: coefficient not divisible");
        ipoly_trim(q);
        r.p_[static_cast<std::size_t>(n)] = std::move(q);
    }
    r.normalize();
    return r;
}

Series exp_series(const Series& a) {
    if (!a.p_[0].empty()) throw SeriesError("exp: constant term must vanish");
    const int N = a.order_;
    if (a.den_ == 1) {
        Series e(N, a.ycap_);
        e.p_[0] = IPolyV{1};
        BinomRow row;
        for (int n = 1; n <= N; ++n) {
            row.advance_to(n - 1);
            auto& dst = e.p_[static_cast<std::size_t>(n)];
            for (int k = 0; k + 1 <= n; ++k) {
                const auto& pa = a.p_[static_cast<std::size_t>(k + 1)];
                const auto& pe = e.p_[static_cast<std::size_t>(n - 1 - k)];
                if (pa.empty() || pe.empty()) continue;
                ipoly_mul_acc(dst, pa, pe, row.at(k), a.ycap_);
            }
            ipoly_trim(dst);
        }
        return e;
    }
    // Rational-coefficient fallback (arises only when the argument has a
    // nontrivial global denominator).
    std::vector<QPoly> ac(static_cast<std::size_t>(N) + 1), ec(static_cast<std::size_t>(N) + 1);
    for (int n = 0; n <= N; ++n) {
        const auto& pa = a.p_[static_cast<std::size_t>(n)];
        ac[static_cast<std::size_t>(n)].resize(pa.size());
        for (std::size_t q = 0; q < pa.size(); ++q)
            ac[static_cast<std::size_t>(n)][q] = make_rational(pa[q], a.den_);
    }
    ec[0] = QPoly{Rational(1)};
    BinomRow row;
    for (int n = 1; n <= N; ++n) {
        row.advance_to(n - 1);
        QPoly acc;
        for (int k = 0; k + 1 <= n; ++k) {
            const QPoly& pa = ac[static_cast<std::size_t>(k + 1)];
            const QPoly& pe = ec[static_cast<std::size_t>(n - 1 - k)];
            if (pa.empty() || pe.empty()) continue;
            qpoly_add_scaled(acc, qpoly_mul(pa, pe, a.ycap_), Rational(row.at(k)));
        }
        while (!acc.empty() && acc.back() == 0) acc.pop_back();
        ec[static_cast<std::size_t>(n)] = std::move(acc);
    }
    Series e(N, a.ycap_);
    for (int n = 0; n <= N; ++n) {
        const QPoly& pe = ec[static_cast<std::size_t>(n)];
        const Rational fct(factorial(static_cast<unsigned long>(n)));
        for (std::size_t q = 0; q < pe.size(); ++q)
            if (pe[q] != 0) e.set_coeff(n, static_cast<unsigned>(q), pe[q] / fct);
    }
    return e;
}

Series log_series(const Series& a) {
    const auto& c0 = a.p_[0];
    bool unit = c0.size() == 1 && c0[0] == a.den_;
    if (!unit) throw SeriesError("log: constant term must be 1");
    if (a.order_ == 0) return Series(0, a.ycap_);
    Series da = derive_x(a);
    Series ia = inverse_to_order(a, a.order_ - 1);
    return integrate_x(mul_to_order(da, ia, a.order_ - 1));
}

Series sqrt_series(const Series& a) {
    const auto& c0 = a.p_[0];
    bool unit = c0.size() == 1 && c0[0] == a.den_;
    if (!unit) throw SeriesError("sqrt: constant term must be 1");
    Series w = Series::constant(0, a.ycap_, Rational(1));
    int m = 0;
    while (m < a.order_) {
        int m2 = std::min(a.order_, 2 * m + 1);
        Series v = inverse_to_order(w, m2);
        Series aw = mul_to_order(a, v, m2);
        // w <- (w + a/w) / 2
        Series wide(m2, w.ycap_);
        wide.den_ = w.den_;
        for (int n = 0; n <= std::min(m2, w.order_); ++n) wide.p_[static_cast<std::size_t>(n)] = w.p_[static_cast<std::size_t>(n)];
        w = (wide + aw) * make_rational(1, 2);
        m = m2;
    }
    return w;
}

Series derive_x(const Series& a) {
    if (a.order_ == 0) throw SeriesError("derive_x: order-0 series");
    Series r(a.order_ - 1, a.ycap_);
    r.den_ = a.den_;
    for (int n = 0; n < a.order_; ++n) r.p_[static_cast<std::size_t>(n)] = a.p_[static_cast<std::size_t>(n) + 1];
    r.normalize();
    return r;
}

Series integrate_x(const Series& a) {
    Series r(a.order_ + 1, a.ycap_);
    r.den_ = a.den_;
    for (int n = 0; n <= a.order_; ++n) r.p_[static_cast<std::size_t>(n) + 1] = a.p_[static_cast<std::size_t>(n)];
    r.normalize();
    return r;
}

Series derive_y(const Series& a) {
    Series r(a.order_, a.ycap_);
    r.den_ = a.den_;
    for (int n = 0; n <= a.order_; ++n) {
        const auto& pa = a.p_[static_cast<std::size_t>(n)];
        if (pa.size() <= 1) continue;
        auto& pr = r.p_[static_cast<std::size_t>(n)];
        pr.resize(pa.size() - 1);
        for (std::size_t q = 1; q < pa.size(); ++q) pr[q - 1] = pa[q] * BigInt(static_cast<unsigned long>(q));
        ipoly_trim(pr);
    }
    r.normalize();
    return r;
}

Series shift_up_x(const Series& a) {
    Series r(a.order_ + 1, a.ycap_);
    r.den_ = a.den_;
    for (int n = 0; n <= a.order_; ++n) {
        r.p_[static_cast<std::size_t>(n) + 1] = a.p_[static_cast<std::size_t>(n)];
        for (BigInt& c : r.p_[static_cast<std::size_t>(n) + 1]) c *= (n + 1);
    }
    r.normalize();
    return r;
}

Series shift_down_x(const Series& a) {
    if (!a.p_[0].empty()) throw SeriesError("shift_down_x: constant term must vanish");
    if (a.order_ == 0) return Series(0, a.ycap_);
    Series r(a.order_ - 1, a.ycap_);
    BigInt L = lcm_1_to(a.order_);
    r.den_ = a.den_ * L;
    for (int n = 1; n <= a.order_; ++n) {
        IPolyV poly = a.p_[static_cast<std::size_t>(n)];
        BigInt f;
        mpz_divexact_ui(f.get_mpz_t(), L.get_mpz_t(), static_cast<unsigned long>(n));
        for (BigInt& c : poly) c *= f;
        r.p_[static_cast<std::size_t>(n) - 1] = std::move(poly);
    }
    r.normalize();
    return r;
}

Series compose(const Series& outer, const Series& inner) {
    outer.check_same_shape(inner, "compose");
    if (!inner.p_[0].empty()) throw SeriesError("compose: inner series must have zero constant term");
    const int N = outer.order_;
    // outer's stored coefficient at x^n carries an n! scale that must be
    // stripped when it becomes an x^0 term of the accumulator
    Series r(0, outer.ycap_);
    r.den_ = outer.den_ * factorial(static_cast<unsigned long>(N));
    r.p_[0] = outer.p_[static_cast<std::size_t>(N)];
    r.normalize();
    for (int n = N - 1; n >= 0; --n) {
        r = mul_to_order(r, inner, N - n);
        Series c(N - n, outer.ycap_);
        c.den_ = outer.den_ * factorial(static_cast<unsigned long>(n));
        c.p_[0] = outer.p_[static_cast<std::size_t>(n)];
        c.normalize();
        r = r + c;
    }
    return r;
}

Series evaluate_y(const Series& a, const Rational& y0) {
    if (a.ycap_ != Series::kExactY) throw SeriesError("evaluate_y: exact mode only");
    Series r(a.order_, 0);
    for (int n = 0; n <= a.order_; ++n) {
        const auto& pa = a.p_[static_cast<std::size_t>(n)];
        if (pa.empty()) continue;
        Rational v(0);
        for (std::size_t q = pa.size(); q-- > 0;) {
            v = v * y0 + Rational(pa[q]);
        }
        if (v != 0) r.set_coeff(n, 0, v / Rational(factorial(static_cast<unsigned long>(n)) * a.den_));
    }
    return r;
}

std::string Series::to_string(int max_order) const {
    std::ostringstream os;
    int hi = max_order < 0 ? order_ : std::min(max_order, order_);
    bool first = true;
    for (int n = 0; n <= hi; ++n) {
        YPolynomial poly = coeff_poly(n);
        for (const auto& [q, v] : poly) {
            os << (first ? "" : " + ") << v.get_str();
            if (q > 0) os << "*y^" << q;
            if (n > 0) os << "*x^" << n;
            first = false;
        }
    }
    if (first) os << "0";
    return os.str();
}

Series solve_fixed_point(const std::function<Series(const Series&)>& update, const Series& seed,
                         int order) {
    if (seed.order() != order) throw SeriesError("fixed point: seed order mismatch");
    Series s = seed;
    int prev_agree = -2;
    for (int iter = 0; iter <= order + 1; ++iter) {
        Series t = update(s);
        if (t.order() != order) throw SeriesError("fixed point: update changed truncation order");
        int agree = agreement_order(s, t);
        if (agree >= order) return t;
        if (agree <= prev_agree)
            throw SeriesError("fixed point: update is not contracting (agreement order stalled at " +
                              std::to_string(agree) + ")");
        prev_agree = agree;
        s = std::move(t);
    }
    throw SeriesError("fixed point: failed to converge within order+1 iterations");
}

}  // namespace graphenum
