#include "graphenum/singularity.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "graphenum/jet.hpp"

namespace graphenum::singularity {

namespace {

using std::function;

template <class T>
T tpow(const T& a, int e) {
    T r = a;
    for (int i = 1; i < e; ++i) r = r * a;
    return r;
}

// Y(t) = exp(-t^2/(1+t)) / (1 - t^2) - 1, strictly increasing on (0,1)
template <class T>
T eval_Y(const T& t) {
    T t2 = t * t;
    return exp(-(t2 / (t + 1))) / (1 - t2) - 1;
}

// R(y) = q(t) = (1+t)(1-t)^2/t^3
template <class T>
T eval_q(const T& t) {
    return (t + 1) * tpow(1 - t, 2) / tpow(t, 3);
}

// inverse function of the network series for fixed y:
// psi(u) = L / (u (u - L)), L = log((1+u)/(1+y))
template <class T>
T eval_psi(const T& u, const BigFloat& log1py) {
    T L = log(u + 1) - log1py;
    return L / (u * (u - L));
}

// defining equation of the network series: log((1+D)/(1+y)) = x D^2/(1+xD)
template <class T>
T eval_network_eq(const T& x, const T& y, const T& d) {
    return log(d + 1) - log(y + 1) - x * d * d / (x * d + 1);
}

template <class T>
T eval_network_eq_fixed_y(const T& x, const BigFloat& log1py, const T& d) {
    return log(d + 1) - log1py - x * d * d / (x * d + 1);
}

// critical polynomial for the connected pipeline
template <class T>
T eval_T(const T& u, const T& d) {
    return tpow(u, 4) * tpow(d, 6) + tpow(u, 3) * tpow(d, 5) + tpow(u, 2) * tpow(d, 3) * 2 +
           u * tpow(d, 2) * 4 - 2;
}

// Psi(u) = u exp(u D (u D^2 - 2) / (2 (1 + u D)))
template <class T>
T eval_psi_sp(const T& u, const T& d) {
    T ud = u * d;
    return u * exp(ud * (ud * d - 2) / ((ud + 1) * 2));
}

// closed form of the 2-connected series-parallel EGF in terms of D
template <class T>
T eval_B_sp(const T& x, const T& d, const BigFloat& half, const BigFloat& quarter) {
    T xd = x * d;
    return log(xd + 1) * half - xd * (xd * xd + xd - x * 2 + 2) / (xd + 1) * quarter;
}

// radicand of the dissection closed form
template <class T>
T eval_rad_outer(const T& u, const T& y) {
    return u * u * y * y - u * y * 2 - u * y * y * 4 + 1;
}

template <class T>
T eval_Bp_outer(const T& u, const T& y, bool with_k4, const BigFloat& quarter, const BigFloat& sixth) {
    T base = (u * y * (y * 2 + 3) - sqrt(eval_rad_outer(u, y)) + 1) / (y + 1) * quarter;
    if (with_k4) base = base + tpow(y, 6) * tpow(u, 3) * sixth;
    return base;
}

template <class T>
T eval_psi_outer(const T& u, const T& y, bool with_k4, const BigFloat& quarter, const BigFloat& sixth) {
    return u * exp(-eval_Bp_outer(u, y, with_k4, quarter, sixth));
}

// smaller root of the dissection radicand in x
template <class T>
T eval_R_outer(const T& y) {
    T w = y * 2 + 1;
    return (w - sqrt(w * w - 1)) / y;
}

BigFloat half_of(mpfr_prec_t prec) { return BigFloat::from_long(1, prec) / 2; }
BigFloat quarter_of(mpfr_prec_t prec) { return BigFloat::from_long(1, prec) / 4; }
BigFloat sixth_of(mpfr_prec_t prec) { return BigFloat::from_long(1, prec) / 6; }

BigFloat sqrt_pi(mpfr_prec_t prec) { return sqrt(BigFloat::pi(prec)); }

// Safeguarded Newton on a bracketed sign change: steps are clipped to the
// bracket and fall back to bisection.
BigFloat newton_bracketed(const function<BigFloat(const BigFloat&)>& f,
                          const function<BigFloat(const BigFloat&)>& df, BigFloat lo, BigFloat hi,
                          mpfr_prec_t prec, const char* what) {
    BigFloat flo = f(lo);
    BigFloat fhi = f(hi);
    if (flo.sign() == 0) return lo;
    if (fhi.sign() == 0) return hi;
    if (flo.sign() == fhi.sign())
        throw std::runtime_error(std::string(what) + ": no sign change on the bracket");
    BigFloat tol = BigFloat::pow2(-static_cast<long>(prec) + 6, prec);
    BigFloat x = (lo + hi) / 2;
    const int max_iter = static_cast<int>(prec) * 3 + 64;
    for (int i = 0; i < max_iter; ++i) {
        BigFloat fx = f(x);
        if (fx.sign() == 0) return x;
        if (fx.sign() == flo.sign()) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
            fhi = fx;
        }
        if (hi - lo < tol * (abs(x) + 1)) return (lo + hi) / 2;
        BigFloat d = df(x);
        BigFloat xn = (lo + hi) / 2;
        if (d.sign() != 0) {
            BigFloat cand = x - fx / d;
            if (cand > lo && cand < hi) xn = cand;
        }
        if (abs(xn - x) < tol * (abs(x) + 1)) return xn;
        x = xn;
    }
    throw std::runtime_error(std::string(what) + ": failed to converge");
}

void check_close(const BigFloat& a, const BigFloat& b, long bits, const char* what) {
    BigFloat scale = abs(a) + abs(b) + 1;
    if (abs(a - b) > scale * BigFloat::pow2(-bits, a.prec()))
        throw std::runtime_error(std::string(what) + ": cross-check failed (" + a.to_decimal(25) +
                                 " vs " + b.to_decimal(25) + ")");
}

}  // namespace

BigFloat solve_t(const BigFloat& y, mpfr_prec_t prec) {
    if (!(y.sign() > 0)) throw std::invalid_argument("solve_t: y must be positive");
    mpfr_prec_t wp = prec + 32;
    BigFloat ylocal = y;
    auto f = [&](const BigFloat& t) { return eval_Y(t) - ylocal; };
    auto df = [&](const BigFloat& t) {
        TJet jt = TJet::variable(t, 1);
        return eval_Y(jt).derivative(1);
    };
    BigFloat lo = BigFloat::pow2(-40, wp);
    BigFloat hi = 1 - BigFloat::pow2(-40, wp);
    return newton_bracketed(f, df, lo, hi, wp, "solve_t");
}

TwoConnSP radius_2conn(const BigFloat& y, mpfr_prec_t prec) {
    mpfr_prec_t wp = prec + 96;
    TwoConnSP out;
    BigFloat yw = BigFloat::from_long(0, wp) + y;
    out.y = yw;
    out.t = solve_t(yw, wp);
    const BigFloat& t = out.t;
    out.residual = abs(eval_Y(t) - yw);
    BigFloat t2 = t * t;
    out.upsilon = t2 / (1 - t2);
    out.L = t2 / (t + 1);
    out.R = eval_q(t);

    // inverse-function derivatives at the critical point
    BigFloat log1py = log(yw + 1);
    TJet uj = TJet::variable(out.upsilon, 3);
    TJet psi = eval_psi(uj, log1py);
    check_close(psi.value(), out.R, static_cast<long>(prec) / 2, "psi(upsilon) = R");
    BigFloat psi1 = psi.derivative(1);
    if (abs(psi1) > BigFloat::pow2(-static_cast<long>(prec) / 2, wp))
        throw std::runtime_error("radius_2conn: psi'(upsilon) does not vanish");
    out.psi2 = psi.derivative(2);
    out.psi3 = psi.derivative(3);
    if (!(out.psi2.sign() < 0)) throw std::runtime_error("radius_2conn: psi'' must be negative");

    // the same derivatives have closed forms in t
    BigFloat psi2_t = -(t + 3) * tpow(1 - t, 4) * tpow(t + 1, 3) / tpow(t, 6);
    BigFloat psi3_t = (t2 + t * 3 + 3) * tpow(1 - t, 5) * tpow(t + 1, 5) / tpow(t, 8) * 2;
    check_close(out.psi2, psi2_t, static_cast<long>(prec) / 2, "psi'' closed form");
    check_close(out.psi3, psi3_t, static_cast<long>(prec) / 2, "psi''' closed form");

    out.D0 = out.upsilon;
    out.D1 = -sqrt(-(out.R * 2) / out.psi2);
    out.D2 = out.R * out.psi3 / (out.psi2 * out.psi2 * 3);
    BigFloat d1_t = sqrt(t2 * t * 2) / (sqrt(t + 3) * (t2 - 1));
    BigFloat d2_t = t * (t2 + t * 3 + 3) * 2 / ((1 - t) * tpow(t + 3, 2) * 3);
    check_close(out.D1, d1_t, static_cast<long>(prec) / 2, "D1 closed form");
    check_close(out.D2, d2_t, static_cast<long>(prec) / 2, "D2 closed form");

    // X-expansion of B at x = R(1 - X^2); B3 must not depend on the unknown
    // X^3 coefficient of D
    BigFloat half = half_of(wp), quarter = quarter_of(wp);
    auto b_coeffs = [&](long d3choice) {
        TJet xj(3, wp);
        xj[0] = out.R;
        xj[2] = -out.R;
        TJet dj(3, wp);
        dj[0] = out.D0;
        dj[1] = out.D1;
        dj[2] = out.D2;
        dj[3] = BigFloat::from_long(d3choice, wp);
        return eval_B_sp(xj, dj, half, quarter);
    };
    TJet b0run = b_coeffs(0);
    TJet b1run = b_coeffs(1);
    check_close(b0run[3], b1run[3], static_cast<long>(prec) / 2, "B3 independence of D3");
    check_close(b0run[2], b1run[2], static_cast<long>(prec) / 2, "B2 independence of D3");
    if (abs(b0run[1]) > BigFloat::pow2(-static_cast<long>(prec) / 2, wp))
        throw std::runtime_error("radius_2conn: B1 does not vanish");
    out.B0 = b0run[0];
    out.B2 = b0run[2];
    out.B3 = b0run[3];
    if (!(out.B3.sign() > 0)) throw std::runtime_error("radius_2conn: B3 must be positive");
    BigFloat b3_t = tpow(1 - t, 3) * sqrt(BigFloat::from_long(2, wp) / ((t + 3) * tpow(t, 3))) / 3;
    check_close(out.B3, b3_t, static_cast<long>(prec) / 2, "B3 closed form");
    out.amplitude = out.B3 * 3 / (sqrt_pi(wp) * 4);
    return out;
}

namespace {

// Smaller solution branch of the network equation in D at fixed (u, y); the
// second branch merges with it at u = R(y).
BigFloat solve_network_D(const BigFloat& u, const BigFloat& log1py, const BigFloat& y,
                         mpfr_prec_t wp, const BigFloat* seed) {
    auto phi_jet = [&](const BigFloat& d) {
        TJet dj = TJet::variable(d, 2);
        TJet xj = TJet::constant(u, 2);
        return eval_network_eq_fixed_y(xj, log1py, dj);
    };
    auto phi = [&](const BigFloat& d) { return phi_jet(d)[0]; };
    auto dphi = [&](const BigFloat& d) { return phi_jet(d).derivative(1); };
    auto ddphi = [&](const BigFloat& d) { return phi_jet(d).derivative(2); };

    if (!(dphi(y).sign() > 0)) throw std::runtime_error("network D solve: out of domain");
    BigFloat hi = y + 1;
    int guard = 0;
    while (dphi(hi).sign() > 0) {
        hi = hi * 2;
        if (++guard > 64) throw std::runtime_error("network D solve: no interior maximum");
    }
    BigFloat dmax = newton_bracketed(dphi, ddphi, y, hi, wp, "network D maximum");
    if (!(phi(dmax).sign() > 0))
        throw std::runtime_error("network D solve: u is at or beyond the singularity");
    BigFloat lo = y;
    if (seed != nullptr && *seed > y && *seed < dmax) {
        // seed narrows the bracket; keep the sign invariant intact
        if (phi(*seed).sign() < 0)
            lo = *seed;
        else
            dmax = *seed;
    }
    return newton_bracketed(phi, dphi, lo, dmax, wp, "network D root");
}

BigFloat eval_Dprime(const BigFloat& u, const BigFloat& d) {
    return d * d * (d + 1) / (1 - u * d * d * 2 - u * u * d * d * d);
}

struct SPTau {
    BigFloat tau, D;
    BigFloat resid_T, resid_eqD;
};

SPTau solve_tau_sp_impl(const BigFloat& y, mpfr_prec_t wp, const BigFloat& R, const BigFloat& t,
                        const BigFloat& upsilon) {
    BigFloat log1py = log(y + 1);

    // T evaluated at the singularity itself has the closed form (1-t)/(1+t)^2
    BigFloat t_at_R = eval_T(R, upsilon);
    check_close(t_at_R, (1 - t) / tpow(t + 1, 2), static_cast<long>(wp) / 4, "T(R, y) closed form");
    if (!(t_at_R.sign() > 0)) throw std::runtime_error("solve_tau: T(R) must be positive");

    BigFloat last_d = y + 1;  // continuation seed for the inner solve
    auto g = [&](const BigFloat& u) {
        BigFloat d = solve_network_D(u, log1py, y, wp, &last_d);
        last_d = d;
        return eval_T(u, d);
    };
    auto dg = [&](const BigFloat& u) {
        BigFloat d = solve_network_D(u, log1py, y, wp, &last_d);
        Jet2<2> uj = Jet2<2>::variable(0, u);
        Jet2<2> dj = Jet2<2>::variable(1, d);
        Jet2<2> tj = eval_T(uj, dj);
        return tj.g[0] + tj.g[1] * eval_Dprime(u, d);
    };
    BigFloat hi = R * (1 - BigFloat::pow2(-48, wp));
    if (!(g(hi).sign() > 0)) throw std::runtime_error("solve_tau: no root below the singularity");
    BigFloat lo = R / 2;
    int guard = 0;
    while (g(lo).sign() > 0) {
        lo = lo / 2;
        if (++guard > 200) throw std::runtime_error("solve_tau: bracket failure");
    }
    BigFloat tau = newton_bracketed(g, dg, lo, hi, wp, "solve_tau");
    BigFloat d = solve_network_D(tau, log1py, y, wp, &last_d);

    // joint Newton polish on (network equation, T) in (u, D)
    for (int it = 0; it < 4; ++it) {
        Jet2<2> uj = Jet2<2>::variable(0, tau);
        Jet2<2> dj = Jet2<2>::variable(1, d);
        Jet2<2> yj = Jet2<2>::constant(y);
        Jet2<2> r1 = eval_network_eq(uj, yj, dj);
        Jet2<2> r2 = eval_T(uj, dj);
        BigFloat det = r1.g[0] * r2.g[1] - r1.g[1] * r2.g[0];
        if (det.sign() == 0) break;
        BigFloat du = (r1.v * r2.g[1] - r2.v * r1.g[1]) / det;
        BigFloat dd = (r2.v * r1.g[0] - r1.v * r2.g[0]) / det;
        tau = tau - du;
        d = d - dd;
    }
    SPTau out;
    out.tau = tau;
    out.D = d;
    out.resid_eqD = abs(eval_network_eq_fixed_y(tau, log1py, d));
    out.resid_T = abs(eval_T(tau, d));
    return out;
}

// Everything the edge law needs beyond the public ConnSP fields.
struct SPConnFull {
    ConnSP base;
    BigFloat rho1, rho2, taup;
};

SPConnFull solve_sp_connected_impl(const BigFloat& y, mpfr_prec_t prec) {
    mpfr_prec_t wp = prec + 96;
    BigFloat yw = BigFloat::from_long(0, wp) + y;
    TwoConnSP two = radius_2conn(yw, wp);
    SPTau ts = solve_tau_sp_impl(yw, wp, two.R, two.t, two.upsilon);
    if (!(ts.tau.sign() > 0 && ts.tau < two.R))
        throw std::runtime_error("solve_sp_connected: tau outside (0, R)");

    SPConnFull full;
    ConnSP& out = full.base;
    out.y = yw;
    out.tau = ts.tau;
    out.Dtau = ts.D;
    out.residual_T = ts.resid_T;
    out.residual_eqD = ts.resid_eqD;

    // second-order implicit partials of D(x, y) from the network equation
    Jet2<3> xj = Jet2<3>::variable(0, ts.tau);
    Jet2<3> yj = Jet2<3>::variable(1, yw);
    Jet2<3> dj = Jet2<3>::variable(2, ts.D);
    Jet2<3> phi = eval_network_eq(xj, yj, dj);
    const BigFloat& px = phi.g[0];
    const BigFloat& py = phi.g[1];
    const BigFloat& pd = phi.g[2];
    BigFloat Dx = -px / pd;
    BigFloat Dy = -py / pd;
    BigFloat Dxx = -(phi.hess(0, 0) + phi.hess(0, 2) * Dx * 2 + phi.hess(2, 2) * Dx * Dx) / pd;
    BigFloat Dxy = -(phi.hess(0, 1) + phi.hess(0, 2) * Dy + phi.hess(1, 2) * Dx +
                     phi.hess(2, 2) * Dx * Dy) /
                   pd;
    BigFloat Dyy = -(phi.hess(1, 1) + phi.hess(1, 2) * Dy * 2 + phi.hess(2, 2) * Dy * Dy) / pd;

    // printed closed forms for the first partials
    BigFloat denom = 1 - ts.tau * ts.D * ts.D * 2 - ts.tau * ts.tau * tpow(ts.D, 3);
    check_close(Dx, eval_Dprime(ts.tau, ts.D), static_cast<long>(prec) / 2, "dD/dx closed form");
    BigFloat dy_closed = tpow(ts.tau * ts.D + 1, 2) * (ts.D + 1) / (denom * (yw + 1));
    check_close(Dy, dy_closed, static_cast<long>(prec) / 2, "dD/dy closed form");

    Jet2<2> uj = Jet2<2>::variable(0, ts.tau);
    Jet2<2> yj2 = Jet2<2>::variable(1, yw);
    Jet2<2> dj2 = Jet2<2>::constant(ts.D);
    dj2.g[0] = Dx;
    dj2.g[1] = Dy;
    dj2.hess(0, 0) = Dxx;
    dj2.hess(0, 1) = Dxy;
    dj2.hess(1, 1) = Dyy;
    (void)yj2;

    Jet2<2> psi = eval_psi_sp(uj, dj2);
    out.rho = psi.v;
    if (abs(psi.g[0]) > BigFloat::pow2(-static_cast<long>(prec) / 2, wp) * (abs(out.rho) + 1))
        throw std::runtime_error("solve_sp_connected: Psi'(tau) does not vanish");
    out.psi_xx = psi.hess(0, 0);
    if (!(out.psi_xx.sign() < 0)) throw std::runtime_error("solve_sp_connected: Psi'' must be negative");

    Jet2<2> tjet = eval_T(uj, dj2);
    full.taup = -tjet.g[1] / tjet.g[0];
    BigFloat taup_alt = -psi.hess(0, 1) / out.psi_xx;
    check_close(full.taup, taup_alt, static_cast<long>(prec) / 3, "tau'(1) two routes");

    full.rho1 = psi.g[1];
    full.rho2 = psi.hess(0, 1) * full.taup + psi.hess(1, 1);

    out.F0 = ts.tau;
    out.F1 = -sqrt(-(out.rho * 2) / out.psi_xx);
    if (!(out.F1.sign() < 0)) throw std::runtime_error("solve_sp_connected: F1 must be negative");

    // printed polynomial form of F1
    {
        const BigFloat& u = ts.tau;
        const BigFloat& d = ts.D;
        BigFloat S = -tpow(u, 5) * tpow(d, 7) * 4 - tpow(u, 4) * tpow(d, 6) * 5 +
                     (tpow(u, 4) * 6 - tpow(u, 3)) * tpow(d, 5) + tpow(u, 3) * tpow(d, 4) * 5 -
                     tpow(u, 2) * tpow(d, 3) * 3 + tpow(u, 2) * tpow(d, 2) * 6 + u * d * 12 + 4;
        BigFloat f1_poly = (1 - u * d * d * 2 - u * u * tpow(d, 3)) * 2 / d *
                           sqrt(u * (u * d + 1) / S);
        check_close(abs(out.F1), abs(f1_poly), static_cast<long>(prec) / 3, "F1 polynomial form");
    }

    BigFloat half = half_of(wp), quarter = quarter_of(wp);
    BigFloat b_at_tau = eval_B_sp(ts.tau, ts.D, half, quarter);
    out.C0 = ts.tau * (log(out.rho) - log(ts.tau) + 1) + b_at_tau;
    out.C2 = -out.F0;
    // F = xC' turns the expansion of C into F = -C2 - (3/2) C3 X + O(X^2),
    // so C3 = -(2/3) F1
    out.C3 = out.F1 * (-2) / 3;
    if (!(out.C3.sign() > 0)) throw std::runtime_error("solve_sp_connected: C3 must be positive");
    out.G0 = exp(out.C0);
    out.G2 = out.G0 * out.C2;
    out.G3 = out.G0 * out.C3;
    out.conn_amplitude = out.C3 * 3 / (sqrt_pi(wp) * 4);
    out.all_amplitude = out.G0 * out.conn_amplitude;
    return full;
}

}  // namespace

ConnSP solve_sp_connected(const BigFloat& y, mpfr_prec_t prec) {
    return solve_sp_connected_impl(y, prec).base;
}

namespace {

struct OuterFull {
    OuterFam base;
    BigFloat rho1, rho2, taup;
    BigFloat R1, R2;  // derivatives of R(y)
};

// closed-form antiderivative of sqrt(1 + b s + c s^2) with c > 0
BigFloat sqrt_quad_integral(const BigFloat& x, const BigFloat& b, const BigFloat& c) {
    BigFloat w = sqrt(c * x * x + b * x + 1);
    BigFloat sc = sqrt(c);
    BigFloat first = ((c * x * 2 + b) * w - b) / (c * 4);
    BigFloat disc = (c * 4 - b * b) / (c * sc * 8);
    BigFloat ratio = (sc * w * 2 + c * x * 2 + b) / (sc * 2 + b);
    return first + disc * log(ratio);
}

// B(x, y) for the outerplanar family by integrating the closed-form B'
BigFloat outer_B_value(const BigFloat& x, const BigFloat& y, bool with_k4) {
    mpfr_prec_t wp = x.prec();
    BigFloat b = -(y * 2 + y * y * 4);
    BigFloat c = y * y;
    BigFloat integral = sqrt_quad_integral(x, b, c);
    BigFloat base = (x + x * x * y * (y * 2 + 3) / 2 - integral) / ((y + 1) * 4);
    if (with_k4) base += tpow(y, 6) * tpow(x, 4) / BigFloat::from_long(24, wp);
    return base;
}

OuterFull solve_outer_family_impl(bool with_k4, const BigFloat& y, mpfr_prec_t prec) {
    mpfr_prec_t wp = prec + 96;
    BigFloat yw = BigFloat::from_long(0, wp) + y;
    BigFloat quarter = quarter_of(wp), sixth = sixth_of(wp);

    OuterFull full;
    OuterFam& out = full.base;
    out.with_k4 = with_k4;
    out.y = yw;
    out.R = eval_R_outer(yw);

    // tau: root of Psi'(u) in (0, R); Psi' and Psi'' from univariate jets
    auto psi_jet = [&](const BigFloat& u) {
        TJet uj = TJet::variable(u, 2);
        TJet yj = TJet::constant(yw, 2);
        return eval_psi_outer(uj, yj, with_k4, quarter, sixth);
    };
    auto f = [&](const BigFloat& u) { return psi_jet(u).derivative(1); };
    auto df = [&](const BigFloat& u) { return psi_jet(u).derivative(2); };
    BigFloat lo = out.R / 64;
    BigFloat hi = out.R * (1 - BigFloat::pow2(-40, wp));
    int guard = 0;
    while (f(lo).sign() <= 0) {
        lo = lo / 2;
        if (++guard > 200) throw std::runtime_error("outer family: bracket failure");
    }
    out.tau = newton_bracketed(f, df, lo, hi, wp, "outer tau");
    out.residual = abs(f(out.tau));

    // second-order data at (tau, y)
    Jet2<2> uj = Jet2<2>::variable(0, out.tau);
    Jet2<2> yj = Jet2<2>::variable(1, yw);
    Jet2<2> psi = eval_psi_outer(uj, yj, with_k4, quarter, sixth);
    out.rho = psi.v;
    out.psi_xx = psi.hess(0, 0);
    if (!(out.psi_xx.sign() < 0)) throw std::runtime_error("outer family: Psi'' must be negative");
    full.taup = -psi.hess(0, 1) / out.psi_xx;
    full.rho1 = psi.g[1];
    full.rho2 = psi.hess(0, 1) * full.taup + psi.hess(1, 1);

    out.F1 = -sqrt(-(out.rho * 2) / out.psi_xx);
    out.C2 = -out.tau;
    out.C3 = out.F1 * (-2) / 3;
    if (!(out.C3.sign() > 0)) throw std::runtime_error("outer family: C3 must be positive");
    out.C0 = out.tau * (log(out.rho) - log(out.tau) + 1) + outer_B_value(out.tau, yw, with_k4);
    out.conn_amplitude = out.C3 * 3 / (sqrt_pi(wp) * 4);
    out.all_amplitude = exp(out.C0) * out.conn_amplitude;

    // X-expansion of B' at x = R(1-X^2): the odd part comes from
    // w = y sqrt(R) X sqrt(R2 - x), so the X-coefficient of B' is
    // -y sqrt(R (R2 - R)) / (4 (1+y)) and B3 = -(2R/3) * that.
    BigFloat w2 = yw * 2 + 1;
    BigFloat R2 = (w2 + sqrt(w2 * w2 - 1)) / yw;
    BigFloat c1 = -yw * sqrt(out.R * (R2 - out.R)) / ((yw + 1) * 4);
    out.B3 = -(out.R * 2 / 3) * c1;
    if (!(out.B3.sign() > 0)) throw std::runtime_error("outer family: B3 must be positive");
    out.bicon_amplitude = out.B3 * 3 / (sqrt_pi(wp) * 4);

    // y = 1: tau is the smallest positive root of 3u^4 - 28u^3 + 70u^2 - 58u + 8
    if (abs(yw - 1).sign() == 0 && !with_k4) {
        auto quartic = [&](const BigFloat& u) {
            return tpow(u, 4) * 3 - tpow(u, 3) * 28 + tpow(u, 2) * 70 - u * 58 + 8;
        };
        auto dquartic = [&](const BigFloat& u) {
            return tpow(u, 3) * 12 - tpow(u, 2) * 84 + u * 140 - 58;
        };
        BigFloat qlo = BigFloat::pow2(-20, wp);
        BigFloat qhi = BigFloat::from_long(1, wp) / 5;
        out.quartic_root = newton_bracketed(quartic, dquartic, qlo, qhi, wp, "outer quartic");
        check_close(out.quartic_root, out.tau, static_cast<long>(prec) / 2, "tau vs quartic root");
    }
    return full;
}

}  // namespace

OuterFam solve_outer_family(bool with_k4, const BigFloat& y, mpfr_prec_t prec) {
    return solve_outer_family_impl(with_k4, y, prec).base;
}

namespace {

// 5-point central differences of a scalar map around 1
void central_differences(const function<BigFloat(const BigFloat&)>& fn, mpfr_prec_t prec,
                         BigFloat& d1, BigFloat& d2) {
    mpfr_prec_t wp = prec + 96;
    BigFloat h = BigFloat::pow2(-static_cast<long>(prec) / 5, wp);
    BigFloat one = BigFloat::from_long(1, wp);
    BigFloat fp1 = fn(one + h);
    BigFloat fm1 = fn(one - h);
    BigFloat fp2 = fn(one + h * 2);
    BigFloat fm2 = fn(one - h * 2);
    BigFloat f0 = fn(one);
    d1 = (-fp2 + fp1 * 8 - fm1 * 8 + fm2) / (h * 12);
    d2 = (-fp2 + fp1 * 16 - f0 * 30 + fm1 * 16 - fm2) / (h * h * 12);
}

BigFloat sp_rho_scalar(const BigFloat& y, mpfr_prec_t prec) {
    mpfr_prec_t wp = prec + 96;
    BigFloat yw = BigFloat::from_long(0, wp) + y;
    TwoConnSP two = radius_2conn(yw, wp);
    SPTau ts = solve_tau_sp_impl(yw, wp, two.R, two.t, two.upsilon);
    return eval_psi_sp(ts.tau, ts.D);
}

BigFloat outer_rho_scalar(bool with_k4, const BigFloat& y, mpfr_prec_t prec) {
    return solve_outer_family(with_k4, y, prec).rho;
}

}  // namespace

EdgeLaw edge_law(Family f, Level l, mpfr_prec_t prec) {
    mpfr_prec_t wp = prec + 96;
    EdgeLaw out;
    out.family = f;
    out.level = l;
    BigFloat one = BigFloat::from_long(1, wp);

    if (l == Level::Biconnected) {
        if (f == Family::SeriesParallel) {
            TwoConnSP two = radius_2conn(one, wp);
            out.base = two.R;
            // R(y) = q(t(y)) with t'(y) = 1/Y'(t)
            TJet tj = TJet::variable(two.t, 2);
            TJet yjet = eval_Y(tj);
            TJet qjet = eval_q(tj);
            BigFloat y1 = yjet.derivative(1), y2 = yjet.derivative(2);
            BigFloat q1 = qjet.derivative(1), q2 = qjet.derivative(2);
            out.d1 = q1 / y1;
            out.d2 = q2 / (y1 * y1) - q1 * y2 / tpow(y1, 3);
            central_differences([&](const BigFloat& y) { return radius_2conn(y, wp).R; }, prec,
                                out.fd1, out.fd2);
        } else {
            TJet yj = TJet::variable(one, 2);
            TJet rj = eval_R_outer(yj);
            out.base = rj.value();
            out.d1 = rj.derivative(1);
            out.d2 = rj.derivative(2);
            central_differences([&](const BigFloat& y) { return eval_R_outer(y); }, prec, out.fd1,
                                out.fd2);
        }
    } else {
        if (f == Family::SeriesParallel) {
            SPConnFull full = solve_sp_connected_impl(one, prec);
            out.base = full.base.rho;
            out.d1 = full.rho1;
            out.d2 = full.rho2;
            out.taup = full.taup;
            central_differences([&](const BigFloat& y) { return sp_rho_scalar(y, prec); }, prec,
                                out.fd1, out.fd2);
        } else {
            bool k4 = f == Family::K23MinorFree;
            OuterFull full = solve_outer_family_impl(k4, one, prec);
            out.base = full.base.rho;
            out.d1 = full.rho1;
            out.d2 = full.rho2;
            out.taup = full.taup;
            central_differences([&](const BigFloat& y) { return outer_rho_scalar(k4, y, prec); },
                                prec, out.fd1, out.fd2);
        }
    }
    BigFloat ratio = out.d1 / out.base;
    out.kappa = -ratio;
    out.lambda = -out.d2 / out.base - ratio + ratio * ratio;
    if (!(out.lambda.sign() > 0)) throw std::runtime_error("edge law: variance constant must be positive");
    return out;
}

ComponentLaw component_law(Family f, mpfr_prec_t prec) {
    mpfr_prec_t wp = prec + 96;
    BigFloat one = BigFloat::from_long(1, wp);
    ComponentLaw law;
    law.family = f;
    switch (f) {
        case Family::SeriesParallel:
            law.parameter = solve_sp_connected(one, prec).C0;
            break;
        case Family::Outerplanar:
            law.parameter = solve_outer_family(false, one, prec).C0;
            break;
        case Family::K23MinorFree:
            law.parameter = solve_outer_family(true, one, prec).C0;
            break;
    }
    law.p_connected = exp(-law.parameter);
    return law;
}

namespace {

struct NamedValue {
    std::string family, level, name, method;
    BigFloat value;
    double residual;
};

std::vector<NamedValue> collect_constants(mpfr_prec_t prec) {
    std::vector<NamedValue> v;
    BigFloat one = BigFloat::from_long(1, prec + 96);
    auto push = [&](const std::string& fam, const std::string& lvl, const std::string& name,
                    const BigFloat& val, const std::string& method, double residual = 0.0) {
        v.push_back(NamedValue{fam, lvl, name, method, val, residual});
    };

    TwoConnSP two = radius_2conn(one, prec);
    push("sp", "biconnected", "t", two.t, "bracketed newton", two.residual.to_double());
    push("sp", "biconnected", "R", two.R, "closed form at t", two.residual.to_double());
    push("sp", "biconnected", "D0", two.D0, "closed form at t");
    push("sp", "biconnected", "D1", two.D1, "square-root expansion");
    push("sp", "biconnected", "D2", two.D2, "square-root expansion");
    push("sp", "biconnected", "B0", two.B0, "X-jet of the closed form");
    push("sp", "biconnected", "B2", two.B2, "X-jet of the closed form");
    push("sp", "biconnected", "B3", two.B3, "X-jet of the closed form");
    push("sp", "biconnected", "b", two.amplitude, "3 B3/(4 sqrt pi)");

    EdgeLaw law0 = edge_law(Family::SeriesParallel, Level::Biconnected, prec);
    push("sp", "biconnected", "R1", law0.d1, "t-jet chain rule",
         abs(law0.d1 - law0.fd1).to_double());
    push("sp", "biconnected", "R2", law0.d2, "t-jet chain rule",
         abs(law0.d2 - law0.fd2).to_double());
    push("sp", "biconnected", "kappa0", law0.kappa, "edge law");
    push("sp", "biconnected", "lambda0", law0.lambda, "edge law");

    ConnSP sp = solve_sp_connected(one, prec);
    double sp_resid = std::max(sp.residual_T.to_double(), sp.residual_eqD.to_double());
    push("sp", "connected", "tau", sp.tau, "joint newton", sp_resid);
    push("sp", "connected", "D_tau", sp.Dtau, "joint newton", sp_resid);
    push("sp", "connected", "rho", sp.rho, "Psi(tau)");
    push("sp", "connected", "gamma", one / sp.rho, "1/rho");
    push("sp", "connected", "F1", sp.F1, "sqrt(-2 rho/Psi'')");
    push("sp", "connected", "C0", sp.C0, "closed form at tau");
    push("sp", "connected", "C3", sp.C3, "-3 F1/2");
    push("sp", "connected", "c", sp.conn_amplitude, "3 C3/(4 sqrt pi)");
    push("sp", "all", "g", sp.all_amplitude, "exp(C0) c");

    EdgeLaw law1 = edge_law(Family::SeriesParallel, Level::Connected, prec);
    push("sp", "connected", "rho1", law1.d1, "implicit jets", abs(law1.d1 - law1.fd1).to_double());
    push("sp", "connected", "tau1", law1.taup, "implicit jets");
    push("sp", "connected", "rho2", law1.d2, "implicit jets", abs(law1.d2 - law1.fd2).to_double());
    push("sp", "connected", "kappa", law1.kappa, "edge law");
    push("sp", "connected", "lambda", law1.lambda, "edge law");

    ComponentLaw clsp = component_law(Family::SeriesParallel, prec);
    push("sp", "", "nu", clsp.parameter, "C0(1)");
    push("sp", "", "p_connected", clsp.p_connected, "exp(-nu)");

    OuterFam op = solve_outer_family(false, one, prec);
    push("outerplanar", "biconnected", "R", op.R, "radicand root");
    push("outerplanar", "connected", "tau", op.tau, "bracketed newton", op.residual.to_double());
    push("outerplanar", "connected", "rho", op.rho, "Psi(tau)");
    push("outerplanar", "connected", "gamma", one / op.rho, "1/rho");
    push("outerplanar", "all", "h", op.all_amplitude, "exp(C0) 3C3/(4 sqrt pi)");
    push("outerplanar", "biconnected", "B3", op.B3, "X-jet of the closed form");

    EdgeLaw law2 = edge_law(Family::Outerplanar, Level::Connected, prec);
    push("outerplanar", "connected", "zeta", law2.kappa, "edge law",
         abs(law2.d1 - law2.fd1).to_double());
    push("outerplanar", "connected", "eta", law2.lambda, "edge law",
         abs(law2.d2 - law2.fd2).to_double());

    ComponentLaw clo = component_law(Family::Outerplanar, prec);
    push("outerplanar", "", "xi", clo.parameter, "C0(1)");
    push("outerplanar", "", "p_connected", clo.p_connected, "exp(-xi)");

    OuterFam k23 = solve_outer_family(true, one, prec);
    push("k23free", "connected", "tau", k23.tau, "bracketed newton", k23.residual.to_double());
    push("k23free", "connected", "rho", k23.rho, "Psi(tau)");
    push("k23free", "connected", "gamma", one / k23.rho, "1/rho");
    push("k23free", "all", "s", k23.all_amplitude, "exp(C0) 3C3/(4 sqrt pi)");

    EdgeLaw law3 = edge_law(Family::K23MinorFree, Level::Connected, prec);
    push("k23free", "connected", "zeta", law3.kappa, "edge law",
         abs(law3.d1 - law3.fd1).to_double());
    push("k23free", "connected", "eta", law3.lambda, "edge law",
         abs(law3.d2 - law3.fd2).to_double());
    return v;
}

}  // namespace

std::vector<ConstantEntry> constants_report(mpfr_prec_t prec) {
    std::vector<NamedValue> lo = collect_constants(prec);
    std::vector<NamedValue> hi = collect_constants(prec * 2);
    if (lo.size() != hi.size()) throw std::logic_error("constants report shape mismatch");
    std::vector<ConstantEntry> out;
    out.reserve(lo.size());
    for (std::size_t i = 0; i < lo.size(); ++i) {
        ConstantEntry e;
        e.family = lo[i].family;
        e.level = lo[i].level;
        e.name = lo[i].name;
        e.method = lo[i].method;
        e.residual = std::max(lo[i].residual, hi[i].residual);
        e.value = hi[i].value;
        e.agreed_digits = agreed_decimal_digits(lo[i].value, hi[i].value);
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<SummaryRow> summary_table(mpfr_prec_t prec) {
    mpfr_prec_t wp = prec + 96;
    BigFloat one = BigFloat::from_long(1, wp);
    std::vector<SummaryRow> rows;
    rows.push_back(SummaryRow{"planar", BigFloat::from_string("27.2268", wp),
                              BigFloat::from_string("2.2132", wp), true});
    ConnSP sp = solve_sp_connected(one, prec);
    EdgeLaw lsp = edge_law(Family::SeriesParallel, Level::Connected, prec);
    rows.push_back(SummaryRow{"series-parallel", one / sp.rho, lsp.kappa, false});
    OuterFam op = solve_outer_family(false, one, prec);
    EdgeLaw lop = edge_law(Family::Outerplanar, Level::Connected, prec);
    rows.push_back(SummaryRow{"outerplanar", one / op.rho, lop.kappa, false});
    OuterFam k23 = solve_outer_family(true, one, prec);
    EdgeLaw lk = edge_law(Family::K23MinorFree, Level::Connected, prec);
    rows.push_back(SummaryRow{"no-k23-minor", one / k23.rho, lk.kappa, false});
    return rows;
}

}  // namespace graphenum::singularity
