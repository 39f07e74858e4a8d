#pragma once

#include <string>
#include <vector>

#include "graphenum/bigfloat.hpp"
#include "graphenum/families.hpp"

namespace graphenum::singularity {

// Unique t in (0,1) with Y(t) = y, Y(t) = exp(-t^2/(1+t))/(1-t^2) - 1.
BigFloat solve_t(const BigFloat& y, mpfr_prec_t prec);

// Singularity data of the 2-connected series-parallel EGF at fixed y:
// R(y) = (1+t)(1-t)^2/t^3 together with the square-root expansion of the
// network series D and the X^3 expansion of B at x = R.
struct TwoConnSP {
    BigFloat y, t, upsilon, L, R;
    BigFloat psi2, psi3;  // inverse-function derivatives at upsilon
    BigFloat D0, D1, D2;
    BigFloat B0, B2, B3;
    BigFloat amplitude;  // 3 B3 / (4 sqrt(pi))
    BigFloat residual;   // |Y(t) - y|
};
TwoConnSP radius_2conn(const BigFloat& y, mpfr_prec_t prec);

// Joint critical point of the connected series-parallel pipeline: tau solves
// T(u, D(u,y)) = 0 with T = u^4 D^6 + u^3 D^5 + 2 u^2 D^3 + 4 u D^2 - 2,
// rho = Psi(tau) with Psi(u) = u exp(uD(uD^2-2)/(2(1+uD))).
struct ConnSP {
    BigFloat y, tau, Dtau, rho;
    BigFloat psi_xx;  // Psi''(tau) < 0
    BigFloat F0, F1;
    BigFloat C0, C2, C3;
    BigFloat G0, G2, G3;
    BigFloat conn_amplitude, all_amplitude;  // 3C3/(4 sqrt pi), e^{C0} * same
    BigFloat residual_T, residual_eqD;
};
ConnSP solve_sp_connected(const BigFloat& y, mpfr_prec_t prec);

// Outerplanar (and, with the K4 block, K2,3-minor-free) counterpart with the
// explicit block-derivative kernel.
struct OuterFam {
    bool with_k4 = false;
    BigFloat y, R, tau, rho;
    BigFloat psi_xx;
    BigFloat F1, C0, C2, C3;
    BigFloat B3;
    BigFloat bicon_amplitude, conn_amplitude, all_amplitude;
    BigFloat quartic_root;  // y = 1 only: smallest positive root of
                            // 3u^4 - 28u^3 + 70u^2 - 58u + 8
    BigFloat residual;      // |Psi'(tau)|
};
OuterFam solve_outer_family(bool with_k4, const BigFloat& y, mpfr_prec_t prec);

// Gaussian edge-law constants at y = 1 for a family and connectivity level.
// kappa = -r'(1)/r(1), lambda = -r''/r - r'/r + (r'/r)^2 where r is R for the
// 2-connected level and rho otherwise. Analytic derivatives come from jets;
// fd1/fd2 are 5-point central differences of the re-solved scalar maps.
struct EdgeLaw {
    Family family = Family::SeriesParallel;
    Level level = Level::All;
    BigFloat base, d1, d2;
    BigFloat fd1, fd2;
    BigFloat kappa, lambda;
    BigFloat taup;  // tau'(1) for connected levels
};
EdgeLaw edge_law(Family f, Level l, mpfr_prec_t prec);

// Shifted-Poisson component law: parameter = C0(1) and the limiting
// probability of connectedness e^{-C0}.
struct ComponentLaw {
    Family family;
    BigFloat parameter;
    BigFloat p_connected;
};
ComponentLaw component_law(Family f, mpfr_prec_t prec);

// One named constant of the final report, computed at prec and 2*prec.
struct ConstantEntry {
    std::string family;  // empty when not family-specific
    std::string level;
    std::string name;
    BigFloat value;  // from the higher-precision run
    int agreed_digits = 0;
    std::string method;
    double residual = 0.0;
};
std::vector<ConstantEntry> constants_report(mpfr_prec_t prec);

struct SummaryRow {
    std::string label;
    BigFloat growth;
    BigFloat expected_edges;
    bool reference_only = false;
};
// Growth constants and expected-edge slopes for the three computed families,
// plus the planar row carried as fixed reference values.
std::vector<SummaryRow> summary_table(mpfr_prec_t prec);

}  // namespace graphenum::singularity
