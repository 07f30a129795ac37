#pragma once

#include <cmath>
#include <string>

#include "pspin/numerics.hpp"
#include "pspin/spherical.hpp"
#include "pspin/types.hpp"

namespace pspin {

/// Solution of the TAP-based spherical GSE characterization: the overlap
/// q_s, its auxiliary z = 1/q_s - 1, and the ground state energy
/// E_* = sqrt(-log(1-q_s) (1 + p z)).
struct SubagSolution {
    int p = 0;
    double q_s = 0.0;
    double z_hat = 0.0;
    double e_star = 0.0;

    /// Residual of the defining fixed point
    /// q^2 / (p(1-q)) = -log(1-q) / (1 + p(1/q - 1)).
    double fixed_point_residual() const {
        return q_s * q_s / (p * (1.0 - q_s)) + std::log1p(-q_s) / (1.0 + p * z_hat);
    }
};

/// Solve the overlap system for p >= 3. Two routes: (a) substitute
/// E = u_GS^(sph)(p) into the quadratic z^2 (E^2-p) p + z (E^2-2) p - 1 = 0
/// and take the plus branch; (b) solve the fixed point for q_s directly by
/// bracketed iteration. The routes must agree to 1e-9. p = 2 is the
/// degenerate boundary (E sqrt(p/(p-1)) = 2 exactly) and is rejected.
inline SubagSolution subag_solution(int p) {
    if (p < 3) throw std::domain_error("subag_solution: requires p >= 3 (p = 2 is degenerate)");

    double e = spherical_gse(p).u_gs;
    double e2 = e * e;
    double disc = e2 - 4.0 * (p - 1.0) / p;
    if (disc < 0.0) disc = 0.0;
    double z = (-(e2 - 2.0) + e * std::sqrt(disc)) / (2.0 * (e2 - p));
    double q = 1.0 / (1.0 + z);

    // independent route: q^2 + p q (1-q) + p (1-q) log(1-q) = 0 on (0, 1),
    // the fixed point cleared of denominators (q = 0 is the trivial root)
    auto fp = [p](double qq) {
        return qq * qq + p * qq * (1.0 - qq) + p * (1.0 - qq) * std::log1p(-qq);
    };
    double q_fp = num::find_root(fp, num::bracket_root(fp, 0.05, 1.0 - 1e-9));
    if (std::abs(q - q_fp) > 1e-9)
        throw consistency_error("subag_solution: quadratic and fixed-point routes disagree for p=" +
                                std::to_string(p));

    SubagSolution s{p, q, z, std::sqrt(-std::log1p(-q) * (1.0 + p * z))};
    if (std::abs(s.fixed_point_residual()) > 1e-10)
        throw consistency_error("subag_solution: fixed-point residual above tolerance for p=" +
                                std::to_string(p));
    return s;
}

/// Left-hand side of the rearranged critical-point equation for the GSE
/// upper bound E_0 (zero exactly at the bound):
///   log(p-1)/2 - E^2 (p-2)/(4(p-1)) - |E| p sqrt(E^2 - 4(p-1)/p)/(4(p-1))
///   + log((sqrt(E^2 - 4(p-1)/p) + |E|) / sqrt(4(p-1)/p)).
inline double darmc_residual(int p, double e0) {
    if (p < 2) throw std::domain_error("darmc_residual: requires p >= 2");
    double ratio = std::abs(e0) * std::sqrt(p / (p - 1.0));
    if (ratio < 2.0 * (1.0 - 1e-12))
        throw std::domain_error("darmc_residual: requires e0 sqrt(p/(p-1)) >= 2");
    double us2 = 4.0 * (p - 1.0) / p;
    double a = std::abs(e0);
    double s = std::sqrt(detail::sqrt_excess_sq(a * a, us2));
    return 0.5 * std::log(p - 1.0) - e0 * e0 * (p - 2.0) / (4.0 * (p - 1.0)) -
           a * s * p / (4.0 * (p - 1.0)) + std::log((s + a) / std::sqrt(us2));
}

/// Residuals of the two identities that tie the Chernoff stationary point
/// at u = u_GS^(sph) to the overlap solution:
///   1/(4 gamma^2) = z/(1+z)   and   c3 u = (1 + p z) / (p z (1+z)).
struct AgreementResiduals {
    double gamma_identity = 0.0;
    double c3u_identity = 0.0;
};

inline AgreementResiduals agreement_identities(int p) {
    double u = spherical_gse(p).u_gs;
    double c3 = spherical_c3_hat(p, u);
    double g = spherical_gamma_hat(p, c3);
    double z = subag_solution(p).z_hat;
    double r1 = std::abs(1.0 / (4.0 * g * g) - z / (1.0 + z));
    double r2 = std::abs(c3 * u - (1.0 + p * z) / (p * z * (1.0 + z)));
    return AgreementResiduals{r1, r2};
}

}  // namespace pspin
