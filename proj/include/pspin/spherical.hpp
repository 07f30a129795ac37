#pragma once

#include <cmath>
#include <string>

#include "pspin/numerics.hpp"
#include "pspin/types.hpp"

namespace pspin {

/// Threshold energy u_* = 2 sqrt((p-1)/p) below which the spherical rate
/// formula is undefined.
inline double u_star(int p) {
    if (p < 2) throw std::domain_error("u_star: requires p >= 2");
    return 2.0 * std::sqrt((p - 1.0) / p);
}

namespace detail {

// u^2 - u_*^2 with sub-ulp negative excess treated as the boundary, so the
// square-root terms vanish exactly at u = u_*.
inline double sqrt_excess_sq(double u2, double us2) {
    double s2 = u2 - us2;
    if (s2 <= 64.0 * std::numeric_limits<double>::epsilon() * us2) return 0.0;
    return s2;
}

inline void check_spherical_domain(int p, double u, const char* who) {
    if (p < 2) throw std::domain_error(std::string(who) + ": requires p >= 2");
    double us = u_star(p);
    if (u < us * (1.0 - 1e-12))
        throw std::domain_error(std::string(who) + ": u below u_*(p)");
}

}  // namespace detail

/// Optimal Chernoff parameter for the spherical rate function: the
/// nonnegative root of c3^2 (1-p) + u (p-2) c3 + u^2 - p = 0. Written with
/// both numerator terms positive, so there is no cancellation.
inline double spherical_c3_hat(int p, double u) {
    detail::check_spherical_domain(p, u, "spherical_c3_hat");
    double pu = p * u;
    double disc = pu * pu - 4.0 * (p - 1.0) * p;
    double scale = std::max(1.0, pu * pu);
    if (disc < -1e-12 * scale)
        throw std::domain_error("spherical_c3_hat: negative discriminant (u below u_*)");
    // sub-ulp discriminants are the u = u_* boundary; by continuity the
    // root there is (p-2) u / (2(p-1)), exactly 0 at p = 2
    if (disc <= 64.0 * std::numeric_limits<double>::epsilon() * scale) disc = 0.0;
    return ((p - 2.0) * u + std::sqrt(disc)) / (2.0 * (p - 1.0));
}

/// Inner optimizer gamma_hat = (c3 sqrt(p) + sqrt(c3^2 p + 4)) / 4; it
/// satisfies 2 gamma (2 gamma - c3 sqrt(p)) = 1.
inline double spherical_gamma_hat(int p, double c3) {
    if (p < 2) throw std::domain_error("spherical_gamma_hat: requires p >= 2");
    if (c3 < 0.0) throw std::domain_error("spherical_gamma_hat: requires c3 >= 0");
    return (c3 * std::sqrt((double)p) + std::sqrt(c3 * c3 * p + 4.0)) / 4.0;
}

/// Stationary point of the spherical Chernoff exponent at (p, u), with the
/// residuals of the defining equations exposed for verification.
struct SphericalStationary {
    int p = 0;
    double u = 0.0;
    double c3_hat = 0.0;
    double gamma_hat = 0.0;

    double quadratic_residual() const {
        return c3_hat * c3_hat * (1.0 - p) + u * (p - 2.0) * c3_hat + u * u - p;
    }
    double inner_residual() const {
        return 2.0 * gamma_hat * (2.0 * gamma_hat - c3_hat * std::sqrt((double)p)) - 1.0;
    }
};

inline SphericalStationary spherical_stationary(int p, double u) {
    double c3 = spherical_c3_hat(p, u);
    return SphericalStationary{p, u, c3, spherical_gamma_hat(p, c3)};
}

/// Spherical rate function phi_{S^n}(p, u) for u >= u_*(p):
///   1/2 log(p-1) - (p-2) u^2 / (4(p-1)) - u s / u_*^2 + log((u + s)/u_*)
/// with s = sqrt(u^2 - u_*^2).
inline RatePoint spherical_rate(int p, double u) {
    detail::check_spherical_domain(p, u, "spherical_rate");
    double us = u_star(p);
    double us2 = us * us;
    double s = std::sqrt(detail::sqrt_excess_sq(u * u, us2));
    double phi = 0.5 * std::log(p - 1.0) - (p - 2.0) * u * u / (4.0 * (p - 1.0)) -
                 u * s / us2 + std::log((u + s) / us);
    return RatePoint{p, u, phi, spherical_c3_hat(p, u)};
}

namespace detail {

// min_{c3>0} objective whose value is u_GS^(sph):
//   -c3 (p-1)/2 + gamma_hat sqrt(p) - log(1 - c3 sqrt(p)/(2 gamma_hat)) / (2 c3).
// At the inner optimum 1 - c3 sqrt(p)/(2 gamma) = 1/(4 gamma^2), so the log
// term equals log(2 gamma)/c3; 2 gamma - 1 is formed cancellation-free to
// keep the c3 -> 0 limit accurate.
inline double spherical_gse_objective(int p, double c3) {
    double sp = std::sqrt((double)p);
    double r = std::sqrt(c3 * c3 * p + 4.0);
    double two_gamma_minus_1 = (c3 * sp + c3 * c3 * p / (r + 2.0)) / 2.0;
    return -0.5 * c3 * (p - 1.0) + 0.5 * sp * (1.0 + two_gamma_minus_1) +
           std::log1p(two_gamma_minus_1) / c3;
}

}  // namespace detail

/// Exact spherical GSE at the second lifting level. u_gs is computed two
/// ways -- smallest root of phi(p, .) past u_*, and scalar minimization of
/// the Chernoff objective over c3 -- and the routes must agree to 1e-8.
inline GseValue spherical_gse(int p) {
    if (p < 2) throw std::domain_error("spherical_gse: requires p >= 2");
    double us = u_star(p);

    auto phi = [p](double u) { return spherical_rate(p, u).phi; };
    double lo = us + 1e-12;
    double f_lo = phi(lo);
    double u_root;
    if (f_lo <= 1e-12) {
        // p = 2: phi(u_*) = 0 and phi decreases past it, so the root is u_*.
        u_root = us;
    } else {
        double hi = us + 10.0;
        u_root = num::find_root(phi, num::Bracket{lo, hi, f_lo, phi(hi)});
    }

    auto obj = [p](double c3) { return detail::spherical_gse_objective(p, c3); };
    num::MinResult m = num::minimize_scalar(obj, 1e-8);
    if (std::abs(u_root - m.min) > 1e-8)
        throw consistency_error("spherical_gse: root-of-phi and min-over-c3 disagree for p=" +
                                std::to_string(p));

    double sp = std::sqrt((double)p);
    return GseValue{p,      SpinSet::Spherical,        LiftLevel::Second,
                    u_root, sp * u_root, spherical_c3_hat(p, u_root), true};
}

/// First lifting level (c3 -> 0): u_gs = sqrt(p), so xi = p. An upper
/// bound, matching the replica symmetric prediction.
inline GseValue spherical_first_level(int p) {
    if (p < 2) throw std::domain_error("spherical_first_level: requires p >= 2");
    double sp = std::sqrt((double)p);
    return GseValue{p, SpinSet::Spherical, LiftLevel::First, sp, (double)p, 0.0, false};
}

}  // namespace pspin
