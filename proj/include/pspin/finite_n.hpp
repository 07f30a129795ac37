#pragma once

#include <cmath>

#include "pspin/numerics.hpp"
#include "pspin/types.hpp"

namespace pspin {

/// log E exp(t |g|) for g ~ N(0,1): t^2/2 + log erfc(-t/sqrt(2)).
inline double abs_gaussian_log_mgf(double t) {
    return 0.5 * t * t + num::log_erfc(-t / std::sqrt(2.0));
}

/// log E exp(t ||g||_2) for g ~ N(0, I_n), by adaptive quadrature against
/// the chi density with n degrees of freedom. The log-density is formed
/// via lgamma and the integrand is centered on the exponent's mode; the
/// window extends 13 units past the mode, where the exponent has dropped
/// by more than 80 nats (curvature >= 1).
inline double chi_log_mgf(int n, double t, double rel_tol = 1e-10) {
    if (n < 1) throw std::domain_error("chi_log_mgf: requires n >= 1");
    double log_norm = (1.0 - 0.5 * n) * std::log(2.0) - std::lgamma(0.5 * n);
    auto eta = [n, t](double r) {
        double lr = (n > 1) ? (n - 1.0) * std::log(r) : 0.0;
        return t * r + lr - 0.5 * r * r;
    };
    double r_star = 0.5 * (t + std::sqrt(t * t + 4.0 * (n - 1.0)));
    double eta_max = eta(r_star);
    double lo = std::max(0.0, r_star - 13.0);
    double hi = r_star + 13.0;
    double integral = num::integrate(
        [&](double r) { return r > 0.0 || n == 1 ? std::exp(eta(r) - eta_max) : 0.0; }, lo, hi,
        rel_tol);
    return eta_max + log_norm + std::log(integral);
}

/// Analytic finite-n upper bound (the single-set specialization):
///   xi_u0(p; S, n, c3) = sqrt(p/n) (-c3 (p-1)/2
///                        + log E_g exp(c3 sqrt(p) max_{x in S} g^T x) / c3).
/// For Ising the max is sum_i |g_i| / sqrt(n) and the moment factorizes per
/// coordinate; for spherical it is ||g||_2 and the chi quadrature is used.
inline double finite_n_upper_bound(int p, int n, double c3, SpinSet set) {
    if (p < 2) throw std::domain_error("finite_n_upper_bound: requires p >= 2");
    if (n < 1) throw std::domain_error("finite_n_upper_bound: requires n >= 1");
    if (!(c3 > 0.0)) throw std::domain_error("finite_n_upper_bound: requires c3 > 0");
    double sp = std::sqrt((double)p);
    double sn = std::sqrt((double)n);
    double log_moment;
    if (set == SpinSet::Ising) {
        log_moment = n * abs_gaussian_log_mgf(c3 * sp / sn);
    } else {
        log_moment = chi_log_mgf(n, c3 * sp);
    }
    return sp / sn * (-0.5 * c3 * (p - 1.0) + log_moment / c3);
}

}  // namespace pspin
