#pragma once

#include <cmath>
#include <string>

#include "pspin/numerics.hpp"
#include "pspin/types.hpp"

namespace pspin {

/// Energy at which the optimal Chernoff parameter reaches zero:
/// sqrt(2p/pi), the c3 -> 0 limit of the bound objective.
inline double ising_rate_boundary(int p) {
    if (p < 2) throw std::domain_error("ising_rate_boundary: requires p >= 2");
    return std::sqrt(2.0 * p / M_PI);
}

namespace detail {

struct IsingStationary {
    double c3 = 0.0;
    double log_u_minus_c3 = 0.0;  // log(u - c3), kept separately: the gap
                                  // closes like e^{-u^2 p / 2} for large u
};

// Stationarity of phi_3(c) = c^2/2 + log erfc(-c sqrt(p/2)) - c u:
//   1 / erfc(-c sqrt(p/2)) = e^{c^2 p / 2} (u - c) sqrt(pi / (2p)).
// Solved as a log-residual in lambda = log(u - c), so the exponential is
// never formed and u - c stays resolvable when it underflows u's ulp:
//   rho(lambda) = -log erfc(-c sqrt(p/2)) - p c^2 / 2 - lambda
//                 + log(2p/pi) / 2,  c = u - e^lambda.
// Of the up-to-two stationary points the up-crossing root (the local
// minimum of phi_3) is returned; it exists for every u above the fold
// where the two roots merge, which sits strictly below u_GS.
inline IsingStationary ising_stationary(int p, double u) {
    if (p < 2) throw std::domain_error("ising_rate: requires p >= 2");
    if (!(u > 0.0))
        throw std::domain_error("ising_rate: u below the tail regime (no stationary point)");

    double shp = std::sqrt(0.5 * p);
    double k = 0.5 * std::log(2.0 * p / M_PI);
    auto rho = [&](double lam) {
        double c = u - std::exp(lam);
        return -num::log_erfc(-c * shp) - 0.5 * p * c * c - lam + k;
    };

    double lam_hi = std::log(u);
    double lam_minus = lam_hi;
    if (rho(lam_hi) < -1e-12) {
        lam_minus = lam_hi;
    } else {
        // u at or below the c3 = 0 boundary: scan for the interior dip
        bool found = false;
        double lam = lam_hi;
        for (int i = 0; i < 800 && !found; ++i) {
            lam -= 0.05;
            if (rho(lam) < -1e-12) {
                lam_minus = lam;
                found = true;
            }
        }
        if (!found)
            throw std::domain_error(
                "ising_rate: u below the tail regime (no stationary point with u > c3 >= 0)");
    }

    double lam_plus = lam_minus;
    double r_plus = rho(lam_plus);
    for (int i = 0; i < 1200 && !(r_plus > 0.0); ++i) {
        lam_plus -= 2.0;
        r_plus = rho(lam_plus);
    }
    if (!(r_plus > 0.0)) throw std::runtime_error("ising_rate: stationarity bracket failure");

    num::SolverConfig cfg{1e-13, 1e-13, 400};
    double lam = num::find_root(rho, num::Bracket{lam_plus, lam_minus, r_plus, rho(lam_minus)}, cfg);
    return IsingStationary{std::max(u - std::exp(lam), 0.0), lam};
}

}  // namespace detail

/// Ising rate function phi_{B^n}(p, u). Both closed forms of the stationary
/// exponent are evaluated at c3_hat and must agree to 1e-10; the first,
///   -c3^2 (p-1)/2 - log(u - c3) - c3 u - log(pi/(2p)) / 2,
/// is the one reported.
inline RatePoint ising_rate(int p, double u) {
    detail::IsingStationary st = detail::ising_stationary(p, u);
    double c = st.c3;
    double k = 0.5 * std::log(2.0 * p / M_PI);
    double phi_a = -0.5 * c * c * (p - 1.0) - st.log_u_minus_c3 - c * u + k;
    double phi_b = 0.5 * c * c + num::log_erfc(-c * std::sqrt(0.5 * p)) - c * u;
    if (std::abs(phi_a - phi_b) > 1e-10)
        throw consistency_error("ising_rate: the two closed forms of phi disagree at p=" +
                                std::to_string(p) + ", u=" + std::to_string(u));
    return RatePoint{p, u, phi_a, c};
}

/// Ising GSE upper bound at the second lifting level:
///   u_GS = min_{c3>0} (c3/2 + log erfc(-c3 sqrt(p/2)) / c3),
/// cross-checked against the root of phi(p, .); exact is false (a bound).
inline GseValue ising_gse_bound(int p) {
    if (p < 2) throw std::domain_error("ising_gse_bound: requires p >= 2");

    auto obj = [p](double c) {
        return 0.5 * c + num::log_erfc(-c * std::sqrt(0.5 * p)) / c;
    };
    num::MinResult m = num::minimize_scalar(obj, 1e-8);
    double u_min = m.min;

    auto phi = [p](double u) { return ising_rate(p, u).phi; };
    double u_root = std::numeric_limits<double>::quiet_NaN();
    for (double offset : {1e-3, 1e-4, 1e-5}) {
        double f_lo, f_hi;
        try {
            f_lo = phi(u_min - offset);
            f_hi = phi(u_min + offset);
        } catch (const std::domain_error&) {
            continue;
        }
        if (!(f_lo > 0.0 && f_hi < 0.0)) continue;
        u_root = num::find_root(phi, num::Bracket{u_min - offset, u_min + offset, f_lo, f_hi});
        break;
    }
    if (std::isnan(u_root))
        throw consistency_error("ising_gse_bound: could not bracket the rate-function zero near p=" +
                                std::to_string(p));
    if (std::abs(u_root - u_min) > 1e-8)
        throw consistency_error("ising_gse_bound: min-over-c3 and root-of-phi disagree for p=" +
                                std::to_string(p));

    double sp = std::sqrt((double)p);
    return GseValue{p,      SpinSet::Ising,        LiftLevel::Second,
                    u_root, sp * u_root, ising_rate(p, u_root).c3_hat, false};
}

/// First lifting level (c3 -> 0): u_gs = sqrt(2p/pi), the per-coordinate
/// expected absolute Gaussian times sqrt(p); xi = p sqrt(2/pi).
inline GseValue ising_first_level(int p) {
    if (p < 2) throw std::domain_error("ising_first_level: requires p >= 2");
    double u = ising_rate_boundary(p);
    return GseValue{p, SpinSet::Ising, LiftLevel::First, u, std::sqrt((double)p) * u, 0.0, false};
}

}  // namespace pspin
