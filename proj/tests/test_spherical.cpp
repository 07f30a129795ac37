#include <doctest.h>

#include <cmath>

#include "pspin/spherical.hpp"

using namespace pspin;

namespace {

// independent route to the rate value: the Chernoff exponent
//   phi_2(c3) = -c3^2 (p-1)/2 + gamma c3 sqrt(p)
//               - log(1 - c3 sqrt(p)/(2 gamma))/2 - c3 u
// evaluated at the stationary pair, term by term as displayed
double phi2_oracle(int p, double u) {
    double c3 = spherical_c3_hat(p, u);
    double g = spherical_gamma_hat(p, c3);
    double sp = std::sqrt((double)p);
    return -0.5 * c3 * c3 * (p - 1.0) + g * c3 * sp - 0.5 * std::log(1.0 - c3 * sp / (2.0 * g)) -
           c3 * u;
}

// the rejected sign of the quadratic root
double c3_rejected(int p, double u) {
    double pu = p * u;
    double disc = std::max(pu * pu - 4.0 * (p - 1.0) * p, 0.0);
    return ((p - 2.0) * u - std::sqrt(disc)) / (2.0 * (p - 1.0));
}

}  // namespace

TEST_CASE("u_star values and limit") {
    CHECK(u_star(2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(u_star(4) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
    double far = u_star(1000000);
    CHECK(far > 1.999998);
    CHECK(far < 2.0);
    CHECK_THROWS_AS(u_star(1), std::domain_error);
}

TEST_CASE("spherical_rate: boundary and closed-form anchors") {
    CHECK(spherical_rate(2, std::sqrt(2.0)).phi == 0.0);  // every term vanishes

    // at u = u_*(3) only the log(p-1) and quadratic terms survive
    double phi3 = spherical_rate(3, u_star(3)).phi;
    CHECK(phi3 == doctest::Approx(0.5 * std::log(2.0) - 1.0 / 3.0).epsilon(1e-13));

    CHECK_THROWS_AS(spherical_rate(3, 1.0), std::domain_error);
    CHECK_THROWS_AS(spherical_rate(1, 2.0), std::domain_error);
}

TEST_CASE("spherical_rate: agrees with the phi_2 route on a grid") {
    for (int p = 2; p <= 6; ++p) {
        for (double du : {1e-6, 0.1, 0.5, 1.0, 2.5}) {
            double u = u_star(p) + du;
            CHECK(spherical_rate(p, u).phi == doctest::Approx(phi2_oracle(p, u)).epsilon(1e-11));
        }
    }
}

TEST_CASE("spherical_rate: vanishes at the GSE") {
    for (int p = 2; p <= 10; ++p) {
        double u_gs = spherical_gse(p).u_gs;
        CHECK(std::abs(spherical_rate(p, u_gs).phi) <= 1e-9);
    }
}

TEST_CASE("spherical_c3_hat: boundary, residual, branch sign") {
    CHECK(spherical_c3_hat(2, std::sqrt(2.0)) == 0.0);

    double c = spherical_c3_hat(3, 2.0);
    CHECK(std::abs(c * c * (1.0 - 3.0) + 2.0 * (3.0 - 2.0) * c + 4.0 - 3.0) <= 1e-12);

    for (int p = 2; p <= 10; ++p) {
        double us = u_star(p);
        for (int i = 0; i < 50; ++i) {
            double u = us + 3.0 * i / 49.0;
            CHECK(spherical_c3_hat(p, u) >= 0.0);
        }
    }
    CHECK_THROWS_AS(spherical_c3_hat(3, 1.0), std::domain_error);
}

TEST_CASE("spherical stationary residuals on the grid") {
    for (int p = 2; p <= 10; ++p) {
        double us = u_star(p);
        for (int i = 0; i < 50; ++i) {
            double u = us + 3.0 * i / 49.0;
            SphericalStationary st = spherical_stationary(p, u);
            CHECK(std::abs(st.quadratic_residual()) <= 1e-12);
            CHECK(std::abs(st.inner_residual()) <= 1e-12);
        }
    }
}

TEST_CASE("rejected quadratic branch does not reproduce the rate") {
    for (int p : {3, 4, 5}) {
        for (double du : {0.1, 0.5, 1.0}) {
            double u = u_star(p) + du;
            double chosen = spherical_c3_hat(p, u);
            double rejected = c3_rejected(p, u);
            if (std::abs(rejected - chosen) < 1e-4) continue;  // disc ~ 0
            double g = spherical_gamma_hat(p, std::abs(rejected));
            double sp = std::sqrt((double)p);
            double phi_rej = -0.5 * rejected * rejected * (p - 1.0) + g * rejected * sp -
                             0.5 * std::log(std::abs(1.0 - rejected * sp / (2.0 * g))) -
                             rejected * u;
            CHECK(std::abs(phi_rej - spherical_rate(p, u).phi) > 1e-6);
        }
    }
}

TEST_CASE("spherical_gamma_hat: values and stationarity") {
    CHECK(spherical_gamma_hat(2, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
    double g = spherical_gamma_hat(3, 1.0);
    CHECK(g == doctest::Approx((std::sqrt(3.0) + std::sqrt(7.0)) / 4.0).epsilon(1e-14));
    CHECK(std::abs(2.0 * g * (2.0 * g - std::sqrt(3.0)) - 1.0) <= 1e-14);
    CHECK_THROWS_AS(spherical_gamma_hat(3, -0.1), std::domain_error);

    for (int p = 2; p <= 10; ++p) {
        for (double c3 : {0.0, 0.3, 1.0, 4.0}) {
            // the log argument of the inner objective stays positive
            CHECK(spherical_gamma_hat(p, c3) > c3 * std::sqrt((double)p) / 2.0);
        }
    }
}

TEST_CASE("spherical_gse: table values") {
    const double expect[] = {2.0000, 2.8700, 3.5882, 4.2217, 4.7977, 5.3311};
    for (int p = 2; p <= 7; ++p) {
        GseValue g = spherical_gse(p);
        CHECK(std::abs(g.xi_multipartite - expect[p - 2]) <= 5e-5);
        CHECK(g.exact);
        CHECK(g.level == LiftLevel::Second);
        CHECK(std::abs(g.xi_multipartite - std::sqrt((double)p) * g.u_gs) <=
              1e-15 * g.xi_multipartite);
    }
    CHECK_THROWS_AS(spherical_gse(1), std::domain_error);
}

TEST_CASE("spherical_first_level: xi equals p") {
    for (int p : {2, 5, 7}) {
        GseValue g = spherical_first_level(p);
        CHECK(g.xi_multipartite == doctest::Approx((double)p).epsilon(1e-15));
        CHECK(g.c3_hat == 0.0);
        CHECK_FALSE(g.exact);
    }
}

TEST_CASE("level ordering and monotonicity in p") {
    double prev1 = 0.0, prev2 = 0.0;
    for (int p = 2; p <= 30; ++p) {
        double x1 = spherical_first_level(p).xi_multipartite;
        double x2 = spherical_gse(p).xi_multipartite;
        CHECK(x2 <= x1 * (1.0 + 1e-12));  // equality at p = 2 up to roundoff
        CHECK(x1 > prev1);
        CHECK(x2 > prev2);
        prev1 = x1;
        prev2 = x2;
    }
}

TEST_CASE("spherical rate decreases from u_* to past the GSE") {
    for (int p : {2, 3, 5, 10}) {
        double u_gs = spherical_gse(p).u_gs;
        double lo = u_star(p), hi = u_gs + 1.0;
        double prev = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 50; ++i) {
            double u = lo + (hi - lo) * i / 49.0;
            double phi = spherical_rate(p, u).phi;
            CHECK(phi < prev);
            prev = phi;
        }
    }
}
