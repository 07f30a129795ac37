#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace pspin::num {

struct SolverConfig {
    double x_tol = 1e-12;
    double f_tol = 1e-12;
    int max_iter = 200;
};

/// Sign-change bracket for root finding: lo < hi and f_lo * f_hi <= 0.
struct Bracket {
    double lo = 0.0;
    double hi = 0.0;
    double f_lo = 0.0;
    double f_hi = 0.0;
};

/// Evaluate f at both ends and build a root bracket. Throws if the signs
/// do not differ.
template <class F>
Bracket bracket_root(F&& f, double lo, double hi) {
    Bracket b{lo, hi, f(lo), f(hi)};
    if (!(lo < hi)) throw std::invalid_argument("bracket_root: lo >= hi");
    if (b.f_lo * b.f_hi > 0.0)
        throw std::invalid_argument("bracket_root: no sign change on [lo, hi]");
    return b;
}

/// Root of f inside a sign-change bracket. Bisection safeguarded with a
/// secant (finite-difference Newton) step; the secant candidate is used
/// only while the bracket keeps shrinking geometrically. Stops when
/// |f(x)| <= f_tol or the bracket width falls below x_tol.
template <class F>
double find_root(F&& f, Bracket br, SolverConfig cfg = {}) {
    double a = br.lo, b = br.hi, fa = br.f_lo, fb = br.f_hi;
    if (!(a < b)) throw std::invalid_argument("find_root: bracket lo >= hi");
    if (fa * fb > 0.0) throw std::invalid_argument("find_root: invalid bracket (no sign change)");
    if (std::abs(fa) <= cfg.f_tol) return a;
    if (std::abs(fb) <= cfg.f_tol) return b;

    double x_prev = a, f_prev = fa;
    double x_last = b, f_last = fb;
    double prev_width = 2.0 * (b - a);

    for (int it = 0; it < cfg.max_iter; ++it) {
        double width = b - a;
        if (width <= cfg.x_tol) return 0.5 * (a + b);

        double cand = 0.5 * (a + b);
        // Secant candidate, accepted only while strictly interior and the
        // bracket keeps halving; otherwise bisect.
        double df = f_last - f_prev;
        if (df != 0.0 && width <= 0.5 * prev_width) {
            double s = x_last - f_last * (x_last - x_prev) / df;
            if (s > a && s < b) cand = s;
        }
        prev_width = width;

        double fc = f(cand);
        if (std::abs(fc) <= cfg.f_tol) return cand;
        if (fa * fc <= 0.0) {
            b = cand;
            fb = fc;
        } else {
            a = cand;
            fa = fc;
        }
        x_prev = x_last;
        f_prev = f_last;
        x_last = cand;
        f_last = fc;
    }
    throw std::runtime_error("find_root: max_iter exceeded");
}

struct MinResult {
    double argmin = 0.0;
    double min = 0.0;
};

/// Derivative-free minimization of a function defined on (lo, inf) that is
/// empirically unimodal. The right end of an initial bracket (lo, lo+1]
/// doubles until the objective starts increasing, then golden-section
/// refines to x_tol. A minimum sitting at the open left end is returned as
/// argmin ~= lo.
template <class F>
MinResult minimize_scalar(F&& f, double lo, SolverConfig cfg = {}) {
    double w = 1.0;
    double prev = f(lo + w);
    double hi = lo + w;
    const int max_growth = 40;
    int growth = 0;
    for (;;) {
        w *= 2.0;
        double x = lo + w;
        double fx = f(x);
        hi = x;
        if (fx > prev) break;
        prev = fx;
        if (++growth > max_growth)
            throw std::runtime_error("minimize_scalar: no interior minimum within growth cap");
    }

    static const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 400 && (b - a) > cfg.x_tol; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return fc < fd ? MinResult{c, fc} : MinResult{d, fd};
}

namespace detail {

template <class F>
double simpson_adapt(F& f, double a, double m, double b, double fa, double fm,
                     double fb, double whole, double tol, int depth) {
    double lm = 0.5 * (a + m);
    double rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double s2 = left + right;
    if (std::abs(s2 - whole) <= 15.0 * tol || (b - a) <= 1e-14 * (std::abs(a) + std::abs(b)))
        return s2 + (s2 - whole) / 15.0;
    if (depth <= 0) throw std::runtime_error("integrate: subdivision limit reached");
    return simpson_adapt(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_adapt(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson quadrature with relative error <= rel_tol, estimated
/// by interval halving. The tolerance is anchored to a coarse 8-panel
/// composite estimate of the integral's magnitude.
template <class F>
double integrate(F&& f, double lo, double hi, double rel_tol) {
    if (!(rel_tol > 0.0)) throw std::invalid_argument("integrate: rel_tol must be > 0");
    if (lo == hi) return 0.0;
    double sign = 1.0;
    if (lo > hi) {
        std::swap(lo, hi);
        sign = -1.0;
    }

    // coarse magnitude estimate for the relative -> absolute conversion
    double h = (hi - lo) / 8.0;
    double fx[9];
    for (int i = 0; i <= 8; ++i) fx[i] = f(lo + i * h);
    double coarse = 0.0;
    for (int i = 0; i < 8; i += 2)
        coarse += h / 3.0 * (fx[i] + 4.0 * fx[i + 1] + fx[i + 2]);
    double scale = std::abs(coarse);
    if (scale < std::numeric_limits<double>::min()) scale = 1.0;
    double tol = rel_tol * scale;

    double m = 0.5 * (lo + hi);
    double fa = fx[0], fm = fx[4], fb = fx[8];
    double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    return sign * detail::simpson_adapt(f, lo, m, hi, fa, fm, fb, whole, tol, 60);
}

/// log(erfc(x)), stable over the whole real line. Around zero the log1p
/// form keeps full relative accuracy where erfc is 1 - small; for large
/// positive x the asymptotic expansion avoids the underflow of erfc
/// itself.
inline double log_erfc(double x) {
    if (x <= 0.5) return std::log1p(-std::erf(x));
    if (x < 20.0) return std::log(std::erfc(x));
    // erfc(x) ~ e^{-x^2}/(x sqrt(pi)) * sum_k (-1)^k (2k-1)!! / (2x^2)^k
    double inv2x2 = 1.0 / (2.0 * x * x);
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= 12; ++k) {
        term *= -(2.0 * k - 1.0) * inv2x2;
        sum += term;
        if (std::abs(term) < 1e-17 * sum) break;
    }
    return -x * x - std::log(x) - 0.5 * std::log(M_PI) + std::log(sum);
}

/// log(sum_i e^{v_i}) without overflow.
inline double log_sum_exp(const std::vector<double>& v) {
    if (v.empty()) throw std::invalid_argument("log_sum_exp: empty input");
    double m = v[0];
    for (double x : v)
        if (x > m) m = x;
    if (!std::isfinite(m)) return m;
    double s = 0.0;
    for (double x : v) s += std::exp(x - m);
    return m + std::log(s);
}

}  // namespace pspin::num
