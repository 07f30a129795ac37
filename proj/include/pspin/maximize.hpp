#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "pspin/tensor.hpp"
#include "pspin/types.hpp"

namespace pspin {

enum class MaxMethod { BruteForce, Alternating };

/// Result of maximizing the multilinear form over the spin sets. Brute
/// force is exact; alternating ascent is a lower bound on the true max
/// (converged/restarts are reported so heuristic results stay labeled).
struct MaximizerResult {
    double value = 0.0;
    std::vector<std::vector<double>> argmax;
    MaxMethod method = MaxMethod::BruteForce;
    int restarts_used = 0;
    bool converged = true;
    int perturbations = 0;
};

namespace detail {

inline void check_sets(const TensorInstance& t, const std::vector<SpinSet>& sets,
                       const char* who) {
    if (static_cast<int>(sets.size()) != t.p)
        throw std::invalid_argument(std::string(who) + ": expected " + std::to_string(t.p) +
                                    " spin sets, got " + std::to_string(sets.size()));
}

inline void check_eval_budget(int bits, std::uint64_t max_evals, const char* who) {
    if (bits >= 63 || (std::uint64_t{1} << bits) > max_evals)
        throw budget_error(std::string(who) + ": requires 2^" + std::to_string(bits) +
                           " objective evaluations, budget is " + std::to_string(max_evals) +
                           " (raise max_evals)");
}

// form value with signs +-1 per (partite, coordinate); scaling applied by
// the caller
inline double signed_form(const TensorInstance& t, const std::vector<int>& s) {
    double acc = 0.0;
    std::size_t count = t.entries.size();
    for (std::size_t k = 0; k < count; ++k) {
        double prod = t.entries[k];
        std::size_t rest = k;
        for (int j = t.p - 1; j >= 0; --j) {
            int ij = static_cast<int>(rest % t.n);
            rest /= t.n;
            if (s[j * t.n + ij] < 0) prod = -prod;
        }
        acc += prod;
    }
    return acc;
}

}  // namespace detail

/// Exact maximum of the multilinear form over Ising sets by enumeration.
/// The global sign symmetry (flipping one partite vector flips the value)
/// halves the search: the first coordinate of x^(1) is pinned to + and the
/// enumeration tracks |value|, unpinning at the end if the best config had
/// negative sign.
inline MaximizerResult brute_force_max(const TensorInstance& t, const std::vector<SpinSet>& sets,
                                       std::uint64_t max_evals = Budget{}.max_evals) {
    detail::check_sets(t, sets, "brute_force_max");
    for (SpinSet s : sets)
        if (s != SpinSet::Ising)
            throw std::invalid_argument("brute_force_max: exact enumeration is Ising-only");
    int p = t.p, n = t.n;
    int bits = p * n;
    detail::check_eval_budget(bits, max_evals, "brute_force_max");

    std::vector<int> s(bits, 1);
    std::uint64_t half = std::uint64_t{1} << (bits - 1);
    double best_abs = -1.0;
    std::uint64_t best_cfg = 0;
    bool best_negative = false;
    for (std::uint64_t c = 0; c < half; ++c) {
        for (int b = 1; b < bits; ++b) s[b] = ((c >> (b - 1)) & 1) ? -1 : 1;
        double raw = detail::signed_form(t, s);
        double a = std::abs(raw);
        if (a > best_abs) {
            best_abs = a;
            best_cfg = c;
            best_negative = raw < 0.0;
        }
    }

    double inv_sqrt_n = 1.0 / std::sqrt((double)n);
    MaximizerResult r;
    r.method = MaxMethod::BruteForce;
    r.value = best_abs * std::pow((double)n, -0.5 * p);
    r.argmax.assign(p, std::vector<double>(n));
    for (int b = 1; b < bits; ++b) s[b] = ((best_cfg >> (b - 1)) & 1) ? -1 : 1;
    s[0] = 1;
    if (best_negative) {
        for (int i = 0; i < n; ++i) s[i] = -s[i];
    }
    for (int j = 0; j < p; ++j)
        for (int i = 0; i < n; ++i) r.argmax[j][i] = s[j * n + i] * inv_sqrt_n;
    return r;
}

/// Block-coordinate ascent: with all but one partite vector fixed, the
/// tensor contracts to a vector v and the free block's exact maximizer is
/// v/||v|| (spherical) or sign(v)/sqrt(n) (Ising). Sweeps cycle until the
/// improvement drops below 1e-12 or the sweep cap; best over restarts.
/// `trace`, when given, records the value after every sweep of the first
/// restart.
inline MaximizerResult alternating_max(const TensorInstance& t, const std::vector<SpinSet>& sets,
                                       int restarts, std::uint64_t seed,
                                       std::vector<double>* trace = nullptr) {
    detail::check_sets(t, sets, "alternating_max");
    if (restarts < 1) throw std::invalid_argument("alternating_max: requires restarts >= 1");
    int p = t.p, n = t.n;
    const int max_sweeps = 10000;
    const double tol = 1e-12;
    double inv_sqrt_n = 1.0 / std::sqrt((double)n);

    MaximizerResult best;
    best.method = MaxMethod::Alternating;
    best.restarts_used = restarts;
    best.value = -std::numeric_limits<double>::infinity();

    for (int r = 0; r < restarts; ++r) {
        std::uint64_t rs = rng::derive(seed, r);
        std::vector<std::vector<double>> x(p, std::vector<double>(n));
        for (int j = 0; j < p; ++j) {
            double norm2 = 0.0;
            for (int i = 0; i < n; ++i) {
                x[j][i] = rng::gaussian(rs, static_cast<std::uint64_t>(j) * n + i);
                norm2 += x[j][i] * x[j][i];
            }
            if (sets[j] == SpinSet::Spherical) {
                double nv = std::sqrt(norm2);
                if (nv < 1e-300) {
                    std::fill(x[j].begin(), x[j].end(), 0.0);
                    x[j][0] = 1.0;
                } else {
                    for (double& xi : x[j]) xi /= nv;
                }
            } else {
                for (double& xi : x[j]) xi = xi >= 0.0 ? inv_sqrt_n : -inv_sqrt_n;
            }
        }

        double value = multilinear_value(t, x);
        bool converged = false;
        int perturbations = 0;
        for (int sweep = 0; sweep < max_sweeps; ++sweep) {
            double sweep_value = value;
            bool perturbed_this_sweep = false;
            for (int j = 0; j < p; ++j) {
                std::vector<double> v = contract_slot(t, x, j);
                if (sets[j] == SpinSet::Spherical) {
                    double nv = 0.0;
                    for (double vi : v) nv += vi * vi;
                    nv = std::sqrt(nv);
                    if (nv < 1e-300) {
                        std::fill(x[j].begin(), x[j].end(), inv_sqrt_n);
                        ++perturbations;
                        perturbed_this_sweep = true;
                        continue;
                    }
                    for (int i = 0; i < n; ++i) x[j][i] = v[i] / nv;
                    sweep_value = nv;
                } else {
                    double sum_abs = 0.0;
                    for (int i = 0; i < n; ++i) {
                        x[j][i] = v[i] >= 0.0 ? inv_sqrt_n : -inv_sqrt_n;
                        sum_abs += std::abs(v[i]);
                    }
                    sweep_value = sum_abs * inv_sqrt_n;
                }
            }
            if (perturbed_this_sweep) sweep_value = multilinear_value(t, x);
            if (trace && r == 0) trace->push_back(sweep_value);
            if (sweep_value - value < tol && !perturbed_this_sweep) {
                value = std::max(value, sweep_value);
                converged = true;
                break;
            }
            value = sweep_value;
        }

        if (value > best.value) {
            best.value = value;
            best.argmax = x;
            best.converged = converged;
            best.perturbations = perturbations;
        }
    }
    return best;
}

/// Maximum of the symmetric-power form (the same vector in every slot) over
/// a single spin set: the randomness behind the single-partite tail and
/// lower-bound functionals. Ising is exact enumeration (Gray-code updates
/// for p = 2); spherical uses shifted tied power iteration, a heuristic
/// lower bound.
inline MaximizerResult single_partite_max(const TensorInstance& t, SpinSet set, int restarts,
                                          std::uint64_t seed,
                                          std::uint64_t max_evals = Budget{}.max_evals) {
    int p = t.p, n = t.n;
    MaximizerResult r;
    if (set == SpinSet::Ising) {
        detail::check_eval_budget(n, max_evals, "single_partite_max");
        double scale = std::pow((double)n, -0.5 * p);
        // Global flip x -> -x scales the form by (-1)^p, so the first sign
        // is pinned to +: for even p the halved enumeration covers all
        // values, for odd p the key is |value| and the signs unpin at the
        // end.
        bool even = p % 2 == 0;
        std::vector<int> s(n, 1);
        double best_raw = 0.0;
        double best_key = -std::numeric_limits<double>::infinity();
        std::uint64_t best_cfg = 0;
        std::uint64_t half = std::uint64_t{1} << (n - 1);
        if (p == 2) {
            // incremental quadratic-form updates along a Gray code
            std::vector<double> sym(n * n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    sym[i * n + j] = t.entries[i * n + j] + t.entries[j * n + i];
            double raw = 0.0;
            for (double e : t.entries) raw += e;
            std::vector<double> q(n, 0.0);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) q[i] += sym[i * n + j];
            best_raw = raw;
            best_key = raw;
            for (std::uint64_t c = 1; c < half; ++c) {
                int k = 1;
                for (std::uint64_t v = c; !(v & 1); v >>= 1) ++k;
                raw += -2.0 * s[k] * q[k] + 2.0 * sym[k * n + k];
                for (int i = 0; i < n; ++i) q[i] -= 2.0 * s[k] * sym[i * n + k];
                s[k] = -s[k];
                if (raw > best_key) {
                    best_raw = raw;
                    best_key = raw;
                    best_cfg = c ^ (c >> 1);  // Gray code of the counter
                }
            }
        } else {
            std::vector<double> xs(n);
            for (std::uint64_t c = 0; c < half; ++c) {
                for (int k = 1; k < n; ++k) s[k] = ((c >> (k - 1)) & 1) ? -1 : 1;
                for (int k = 0; k < n; ++k) xs[k] = s[k];
                double raw = symmetric_value(t, xs);
                double key = even ? raw : std::abs(raw);
                if (key > best_key) {
                    best_key = key;
                    best_raw = raw;
                    best_cfg = c;
                }
            }
        }
        for (int k = 1; k < n; ++k) s[k] = ((best_cfg >> (k - 1)) & 1) ? -1 : 1;
        s[0] = 1;
        if (!even && best_raw < 0.0) {
            for (int k = 0; k < n; ++k) s[k] = -s[k];
            best_raw = -best_raw;
        }
        double inv_sqrt_n = 1.0 / std::sqrt((double)n);
        r.method = MaxMethod::BruteForce;
        r.value = best_raw * scale;
        r.argmax.assign(1, std::vector<double>(n));
        for (int i = 0; i < n; ++i) r.argmax[0][i] = s[i] * inv_sqrt_n;
        return r;
    }

    // spherical: shifted symmetric power iteration; the shift keeps every
    // accepted step an ascent step
    if (restarts < 1) throw std::invalid_argument("single_partite_max: requires restarts >= 1");
    double frob = 0.0;
    for (double e : t.entries) frob += e * e;
    frob = std::sqrt(frob);
    const int max_sweeps = 10000;
    const double tol = 1e-12;

    r.method = MaxMethod::Alternating;
    r.restarts_used = restarts;
    r.value = -std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> tied(p);
    for (int restart = 0; restart < restarts; ++restart) {
        std::uint64_t rs = rng::derive(seed, restart);
        std::vector<double> x(n);
        double norm2 = 0.0;
        for (int i = 0; i < n; ++i) {
            x[i] = rng::gaussian(rs, i);
            norm2 += x[i] * x[i];
        }
        if (norm2 < 1e-300) {
            std::fill(x.begin(), x.end(), 0.0);
            x[0] = 1.0;
        } else {
            for (double& xi : x) xi /= std::sqrt(norm2);
        }

        double sigma = (p - 1.0) * frob + 1.0;
        double f = symmetric_value(t, x);
        bool converged = false;
        int perturbations = 0;
        for (int sweep = 0; sweep < max_sweeps; ++sweep) {
            for (int j = 0; j < p; ++j) tied[j] = x;
            std::vector<double> g(n, 0.0);
            for (int j = 0; j < p; ++j) {
                std::vector<double> cj = contract_slot(t, tied, j);
                for (int i = 0; i < n; ++i) g[i] += cj[i];
            }
            std::vector<double> w(n);
            double nw2 = 0.0;
            for (int i = 0; i < n; ++i) {
                w[i] = g[i] + p * sigma * x[i];
                nw2 += w[i] * w[i];
            }
            if (nw2 < 1e-300) {
                std::fill(x.begin(), x.end(), 0.0);
                x[0] = 1.0;
                ++perturbations;
                continue;
            }
            double nw = std::sqrt(nw2);
            std::vector<double> xn(n);
            for (int i = 0; i < n; ++i) xn[i] = w[i] / nw;
            double fn = symmetric_value(t, xn);
            if (fn < f - 1e-12 * std::max(1.0, std::abs(f))) {
                sigma *= 2.0;  // shift too small for monotone ascent
                continue;
            }
            x = xn;
            if (fn - f < tol) {
                f = std::max(f, fn);
                converged = true;
                break;
            }
            f = fn;
        }
        if (f > r.value) {
            r.value = f;
            r.argmax.assign(1, x);
            r.converged = converged;
            r.perturbations = perturbations;
        }
    }
    return r;
}

}  // namespace pspin
