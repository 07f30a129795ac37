#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "pspin/maximize.hpp"
#include "pspin/tensor.hpp"
#include "pspin/types.hpp"

namespace pspin {

/// Sample mean with its standard error (sample sd / sqrt(samples)).
struct McEstimate {
    double mean = 0.0;
    double std_err = 0.0;
    long long samples = 0;
    std::uint64_t seed = 0;
};

namespace detail {

struct LogMeanExp {
    double log_mean = 0.0;
    double se_log = 0.0;  // delta-method standard error of log_mean
};

// log of the sample mean of e^{ex_s}, accumulated around the running max
// so large exponents never overflow
inline LogMeanExp log_mean_exp_with_se(const std::vector<double>& ex) {
    std::size_t S = ex.size();
    double m = ex[0];
    for (double e : ex)
        if (e > m) m = e;
    double sum = 0.0;
    for (double e : ex) sum += std::exp(e - m);
    double mean_y = sum / S;
    double var = 0.0;
    for (double e : ex) {
        double d = std::exp(e - m) - mean_y;
        var += d * d;
    }
    var /= (S - 1.0);
    return LogMeanExp{m + std::log(mean_y), std::sqrt(var / S) / mean_y};
}

inline McEstimate mean_with_se(const std::vector<double>& v, std::uint64_t seed) {
    std::size_t S = v.size();
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= S;
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    var /= (S - 1.0);
    return McEstimate{mean, std::sqrt(var / S), (long long)S, seed};
}

inline void check_samples(long long samples, const char* who) {
    if (samples < 2) throw std::invalid_argument(std::string(who) + ": requires samples >= 2");
}

}  // namespace detail

constexpr int kDefaultRestarts = 8;

/// Monte Carlo estimate of the multipartite exponential functional
///   xi(p; S, n, c3) = (1/sqrt(n)) (1/c3) log E_A e^{c3 phi(p; S, n)}
/// with phi the maximum of the multilinear form. c3 = 0 means the plain
/// mean (1/sqrt(n)) E phi. The per-sample max is exact brute force for
/// Ising and alternating ascent (heuristic) for spherical.
inline McEstimate estimate_xi(int p, int n, SpinSet set, double c3, long long samples,
                              std::uint64_t seed, const Budget& budget = {},
                              int restarts = kDefaultRestarts) {
    detail::check_samples(samples, "estimate_xi");
    if (c3 < 0.0) throw std::domain_error("estimate_xi: requires c3 >= 0");
    std::vector<SpinSet> sets(p, set);
    std::vector<double> phis((std::size_t)samples);
    for (long long s = 0; s < samples; ++s) {
        std::uint64_t trial = rng::derive(seed, (std::uint64_t)s);
        TensorInstance t = sample_tensor(p, n, rng::derive(trial, 0), budget.max_entries);
        if (set == SpinSet::Ising)
            phis[s] = brute_force_max(t, sets, budget.max_evals).value;
        else
            phis[s] = alternating_max(t, sets, restarts, rng::derive(trial, 1)).value;
    }
    double sn = std::sqrt((double)n);
    if (c3 == 0.0) {
        for (double& ph : phis) ph /= sn;
        return detail::mean_with_se(phis, seed);
    }
    for (double& ph : phis) ph *= c3;
    detail::LogMeanExp lme = detail::log_mean_exp_with_se(phis);
    return McEstimate{lme.log_mean / (c3 * sn), lme.se_log / (c3 * sn), samples, seed};
}

/// Monte Carlo estimate of the lower-bound functional
///   xi_l(p; S, n, c3) = (1/sqrt(n)) (1/c3) log E e^{(c3/sqrt(p)) M},
/// where M sums, over p independent tensors, the maximum of each tensor's
/// symmetric-power form (the same vector in all p slots, so the joint max
/// decouples into p single-partite maxima). Stated for even p only; odd p
/// is rejected (the upper bound holds for all p, the lower one does not).
inline McEstimate estimate_xi_lower(int p, int n, SpinSet set, double c3, long long samples,
                                    std::uint64_t seed, const Budget& budget = {},
                                    int restarts = kDefaultRestarts) {
    detail::check_samples(samples, "estimate_xi_lower");
    if (p % 2 != 0)
        throw std::domain_error(
            "estimate_xi_lower: the lower bound is stated for even p only (odd p rejected)");
    if (!(c3 > 0.0)) throw std::domain_error("estimate_xi_lower: requires c3 > 0");
    std::vector<double> sums((std::size_t)samples);
    for (long long s = 0; s < samples; ++s) {
        std::uint64_t trial = rng::derive(seed, (std::uint64_t)s);
        double acc = 0.0;
        for (int j = 0; j < p; ++j) {
            TensorInstance t =
                sample_tensor(p, n, rng::derive(trial, (std::uint64_t)2 * j), budget.max_entries);
            acc += single_partite_max(t, set, restarts, rng::derive(trial, (std::uint64_t)2 * j + 1),
                                      budget.max_evals)
                       .value;
        }
        sums[s] = acc;
    }
    double sp = std::sqrt((double)p);
    double sn = std::sqrt((double)n);
    for (double& m : sums) m *= c3 / sp;
    detail::LogMeanExp lme = detail::log_mean_exp_with_se(sums);
    return McEstimate{lme.log_mean / (c3 * sn), lme.se_log / (c3 * sn), samples, seed};
}

/// Monte Carlo estimate of the analytic upper bound's Gaussian functional
///   xi_u0(p; S, n, c3) = sqrt(p/n) (-c3 (p-1)/2
///                        + (1/c3) log E_g e^{c3 sqrt(p) max_{x in S} g^T x}),
/// with the max in closed form: sum_i |g_i| / sqrt(n) (Ising), ||g||_2
/// (spherical). Companion check for finite_n_upper_bound.
inline McEstimate estimate_xi_upper(int p, int n, SpinSet set, double c3, long long samples,
                                    std::uint64_t seed) {
    detail::check_samples(samples, "estimate_xi_upper");
    if (!(c3 > 0.0)) throw std::domain_error("estimate_xi_upper: requires c3 > 0");
    double sn = std::sqrt((double)n);
    double sp = std::sqrt((double)p);
    std::vector<double> ws((std::size_t)samples);
    for (long long s = 0; s < samples; ++s) {
        std::uint64_t gs = rng::derive(seed, (std::uint64_t)s);
        double w = 0.0;
        if (set == SpinSet::Ising) {
            for (int i = 0; i < n; ++i) w += std::abs(rng::gaussian(gs, i));
            w /= sn;
        } else {
            for (int i = 0; i < n; ++i) {
                double g = rng::gaussian(gs, i);
                w += g * g;
            }
            w = std::sqrt(w);
        }
        ws[s] = c3 * sp * w;
    }
    detail::LogMeanExp lme = detail::log_mean_exp_with_se(ws);
    double factor = sp / sn;
    return McEstimate{factor * (-0.5 * c3 * (p - 1.0) + lme.log_mean / c3),
                      factor * lme.se_log / c3, samples, seed};
}

/// Empirical tail of the single-partite normalized maximum
/// zeta = (1/sqrt(n)) max_{x in S} of the symmetric-power form.
struct TailEstimate {
    double probability = 0.0;
    double std_err = 0.0;  // binomial
    long long hits = 0;
    long long samples = 0;
    std::uint64_t seed = 0;
    std::optional<double> rate_per_site;   // (1/n) log p_hat, when p_hat > 0
    std::optional<double> upper_bound_95;  // rule-of-three bound when hits == 0
};

inline TailEstimate tail_probability(int p, int n, SpinSet set, double u, long long samples,
                                     std::uint64_t seed, const Budget& budget = {},
                                     int restarts = kDefaultRestarts) {
    detail::check_samples(samples, "tail_probability");
    double sn = std::sqrt((double)n);
    long long hits = 0;
    for (long long s = 0; s < samples; ++s) {
        std::uint64_t trial = rng::derive(seed, (std::uint64_t)s);
        TensorInstance t = sample_tensor(p, n, rng::derive(trial, 0), budget.max_entries);
        double zeta =
            single_partite_max(t, set, restarts, rng::derive(trial, 1), budget.max_evals).value / sn;
        if (zeta >= u) ++hits;
    }
    TailEstimate r;
    r.hits = hits;
    r.samples = samples;
    r.seed = seed;
    r.probability = (double)hits / (double)samples;
    r.std_err = std::sqrt(r.probability * (1.0 - r.probability) / (double)samples);
    if (hits > 0)
        r.rate_per_site = std::log(r.probability) / n;
    else
        r.upper_bound_95 = 3.0 / (double)samples;
    return r;
}

}  // namespace pspin
