#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "pspin/types.hpp"

namespace pspin {

namespace rng {

/// splitmix64 finalizer evaluated at `counter` of the stream keyed by
/// `state`. Counter-based: any entry of the stream is addressable without
/// generating its predecessors.
inline std::uint64_t splitmix(std::uint64_t state, std::uint64_t counter) {
    std::uint64_t z = state + counter * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline double unit_open(std::uint64_t bits) {  // (0, 1]
    return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

inline double unit_half_open(std::uint64_t bits) {  // [0, 1)
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Standard normal variate k of the stream keyed by `seed`, via Box-Muller
/// on the counter pair (2k, 2k+1). Reproducible independent of traversal
/// order.
inline double gaussian(std::uint64_t seed, std::uint64_t k) {
    double u1 = unit_open(splitmix(seed, 2 * k));
    double u2 = unit_half_open(splitmix(seed, 2 * k + 1));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

/// Sub-stream seed for trial `index`; keyed off a distinct gamma so trial
/// streams do not collide with entry streams.
inline std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
    return splitmix(seed ^ 0xD1B54A32D192ED03ull, index);
}

}  // namespace rng

/// A p-index Gaussian tensor of side n: entries are i.i.d. standard
/// normals, stored row-major by index tuple (i1, ..., ip), reproducible
/// from the seed.
struct TensorInstance {
    int p = 0;
    int n = 0;
    std::vector<double> entries;
    std::uint64_t seed = 0;

    double operator[](std::size_t k) const { return entries[k]; }
    std::size_t size() const { return entries.size(); }
};

namespace detail {

inline std::uint64_t checked_pow(int n, int p, std::uint64_t cap, const char* who) {
    std::uint64_t count = 1;
    for (int i = 0; i < p; ++i) {
        if (count > cap / std::max(n, 1))
            throw budget_error(std::string(who) + ": n^p = " + std::to_string(n) + "^" +
                               std::to_string(p) + " exceeds the entry budget of " +
                               std::to_string(cap) + " (raise max_entries)");
        count *= static_cast<std::uint64_t>(n);
    }
    if (count > cap)
        throw budget_error(std::string(who) + ": n^p exceeds the entry budget of " +
                           std::to_string(cap));
    return count;
}

}  // namespace detail

inline TensorInstance sample_tensor(int p, int n, std::uint64_t seed,
                                    std::uint64_t max_entries = Budget{}.max_entries) {
    if (p < 2) throw std::domain_error("sample_tensor: requires p >= 2");
    if (n < 1) throw std::domain_error("sample_tensor: requires n >= 1");
    std::uint64_t count = detail::checked_pow(n, p, max_entries, "sample_tensor");
    TensorInstance t;
    t.p = p;
    t.n = n;
    t.seed = seed;
    t.entries.resize(count);
    for (std::uint64_t k = 0; k < count; ++k) t.entries[k] = rng::gaussian(seed, k);
    return t;
}

/// Build a tensor from explicit entries (fixed test instances).
inline TensorInstance tensor_from_entries(int p, int n, std::vector<double> entries) {
    std::uint64_t count = 1;
    for (int i = 0; i < p; ++i) count *= static_cast<std::uint64_t>(n);
    if (entries.size() != count)
        throw std::invalid_argument("tensor_from_entries: expected n^p = " +
                                    std::to_string(count) + " entries, got " +
                                    std::to_string(entries.size()));
    TensorInstance t;
    t.p = p;
    t.n = n;
    t.entries = std::move(entries);
    return t;
}

/// Value of the multilinear form  sum_{i1..ip} A_{i1..ip} prod_j x^(j)_{ij}.
inline double multilinear_value(const TensorInstance& t,
                                const std::vector<std::vector<double>>& x) {
    double acc = 0.0;
    std::size_t count = t.entries.size();
    for (std::size_t k = 0; k < count; ++k) {
        double prod = t.entries[k];
        std::size_t rest = k;
        for (int j = t.p - 1; j >= 0; --j) {
            prod *= x[j][rest % t.n];
            rest /= t.n;
        }
        acc += prod;
    }
    return acc;
}

/// Contraction of the tensor against all vectors except `slot`:
/// v[i] = sum over tuples with i_slot = i of A prod_{j != slot} x^(j)_{ij}.
inline std::vector<double> contract_slot(const TensorInstance& t,
                                         const std::vector<std::vector<double>>& x, int slot) {
    std::vector<double> v(t.n, 0.0);
    std::size_t count = t.entries.size();
    for (std::size_t k = 0; k < count; ++k) {
        double prod = t.entries[k];
        std::size_t rest = k;
        int slot_index = 0;
        for (int j = t.p - 1; j >= 0; --j) {
            int ij = static_cast<int>(rest % t.n);
            rest /= t.n;
            if (j == slot)
                slot_index = ij;
            else
                prod *= x[j][ij];
        }
        v[slot_index] += prod;
    }
    return v;
}

/// Value of the symmetric-power form: the multilinear form with the same
/// vector in every slot.
inline double symmetric_value(const TensorInstance& t, const std::vector<double>& x) {
    double acc = 0.0;
    std::size_t count = t.entries.size();
    for (std::size_t k = 0; k < count; ++k) {
        double prod = t.entries[k];
        std::size_t rest = k;
        for (int j = 0; j < t.p; ++j) {
            prod *= x[rest % t.n];
            rest /= t.n;
        }
        acc += prod;
    }
    return acc;
}

}  // namespace pspin
