#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pspin {

/// The two spin-set families the analytic formulas cover.
/// Spherical is the unit Euclidean sphere; Ising is the scaled hypercube
/// with coordinates +-1/sqrt(n).
enum class SpinSet { Spherical, Ising };

/// Lifting level of a bound: First is the c3 -> 0 (replica symmetric)
/// limit, Second uses the optimized Chernoff parameter c3.
enum class LiftLevel { First = 1, Second = 2 };

inline const char* to_string(SpinSet s) {
    return s == SpinSet::Spherical ? "spherical" : "ising";
}

inline SpinSet spin_set_from_string(const std::string& name) {
    if (name == "spherical") return SpinSet::Spherical;
    if (name == "ising") return SpinSet::Ising;
    throw std::invalid_argument("unknown spin set '" + name +
                                "' (expected spherical or ising)");
}

/// A sample of a rate function: the tail exponent phi(p,u) together with
/// the Chernoff parameter that attains it.
struct RatePoint {
    int p = 0;
    double u = 0.0;
    double phi = 0.0;
    double c3_hat = 0.0;
};

/// Per-partite ground state energy u_gs and the multipartite value
/// sqrt(p) * u_gs at a given lifting level. `exact` is true only when the
/// value is provably the GSE (spherical, second level); Ising values are
/// upper bounds.
struct GseValue {
    int p = 0;
    SpinSet set = SpinSet::Spherical;
    LiftLevel level = LiftLevel::Second;
    double u_gs = 0.0;
    double xi_multipartite = 0.0;
    double c3_hat = 0.0;
    bool exact = false;
};

/// Resource caps for the empirical estimators. `max_evals` bounds the
/// configuration count of brute-force maximization (2^(p*n) <= max_evals),
/// `max_entries` bounds tensor storage (n^p <= max_entries).
struct Budget {
    std::uint64_t max_evals = std::uint64_t{1} << 26;
    std::uint64_t max_entries = std::uint64_t{1} << 27;
};

/// Raised when a requested computation exceeds the configured budget.
/// The message names the required budget so the caller can override.
class budget_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised when two independent evaluation routes of the same quantity
/// disagree beyond tolerance (dual-formulation checks).
class consistency_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace pspin
