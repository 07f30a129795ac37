#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "pspin/agreement.hpp"
#include "pspin/ising.hpp"
#include "pspin/spherical.hpp"
#include "pspin/types.hpp"

namespace pspin {

/// Locale-independent shortest form with 10 significant digits.
inline std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

inline GseValue gse_value(SpinSet set, int p, LiftLevel level) {
    if (set == SpinSet::Spherical)
        return level == LiftLevel::First ? spherical_first_level(p) : spherical_gse(p);
    return level == LiftLevel::First ? ising_first_level(p) : ising_gse_bound(p);
}

struct ReportRow {
    int p = 0;
    SpinSet set = SpinSet::Spherical;
    int level = 2;
    double xi = 0.0;
    double u_gs = 0.0;
    double c3_hat = 0.0;
    bool exact = false;
};

inline std::vector<ReportRow> gse_rows(SpinSet set, int p_min, int p_max) {
    if (p_min < 2 || p_min > p_max)
        throw std::invalid_argument("gse_rows: requires 2 <= p_min <= p_max");
    std::vector<ReportRow> rows;
    rows.reserve(2 * (p_max - p_min + 1));
    for (int p = p_min; p <= p_max; ++p) {
        for (LiftLevel level : {LiftLevel::First, LiftLevel::Second}) {
            GseValue g = gse_value(set, p, level);
            rows.push_back(ReportRow{p, set, (int)level, g.xi_multipartite, g.u_gs, g.c3_hat,
                                     g.exact});
        }
    }
    return rows;
}

inline std::string gse_csv(const std::vector<ReportRow>& rows) {
    std::string out = "p,set,level,xi,u_gs,c3_hat,exact\n";
    for (const ReportRow& r : rows) {
        out += std::to_string(r.p);
        out += ',';
        out += to_string(r.set);
        out += ',';
        out += std::to_string(r.level);
        out += ',';
        out += format_number(r.xi);
        out += ',';
        out += format_number(r.u_gs);
        out += ',';
        out += format_number(r.c3_hat);
        out += ',';
        out += r.exact ? "true" : "false";
        out += '\n';
    }
    return out;
}

struct RateRow {
    int p = 0;
    double u = 0.0;
    double phi = 0.0;
    double c3_hat = 0.0;
};

struct RateSweep {
    std::vector<RateRow> rows;
    bool clipped = false;                       // points outside the rate's domain were dropped
    std::vector<std::pair<double, double>> sign_changes;  // consecutive u bracketing phi = 0
};

/// Sample the rate function on an inclusive grid of `steps` points,
/// dropping points outside the function's domain and marking where phi
/// changes sign (the bracket around u_GS).
inline RateSweep rate_sweep(SpinSet set, int p, double u_from, double u_to, int steps) {
    if (steps < 1) throw std::invalid_argument("rate_sweep: requires steps >= 1");
    if (u_to < u_from) throw std::invalid_argument("rate_sweep: requires u_from <= u_to");
    RateSweep sweep;
    for (int i = 0; i < steps; ++i) {
        double u = steps == 1 ? u_from : u_from + (u_to - u_from) * i / (steps - 1.0);
        try {
            RatePoint rp = set == SpinSet::Spherical ? spherical_rate(p, u) : ising_rate(p, u);
            sweep.rows.push_back(RateRow{p, rp.u, rp.phi, rp.c3_hat});
        } catch (const std::domain_error&) {
            sweep.clipped = true;
        }
    }
    for (std::size_t i = 1; i < sweep.rows.size(); ++i) {
        if (sweep.rows[i - 1].phi > 0.0 && sweep.rows[i].phi <= 0.0)
            sweep.sign_changes.emplace_back(sweep.rows[i - 1].u, sweep.rows[i].u);
    }
    return sweep;
}

inline std::string rate_csv(const RateSweep& sweep) {
    std::string out = "p,u,phi,c3_hat\n";
    for (const RateRow& r : sweep.rows) {
        out += std::to_string(r.p);
        out += ',';
        out += format_number(r.u);
        out += ',';
        out += format_number(r.phi);
        out += ',';
        out += format_number(r.c3_hat);
        out += '\n';
    }
    if (sweep.clipped) out += "# clipped: points outside the rate function's domain were dropped\n";
    for (const auto& sc : sweep.sign_changes) {
        out += "# sign change: phi crosses 0 between u=" + format_number(sc.first) +
               " and u=" + format_number(sc.second) + "\n";
    }
    return out;
}

struct AgreementRow {
    int p = 0;
    double e_star = 0.0;
    double u_gs = 0.0;
    double abs_diff = 0.0;
    double darmc_residual = 0.0;
    double identity1_residual = 0.0;
    double identity2_residual = 0.0;
};

inline std::vector<AgreementRow> agreement_rows(int p_min, int p_max) {
    if (p_min < 3)
        throw std::invalid_argument(
            "agreement_rows: requires p_min >= 3 (p = 2 is the degenerate boundary)");
    if (p_min > p_max) throw std::invalid_argument("agreement_rows: requires p_min <= p_max");
    std::vector<AgreementRow> rows;
    for (int p = p_min; p <= p_max; ++p) {
        double u_gs = spherical_gse(p).u_gs;
        SubagSolution sub = subag_solution(p);
        AgreementResiduals ids = agreement_identities(p);
        rows.push_back(AgreementRow{p, sub.e_star, u_gs, std::abs(sub.e_star - u_gs),
                                    darmc_residual(p, u_gs), ids.gamma_identity,
                                    ids.c3u_identity});
    }
    return rows;
}

inline std::string agreement_csv(const std::vector<AgreementRow>& rows) {
    std::string out = "p,e_star,u_gs,abs_diff,darmc_residual,identity1_residual,identity2_residual\n";
    for (const AgreementRow& r : rows) {
        out += std::to_string(r.p);
        out += ',';
        out += format_number(r.e_star);
        out += ',';
        out += format_number(r.u_gs);
        out += ',';
        out += format_number(r.abs_diff);
        out += ',';
        out += format_number(r.darmc_residual);
        out += ',';
        out += format_number(r.identity1_residual);
        out += ',';
        out += format_number(r.identity2_residual);
        out += '\n';
    }
    return out;
}

}  // namespace pspin
