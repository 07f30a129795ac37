// pspin: ground-state energies of multipartite pure p-spin models.
//
// Subcommands
//   gse        exact values / bounds per p and lifting level (CSV or JSON)
//   rate       rate-function sweep phi(p, u) with the u_GS sign change marked
//   agreement  overlap fixed point vs Chernoff route residuals
//   empirical  seeded Monte Carlo: max, sandwich, tail (JSON)
//
// Exit codes: 0 success, 2 usage error, 3 resource refusal, 4 internal
// consistency error.

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pspin/pspin.hpp"

namespace {

using nlohmann::json;

json to_json(const pspin::McEstimate& e) {
    return json{{"mean", e.mean}, {"std_err", e.std_err}, {"samples", e.samples}};
}

json rows_to_json(const std::vector<pspin::ReportRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows)
        arr.push_back(json{{"p", r.p},
                           {"set", pspin::to_string(r.set)},
                           {"level", r.level},
                           {"xi", r.xi},
                           {"u_gs", r.u_gs},
                           {"c3_hat", r.c3_hat},
                           {"exact", r.exact}});
    return arr;
}

std::vector<double> parse_entries(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    return out;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ground-state energies of multipartite pure p-spin models"};
    app.require_subcommand(1);

    std::string set_name = "spherical";
    std::string format = "csv";
    int p_min = 2, p_max = 30, p = 2, steps = 100, restarts = pspin::kDefaultRestarts;
    double u_from = 0.0, u_to = 0.0, c3 = 0.5, u_level = 1.0;
    long long samples = 10000;
    std::uint64_t seed = 0;
    pspin::Budget budget;
    std::string method = "brute";
    std::string entries_csv;

    auto* gse = app.add_subcommand("gse", "GSE values and bounds per p and lifting level");
    gse->add_option("--set", set_name, "spin set: spherical|ising")->required();
    gse->add_option("--p-min", p_min, "smallest p (>= 2)");
    gse->add_option("--p-max", p_max, "largest p (<= 200)");
    gse->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    gse->callback([&] {
        if (p_min < 2 || p_min > p_max || p_max > 200)
            throw CLI::ValidationError("gse", "requires 2 <= p-min <= p-max <= 200");
        auto rows = pspin::gse_rows(pspin::spin_set_from_string(set_name), p_min, p_max);
        if (format == "json")
            emit(json{{"params", {{"set", set_name}, {"p_min", p_min}, {"p_max", p_max}}},
                      {"results", rows_to_json(rows)},
                      {"seed", nullptr}});
        else
            std::cout << pspin::gse_csv(rows);
    });

    auto* rate = app.add_subcommand("rate", "rate-function sweep phi(p, u)");
    rate->add_option("--set", set_name)->required();
    rate->add_option("--p", p, "spin order (>= 2)")->required();
    rate->add_option("--u-from", u_from)->required();
    rate->add_option("--u-to", u_to)->required();
    rate->add_option("--steps", steps, "grid points (inclusive ends)");
    rate->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    rate->callback([&] {
        auto sweep =
            pspin::rate_sweep(pspin::spin_set_from_string(set_name), p, u_from, u_to, steps);
        if (sweep.rows.empty())
            throw std::invalid_argument("rate: no grid point lies in the rate function's domain");
        if (format == "json") {
            json rows = json::array();
            for (const auto& r : sweep.rows)
                rows.push_back(json{{"p", r.p}, {"u", r.u}, {"phi", r.phi}, {"c3_hat", r.c3_hat}});
            json sc = json::array();
            for (const auto& b : sweep.sign_changes) sc.push_back(json{b.first, b.second});
            emit(json{{"params",
                       {{"set", set_name},
                        {"p", p},
                        {"u_from", u_from},
                        {"u_to", u_to},
                        {"steps", steps}}},
                      {"results", {{"rows", rows}, {"clipped", sweep.clipped}, {"sign_changes", sc}}},
                      {"seed", nullptr}});
        } else {
            std::cout << pspin::rate_csv(sweep);
        }
    });

    auto* agree = app.add_subcommand("agreement", "overlap vs Chernoff agreement residuals");
    int ap_min = 3, ap_max = 20;
    agree->add_option("--p-min", ap_min, "smallest p (>= 3; p = 2 is the degenerate boundary)");
    agree->add_option("--p-max", ap_max);
    agree->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    agree->callback([&] {
        if (ap_min < 3)
            throw CLI::ValidationError(
                "agreement", "requires p-min >= 3: p = 2 sits exactly on the degenerate boundary");
        if (ap_min > ap_max) throw CLI::ValidationError("agreement", "requires p-min <= p-max");
        auto rows = pspin::agreement_rows(ap_min, ap_max);
        if (format == "json") {
            json arr = json::array();
            for (const auto& r : rows)
                arr.push_back(json{{"p", r.p},
                                   {"e_star", r.e_star},
                                   {"u_gs", r.u_gs},
                                   {"abs_diff", r.abs_diff},
                                   {"darmc_residual", r.darmc_residual},
                                   {"identity1_residual", r.identity1_residual},
                                   {"identity2_residual", r.identity2_residual}});
            emit(json{{"params", {{"p_min", ap_min}, {"p_max", ap_max}}},
                      {"results", arr},
                      {"seed", nullptr}});
        } else {
            std::cout << pspin::agreement_csv(rows);
        }
    });

    auto* emp = app.add_subcommand("empirical", "seeded Monte Carlo estimators");
    emp->require_subcommand(1);

    int nn = 1;
    auto* emax = emp->add_subcommand("max", "maximize the multilinear form on sampled tensors");
    emax->add_option("--p", p)->required();
    emax->add_option("--n", nn)->required();
    emax->add_option("--set", set_name)->required();
    emax->add_option("--method", method)->check(CLI::IsMember({"brute", "alternating"}));
    emax->add_option("--samples", samples);
    emax->add_option("--seed", seed);
    emax->add_option("--restarts", restarts);
    emax->add_option("--entries", entries_csv,
                     "comma-separated tensor entries (fixed instance; forces samples=1)");
    emax->add_option("--budget-evals", budget.max_evals);
    emax->add_option("--budget-entries", budget.max_entries);
    emax->callback([&] {
        pspin::SpinSet set = pspin::spin_set_from_string(set_name);
        std::vector<pspin::SpinSet> sets((std::size_t)p, set);
        long long count = entries_csv.empty() ? samples : 1;
        if (count < 1) throw CLI::ValidationError("empirical max", "requires samples >= 1");
        json values = json::array();
        bool all_converged = true;
        for (long long s = 0; s < count; ++s) {
            pspin::TensorInstance t =
                entries_csv.empty()
                    ? pspin::sample_tensor(p, nn, pspin::rng::derive(seed, (std::uint64_t)2 * s),
                                           budget.max_entries)
                    : pspin::tensor_from_entries(p, nn, parse_entries(entries_csv));
            pspin::MaximizerResult r =
                method == "brute"
                    ? pspin::brute_force_max(t, sets, budget.max_evals)
                    : pspin::alternating_max(t, sets, restarts,
                                             pspin::rng::derive(seed, (std::uint64_t)2 * s + 1));
            values.push_back(r.value);
            all_converged = all_converged && r.converged;
        }
        double mean = 0.0;
        for (const auto& v : values) mean += v.get<double>();
        mean /= (double)values.size();
        json results{{"values", values}, {"mean", mean}, {"method", method},
                     {"converged", all_converged}};
        if (method == "alternating") results["restarts"] = restarts;
        emit(json{{"params",
                   {{"p", p}, {"n", nn}, {"set", set_name}, {"samples", count},
                    {"method", method}}},
                  {"results", results},
                  {"seed", seed}});
    });

    auto* esand = emp->add_subcommand(
        "sandwich", "lower / plain / upper exponential functionals at one c3");
    esand->add_option("--p", p)->required();
    esand->add_option("--n", nn)->required();
    esand->add_option("--set", set_name)->required();
    esand->add_option("--c3", c3)->required();
    esand->add_option("--samples", samples);
    esand->add_option("--seed", seed);
    esand->add_option("--restarts", restarts);
    esand->add_option("--budget-evals", budget.max_evals);
    esand->add_option("--budget-entries", budget.max_entries);
    esand->callback([&] {
        pspin::SpinSet set = pspin::spin_set_from_string(set_name);
        pspin::McEstimate lower = pspin::estimate_xi_lower(p, nn, set, c3, samples,
                                                           pspin::rng::derive(seed, 1), budget,
                                                           restarts);
        pspin::McEstimate mid =
            pspin::estimate_xi(p, nn, set, c3, samples, pspin::rng::derive(seed, 2), budget,
                               restarts);
        pspin::McEstimate upper_mc =
            pspin::estimate_xi_upper(p, nn, set, c3, samples, pspin::rng::derive(seed, 3));
        double upper = pspin::finite_n_upper_bound(p, nn, c3, set);
        auto se2 = [](const pspin::McEstimate& a, const pspin::McEstimate& b) {
            return std::sqrt(a.std_err * a.std_err + b.std_err * b.std_err);
        };
        bool ordered = lower.mean <= mid.mean + 3.0 * se2(lower, mid) &&
                       mid.mean <= upper + 3.0 * mid.std_err;
        emit(json{{"params",
                   {{"p", p}, {"n", nn}, {"set", set_name}, {"c3", c3}, {"samples", samples}}},
                  {"results",
                   {{"xi_lower", to_json(lower)},
                    {"xi", to_json(mid)},
                    {"xi_upper_analytic", upper},
                    {"xi_upper_mc", to_json(upper_mc)},
                    {"ordered_within_3se", ordered}}},
                  {"seed", seed}});
    });

    auto* etail = emp->add_subcommand("tail", "empirical tail P(zeta >= u), single-partite");
    etail->add_option("--p", p)->required();
    etail->add_option("--n", nn)->required();
    etail->add_option("--set", set_name)->required();
    etail->add_option("--u", u_level)->required();
    etail->add_option("--samples", samples);
    etail->add_option("--seed", seed);
    etail->add_option("--restarts", restarts);
    etail->add_option("--budget-evals", budget.max_evals);
    etail->add_option("--budget-entries", budget.max_entries);
    etail->callback([&] {
        pspin::SpinSet set = pspin::spin_set_from_string(set_name);
        pspin::TailEstimate t =
            pspin::tail_probability(p, nn, set, u_level, samples, seed, budget, restarts);
        json results{{"probability", t.probability},
                     {"std_err", t.std_err},
                     {"hits", t.hits},
                     {"rate_per_site", t.rate_per_site ? json(*t.rate_per_site) : json(nullptr)},
                     {"probability_upper_95",
                      t.upper_bound_95 ? json(*t.upper_bound_95) : json(nullptr)}};
        try {
            pspin::RatePoint rp =
                set == pspin::SpinSet::Spherical ? pspin::spherical_rate(p, u_level)
                                                 : pspin::ising_rate(p, u_level);
            results["phi_analytic"] = rp.phi;
        } catch (const std::domain_error&) {
            results["phi_analytic"] = nullptr;
        }
        emit(json{{"params",
                   {{"p", p}, {"n", nn}, {"set", set_name}, {"u", u_level},
                    {"samples", samples}}},
                  {"results", results},
                  {"seed", seed}});
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const pspin::budget_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const pspin::consistency_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
