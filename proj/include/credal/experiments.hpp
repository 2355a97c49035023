/* Copyright 2026 The credal-bounds Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    https://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "credal/bounds.hpp"
#include "credal/construction.hpp"
#include "credal/format.hpp"
#include "credal/hypotheses.hpp"
#include "credal/rng.hpp"

namespace credal::experiments {

inline constexpr const char* kToolVersion = "0.1.0";

/// Invalid configuration; the CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Numerical failure (non-convergence, violated row invariant); exit code 3.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    std::string experiment_id = "custom";
    std::vector<double> likelihood_means;
    std::vector<double> likelihood_sds;
    std::optional<std::vector<double>> epsilons;
    std::size_t h_count = 100;
    double grid_lo = -10.0;
    double grid_hi = 10.0;
    double delta = 0.05;
    std::vector<std::size_t> sample_sizes;
    std::vector<std::size_t> test_sizes;  // experiment 2 only
    double noise_rho = 0.0;
    std::size_t trials = 1000;
    std::uint64_t master_seed = 20240501;
    bounds::LogBase log_base = bounds::LogBase::Natural;

    void validate() const {
        if (likelihood_means.empty()) throw ConfigError("config field likelihood_means: empty");
        if (likelihood_sds.size() != likelihood_means.size())
            throw ConfigError("config field likelihood_sds: size mismatch with likelihood_means");
        for (double s : likelihood_sds)
            if (!(s > 0.0)) throw ConfigError("config field likelihood_sds: must be positive");
        if (!(delta > 0.0 && delta < 1.0))
            throw ConfigError("config field delta: must be in (0,1)");
        if (sample_sizes.empty()) throw ConfigError("config field sample_sizes: empty");
        for (std::size_t n : sample_sizes)
            if (n < 1) throw ConfigError("config field sample_sizes: entries must be >= 1");
        for (std::size_t n : test_sizes)
            if (n < 1) throw ConfigError("config field test_sizes: entries must be >= 1");
        if (h_count < 1) throw ConfigError("config field h_count: must be >= 1");
        if (!(grid_lo < grid_hi)) throw ConfigError("config field grid_lo/grid_hi: need lo < hi");
        if (!(noise_rho >= 0.0 && noise_rho < 0.5))
            throw ConfigError("config field noise_rho: must be in [0, 0.5)");
        if (trials < 1) throw ConfigError("config field trials: must be >= 1");
    }

    /// Index of the designated true distribution among the likelihoods.
    std::size_t true_index() const { return likelihood_means.size() / 2; }

    nlohmann::json to_json() const {
        nlohmann::json j{{"experiment_id", experiment_id},
                         {"likelihood_means", likelihood_means},
                         {"likelihood_sds", likelihood_sds},
                         {"h_count", h_count},
                         {"grid_lo", grid_lo},
                         {"grid_hi", grid_hi},
                         {"delta", delta},
                         {"sample_sizes", sample_sizes},
                         {"noise_rho", noise_rho},
                         {"trials", trials},
                         {"master_seed", master_seed},
                         {"log_base", log_base == bounds::LogBase::Natural ? "natural" : "ten"}};
        if (!test_sizes.empty()) j["test_sizes"] = test_sizes;
        if (epsilons) j["epsilons"] = *epsilons;
        return j;
    }
};

inline ExperimentConfig experiment_config_from_json(const nlohmann::json& j) {
    ExperimentConfig c;
    try {
        c.experiment_id = j.value("experiment_id", std::string("custom"));
        c.likelihood_means = j.at("likelihood_means").get<std::vector<double>>();
        if (j.contains("likelihood_sds"))
            c.likelihood_sds = j.at("likelihood_sds").get<std::vector<double>>();
        else
            c.likelihood_sds.assign(c.likelihood_means.size(), 1.0);
        if (j.contains("epsilons")) c.epsilons = j.at("epsilons").get<std::vector<double>>();
        c.h_count = j.value("h_count", std::size_t{100});
        c.grid_lo = j.value("grid_lo", -10.0);
        c.grid_hi = j.value("grid_hi", 10.0);
        c.delta = j.value("delta", 0.05);
        c.sample_sizes = j.at("sample_sizes").get<std::vector<std::size_t>>();
        if (j.contains("test_sizes"))
            c.test_sizes = j.at("test_sizes").get<std::vector<std::size_t>>();
        c.noise_rho = j.value("noise_rho", 0.0);
        c.trials = j.value("trials", std::size_t{1000});
        c.master_seed = j.value("master_seed", std::uint64_t{20240501});
        std::string base = j.value("log_base", std::string("natural"));
        if (base == "natural" || base == "e")
            c.log_base = bounds::LogBase::Natural;
        else if (base == "ten" || base == "10")
            c.log_base = bounds::LogBase::Ten;
        else
            throw ConfigError("config field log_base: expected 'natural' or 'ten'");
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    c.validate();
    return c;
}

enum class CellKind { Integer, Fixed5, YesNo };

/// Rectangular numeric table with provenance footer lines.
struct ResultTable {
    std::vector<std::string> headers;
    std::vector<CellKind> kinds;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> footers;

    double cell(std::size_t row, const std::string& header) const {
        for (std::size_t c = 0; c < headers.size(); ++c)
            if (headers[c] == header) return rows.at(row).at(c);
        throw std::out_of_range("no column: " + header);
    }

    std::string render_cell(std::size_t r, std::size_t c) const {
        double v = rows[r][c];
        switch (kinds[c]) {
            case CellKind::Integer: return std::to_string(static_cast<long long>(v));
            case CellKind::YesNo: return v != 0.0 ? "Yes" : "No";
            case CellKind::Fixed5: return format::fixed5(v);
        }
        return "";
    }

    std::string render_csv() const {
        std::string out;
        for (std::size_t c = 0; c < headers.size(); ++c)
            out += (c ? "," : "") + headers[c];
        out += '\n';
        for (std::size_t r = 0; r < rows.size(); ++r) {
            for (std::size_t c = 0; c < headers.size(); ++c)
                out += (c ? "," : "") + render_cell(r, c);
            out += '\n';
        }
        for (const auto& f : footers) out += "# " + f + '\n';
        return out;
    }

    std::string render_markdown() const {
        std::string out = "|";
        for (const auto& h : headers) out += " " + h + " |";
        out += "\n|";
        for (std::size_t c = 0; c < headers.size(); ++c) out += " --- |";
        out += '\n';
        for (std::size_t r = 0; r < rows.size(); ++r) {
            out += "|";
            for (std::size_t c = 0; c < headers.size(); ++c)
                out += " " + render_cell(r, c) + " |";
            out += '\n';
        }
        out += '\n';
        for (const auto& f : footers) out += "_" + f + "_\n";
        return out;
    }
};

namespace detail {

inline std::vector<std::string> provenance(const ExperimentConfig& cfg) {
    std::uint64_t h = format::fnv1a64(cfg.to_json().dump());
    return {"config_hash=" + format::hex64(h),
            "master_seed=" + std::to_string(cfg.master_seed),
            "tool_version=" + std::string(kToolVersion)};
}

/// Per-likelihood generative models sharing the reconstructed protocol's
/// true threshold: the middle point of the hypothesis grid.
inline std::vector<hypotheses::GaussianLabelModel> protocol_models(
    const ExperimentConfig& cfg, const hypotheses::HypothesisSpace& grid) {
    double theta_star = grid.at(cfg.h_count / 2).theta;
    std::vector<hypotheses::GaussianLabelModel> models;
    for (std::size_t i = 0; i < cfg.likelihood_means.size(); ++i)
        models.push_back({cfg.likelihood_means[i], cfg.likelihood_sds[i], theta_star,
                          cfg.noise_rho, hypotheses::Polarity::PredictsOneAbove});
    return models;
}

}  // namespace detail

/**
 * Bound-tightness sweep: per sample size, the credal fixed-point bound, the
 * uniform bound, the realized bad-set union size, |H|, and realizability of
 * the designated true model.
 */
inline ResultTable run_experiment1(const ExperimentConfig& cfg) {
    cfg.validate();
    auto grid = hypotheses::make_grid_space(cfg.grid_lo, cfg.grid_hi, cfg.h_count);
    auto models = detail::protocol_models(cfg, grid);
    auto oracle = bounds::make_risk_oracle(models);
    const auto& true_model = models[cfg.true_index()];

    double best = 1.0;
    for (std::size_t h = 0; h < grid.size(); ++h)
        best = std::min(best, hypotheses::expected_risk_gaussian(true_model, grid.at(h)));
    bool realizable = best <= 1e-12;

    ResultTable t;
    t.headers = {"n", "eps_star", "eps_ub", "union_bad_set", "h_count", "realizable"};
    t.kinds = {CellKind::Integer, CellKind::Fixed5, CellKind::Fixed5, CellKind::Integer,
               CellKind::Integer, CellKind::YesNo};
    for (std::size_t n : cfg.sample_sizes) {
        auto star = bounds::epsilon_star(oracle, grid, n, cfg.delta, cfg.log_base);
        auto ub = bounds::epsilon_ub(cfg.h_count, n, cfg.delta, cfg.log_base);
        if (star.bound_value > ub.bound_value + 1e-12)
            throw NumericalError("experiment1: eps_star exceeded eps_ub");
        t.rows.push_back({static_cast<double>(n), star.bound_value, ub.bound_value,
                          star.intermediate("bad_set_size"), static_cast<double>(cfg.h_count),
                          realizable ? 1.0 : 0.0});
    }
    t.footers = detail::provenance(cfg);
    return t;
}

/**
 * Sanity check of the uniform realizable bound: seeded trials of
 * train-ERM / test-evaluate, counting test-risk violations of eps_ub at the
 * test-set size. Reported risk is the mean test empirical risk.
 */
inline ResultTable run_experiment2(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.test_sizes.size() != cfg.sample_sizes.size())
        throw ConfigError("config field test_sizes: must parallel sample_sizes");
    auto grid = hypotheses::make_grid_space(cfg.grid_lo, cfg.grid_hi, cfg.h_count);
    auto models = detail::protocol_models(cfg, grid);
    const auto& model = models[cfg.true_index()];
    auto oracle = bounds::make_risk_oracle({model});

    ResultTable t;
    t.headers = {"train_n", "test_n", "test_risk", "eps_star", "eps_ub", "violations"};
    t.kinds = {CellKind::Integer, CellKind::Integer, CellKind::Fixed5,
               CellKind::Fixed5, CellKind::Fixed5, CellKind::Integer};
    for (std::size_t r = 0; r < cfg.sample_sizes.size(); ++r) {
        const std::size_t train_n = cfg.sample_sizes[r];
        const std::size_t test_n = cfg.test_sizes[r];
        auto ub = bounds::epsilon_ub(cfg.h_count, test_n, cfg.delta, cfg.log_base);
        auto star = bounds::epsilon_star(oracle, grid, test_n, cfg.delta, cfg.log_base);

        std::uint64_t row_seed = substream_seed(cfg.master_seed, r);
        std::size_t violations = 0;
        double risk_sum = 0.0;
        for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
            RngStream train_rng = substream(row_seed, 2 * trial);
            RngStream test_rng = substream(row_seed, 2 * trial + 1);
            auto train = hypotheses::sample(model, train_n, train_rng);
            auto test = hypotheses::sample(model, test_n, test_rng);
            auto [hhat, train_risk] = hypotheses::erm(train, grid);
            double test_risk = hypotheses::empirical_risk(test, hhat);
            risk_sum += test_risk;
            if (test_risk > ub.bound_value) ++violations;
        }
        t.rows.push_back({static_cast<double>(train_n), static_cast<double>(test_n),
                          risk_sum / static_cast<double>(cfg.trials), star.bound_value,
                          ub.bound_value, static_cast<double>(violations)});
    }
    t.footers = detail::provenance(cfg);
    return t;
}

/**
 * Agnostic sweep under label noise: per sample size, the closed-form risks
 * of the ERM and of the best hypothesis, their gap, the agnostic credal
 * fixed-point bound at the drawn dataset, and the uniform agnostic bound.
 * Row invariants gap <= eps_ss <= eps_prime_ub are enforced.
 */
inline ResultTable run_experiment3(const ExperimentConfig& cfg) {
    cfg.validate();
    auto grid = hypotheses::make_grid_space(cfg.grid_lo, cfg.grid_hi, cfg.h_count);
    auto models = detail::protocol_models(cfg, grid);
    const auto& true_model = models[cfg.true_index()];
    auto oracle = bounds::make_risk_oracle(models);

    double best_risk = 1.0;
    for (std::size_t h = 0; h < grid.size(); ++h)
        best_risk = std::min(best_risk, hypotheses::expected_risk_gaussian(true_model, grid.at(h)));

    ResultTable t;
    t.headers = {"n", "risk_erm", "risk_best", "difference", "eps_ss", "eps_prime_ub"};
    t.kinds = {CellKind::Integer, CellKind::Fixed5, CellKind::Fixed5,
               CellKind::Fixed5, CellKind::Fixed5, CellKind::Fixed5};
    for (std::size_t r = 0; r < cfg.sample_sizes.size(); ++r) {
        const std::size_t n = cfg.sample_sizes[r];
        RngStream rng = substream(substream_seed(cfg.master_seed, r), 0);
        auto data = hypotheses::sample(true_model, n, rng);
        auto [hhat, emp] = hypotheses::erm(data, grid);
        double risk_erm = hypotheses::expected_risk_gaussian(true_model, hhat);
        double diff = risk_erm - best_risk;
        auto ss = bounds::epsilon_star_star(oracle, grid, data, n, cfg.delta, cfg.log_base);
        auto pub = bounds::epsilon_prime_ub(cfg.h_count, n, cfg.delta, cfg.log_base);
        if (diff > ss.bound_value + 1e-12)
            throw NumericalError("experiment3: excess risk exceeded eps_ss");
        if (ss.bound_value > pub.bound_value + 1e-12)
            throw NumericalError("experiment3: eps_ss exceeded eps_prime_ub");
        t.rows.push_back({static_cast<double>(n), risk_erm, best_risk, diff, ss.bound_value,
                          pub.bound_value});
    }
    t.footers = detail::provenance(cfg);
    return t;
}

/// Dispatch on experiment_id ("exp1_*", "exp2_*", "exp3_*").
inline ResultTable run_experiment(const ExperimentConfig& cfg) {
    if (cfg.experiment_id.rfind("exp1", 0) == 0) return run_experiment1(cfg);
    if (cfg.experiment_id.rfind("exp2", 0) == 0) return run_experiment2(cfg);
    if (cfg.experiment_id.rfind("exp3", 0) == 0) return run_experiment3(cfg);
    throw ConfigError("config field experiment_id: unknown id '" + cfg.experiment_id + "'");
}

// ---------------------------------------------------------------------------
// Construction-route configuration (CLI `construct`)
// ---------------------------------------------------------------------------

struct ConstructionConfig {
    std::optional<std::vector<std::string>> outcomes;
    std::vector<std::vector<double>> likelihoods;
    std::vector<double> epsilons;
    std::vector<std::vector<std::string>> datasets;
};

inline ConstructionConfig construction_config_from_json(const nlohmann::json& j) {
    ConstructionConfig c;
    try {
        if (j.contains("outcomes"))
            c.outcomes = j.at("outcomes").get<std::vector<std::string>>();
        if (j.contains("likelihoods"))
            c.likelihoods = j.at("likelihoods").get<std::vector<std::vector<double>>>();
        if (j.contains("epsilons")) c.epsilons = j.at("epsilons").get<std::vector<double>>();
        if (j.contains("datasets"))
            c.datasets = j.at("datasets").get<std::vector<std::vector<std::string>>>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return c;
}

/// Builds the likelihood ensemble from a construction config.
inline construction::LikelihoodEnsemble ensemble_from_config(const ConstructionConfig& c) {
    if (c.likelihoods.empty()) throw ConfigError("config field likelihoods: required");
    std::vector<std::string> labels;
    if (c.outcomes) {
        labels = *c.outcomes;
    } else {
        for (std::size_t i = 0; i < c.likelihoods.front().size(); ++i)
            labels.push_back("w" + std::to_string(i + 1));
    }
    SampleSpace space(labels);
    std::vector<FiniteDistribution> pmfs;
    for (const auto& row : c.likelihoods) {
        if (row.size() != space.size())
            throw ConfigError("config field likelihoods: row size mismatch with outcomes");
        pmfs.emplace_back(space, row);
    }
    return construction::LikelihoodEnsemble(std::move(pmfs));
}

}  // namespace credal::experiments
