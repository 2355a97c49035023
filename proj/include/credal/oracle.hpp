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

// Brute-force verifiers for tests and derived expected values. These paths
// deliberately duplicate logic instead of calling the production bound
// routines they check; they are allowed to be orders of magnitude slower.

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "credal/bounds.hpp"
#include "credal/finite_space.hpp"
#include "credal/hypotheses.hpp"
#include "credal/rng.hpp"

namespace credal::oracle {

/// Implicit enumeration of all compositions of `resolution` into |space| parts.
struct SimplexGrid {
    SampleSpace space;
    std::size_t resolution;

    SimplexGrid(SampleSpace s, std::size_t res) : space(std::move(s)), resolution(res) {
        if (space.size() > 4) throw std::domain_error("SimplexGrid: more than 4 outcomes");
        if (res == 0 || res > 400) throw std::domain_error("SimplexGrid: resolution outside [1,400]");
    }

    void for_each(const std::function<void(const FiniteDistribution&)>& visit) const {
        const std::size_t n = space.size();
        std::vector<std::size_t> parts(n, 0);
        std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t idx,
                                                                std::size_t left) {
            if (idx + 1 == n) {
                parts[idx] = left;
                std::vector<double> p(n);
                for (std::size_t i = 0; i < n; ++i)
                    p[i] = static_cast<double>(parts[i]) / static_cast<double>(resolution);
                visit(FiniteDistribution(space, std::move(p)));
                return;
            }
            for (std::size_t k = 0; k <= left; ++k) {
                parts[idx] = k;
                rec(idx + 1, left - k);
            }
        };
        rec(0, resolution);
    }
};

/**
 * Direct minimization of P(event) over the grid points admitted by the
 * predicate. Converges to the true lower envelope as resolution grows.
 */
inline double grid_lower_envelope(const std::function<bool(const FiniteDistribution&)>& admits,
                                  const SimplexGrid& grid, Event event) {
    double best = 2.0;
    grid.for_each([&](const FiniteDistribution& p) {
        if (admits(p)) best = std::min(best, p.prob_of(event));
    });
    if (best > 1.5) throw std::domain_error("grid_lower_envelope: predicate admits no grid point");
    return best;
}

/// Monte Carlo check of the closed-form Gaussian risk: sample mean + binomial stderr.
inline std::pair<double, double> mc_expected_risk(const hypotheses::GaussianLabelModel& m,
                                                  const hypotheses::ThresholdHypothesis& h,
                                                  std::size_t samples, std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("mc_expected_risk: samples must be >= 1");
    RngStream rng(seed);
    long long errs = 0;
    for (std::size_t i = 0; i < samples; ++i) {
        double x = rng.next_normal(m.mean, m.sd);
        int y = m.clean_label(x);
        if (rng.next_bernoulli(m.flip_prob)) y = 1 - y;
        errs += hypotheses::zero_one_loss({x, y}, h);
    }
    double p = static_cast<double>(errs) / static_cast<double>(samples);
    double se = std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
    return {p, se};
}

/**
 * Exact conditional Rademacher value of a 0/1 loss matrix (rows = points,
 * columns = hypotheses): full enumeration of all 2^n sign vectors.
 */
inline double exhaustive_rademacher_losses(const std::vector<std::vector<int>>& loss) {
    const std::size_t n = loss.size();
    if (n == 0 || n > 12)
        throw std::domain_error("exhaustive_rademacher: need 1 <= n <= 12 points");
    const std::size_t hcount = loss.front().size();
    for (const auto& row : loss)
        if (row.size() != hcount)
            throw std::invalid_argument("exhaustive_rademacher: ragged loss matrix");

    double total = 0.0;
    const std::uint64_t patterns = std::uint64_t{1} << n;
    for (std::uint64_t sig = 0; sig < patterns; ++sig) {
        long long best = std::numeric_limits<long long>::min();
        for (std::size_t h = 0; h < hcount; ++h) {
            long long s = 0;
            for (std::size_t i = 0; i < n; ++i) {
                int sign = (sig >> i) & 1 ? 1 : -1;
                s += sign * loss[i][h];
            }
            best = std::max(best, s);
        }
        total += static_cast<double>(best) / static_cast<double>(n);
    }
    return total / static_cast<double>(patterns);
}

inline double exhaustive_rademacher(const hypotheses::LabeledDataset& d,
                                    const hypotheses::HypothesisSpace& hs) {
    std::vector<std::vector<int>> loss(d.size(), std::vector<int>(hs.size(), 0));
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t h = 0; h < hs.size(); ++h)
            loss[i][h] = hypotheses::zero_one_loss(d.pairs()[i], hs.at(h));
    return exhaustive_rademacher_losses(loss);
}

enum class CoverageMode { Realizable, Agnostic };

/**
 * Repeated-trial coverage check of a generalization bound. Each trial draws
 * a training set, fits the ERM, and tests the mode's inequality:
 *   Realizable:  L_P(erm)               <= bound
 *   Agnostic:    L_P(erm) - min_h L_P(h) <= bound
 * with L_P the closed-form expected risk. `forced_bound`, when finite,
 * overrides the formula bound (useful for forcing failures in tests).
 */
struct CoverageConfig {
    CoverageMode mode = CoverageMode::Realizable;
    hypotheses::GaussianLabelModel model;
    hypotheses::HypothesisSpace hs{{{0.0, hypotheses::Polarity::PredictsOneAbove}}};
    std::size_t n_train = 100;
    double delta = 0.05;
    double forced_bound = std::numeric_limits<double>::quiet_NaN();
    bounds::LogBase base = bounds::LogBase::Natural;
};

inline std::pair<std::size_t, std::size_t> coverage_trial(const CoverageConfig& cfg,
                                                          std::size_t trials,
                                                          std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("coverage_trial: trials must be >= 1");
    cfg.model.validate();

    double bound;
    if (std::isfinite(cfg.forced_bound)) {
        bound = cfg.forced_bound;
    } else if (cfg.mode == CoverageMode::Realizable) {
        bound = bounds::epsilon_ub(cfg.hs.size(), cfg.n_train, cfg.delta, cfg.base).bound_value;
    } else {
        bound =
            bounds::epsilon_prime_ub(cfg.hs.size(), cfg.n_train, cfg.delta, cfg.base).bound_value;
    }

    double best_risk = 1.0;
    for (std::size_t h = 0; h < cfg.hs.size(); ++h)
        best_risk = std::min(best_risk, hypotheses::expected_risk_gaussian(cfg.model, cfg.hs.at(h)));

    std::size_t violations = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        RngStream rng = substream(seed, t);
        auto train = hypotheses::sample(cfg.model, cfg.n_train, rng);
        auto [hhat, emp] = hypotheses::erm(train, cfg.hs);
        double risk = hypotheses::expected_risk_gaussian(cfg.model, hhat);
        double tested = cfg.mode == CoverageMode::Realizable ? risk : risk - best_risk;
        if (tested > bound) ++violations;
    }
    return {violations, trials};
}

}  // namespace credal::oracle
