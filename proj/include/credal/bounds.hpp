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

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "credal/finite_space.hpp"
#include "credal/hypotheses.hpp"
#include "credal/rng.hpp"

namespace credal::bounds {

using hypotheses::HypothesisSpace;
using hypotheses::LabeledDataset;
using hypotheses::ThresholdHypothesis;

enum class LogBase { Natural, Ten };

inline double log_in_base(double x, LogBase base) {
    return base == LogBase::Natural ? std::log(x) : std::log10(x);
}

enum class FormulaId {
    T1,
    C_UB,
    C1_1_drift,
    C1_3_diam,
    T2,
    C_PRIME_UB,
    C2_2_drift,
    C2_3_diam,
    T3,
    C3_2_drift,
    C3_3_diam,
};

inline std::string to_string(FormulaId id) {
    switch (id) {
        case FormulaId::T1: return "T1";
        case FormulaId::C_UB: return "C_UB";
        case FormulaId::C1_1_drift: return "C1_1_drift";
        case FormulaId::C1_3_diam: return "C1_3_diam";
        case FormulaId::T2: return "T2";
        case FormulaId::C_PRIME_UB: return "C_PRIME_UB";
        case FormulaId::C2_2_drift: return "C2_2_drift";
        case FormulaId::C2_3_diam: return "C2_3_diam";
        case FormulaId::T3: return "T3";
        case FormulaId::C3_2_drift: return "C3_2_drift";
        case FormulaId::C3_3_diam: return "C3_3_diam";
    }
    throw std::invalid_argument("FormulaId: unknown");
}

inline FormulaId formula_from_string(const std::string& s) {
    static const std::map<std::string, FormulaId> table = {
        {"T1", FormulaId::T1},
        {"C_UB", FormulaId::C_UB},
        {"C1_1_drift", FormulaId::C1_1_drift},
        {"C1_3_diam", FormulaId::C1_3_diam},
        {"T2", FormulaId::T2},
        {"C_PRIME_UB", FormulaId::C_PRIME_UB},
        {"C2_2_drift", FormulaId::C2_2_drift},
        {"C2_3_diam", FormulaId::C2_3_diam},
        {"T3", FormulaId::T3},
        {"C3_2_drift", FormulaId::C3_2_drift},
        {"C3_3_diam", FormulaId::C3_3_diam},
    };
    auto it = table.find(s);
    if (it == table.end()) throw std::invalid_argument("unknown formula id: " + s);
    return it->second;
}

/// A computed bound plus the intermediates needed to audit it.
struct BoundReport {
    FormulaId formula_id = FormulaId::C_UB;
    double bound_value = 0.0;
    double delta = 0.0;
    std::size_t n = 0;
    std::map<std::string, double> intermediates;

    double intermediate(const std::string& key) const {
        auto it = intermediates.find(key);
        if (it == intermediates.end()) throw std::out_of_range("missing intermediate: " + key);
        return it->second;
    }
};

inline nlohmann::json to_json(const BoundReport& r) {
    return nlohmann::json{{"formula_id", to_string(r.formula_id)},
                          {"bound", r.bound_value},
                          {"delta", r.delta},
                          {"n", r.n},
                          {"intermediates", r.intermediates}};
}

/// One-row CSV with the fixed audit columns; absent intermediates stay blank.
inline std::string report_to_csv(const BoundReport& r) {
    std::string out = "formula_id,n,delta,bound,bad_set_size,rademacher,stderr,eta,k,iterations\n";
    char buf[64];
    out += to_string(r.formula_id);
    std::snprintf(buf, sizeof buf, ",%zu,%.17g,%.17g", r.n, r.delta, r.bound_value);
    out += buf;
    for (const char* key : {"bad_set_size", "rademacher_estimate", "rademacher_stderr",
                            "diameter_eta", "k", "iterations"}) {
        auto it = r.intermediates.find(key);
        if (it == r.intermediates.end()) {
            out += ',';
        } else {
            std::snprintf(buf, sizeof buf, ",%.17g", it->second);
            out += buf;
        }
    }
    out += '\n';
    return out;
}

/**
 * Expected risk per extreme point, decoupled from the data-model
 * representation: risk(i, h) is the expected zero-one loss of h under the
 * i-th extreme distribution.
 */
struct RiskOracle {
    std::size_t extreme_count = 0;
    std::function<double(std::size_t, const ThresholdHypothesis&)> risk;
};

inline RiskOracle make_risk_oracle(std::vector<hypotheses::GaussianLabelModel> extremes) {
    for (const auto& m : extremes) m.validate();
    auto models = std::make_shared<std::vector<hypotheses::GaussianLabelModel>>(std::move(extremes));
    return {models->size(), [models](std::size_t i, const ThresholdHypothesis& h) {
                return hypotheses::expected_risk_gaussian(models->at(i), h);
            }};
}

inline RiskOracle make_risk_oracle(const CredalSet& c,
                                   std::vector<hypotheses::LabeledPoint> points) {
    if (points.size() != c.space().size())
        throw std::invalid_argument("make_risk_oracle: outcome/point count mismatch");
    auto ext = std::make_shared<std::vector<FiniteDistribution>>(c.extremes());
    auto pts = std::make_shared<std::vector<hypotheses::LabeledPoint>>(std::move(points));
    return {ext->size(), [ext, pts](std::size_t i, const ThresholdHypothesis& h) {
                return hypotheses::expected_risk_finite(ext->at(i), *pts, h);
            }};
}

/// Worst-case expected risk of each hypothesis across the extremes.
inline std::vector<double> max_risk_per_hypothesis(const RiskOracle& oracle,
                                                   const HypothesisSpace& hs) {
    if (oracle.extreme_count == 0) throw std::invalid_argument("risk oracle has no extremes");
    std::vector<double> worst(hs.size(), 0.0);
    for (std::size_t h = 0; h < hs.size(); ++h)
        for (std::size_t i = 0; i < oracle.extreme_count; ++i)
            worst[h] = std::max(worst[h], oracle.risk(i, hs.at(h)));
    return worst;
}

/// Union over extremes of {h : L_ex(h) > eps}; antitone in eps.
inline std::vector<std::size_t> bad_set_realizable(const RiskOracle& oracle,
                                                   const HypothesisSpace& hs, double eps) {
    if (eps < 0.0) throw std::invalid_argument("bad_set_realizable: eps must be >= 0");
    auto worst = max_risk_per_hypothesis(oracle, hs);
    std::vector<std::size_t> out;
    for (std::size_t h = 0; h < hs.size(); ++h)
        if (worst[h] > eps) out.push_back(h);
    return out;
}

/**
 * Union over extremes of {h : |empirical(h, d) - L_ex(h)| > eps/2}.
 * The dataset is explicit: the empirical risk is part of the bound's data.
 */
inline std::vector<std::size_t> bad_set_agnostic(const RiskOracle& oracle,
                                                 const HypothesisSpace& hs,
                                                 const LabeledDataset& d, double eps) {
    if (eps < 0.0) throw std::invalid_argument("bad_set_agnostic: eps must be >= 0");
    if (d.size() == 0) throw std::invalid_argument("bad_set_agnostic: empty dataset");
    std::vector<std::size_t> out;
    for (std::size_t h = 0; h < hs.size(); ++h) {
        double emp = hypotheses::empirical_risk(d, hs.at(h));
        double gap = 0.0;
        for (std::size_t i = 0; i < oracle.extreme_count; ++i)
            gap = std::max(gap, std::fabs(emp - oracle.risk(i, hs.at(h))));
        if (gap > eps / 2.0) out.push_back(h);
    }
    return out;
}

namespace detail {

/**
 * Least self-consistent epsilon for a bad-set bound.
 *
 * count_at(eps) = #{thresholds > eps} is a right-continuous, nonincreasing
 * step function, and formula(count) is increasing in count, so the set
 * {eps : formula(count_at(eps)) <= eps} (empty bad set counts as satisfied)
 * is an up-set. Bisection on [0, hi] to 1e-10, then an exact snap to the
 * smallest satisfying point of the bracket: either the interior crossing
 * formula(count) = eps of the final plateau or the plateau's left boundary.
 */
struct FixedPointResult {
    double epsilon = 0.0;
    std::size_t bad_count = 0;
    std::size_t iterations = 0;
};

inline FixedPointResult least_consistent_epsilon(std::vector<double> thresholds,
                                                 const std::function<double(std::size_t)>& formula,
                                                 double hi) {
    std::sort(thresholds.begin(), thresholds.end());
    auto count_at = [&](double eps) -> std::size_t {
        return thresholds.end() -
               std::upper_bound(thresholds.begin(), thresholds.end(), eps);
    };
    auto satisfied = [&](double eps) {
        std::size_t c = count_at(eps);
        return c == 0 || formula(c) <= eps;
    };

    if (!satisfied(hi))
        throw std::runtime_error("least_consistent_epsilon: upper bracket not self-consistent");
    if (satisfied(0.0)) return {0.0, count_at(0.0), 0};

    double lo = 0.0, up = hi;
    std::size_t iters = 0;
    while (up - lo > 1e-10 && iters < 200) {
        double mid = 0.5 * (lo + up);
        if (satisfied(mid))
            up = mid;
        else
            lo = mid;
        ++iters;
    }

    // exact snap: candidates are the plateau boundaries inside the bracket
    // and the interior crossing of the final plateau
    std::vector<double> candidates;
    for (double t : thresholds)
        if (t > lo && t <= up) candidates.push_back(t);
    if (count_at(up) > 0) candidates.push_back(formula(count_at(up)));
    candidates.push_back(up);
    double best = up;
    for (double c : candidates)
        if (c >= 0.0 && c <= up && satisfied(c)) best = std::min(best, c);
    return {best, count_at(best), iters};
}

}  // namespace detail

/// Uniform realizable bound: (log|H| + log(1/delta)) / n.
inline BoundReport epsilon_ub(std::size_t h_count, std::size_t n, double delta,
                              LogBase base = LogBase::Natural) {
    if (h_count < 1) throw std::invalid_argument("epsilon_ub: h_count must be >= 1");
    if (n < 1) throw std::invalid_argument("epsilon_ub: n must be >= 1");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("epsilon_ub: delta outside (0,1)");
    BoundReport r;
    r.formula_id = FormulaId::C_UB;
    r.n = n;
    r.delta = delta;
    r.bound_value = (log_in_base(static_cast<double>(h_count), base) +
                     log_in_base(1.0 / delta, base)) /
                    static_cast<double>(n);
    r.intermediates["h_count"] = static_cast<double>(h_count);
    return r;
}

/// Uniform agnostic bound: sqrt(2 (log|H| + log(2/delta)) / n).
inline BoundReport epsilon_prime_ub(std::size_t h_count, std::size_t n, double delta,
                                    LogBase base = LogBase::Natural) {
    if (h_count < 1) throw std::invalid_argument("epsilon_prime_ub: h_count must be >= 1");
    if (n < 1) throw std::invalid_argument("epsilon_prime_ub: n must be >= 1");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("epsilon_prime_ub: delta outside (0,1)");
    BoundReport r;
    r.formula_id = FormulaId::C_PRIME_UB;
    r.n = n;
    r.delta = delta;
    r.bound_value = std::sqrt(2.0 *
                              (log_in_base(static_cast<double>(h_count), base) +
                               log_in_base(2.0 / delta, base)) /
                              static_cast<double>(n));
    r.intermediates["h_count"] = static_cast<double>(h_count);
    return r;
}

/**
 * Realizable credal bound: the least eps with
 * (log|B(eps)| + log(1/delta)) / n <= eps, where B(eps) is the union of
 * per-extreme bad sets. Empty bad set counts as satisfied.
 */
inline BoundReport epsilon_star(const RiskOracle& oracle, const HypothesisSpace& hs,
                                std::size_t n, double delta, LogBase base = LogBase::Natural) {
    if (n < 1) throw std::invalid_argument("epsilon_star: n must be >= 1");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("epsilon_star: delta outside (0,1)");
    auto thresholds = max_risk_per_hypothesis(oracle, hs);
    double hi = epsilon_ub(hs.size(), n, delta, base).bound_value;
    auto formula = [&](std::size_t count) {
        return (log_in_base(static_cast<double>(count), base) + log_in_base(1.0 / delta, base)) /
               static_cast<double>(n);
    };
    auto fp = detail::least_consistent_epsilon(std::move(thresholds), formula, hi);
    BoundReport r;
    r.formula_id = FormulaId::T1;
    r.n = n;
    r.delta = delta;
    r.bound_value = fp.epsilon;
    r.intermediates["bad_set_size"] = static_cast<double>(fp.bad_count);
    r.intermediates["iterations"] = static_cast<double>(fp.iterations);
    return r;
}

/**
 * Agnostic credal bound: the least eps with
 * sqrt(2 (log|B'(eps)| + log(2/delta)) / n) <= eps, where B'(eps) collects
 * hypotheses whose empirical-vs-extreme risk gap exceeds eps/2.
 */
inline BoundReport epsilon_star_star(const RiskOracle& oracle, const HypothesisSpace& hs,
                                     const LabeledDataset& d, std::size_t n, double delta,
                                     LogBase base = LogBase::Natural) {
    if (n < 1) throw std::invalid_argument("epsilon_star_star: n must be >= 1");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("epsilon_star_star: delta outside (0,1)");
    if (d.size() == 0) throw std::invalid_argument("epsilon_star_star: empty dataset");

    // plateau boundaries: h leaves B'(eps) once eps >= 2 * gap(h)
    std::vector<double> thresholds(hs.size(), 0.0);
    for (std::size_t h = 0; h < hs.size(); ++h) {
        double emp = hypotheses::empirical_risk(d, hs.at(h));
        double gap = 0.0;
        for (std::size_t i = 0; i < oracle.extreme_count; ++i)
            gap = std::max(gap, std::fabs(emp - oracle.risk(i, hs.at(h))));
        thresholds[h] = 2.0 * gap;
    }
    // formula(count) <= formula(|H|) = eps_prime_ub for every count, so the
    // uniform bound is always a valid upper bracket
    double hi = epsilon_prime_ub(hs.size(), n, delta, base).bound_value;
    auto formula = [&](std::size_t count) {
        return std::sqrt(2.0 *
                         (log_in_base(static_cast<double>(count), base) +
                          log_in_base(2.0 / delta, base)) /
                         static_cast<double>(n));
    };
    auto fp = detail::least_consistent_epsilon(std::move(thresholds), formula, hi);
    BoundReport r;
    r.formula_id = FormulaId::T2;
    r.n = n;
    r.delta = delta;
    r.bound_value = fp.epsilon;
    r.intermediates["bad_set_size"] = static_cast<double>(fp.bad_count);
    r.intermediates["iterations"] = static_cast<double>(fp.iterations);
    return r;
}

/// Drift factor n^2 / (k (n-k)) applied to a realizable bound; >= 4 always.
inline double drift_bound_realizable(double eps_star, std::size_t n, std::size_t k) {
    if (k == 0 || k >= n) throw std::invalid_argument("drift_bound_realizable: need 0 < k < n");
    double dn = static_cast<double>(n), dk = static_cast<double>(k);
    return eps_star * dn * dn / (dk * (dn - dk));
}

/// Agnostic drift factor sqrt(n/(k(n-k))) (sqrt(k) + sqrt(n-k)); >= 2 always.
inline double drift_bound_agnostic(double eps_star_star, std::size_t n, std::size_t k) {
    if (k == 0 || k >= n) throw std::invalid_argument("drift_bound_agnostic: need 0 < k < n");
    double dn = static_cast<double>(n), dk = static_cast<double>(k);
    return eps_star_star * std::sqrt(dn / (dk * (dn - dk))) * (std::sqrt(dk) + std::sqrt(dn - dk));
}

/// Adds the TV diameter of the credal set to a base bound, recording eta.
inline BoundReport diam_shift(const BoundReport& base, const CredalSet& c) {
    FormulaId id;
    switch (base.formula_id) {
        case FormulaId::T1:
        case FormulaId::C_UB: id = FormulaId::C1_3_diam; break;
        case FormulaId::T2:
        case FormulaId::C_PRIME_UB: id = FormulaId::C2_3_diam; break;
        case FormulaId::T3: id = FormulaId::C3_3_diam; break;
        default: throw std::invalid_argument("diam_shift: base bound must be T1/T2/T3 family");
    }
    if (base.bound_value < 0.0) throw std::invalid_argument("diam_shift: negative base bound");
    double eta = diameter_tv(c);
    BoundReport r = base;
    r.formula_id = id;
    r.bound_value = base.bound_value + eta;
    r.intermediates["diameter_eta"] = eta;
    return r;
}

// ---------------------------------------------------------------------------
// Rademacher machinery
// ---------------------------------------------------------------------------

struct McParams {
    std::size_t sigma_reps = 200;
    std::size_t data_reps = 50;
};

struct McEstimate {
    double estimate = 0.0;
    double stderr_ = 0.0;
    std::size_t reps = 0;
};

using DataSampler = std::function<LabeledDataset(RngStream&, std::size_t)>;

inline DataSampler make_sampler(const hypotheses::GaussianLabelModel& m) {
    m.validate();
    return [m](RngStream& rng, std::size_t n) { return hypotheses::sample(m, n, rng); };
}

inline DataSampler make_sampler(const FiniteDistribution& p,
                                std::vector<hypotheses::LabeledPoint> points) {
    auto pts = std::make_shared<std::vector<hypotheses::LabeledPoint>>(std::move(points));
    return [p, pts](RngStream& rng, std::size_t n) {
        return hypotheses::sample_finite(p, *pts, n, rng);
    };
}

namespace detail {

/// Per-hypothesis loss columns packed into 64-bit blocks for sign sums.
struct LossMatrix {
    std::size_t n = 0;
    std::size_t blocks = 0;
    std::vector<std::uint64_t> bits;  // hypothesis-major
    std::vector<int> column_popcount;

    LossMatrix(const LabeledDataset& d, const HypothesisSpace& hs)
        : n(d.size()), blocks((d.size() + 63) / 64), bits(hs.size() * blocks, 0),
          column_popcount(hs.size(), 0) {
        for (std::size_t h = 0; h < hs.size(); ++h) {
            for (std::size_t i = 0; i < n; ++i) {
                if (hypotheses::zero_one_loss(d.pairs()[i], hs.at(h))) {
                    bits[h * blocks + i / 64] |= std::uint64_t{1} << (i % 64);
                    ++column_popcount[h];
                }
            }
        }
    }

    std::size_t hypothesis_count() const { return column_popcount.size(); }
};

/**
 * One antithetic sign draw: returns the average of sup_h (1/n) sum sigma l
 * over sigma and -sigma. With v_h = sum_i sigma_i l_ih this is
 * (max_h v_h - min_h v_h) / (2n), which is always in [0, 1].
 */
inline double antithetic_sup(const LossMatrix& m, RngStream& rng) {
    std::vector<std::uint64_t> plus(m.blocks, 0);
    for (std::size_t b = 0; b < m.blocks; ++b) {
        std::uint64_t word = rng.next_u64();
        if (b + 1 == m.blocks && (m.n % 64) != 0) word &= (std::uint64_t{1} << (m.n % 64)) - 1;
        plus[b] = word;
    }
    int vmax = std::numeric_limits<int>::min();
    int vmin = std::numeric_limits<int>::max();
    for (std::size_t h = 0; h < m.hypothesis_count(); ++h) {
        int p = 0;
        for (std::size_t b = 0; b < m.blocks; ++b)
            p += std::popcount(m.bits[h * m.blocks + b] & plus[b]);
        int v = 2 * p - m.column_popcount[h];
        vmax = std::max(vmax, v);
        vmin = std::min(vmin, v);
    }
    return static_cast<double>(vmax - vmin) / (2.0 * static_cast<double>(m.n));
}

}  // namespace detail

/**
 * Conditional (fixed-dataset) Rademacher estimate: mean over sigma_reps
 * antithetic sign draws of the supremum correlation.
 */
inline McEstimate rademacher_conditional(const LabeledDataset& d, const HypothesisSpace& hs,
                                         std::size_t sigma_reps, std::uint64_t seed) {
    if (d.size() == 0) throw std::invalid_argument("rademacher_conditional: empty dataset");
    if (sigma_reps == 0) throw std::invalid_argument("rademacher_conditional: reps must be >= 1");
    detail::LossMatrix m(d, hs);
    RngStream rng(seed);
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t s = 0; s < sigma_reps; ++s) {
        double v = detail::antithetic_sup(m, rng);
        sum += v;
        sumsq += v * v;
    }
    double mean = sum / static_cast<double>(sigma_reps);
    double var = sigma_reps > 1
                     ? std::max(0.0, (sumsq - sum * mean) / static_cast<double>(sigma_reps - 1))
                     : 0.0;
    return {mean, std::sqrt(var / static_cast<double>(sigma_reps)), sigma_reps};
}

/**
 * Monte Carlo expected Rademacher complexity of the zero-one loss class:
 * data_reps datasets of size n from the sampler, sigma_reps antithetic sign
 * draws each. Deterministic per seed; accumulation order is fixed by
 * replicate index.
 */
inline McEstimate rademacher_mc(const DataSampler& sampler, const HypothesisSpace& hs,
                                std::size_t n, std::size_t sigma_reps, std::size_t data_reps,
                                std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("rademacher_mc: n must be >= 1");
    if (sigma_reps < 1 || data_reps < 1)
        throw std::invalid_argument("rademacher_mc: reps must be >= 1");
    double sum = 0.0, sumsq = 0.0;
    const std::size_t total = sigma_reps * data_reps;
    for (std::size_t r = 0; r < data_reps; ++r) {
        RngStream data_rng = substream(seed, 2 * r);
        LabeledDataset d = sampler(data_rng, n);
        detail::LossMatrix m(d, hs);
        RngStream sigma_rng = substream(seed, 2 * r + 1);
        for (std::size_t s = 0; s < sigma_reps; ++s) {
            double v = detail::antithetic_sup(m, sigma_rng);
            sum += v;
            sumsq += v * v;
        }
    }
    double mean = sum / static_cast<double>(total);
    double var =
        total > 1 ? std::max(0.0, (sumsq - sum * mean) / static_cast<double>(total - 1)) : 0.0;
    return {mean, std::sqrt(var / static_cast<double>(total)), total};
}

/**
 * Infinite-space bound: 4 * max-over-extremes Rademacher + sqrt(2 log(2/delta) / n).
 * Per-extreme estimates and standard errors land in the intermediates.
 */
inline BoundReport epsilon_3star(const std::vector<DataSampler>& extremes,
                                 const HypothesisSpace& hs, std::size_t n, double delta,
                                 const McParams& mc, std::uint64_t seed) {
    if (extremes.empty()) throw std::invalid_argument("epsilon_3star: no extremes");
    if (n < 1) throw std::invalid_argument("epsilon_3star: n must be >= 1");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("epsilon_3star: delta outside (0,1)");
    BoundReport r;
    r.formula_id = FormulaId::T3;
    r.n = n;
    r.delta = delta;
    double rbar = 0.0, rbar_stderr = 0.0;
    for (std::size_t i = 0; i < extremes.size(); ++i) {
        McEstimate est = rademacher_mc(extremes[i], hs, n, mc.sigma_reps, mc.data_reps,
                                       substream_seed(seed, i));
        r.intermediates["rademacher_extreme_" + std::to_string(i)] = est.estimate;
        r.intermediates["rademacher_stderr_" + std::to_string(i)] = est.stderr_;
        if (est.estimate > rbar) {
            rbar = est.estimate;
            rbar_stderr = est.stderr_;
        }
    }
    double tail = std::sqrt(2.0 * std::log(2.0 / delta) / static_cast<double>(n));
    r.bound_value = 4.0 * rbar + tail;
    r.intermediates["rademacher_estimate"] = rbar;
    r.intermediates["rademacher_stderr"] = rbar_stderr;
    r.intermediates["tail_term"] = tail;
    return r;
}

/**
 * Drifted infinite-space bound:
 * 4 [Rbar_k + Rbar_{n-k}] + sqrt(2 log(2/delta) / (n(n-k))) (sqrt(n-k) + sqrt(n)).
 */
inline BoundReport drift_bound_rademacher(const std::vector<DataSampler>& extremes,
                                          const HypothesisSpace& hs, std::size_t n, std::size_t k,
                                          double delta, const McParams& mc, std::uint64_t seed) {
    if (k == 0 || k >= n) throw std::invalid_argument("drift_bound_rademacher: need 0 < k < n");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("drift_bound_rademacher: delta outside (0,1)");
    if (extremes.empty()) throw std::invalid_argument("drift_bound_rademacher: no extremes");

    auto rbar_at = [&](std::size_t size, std::uint64_t block_seed, double& err_out) {
        double best = 0.0;
        err_out = 0.0;
        for (std::size_t i = 0; i < extremes.size(); ++i) {
            McEstimate est = rademacher_mc(extremes[i], hs, size, mc.sigma_reps, mc.data_reps,
                                           substream_seed(block_seed, i));
            if (est.estimate > best) {
                best = est.estimate;
                err_out = est.stderr_;
            }
        }
        return best;
    };
    double err_k = 0.0, err_nk = 0.0;
    double rbar_k = rbar_at(k, substream_seed(seed, 0), err_k);
    double rbar_nk = rbar_at(n - k, substream_seed(seed, 1), err_nk);
    double dn = static_cast<double>(n), dk = static_cast<double>(k);
    double tail = std::sqrt(2.0 * std::log(2.0 / delta) / (dn * (dn - dk))) *
                  (std::sqrt(dn - dk) + std::sqrt(dn));

    BoundReport r;
    r.formula_id = FormulaId::C3_2_drift;
    r.n = n;
    r.delta = delta;
    r.bound_value = 4.0 * (rbar_k + rbar_nk) + tail;
    r.intermediates["k"] = static_cast<double>(k);
    r.intermediates["rademacher_k"] = rbar_k;
    r.intermediates["rademacher_n_minus_k"] = rbar_nk;
    r.intermediates["rademacher_estimate"] = std::max(rbar_k, rbar_nk);
    r.intermediates["rademacher_stderr"] = std::max(err_k, err_nk);
    r.intermediates["tail_term"] = tail;
    return r;
}

}  // namespace credal::bounds
