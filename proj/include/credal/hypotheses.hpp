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

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "credal/finite_space.hpp"
#include "credal/rng.hpp"

namespace credal::hypotheses {

/// Standard normal CDF, accurate to double precision via erfc.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x * 0.7071067811865475244); }

enum class Polarity { PredictsOneAbove, PredictsOneBelow };

inline std::string to_string(Polarity p) {
    return p == Polarity::PredictsOneAbove ? "above" : "below";
}

inline Polarity polarity_from_string(const std::string& s) {
    if (s == "above") return Polarity::PredictsOneAbove;
    if (s == "below") return Polarity::PredictsOneBelow;
    throw std::invalid_argument("polarity: expected 'above' or 'below'");
}

/**
 * Scalar threshold classifier. The boundary x == theta counts as the high
 * side: an above-polarity hypothesis predicts 1 there, a below-polarity one
 * predicts 0.
 */
struct ThresholdHypothesis {
    double theta = 0.0;
    Polarity polarity = Polarity::PredictsOneAbove;

    int predict(double x) const {
        bool high = x >= theta;
        return (polarity == Polarity::PredictsOneAbove) == high ? 1 : 0;
    }
    ThresholdHypothesis flipped() const {
        return {theta, polarity == Polarity::PredictsOneAbove ? Polarity::PredictsOneBelow
                                                              : Polarity::PredictsOneAbove};
    }
};

/// Finite ordered hypothesis list; order fixes ERM tie-breaking.
class HypothesisSpace {
  public:
    explicit HypothesisSpace(std::vector<ThresholdHypothesis> hs) : hs_(std::move(hs)) {
        if (hs_.empty()) throw std::invalid_argument("HypothesisSpace: empty");
        for (const auto& h : hs_)
            if (!std::isfinite(h.theta))
                throw std::invalid_argument("HypothesisSpace: non-finite threshold");
    }
    const std::vector<ThresholdHypothesis>& hypotheses() const { return hs_; }
    std::size_t size() const { return hs_.size(); }
    const ThresholdHypothesis& at(std::size_t i) const { return hs_.at(i); }

  private:
    std::vector<ThresholdHypothesis> hs_;
};

/// Evenly spaced thresholds on [lo, hi], endpoints included.
inline HypothesisSpace make_grid_space(double lo, double hi, std::size_t count,
                                       Polarity polarity = Polarity::PredictsOneAbove) {
    if (count == 0) throw std::invalid_argument("make_grid_space: count must be >= 1");
    if (!(lo < hi) && count > 1) throw std::invalid_argument("make_grid_space: degenerate range");
    std::vector<ThresholdHypothesis> hs;
    hs.reserve(count);
    if (count == 1) {
        hs.push_back({lo, polarity});
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            double t = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
            hs.push_back({t, polarity});
        }
    }
    return HypothesisSpace(std::move(hs));
}

struct LabeledPoint {
    double x = 0.0;
    int y = 0;
};

/// Nonempty list of (x, y) pairs.
class LabeledDataset {
  public:
    LabeledDataset() = default;
    explicit LabeledDataset(std::vector<LabeledPoint> pairs) : pairs_(std::move(pairs)) {}
    const std::vector<LabeledPoint>& pairs() const { return pairs_; }
    std::size_t size() const { return pairs_.size(); }
    void push_back(LabeledPoint p) { pairs_.push_back(p); }

  private:
    std::vector<LabeledPoint> pairs_;
};

/// 1 iff the prediction differs from the label.
inline int zero_one_loss(const LabeledPoint& pair, const ThresholdHypothesis& h) {
    return h.predict(pair.x) != pair.y ? 1 : 0;
}

/// Average zero-one loss over the dataset.
inline double empirical_risk(const LabeledDataset& d, const ThresholdHypothesis& h) {
    if (d.size() == 0) throw std::invalid_argument("empirical_risk: empty dataset");
    long long errs = 0;
    for (const auto& p : d.pairs()) errs += zero_one_loss(p, h);
    return static_cast<double>(errs) / static_cast<double>(d.size());
}

/// Lowest-index empirical risk minimizer and its risk.
inline std::pair<ThresholdHypothesis, double> erm(const LabeledDataset& d,
                                                  const HypothesisSpace& hs) {
    if (d.size() == 0) throw std::invalid_argument("erm: empty dataset");
    std::size_t best = 0;
    double best_risk = 2.0;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        double r = empirical_risk(d, hs.at(i));
        if (r < best_risk) {
            best_risk = r;
            best = i;
        }
    }
    return {hs.at(best), best_risk};
}

/**
 * Generative model: x ~ Normal(mean, sd), the clean label is the polarity
 * rule at true_theta, and each label is flipped independently with
 * probability flip_prob.
 */
struct GaussianLabelModel {
    double mean = 0.0;
    double sd = 1.0;
    double true_theta = 0.0;
    double flip_prob = 0.0;
    Polarity polarity = Polarity::PredictsOneAbove;

    void validate() const {
        if (!(sd > 0.0)) throw std::invalid_argument("GaussianLabelModel: sd must be positive");
        if (!(flip_prob >= 0.0 && flip_prob < 0.5))
            throw std::invalid_argument("GaussianLabelModel: flip_prob outside [0, 0.5)");
    }
    int clean_label(double x) const {
        return ThresholdHypothesis{true_theta, polarity}.predict(x);
    }
};

/**
 * Closed-form expected zero-one risk of a threshold hypothesis under the
 * Gaussian label model:
 *   rho + (1 - 2 rho) * d,
 * where d is the x-mass on which h disagrees with the clean rule — the
 * interval between the two thresholds when polarities match, its complement
 * otherwise.
 */
inline double expected_risk_gaussian(const GaussianLabelModel& m, const ThresholdHypothesis& h) {
    m.validate();
    double a = (std::min(h.theta, m.true_theta) - m.mean) / m.sd;
    double b = (std::max(h.theta, m.true_theta) - m.mean) / m.sd;
    double between = normal_cdf(b) - normal_cdf(a);
    double disagree = (h.polarity == m.polarity) ? between : 1.0 - between;
    return m.flip_prob + (1.0 - 2.0 * m.flip_prob) * disagree;
}

/// Expected zero-one risk under a finite distribution over labeled outcomes.
inline double expected_risk_finite(const FiniteDistribution& p,
                                   const std::vector<LabeledPoint>& points,
                                   const ThresholdHypothesis& h) {
    if (points.size() != p.space().size())
        throw std::invalid_argument("expected_risk_finite: outcome/point count mismatch");
    double r = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i)
        r += p.prob(i) * zero_one_loss(points[i], h);
    return r;
}

/**
 * Seeded i.i.d. sample. Each point consumes exactly three raw draws (two
 * for the normal, one for the flip), so positions are reproducible.
 */
inline LabeledDataset sample(const GaussianLabelModel& m, std::size_t n, RngStream& rng) {
    m.validate();
    std::vector<LabeledPoint> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        double x = rng.next_normal(m.mean, m.sd);
        int y = m.clean_label(x);
        if (rng.next_bernoulli(m.flip_prob)) y = 1 - y;
        pts.push_back({x, y});
    }
    return LabeledDataset(std::move(pts));
}

inline LabeledDataset sample(const GaussianLabelModel& m, std::size_t n, std::uint64_t seed) {
    RngStream rng(seed);
    return sample(m, n, rng);
}

/// Inverse-CDF sample from a finite distribution over labeled outcomes.
inline LabeledDataset sample_finite(const FiniteDistribution& p,
                                    const std::vector<LabeledPoint>& points, std::size_t n,
                                    RngStream& rng) {
    if (points.size() != p.space().size())
        throw std::invalid_argument("sample_finite: outcome/point count mismatch");
    std::vector<LabeledPoint> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        double u = rng.next_double();
        double acc = 0.0;
        std::size_t pick = points.size() - 1;
        for (std::size_t j = 0; j < points.size(); ++j) {
            acc += p.prob(j);
            if (u < acc) {
                pick = j;
                break;
            }
        }
        pts.push_back(points[pick]);
    }
    return LabeledDataset(std::move(pts));
}

// ---------------------------------------------------------------------------
// Two-column CSV (x, y)
// ---------------------------------------------------------------------------

inline std::string dataset_to_csv(const LabeledDataset& d) {
    std::string out = "x,y\n";
    char buf[64];
    for (const auto& p : d.pairs()) {
        std::snprintf(buf, sizeof buf, "%.17g,%d\n", p.x, p.y);
        out += buf;
    }
    return out;
}

inline LabeledDataset dataset_from_csv(std::istream& in) {
    std::vector<LabeledPoint> pts;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (first && line.rfind("x,", 0) == 0) {
            first = false;
            continue;
        }
        first = false;
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("dataset_from_csv: malformed row: " + line);
        LabeledPoint p;
        p.x = std::stod(line.substr(0, comma));
        p.y = std::stoi(line.substr(comma + 1));
        if (p.y != 0 && p.y != 1)
            throw std::invalid_argument("dataset_from_csv: label must be 0 or 1");
        pts.push_back(p);
    }
    return LabeledDataset(std::move(pts));
}

}  // namespace credal::hypotheses
