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
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "credal/hull.hpp"

#include <json.hpp>

namespace credal {

/// Subsets of a finite sample space are bitmasks over the outcome order.
using Event = std::uint32_t;

inline constexpr std::size_t kMaxPowerSetOutcomes = 24;
inline constexpr double kProbTolerance = 1e-12;
inline constexpr double kHullTolerance = 1e-9;

/**
 * Ordered finite sample space. Outcome labels are opaque strings; an
 * outcome typically stands for an (x,y) pair or an abstract symbol.
 */
class SampleSpace {
  public:
    explicit SampleSpace(std::vector<std::string> outcomes) : outcomes_(std::move(outcomes)) {
        if (outcomes_.empty()) throw std::invalid_argument("SampleSpace: no outcomes");
        std::unordered_set<std::string> seen(outcomes_.begin(), outcomes_.end());
        if (seen.size() != outcomes_.size())
            throw std::invalid_argument("SampleSpace: duplicate outcome label");
    }

    std::size_t size() const { return outcomes_.size(); }
    const std::vector<std::string>& outcomes() const { return outcomes_; }
    const std::string& label(std::size_t i) const { return outcomes_.at(i); }

    Event full_event() const {
        return static_cast<Event>((std::uint64_t{1} << outcomes_.size()) - 1);
    }
    std::size_t subset_count() const { return std::size_t{1} << outcomes_.size(); }

    /// Power-set enumeration is capped; larger spaces reject subset-indexed ops.
    void require_power_set_budget() const {
        if (outcomes_.size() > kMaxPowerSetOutcomes)
            throw std::domain_error("SampleSpace: power-set operations capped at 24 outcomes");
    }

    bool operator==(const SampleSpace& o) const { return outcomes_ == o.outcomes_; }
    bool operator!=(const SampleSpace& o) const { return !(*this == o); }

    /// Sorted labels of an event, rendered as "{a,b}".
    std::string event_label(Event a) const {
        std::vector<std::string> names;
        for (std::size_t i = 0; i < outcomes_.size(); ++i)
            if (a & (Event{1} << i)) names.push_back(outcomes_[i]);
        std::sort(names.begin(), names.end());
        std::string out = "{";
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (i) out += ',';
            out += names[i];
        }
        out += '}';
        return out;
    }

  private:
    std::vector<std::string> outcomes_;
};

/// Probability vector over a SampleSpace. Immutable after construction.
class FiniteDistribution {
  public:
    FiniteDistribution(SampleSpace space, std::vector<double> probs)
        : space_(std::move(space)), probs_(std::move(probs)) {
        if (probs_.size() != space_.size())
            throw std::invalid_argument("FiniteDistribution: size mismatch");
        double sum = 0.0;
        for (double p : probs_) {
            if (!(p >= 0.0 && p <= 1.0))
                throw std::invalid_argument("FiniteDistribution: entry outside [0,1]");
            sum += p;
        }
        if (std::fabs(sum - 1.0) > kProbTolerance)
            throw std::invalid_argument("FiniteDistribution: entries do not sum to 1");
    }

    const SampleSpace& space() const { return space_; }
    const std::vector<double>& probs() const { return probs_; }
    double prob(std::size_t i) const { return probs_.at(i); }

    double prob_of(Event a) const {
        double s = 0.0;
        for (std::size_t i = 0; i < probs_.size(); ++i)
            if (a & (Event{1} << i)) s += probs_[i];
        return s;
    }

  private:
    SampleSpace space_;
    std::vector<double> probs_;
};

/**
 * Finitely generated credal set, stored by candidate extreme points.
 * The represented set is the convex hull of `extremes`; construction does
 * not prune, see prune_extremes.
 */
class CredalSet {
  public:
    explicit CredalSet(std::vector<FiniteDistribution> extremes)
        : extremes_(std::move(extremes)) {
        if (extremes_.empty()) throw std::invalid_argument("CredalSet: no extremes");
        for (const auto& e : extremes_)
            if (e.space() != extremes_.front().space())
                throw std::invalid_argument("CredalSet: extremes on different spaces");
    }

    const SampleSpace& space() const { return extremes_.front().space(); }
    const std::vector<FiniteDistribution>& extremes() const { return extremes_; }
    std::size_t size() const { return extremes_.size(); }

  private:
    std::vector<FiniteDistribution> extremes_;
};

enum class SetFunctionKind { Lower, Upper };

/**
 * A lower or upper probability on the full power set, indexed by bitmask.
 * Construction validates boundary values, range, and monotonicity.
 */
class SetFunction {
  public:
    SetFunction(SampleSpace space, std::vector<double> values, SetFunctionKind kind)
        : space_(std::move(space)), values_(std::move(values)), kind_(kind) {
        space_.require_power_set_budget();
        if (values_.size() != space_.subset_count())
            throw std::invalid_argument("SetFunction: wrong table size");
        if (std::fabs(values_.front()) > kProbTolerance)
            throw std::invalid_argument("SetFunction: value(empty) must be 0");
        if (std::fabs(values_.back() - 1.0) > kProbTolerance)
            throw std::invalid_argument("SetFunction: value(full) must be 1");
        for (double v : values_)
            if (!(v >= -kProbTolerance && v <= 1.0 + kProbTolerance))
                throw std::invalid_argument("SetFunction: value outside [0,1]");
        // monotone along every single-outcome extension
        for (Event a = 0; a < values_.size(); ++a) {
            for (std::size_t i = 0; i < space_.size(); ++i) {
                Event b = a | (Event{1} << i);
                if (b != a && values_[a] > values_[b] + kProbTolerance)
                    throw std::invalid_argument("SetFunction: not monotone");
            }
        }
    }

    const SampleSpace& space() const { return space_; }
    SetFunctionKind kind() const { return kind_; }
    const std::vector<double>& values() const { return values_; }
    double value(Event a) const { return values_.at(a); }

  private:
    SampleSpace space_;
    std::vector<double> values_;
    SetFunctionKind kind_;
};

/**
 * Total variation distance, computed as half the L1 distance; on a finite
 * space this equals the supremum over events of |P(A) - Q(A)|.
 */
inline double tv_distance(const FiniteDistribution& p, const FiniteDistribution& q) {
    if (p.space() != q.space()) throw std::invalid_argument("tv_distance: space mismatch");
    double l1 = 0.0;
    for (std::size_t i = 0; i < p.probs().size(); ++i)
        l1 += std::fabs(p.prob(i) - q.prob(i));
    return 0.5 * l1;
}

/**
 * Largest pairwise TV distance between extremes. TV is convex in each
 * argument, so the supremum over the hull is attained at extreme pairs.
 */
inline double diameter_tv(const CredalSet& c) {
    double best = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j)
            best = std::max(best, tv_distance(c.extremes()[i], c.extremes()[j]));
    return best;
}

/// min over extremes of P(event); equals the infimum over the hull.
inline double lower_envelope(const CredalSet& c, Event a) {
    if (a > c.space().full_event()) throw std::invalid_argument("lower_envelope: bad event");
    double best = 1.0;
    for (const auto& e : c.extremes()) best = std::min(best, e.prob_of(a));
    return best;
}

/// Materializes lower_envelope(c, .) as a SetFunction table.
inline SetFunction lower_envelope_function(const CredalSet& c) {
    c.space().require_power_set_budget();
    std::vector<double> vals(c.space().subset_count());
    for (Event a = 0; a < vals.size(); ++a) vals[a] = lower_envelope(c, a);
    vals.front() = 0.0;
    vals.back() = 1.0;
    return SetFunction(c.space(), std::move(vals), SetFunctionKind::Lower);
}

/**
 * Drops every listed distribution that is a convex combination of the
 * others (within tol), preserving order among survivors. The represented
 * hull is unchanged.
 */
inline CredalSet prune_extremes(const CredalSet& c, double tol = kHullTolerance) {
    const auto& ext = c.extremes();
    std::vector<bool> keep(ext.size(), true);
    for (std::size_t i = 0; i < ext.size(); ++i) {
        std::vector<const std::vector<double>*> others;
        for (std::size_t j = 0; j < ext.size(); ++j)
            if (j != i && keep[j]) others.push_back(&ext[j].probs());
        if (others.empty()) continue;
        if (in_convex_hull(ext[i].probs(), others, tol)) keep[i] = false;
    }
    std::vector<FiniteDistribution> out;
    for (std::size_t i = 0; i < ext.size(); ++i)
        if (keep[i]) out.push_back(ext[i]);
    if (out.empty()) out.push_back(ext.front());  // all-duplicates case
    return CredalSet(std::move(out));
}

/// True iff p dominates lp on every event: P(A) >= lp(A) - tol, full scan.
inline bool core_membership(const SetFunction& lp, const FiniteDistribution& p,
                            double tol = kProbTolerance) {
    if (lp.kind() != SetFunctionKind::Lower)
        throw std::invalid_argument("core_membership: needs a lower probability");
    if (lp.space() != p.space()) throw std::invalid_argument("core_membership: space mismatch");
    lp.space().require_power_set_budget();
    for (Event a = 0; a < lp.values().size(); ++a)
        if (p.prob_of(a) < lp.value(a) - tol) return false;
    return true;
}

/// Conjugate set function: value'(A) = 1 - value(A^c); kind flips.
inline SetFunction dual(const SetFunction& sf) {
    const Event full = sf.space().full_event();
    std::vector<double> vals(sf.values().size());
    for (Event a = 0; a < vals.size(); ++a) vals[a] = 1.0 - sf.value(full & ~a);
    SetFunctionKind k = sf.kind() == SetFunctionKind::Lower ? SetFunctionKind::Upper
                                                            : SetFunctionKind::Lower;
    return SetFunction(sf.space(), std::move(vals), k);
}

// ---------------------------------------------------------------------------
// JSON: {"outcomes":[...]}, {"outcomes":[...],"probs":[...]},
// {"outcomes":[...],"extremes":[[...],...]}
// ---------------------------------------------------------------------------

inline nlohmann::json to_json(const SampleSpace& s) {
    return nlohmann::json{{"outcomes", s.outcomes()}};
}

inline nlohmann::json to_json(const FiniteDistribution& d) {
    return nlohmann::json{{"outcomes", d.space().outcomes()}, {"probs", d.probs()}};
}

inline nlohmann::json to_json(const CredalSet& c) {
    std::vector<std::vector<double>> rows;
    for (const auto& e : c.extremes()) rows.push_back(e.probs());
    return nlohmann::json{{"outcomes", c.space().outcomes()}, {"extremes", rows}};
}

inline SampleSpace space_from_json(const nlohmann::json& j) {
    return SampleSpace(j.at("outcomes").get<std::vector<std::string>>());
}

inline FiniteDistribution distribution_from_json(const nlohmann::json& j) {
    return FiniteDistribution(space_from_json(j), j.at("probs").get<std::vector<double>>());
}

inline CredalSet credal_from_json(const nlohmann::json& j) {
    SampleSpace space = space_from_json(j);
    std::vector<FiniteDistribution> ext;
    for (const auto& row : j.at("extremes"))
        ext.emplace_back(space, row.get<std::vector<double>>());
    return CredalSet(std::move(ext));
}

}  // namespace credal
