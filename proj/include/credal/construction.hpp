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
#include <cstdio>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "credal/finite_space.hpp"

namespace credal::construction {

/// One likelihood pmf per observed training set.
class LikelihoodEnsemble {
  public:
    explicit LikelihoodEnsemble(std::vector<FiniteDistribution> pmfs) : pmfs_(std::move(pmfs)) {
        if (pmfs_.empty()) throw std::invalid_argument("LikelihoodEnsemble: empty");
        for (const auto& p : pmfs_)
            if (p.space() != pmfs_.front().space())
                throw std::invalid_argument("LikelihoodEnsemble: space mismatch");
    }
    const SampleSpace& space() const { return pmfs_.front().space(); }
    const std::vector<FiniteDistribution>& pmfs() const { return pmfs_; }
    std::size_t size() const { return pmfs_.size(); }

  private:
    std::vector<FiniteDistribution> pmfs_;
};

/// Likelihood ensemble with one contamination level per pmf.
class ContaminationModel {
  public:
    ContaminationModel(LikelihoodEnsemble ensemble, std::vector<double> epsilons)
        : ensemble_(std::move(ensemble)), epsilons_(std::move(epsilons)) {
        if (epsilons_.size() != ensemble_.size())
            throw std::invalid_argument("ContaminationModel: one epsilon per pmf required");
        for (double e : epsilons_)
            if (!(e > 0.0 && e < 1.0))
                throw std::invalid_argument("ContaminationModel: epsilon outside (0,1)");
    }
    const LikelihoodEnsemble& ensemble() const { return ensemble_; }
    const std::vector<double>& epsilons() const { return epsilons_; }
    const SampleSpace& space() const { return ensemble_.space(); }

  private:
    LikelihoodEnsemble ensemble_;
    std::vector<double> epsilons_;
};

/// Lower probability of the contaminated hull: min_i (1-eps_i) L_i(A), A != full.
inline double contamination_lower(const ContaminationModel& m, Event a) {
    if (a > m.space().full_event()) throw std::invalid_argument("contamination_lower: bad event");
    if (a == m.space().full_event()) return 1.0;
    double best = 1.0;
    for (std::size_t i = 0; i < m.ensemble().size(); ++i)
        best = std::min(best, (1.0 - m.epsilons()[i]) * m.ensemble().pmfs()[i].prob_of(a));
    return best;
}

/// Upper probability: max_i (1-eps_i) L_i(A) + eps_i, A != empty.
inline double contamination_upper(const ContaminationModel& m, Event a) {
    if (a > m.space().full_event()) throw std::invalid_argument("contamination_upper: bad event");
    if (a == 0) return 0.0;
    double best = 0.0;
    for (std::size_t i = 0; i < m.ensemble().size(); ++i) {
        double e = m.epsilons()[i];
        best = std::max(best, (1.0 - e) * m.ensemble().pmfs()[i].prob_of(a) + e);
    }
    return best;
}

/// Materializes the contamination lower/upper pair as SetFunction tables.
inline std::pair<SetFunction, SetFunction> contamination_pair(const ContaminationModel& m) {
    m.space().require_power_set_budget();
    std::vector<double> lo(m.space().subset_count()), hi(lo.size());
    for (Event a = 0; a < lo.size(); ++a) {
        lo[a] = contamination_lower(m, a);
        hi[a] = contamination_upper(m, a);
    }
    return {SetFunction(m.space(), std::move(lo), SetFunctionKind::Lower),
            SetFunction(m.space(), std::move(hi), SetFunctionKind::Upper)};
}

/**
 * Candidate extreme points of the contaminated hull: the corner mixtures
 * (1-eps_i) L_i + eps_i * delta_w for every pmf i and outcome w, pruned.
 */
inline CredalSet contamination_corners(const ContaminationModel& m) {
    std::vector<FiniteDistribution> corners;
    const auto& space = m.space();
    for (std::size_t i = 0; i < m.ensemble().size(); ++i) {
        const auto& li = m.ensemble().pmfs()[i].probs();
        double e = m.epsilons()[i];
        for (std::size_t w = 0; w < space.size(); ++w) {
            std::vector<double> p(li.size());
            for (std::size_t j = 0; j < li.size(); ++j)
                p[j] = (1.0 - e) * li[j] + (j == w ? e : 0.0);
            corners.emplace_back(space, std::move(p));
        }
    }
    return prune_extremes(CredalSet(std::move(corners)));
}

/// Mass assignment over subsets (Dempster-Shafer basic probability assignment).
class MassFunction {
  public:
    MassFunction(SampleSpace space, std::vector<double> masses)
        : space_(std::move(space)), masses_(std::move(masses)) {
        space_.require_power_set_budget();
        if (masses_.size() != space_.subset_count())
            throw std::invalid_argument("MassFunction: wrong table size");
        double sum = 0.0;
        for (double v : masses_) {
            if (v < 0.0) throw std::invalid_argument("MassFunction: negative mass");
            sum += v;
        }
        if (std::fabs(sum - 1.0) > kProbTolerance)
            throw std::invalid_argument("MassFunction: masses do not sum to 1");
    }
    const SampleSpace& space() const { return space_; }
    double mass(Event a) const { return masses_.at(a); }

  private:
    SampleSpace space_;
    std::vector<double> masses_;
};

/// Bel(A) = total mass of subsets of A.
inline double belief_from_mass(const MassFunction& m, Event a) {
    if (a > m.space().full_event()) throw std::invalid_argument("belief_from_mass: bad event");
    double s = m.mass(0);  // the submask walk below stops before the empty set
    for (Event b = a; b != 0; b = (b - 1) & a) s += m.mass(b);
    return s;
}

/// Plausibility restricted to singletons; max entry is 1.
class PossibilityContour {
  public:
    PossibilityContour(SampleSpace space, std::vector<double> pl)
        : space_(std::move(space)), pl_(std::move(pl)) {
        if (pl_.size() != space_.size())
            throw std::invalid_argument("PossibilityContour: size mismatch");
        double mx = 0.0;
        for (double v : pl_) {
            if (!(v >= 0.0 && v <= 1.0))
                throw std::invalid_argument("PossibilityContour: entry outside [0,1]");
            mx = std::max(mx, v);
        }
        if (std::fabs(mx - 1.0) > kProbTolerance)
            throw std::invalid_argument("PossibilityContour: max entry must be 1");
    }
    const SampleSpace& space() const { return space_; }
    const std::vector<double>& pl() const { return pl_; }

  private:
    SampleSpace space_;
    std::vector<double> pl_;
};

/**
 * Normalized upper likelihood: pl(w) = max_i l_i(w) / max_w' max_i l_i(w').
 * The maximizing outcome gets exactly 1.
 */
inline PossibilityContour contour_from_likelihoods(const LikelihoodEnsemble& e) {
    std::vector<double> upper(e.space().size(), 0.0);
    for (const auto& p : e.pmfs())
        for (std::size_t w = 0; w < upper.size(); ++w) upper[w] = std::max(upper[w], p.prob(w));
    double sup = *std::max_element(upper.begin(), upper.end());
    for (double& v : upper) v /= sup;
    return PossibilityContour(e.space(), std::move(upper));
}

/**
 * Lower/upper probability pair induced by a possibility contour:
 * upper(A) = max over A of pl, lower is its conjugate. Upper is maxitive,
 * lower minitive.
 */
inline std::pair<SetFunction, SetFunction> possibility_pair(const PossibilityContour& pl) {
    const auto& space = pl.space();
    space.require_power_set_budget();
    std::vector<double> up(space.subset_count(), 0.0);
    for (Event a = 1; a < up.size(); ++a) {
        double mx = 0.0;
        for (std::size_t w = 0; w < space.size(); ++w)
            if (a & (Event{1} << w)) mx = std::max(mx, pl.pl()[w]);
        up[a] = mx;
    }
    SetFunction upper(space, std::move(up), SetFunctionKind::Upper);
    return {dual(upper), upper};
}

/// Frequentist hull route: Conv of the likelihood pmfs, redundancy pruned.
inline CredalSet credal_from_likelihoods(const LikelihoodEnsemble& e) {
    return prune_extremes(CredalSet(e.pmfs()));
}

/**
 * Multiset training datasets over outcome labels. The working space S is
 * the union of supports, ordered lexicographically; per-dataset empirical
 * distributions are kept as exact integer counts.
 */
class EmpiricalEnsemble {
  public:
    explicit EmpiricalEnsemble(std::vector<std::vector<std::string>> datasets)
        : datasets_(std::move(datasets)) {
        if (datasets_.empty()) throw std::invalid_argument("EmpiricalEnsemble: no datasets");
        std::set<std::string> support;
        for (const auto& d : datasets_) {
            if (d.empty()) throw std::invalid_argument("EmpiricalEnsemble: empty dataset");
            support.insert(d.begin(), d.end());
        }
        labels_.assign(support.begin(), support.end());
        counts_.assign(datasets_.size(), std::vector<long long>(labels_.size(), 0));
        for (std::size_t i = 0; i < datasets_.size(); ++i) {
            for (const auto& s : datasets_[i]) {
                auto it = std::lower_bound(labels_.begin(), labels_.end(), s);
                counts_[i][static_cast<std::size_t>(it - labels_.begin())] += 1;
            }
        }
    }

    SampleSpace space() const { return SampleSpace(labels_); }
    std::size_t dataset_count() const { return datasets_.size(); }
    long long count(std::size_t dataset, std::size_t outcome) const {
        return counts_.at(dataset).at(outcome);
    }
    long long total(std::size_t dataset) const {
        return static_cast<long long>(datasets_.at(dataset).size());
    }

    /// P^emp_i restricted to the union support.
    FiniteDistribution empirical(std::size_t i) const {
        std::vector<double> p(labels_.size());
        for (std::size_t w = 0; w < labels_.size(); ++w)
            p[w] = static_cast<double>(counts_[i][w]) / static_cast<double>(total(i));
        return FiniteDistribution(space(), std::move(p));
    }

  private:
    std::vector<std::vector<std::string>> datasets_;
    std::vector<std::string> labels_;
    std::vector<std::vector<long long>> counts_;
};

/**
 * Subjectivist lower probability on 2^S from empirical distributions.
 * Singletons take the least *positive* empirical probability (datasets that
 * never saw the outcome do not pull the value to zero); other events B get
 *   max( sum of singleton lowers over B,
 *        1 - sum over B^c of the per-outcome empirical maxima ),
 * clamped to [0,1]. All arithmetic is exact rational until the final table.
 */
inline SetFunction subjectivist_lower(const EmpiricalEnsemble& e) {
    using Rat = boost::rational<long long>;
    SampleSpace space = e.space();
    space.require_power_set_budget();
    const std::size_t n = space.size();

    std::vector<Rat> singleton_lower(n), singleton_upper(n);
    for (std::size_t w = 0; w < n; ++w) {
        bool seen = false;
        Rat lo(1), hi(0);
        for (std::size_t i = 0; i < e.dataset_count(); ++i) {
            if (e.count(i, w) == 0) continue;
            Rat p(e.count(i, w), e.total(i));
            lo = seen ? std::min(lo, p) : p;
            hi = std::max(hi, p);
            seen = true;
        }
        if (!seen) throw std::invalid_argument("subjectivist_lower: unobserved outcome in S");
        singleton_lower[w] = lo;
        singleton_upper[w] = hi;
    }

    std::vector<double> vals(space.subset_count(), 0.0);
    const Event full = space.full_event();
    for (Event a = 1; a < vals.size(); ++a) {
        if (a == full) {
            vals[a] = 1.0;
            continue;
        }
        Rat sum_lo(0), sum_hi_comp(0);
        int popcount = 0;
        for (std::size_t w = 0; w < n; ++w) {
            if (a & (Event{1} << w)) {
                sum_lo += singleton_lower[w];
                ++popcount;
            } else {
                sum_hi_comp += singleton_upper[w];
            }
        }
        Rat v = popcount == 1 ? sum_lo : std::max(sum_lo, Rat(1) - sum_hi_comp);
        v = std::max(Rat(0), std::min(Rat(1), v));
        vals[a] = boost::rational_cast<double>(v);
    }
    return SetFunction(space, std::move(vals), SetFunctionKind::Lower);
}

/**
 * Grid approximation of the core of a lower probability: all simplex grid
 * points (compositions of `resolution`) that dominate lp on every event.
 */
inline std::vector<FiniteDistribution> setfunction_to_core_samples(const SetFunction& lp,
                                                                   std::size_t resolution) {
    const std::size_t n = lp.space().size();
    if (n > 4) throw std::domain_error("setfunction_to_core_samples: more than 4 outcomes");
    if (resolution == 0 || resolution > 400)
        throw std::domain_error("setfunction_to_core_samples: resolution outside [1,400]");

    std::vector<FiniteDistribution> out;
    std::vector<std::size_t> parts(n, 0);
    const double res = static_cast<double>(resolution);
    // enumerate compositions of `resolution` into n nonnegative parts
    auto emit = [&]() {
        std::vector<double> p(n);
        for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<double>(parts[i]) / res;
        FiniteDistribution d(lp.space(), std::move(p));
        if (core_membership(lp, d, 1e-9)) out.push_back(std::move(d));
    };
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t idx, std::size_t left) {
        if (idx + 1 == n) {
            parts[idx] = left;
            emit();
            return;
        }
        for (std::size_t k = 0; k <= left; ++k) {
            parts[idx] = k;
            rec(idx + 1, left - k);
        }
    };
    rec(0, resolution);
    return out;
}

/**
 * Candidate extreme points of the core of `lower` via the ordering
 * construction: one distribution per permutation of outcomes, assigning each
 * outcome the increment of the running lower probability. Exact for
 * 2-monotone lower probabilities; candidates failing core membership are
 * dropped, so every returned point is a certified core element.
 */
inline CredalSet core_vertices(const SetFunction& lower, double tol = 1e-9) {
    if (lower.kind() != SetFunctionKind::Lower)
        throw std::invalid_argument("core_vertices: needs a lower probability");
    const std::size_t n = lower.space().size();
    if (n > 8) throw std::domain_error("core_vertices: more than 8 outcomes");

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<FiniteDistribution> candidates;
    std::set<std::vector<long long>> seen;  // dedupe on a coarse fixed-point key
    do {
        std::vector<double> p(n, 0.0);
        Event prefix = 0;
        double prev = 0.0;
        bool ok = true;
        for (std::size_t k = 0; k < n; ++k) {
            prefix |= Event{1} << perm[k];
            double cur = lower.value(prefix);
            double inc = cur - prev;
            if (inc < -kProbTolerance) {
                ok = false;
                break;
            }
            p[perm[k]] = std::max(0.0, inc);
            prev = cur;
        }
        if (!ok) continue;
        // telescoping sum is value(full) - value(empty); squeeze out the 1e-12
        // boundary slack so the distribution invariant holds exactly
        double sum = std::accumulate(p.begin(), p.end(), 0.0);
        if (sum <= 0.0) continue;
        for (double& v : p) v /= sum;
        std::vector<long long> key(n);
        for (std::size_t i = 0; i < n; ++i) key[i] = std::llround(p[i] * 1e12);
        if (!seen.insert(key).second) continue;
        FiniteDistribution d(lower.space(), std::move(p));
        if (core_membership(lower, d, tol)) candidates.push_back(std::move(d));
    } while (std::next_permutation(perm.begin(), perm.end()));

    if (candidates.empty())
        throw std::domain_error("core_vertices: empty core (incoherent lower probability)");
    return prune_extremes(CredalSet(std::move(candidates)));
}

/// CSV rows "subset,lower,upper" for every event, bitmask order, header included.
inline std::string setfunction_pair_to_csv(const SetFunction& lower, const SetFunction& upper) {
    if (lower.space() != upper.space())
        throw std::invalid_argument("setfunction_pair_to_csv: space mismatch");
    std::string out = "subset,lower,upper\n";
    char buf[64];
    for (Event a = 0; a < lower.values().size(); ++a) {
        out += '"' + lower.space().event_label(a) + '"';
        std::snprintf(buf, sizeof buf, ",%.17g,%.17g\n", lower.value(a), upper.value(a));
        out += buf;
    }
    return out;
}

}  // namespace credal::construction
