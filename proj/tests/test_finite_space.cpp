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

#include <catch2/catch_amalgamated.hpp>

#include <functional>

#include "credal/finite_space.hpp"
#include "credal/rng.hpp"

using namespace credal;

namespace {

// Independent oracle: max over all events of |P(A) - Q(A)| by full scan.
double tv_event_scan(const FiniteDistribution& p, const FiniteDistribution& q) {
    double best = 0.0;
    for (Event a = 0; a <= p.space().full_event(); ++a)
        best = std::max(best, std::fabs(p.prob_of(a) - q.prob_of(a)));
    return best;
}

// Independent oracle: fine-grid weight search for convex membership.
bool hull_grid_search(const std::vector<double>& target,
                      const std::vector<std::vector<double>>& others, std::size_t res,
                      double tol) {
    std::vector<std::size_t> w(others.size(), 0);
    std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t idx, std::size_t left) {
        if (idx + 1 == others.size()) {
            w[idx] = left;
            for (std::size_t d = 0; d < target.size(); ++d) {
                double v = 0.0;
                for (std::size_t j = 0; j < others.size(); ++j)
                    v += static_cast<double>(w[j]) / static_cast<double>(res) * others[j][d];
                if (std::fabs(v - target[d]) > tol) return false;
            }
            return true;
        }
        for (std::size_t k = 0; k <= left; ++k) {
            w[idx] = k;
            if (rec(idx + 1, left - k)) return true;
        }
        return false;
    };
    return rec(0, res);
}

FiniteDistribution random_distribution(const SampleSpace& space, RngStream& rng) {
    std::vector<double> p(space.size());
    double sum = 0.0;
    for (double& v : p) {
        v = rng.next_double() + 1e-3;
        sum += v;
    }
    for (double& v : p) v /= sum;
    return FiniteDistribution(space, std::move(p));
}

const SampleSpace omega3({"w1", "w2", "w3"});

}  // namespace

TEST_CASE("sample space invariants") {
    REQUIRE_THROWS_AS(SampleSpace(std::vector<std::string>{}), std::invalid_argument);
    REQUIRE_THROWS_AS(SampleSpace({"a", "a"}), std::invalid_argument);
    REQUIRE(omega3.full_event() == 7);
    REQUIRE(omega3.subset_count() == 8);
    REQUIRE(omega3.event_label(5) == "{w1,w3}");
    std::vector<std::string> big(25);
    for (std::size_t i = 0; i < big.size(); ++i) big[i] = "o" + std::to_string(i);
    REQUIRE_THROWS_AS(SampleSpace(big).require_power_set_budget(), std::domain_error);
}

TEST_CASE("distribution invariants") {
    REQUIRE_THROWS_AS(FiniteDistribution(omega3, {0.5, 0.5, 0.1}), std::invalid_argument);
    REQUIRE_THROWS_AS(FiniteDistribution(omega3, {1.2, -0.2, 0.0}), std::invalid_argument);
    FiniteDistribution p(omega3, {0.2, 0.3, 0.5});
    REQUIRE(p.prob_of(0b011) == Catch::Approx(0.5).margin(1e-15));
}

TEST_CASE("tv distance examples") {
    FiniteDistribution p(omega3, {1.0 / 3, 1.0 / 3, 1.0 / 3});
    REQUIRE(tv_distance(p, p) == 0.0);

    SampleSpace two({"a", "b"});
    FiniteDistribution d1(two, {1.0, 0.0}), d2(two, {0.0, 1.0});
    REQUIRE(tv_distance(d1, d2) == 1.0);

    FiniteDistribution q(omega3, {0.0, 0.75, 0.25});
    double expected = tv_event_scan(p, q);
    REQUIRE(expected == Catch::Approx(5.0 / 12).margin(1e-15));
    REQUIRE(tv_distance(p, q) == Catch::Approx(expected).margin(1e-15));

    REQUIRE_THROWS_AS(tv_distance(p, d1), std::invalid_argument);
}

TEST_CASE("tv distance is a metric and matches the event-scan oracle") {
    RngStream rng(20240501);
    for (int rep = 0; rep < 50; ++rep) {
        auto p = random_distribution(omega3, rng);
        auto q = random_distribution(omega3, rng);
        auto r = random_distribution(omega3, rng);
        double pq = tv_distance(p, q);
        REQUIRE(pq >= 0.0);
        REQUIRE(pq == Catch::Approx(tv_distance(q, p)).margin(1e-15));
        REQUIRE(pq == Catch::Approx(tv_event_scan(p, q)).margin(1e-12));
        REQUIRE(pq <= tv_distance(p, r) + tv_distance(r, q) + 1e-12);
    }
}

TEST_CASE("diameter") {
    FiniteDistribution p(omega3, {0.2, 0.3, 0.5});
    REQUIRE(diameter_tv(CredalSet({p})) == 0.0);

    FiniteDistribution e1(omega3, {1, 0, 0}), e2(omega3, {0, 1, 0});
    REQUIRE(diameter_tv(CredalSet({e1, e2})) == 1.0);

    FiniteDistribution l1(omega3, {0.3, 0.1, 0.6}), l2(omega3, {0.4, 0.2, 0.4}),
        l3(omega3, {0.1, 0.8, 0.1});
    CredalSet c({l1, l2, l3});
    double oracle = std::max({tv_event_scan(l1, l2), tv_event_scan(l1, l3), tv_event_scan(l2, l3)});
    REQUIRE(oracle == Catch::Approx(0.7).margin(1e-15));
    REQUIRE(diameter_tv(c) == Catch::Approx(oracle).margin(1e-12));
}

TEST_CASE("diameter zero iff extremes equal") {
    RngStream rng(7);
    auto p = random_distribution(omega3, rng);
    REQUIRE(diameter_tv(CredalSet({p, p, p})) <= 1e-12);
    auto q = random_distribution(omega3, rng);
    if (tv_distance(p, q) > 1e-9) REQUIRE(diameter_tv(CredalSet({p, q})) > 1e-12);
}

TEST_CASE("lower envelope") {
    FiniteDistribution l1(omega3, {0.3, 0.1, 0.6}), l2(omega3, {0.4, 0.2, 0.4}),
        l3(omega3, {0.1, 0.8, 0.1});
    CredalSet c({l1, l2, l3});
    REQUIRE(lower_envelope(c, omega3.full_event()) == 1.0);
    REQUIRE(lower_envelope(c, 0) == 0.0);
    REQUIRE(lower_envelope(c, 0b010) == Catch::Approx(0.1).margin(1e-15));
}

TEST_CASE("prune extremes") {
    FiniteDistribution p(omega3, {0.2, 0.3, 0.5});
    REQUIRE(prune_extremes(CredalSet({p})).size() == 1);
    REQUIRE(prune_extremes(CredalSet({p, p})).size() == 1);

    FiniteDistribution l1(omega3, {0.3, 0.1, 0.6}), l2(omega3, {0.4, 0.2, 0.4}),
        l3(omega3, {0.1, 0.8, 0.1}), l4(omega3, {0.15, 0.7, 0.15});

    // independent oracle: l4 = (1/6) l2 + (5/6) l3, and grid search agrees
    for (std::size_t d = 0; d < 3; ++d)
        REQUIRE(l4.prob(d) ==
                Catch::Approx(l2.prob(d) / 6 + 5.0 * l3.prob(d) / 6).margin(1e-12));
    REQUIRE(hull_grid_search(l4.probs(), {l1.probs(), l2.probs(), l3.probs()}, 60, 1e-2));
    REQUIRE_FALSE(hull_grid_search(l3.probs(), {l1.probs(), l2.probs(), l4.probs()}, 60, 1e-2));

    CredalSet pruned = prune_extremes(CredalSet({l1, l2, l3, l4}));
    REQUIRE(pruned.size() == 3);
    REQUIRE(pruned.extremes()[0].prob(0) == Catch::Approx(0.3));
    REQUIRE(pruned.extremes()[1].prob(0) == Catch::Approx(0.4));
    REQUIRE(pruned.extremes()[2].prob(0) == Catch::Approx(0.1));
}

TEST_CASE("prune preserves the lower envelope on all events") {
    RngStream rng(99);
    for (int rep = 0; rep < 20; ++rep) {
        auto a = random_distribution(omega3, rng);
        auto b = random_distribution(omega3, rng);
        auto c = random_distribution(omega3, rng);
        // plant a redundant midpoint
        std::vector<double> mid(3);
        for (std::size_t d = 0; d < 3; ++d) mid[d] = 0.5 * a.prob(d) + 0.5 * b.prob(d);
        CredalSet full({a, b, c, FiniteDistribution(omega3, mid)});
        CredalSet pruned = prune_extremes(full);
        REQUIRE(pruned.size() <= 3);
        for (Event ev = 0; ev <= omega3.full_event(); ++ev)
            REQUIRE(lower_envelope(full, ev) ==
                    Catch::Approx(lower_envelope(pruned, ev)).margin(1e-9));
    }
}

TEST_CASE("core membership") {
    std::vector<double> vac(8, 0.0);
    vac[7] = 1.0;
    SetFunction vacuous(omega3, vac, SetFunctionKind::Lower);
    RngStream rng(3);
    REQUIRE(core_membership(vacuous, random_distribution(omega3, rng)));

    // necessity lower of the worked contour (0.5, 1, 0.75), bitmask order
    std::vector<double> lo = {0.0, 0.0, 0.25, 0.25, 0.0, 0.0, 0.5, 1.0};
    SetFunction nec(omega3, lo, SetFunctionKind::Lower);
    REQUIRE(core_membership(nec, FiniteDistribution(omega3, {1.0 / 3, 1.0 / 3, 1.0 / 3})));
    REQUIRE_FALSE(core_membership(nec, FiniteDistribution(omega3, {0.7, 0.2, 0.1})));
}

TEST_CASE("every extreme dominates its own lower envelope") {
    RngStream rng(11);
    for (int rep = 0; rep < 10; ++rep) {
        CredalSet c({random_distribution(omega3, rng), random_distribution(omega3, rng),
                     random_distribution(omega3, rng)});
        SetFunction lo = lower_envelope_function(c);
        for (const auto& e : c.extremes()) REQUIRE(core_membership(lo, e));
        // lower-dual coherence: lower(A) <= 1 - lower(A^c)
        for (Event a = 0; a <= omega3.full_event(); ++a)
            REQUIRE(lo.value(a) <= 1.0 - lo.value(omega3.full_event() & ~a) + 1e-12);
    }
}

TEST_CASE("dual") {
    RngStream rng(5);
    CredalSet c({random_distribution(omega3, rng), random_distribution(omega3, rng)});
    SetFunction lo = lower_envelope_function(c);
    SetFunction up = dual(lo);
    REQUIRE(up.kind() == SetFunctionKind::Upper);
    SetFunction back = dual(up);
    for (Event a = 0; a <= omega3.full_event(); ++a)
        REQUIRE(back.value(a) == Catch::Approx(lo.value(a)).margin(1e-15));

    // additive (Dirac) set functions are self-dual
    std::vector<double> dirac(8);
    for (Event a = 0; a < 8; ++a) dirac[a] = (a & 1) ? 1.0 : 0.0;
    SetFunction d(omega3, dirac, SetFunctionKind::Lower);
    SetFunction dd = dual(d);
    for (Event a = 0; a < 8; ++a) REQUIRE(dd.value(a) == Catch::Approx(d.value(a)).margin(1e-15));
}

TEST_CASE("set function validation") {
    std::vector<double> bad(8, 0.0);
    bad[7] = 0.5;  // full event must be 1
    REQUIRE_THROWS_AS(SetFunction(omega3, bad, SetFunctionKind::Lower), std::invalid_argument);
    std::vector<double> nonmono = {0.0, 0.6, 0.0, 0.2, 0.0, 0.6, 0.2, 1.0};
    REQUIRE_THROWS_AS(SetFunction(omega3, nonmono, SetFunctionKind::Lower), std::invalid_argument);
}

TEST_CASE("json round trips") {
    FiniteDistribution l1(omega3, {0.3, 0.1, 0.6}), l2(omega3, {0.4, 0.2, 0.4});
    CredalSet c({l1, l2});
    auto j = to_json(c);
    CredalSet back = credal_from_json(j);
    REQUIRE(back.size() == 2);
    REQUIRE(back.space().outcomes() == omega3.outcomes());
    REQUIRE(back.extremes()[1].prob(2) == 0.4);

    auto jd = to_json(l1);
    REQUIRE(distribution_from_json(jd).prob(0) == 0.3);
    REQUIRE(space_from_json(to_json(omega3)).size() == 3);
}
