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

#include <numeric>

#include "credal/construction.hpp"
#include "credal/rng.hpp"

using namespace credal;
using namespace credal::construction;

namespace {

const SampleSpace omega3({"w1", "w2", "w3"});

LikelihoodEnsemble worked_ensemble() {
    return LikelihoodEnsemble({FiniteDistribution(omega3, {0.3, 0.1, 0.6}),
                               FiniteDistribution(omega3, {0.4, 0.2, 0.4}),
                               FiniteDistribution(omega3, {0.1, 0.8, 0.1}),
                               FiniteDistribution(omega3, {0.15, 0.7, 0.15})});
}

ContaminationModel worked_contamination() {
    return ContaminationModel(worked_ensemble(), {0.2, 0.3, 0.1, 0.25});
}

constexpr Event W1 = 0b001, W2 = 0b010, W3 = 0b100;

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

}  // namespace

TEST_CASE("contamination lower and upper reproduce the worked table") {
    auto m = worked_contamination();
    struct Row {
        Event a;
        double lower, upper;
    };
    const Row rows[] = {
        {W1, 0.09, 0.58},      {W2, 0.08, 0.82},      {W3, 0.09, 0.68},
        {W1 | W2, 0.32, 0.91}, {W2 | W3, 0.42, 0.91}, {W1 | W3, 0.18, 0.92},
    };
    for (const auto& r : rows) {
        REQUIRE(contamination_lower(m, r.a) == Catch::Approx(r.lower).margin(1e-12));
        REQUIRE(contamination_upper(m, r.a) == Catch::Approx(r.upper).margin(1e-12));
    }
    REQUIRE(contamination_lower(m, omega3.full_event()) == 1.0);
    REQUIRE(contamination_upper(m, omega3.full_event()) == 1.0);
    REQUIRE(contamination_lower(m, 0) == 0.0);
    REQUIRE(contamination_upper(m, 0) == 0.0);
}

TEST_CASE("contamination single-pmf reduction") {
    LikelihoodEnsemble one({FiniteDistribution(omega3, {0.5, 0.3, 0.2})});
    ContaminationModel m(one, {0.25});
    for (Event a = 1; a < omega3.full_event(); ++a) {
        REQUIRE(contamination_lower(m, a) ==
                Catch::Approx(0.75 * one.pmfs()[0].prob_of(a)).margin(1e-15));
        REQUIRE(contamination_upper(m, a) ==
                Catch::Approx(0.75 * one.pmfs()[0].prob_of(a) + 0.25).margin(1e-15));
    }
}

TEST_CASE("contamination conjugacy on full scan") {
    RngStream rng(42);
    for (int rep = 0; rep < 10; ++rep) {
        LikelihoodEnsemble ens(
            {random_distribution(omega3, rng), random_distribution(omega3, rng)});
        ContaminationModel m(ens, {0.05 + 0.4 * rng.next_double(), 0.05 + 0.4 * rng.next_double()});
        for (Event a = 1; a < omega3.full_event(); ++a)
            REQUIRE(contamination_upper(m, a) ==
                    Catch::Approx(1.0 - contamination_lower(m, omega3.full_event() & ~a))
                        .margin(1e-12));
    }
}

TEST_CASE("every grid mixture dominates the contamination lower") {
    auto m = worked_contamination();
    // q ranges over a coarse simplex grid; each (1-e_i) l_i + e_i q must
    // dominate the lower formula on all events
    const std::size_t res = 6;
    for (std::size_t k1 = 0; k1 <= res; ++k1) {
        for (std::size_t k2 = 0; k1 + k2 <= res; ++k2) {
            std::vector<double> q = {double(k1) / res, double(k2) / res,
                                     double(res - k1 - k2) / res};
            for (std::size_t i = 0; i < m.ensemble().size(); ++i) {
                double e = m.epsilons()[i];
                std::vector<double> mix(3);
                for (std::size_t d = 0; d < 3; ++d)
                    mix[d] = (1.0 - e) * m.ensemble().pmfs()[i].prob(d) + e * q[d];
                FiniteDistribution p(omega3, mix);
                for (Event a = 0; a <= omega3.full_event(); ++a)
                    REQUIRE(p.prob_of(a) >= contamination_lower(m, a) - 1e-12);
            }
        }
    }
}

TEST_CASE("contamination corners span the credal set") {
    auto m = worked_contamination();
    CredalSet corners = contamination_corners(m);
    REQUIRE(corners.size() >= 3);
    for (Event a = 1; a < omega3.full_event(); ++a)
        REQUIRE(lower_envelope(corners, a) ==
                Catch::Approx(contamination_lower(m, a)).margin(1e-12));
}

TEST_CASE("contour from likelihoods") {
    auto pl = contour_from_likelihoods(worked_ensemble());
    REQUIRE(pl.pl()[0] == Catch::Approx(0.5).margin(1e-12));
    REQUIRE(pl.pl()[1] == 1.0);
    REQUIRE(pl.pl()[2] == Catch::Approx(0.75).margin(1e-12));

    LikelihoodEnsemble uniform({FiniteDistribution(omega3, {1.0 / 3, 1.0 / 3, 1.0 / 3})});
    for (double v : contour_from_likelihoods(uniform).pl()) REQUIRE(v == 1.0);

    LikelihoodEnsemble single({FiniteDistribution(omega3, {0.5, 0.3, 0.2})});
    auto pls = contour_from_likelihoods(single);
    REQUIRE(pls.pl()[0] == 1.0);
    REQUIRE(pls.pl()[1] == Catch::Approx(0.6).margin(1e-12));
    REQUIRE(pls.pl()[2] == Catch::Approx(0.4).margin(1e-12));
}

TEST_CASE("possibility pair reproduces the worked lower/upper table") {
    auto [lo, up] = possibility_pair(contour_from_likelihoods(worked_ensemble()));
    struct Row {
        Event a;
        double lower, upper;
    };
    const Row rows[] = {
        {W1, 0.0, 0.5}, {W2, 0.25, 1.0},      {W3, 0.0, 0.75},      {W1 | W2, 0.25, 1.0},
        {W2 | W3, 0.5, 1.0}, {W1 | W3, 0.0, 0.75}, {W1 | W2 | W3, 1.0, 1.0},
    };
    for (const auto& r : rows) {
        REQUIRE(lo.value(r.a) == Catch::Approx(r.lower).margin(1e-12));
        REQUIRE(up.value(r.a) == Catch::Approx(r.upper).margin(1e-12));
    }
    REQUIRE(lo.value(0) == 0.0);
    REQUIRE(up.value(0) == 0.0);
}

TEST_CASE("possibility pair degenerate contours") {
    PossibilityContour ones(omega3, {1.0, 1.0, 1.0});
    auto [lo, up] = possibility_pair(ones);
    for (Event a = 1; a < omega3.full_event(); ++a) {
        REQUIRE(lo.value(a) == 0.0);
        REQUIRE(up.value(a) == 1.0);
    }

    PossibilityContour dirac(omega3, {1.0, 0.0, 0.0});
    auto [dl, du] = possibility_pair(dirac);
    for (Event a = 1; a <= omega3.full_event(); ++a) {
        double expect = (a & W1) ? 1.0 : 0.0;
        REQUIRE(dl.value(a) == Catch::Approx(expect).margin(1e-15));
        REQUIRE(du.value(a) == Catch::Approx(expect).margin(1e-15));
    }
}

TEST_CASE("possibility upper is maxitive, lower minitive") {
    RngStream rng(17);
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<double> v = {rng.next_double(), rng.next_double(), rng.next_double()};
        v[rep % 3] = 1.0;
        auto [lo, up] = possibility_pair(PossibilityContour(omega3, v));
        for (Event a = 0; a <= omega3.full_event(); ++a) {
            for (Event b = 0; b <= omega3.full_event(); ++b) {
                REQUIRE(up.value(a | b) ==
                        Catch::Approx(std::max(up.value(a), up.value(b))).margin(1e-12));
                REQUIRE(lo.value(a & b) ==
                        Catch::Approx(std::min(lo.value(a), lo.value(b))).margin(1e-12));
            }
        }
    }
}

TEST_CASE("belief from mass") {
    // vacuous: everything on the full set
    std::vector<double> vac(8, 0.0);
    vac[7] = 1.0;
    MassFunction mv(omega3, vac);
    for (Event a = 0; a < 7; ++a) REQUIRE(belief_from_mass(mv, a) == 0.0);
    REQUIRE(belief_from_mass(mv, 7) == 1.0);

    // additive: singleton masses recover the probability measure
    std::vector<double> add(8, 0.0);
    add[W1] = 0.2;
    add[W2] = 0.3;
    add[W3] = 0.5;
    MassFunction ma(omega3, add);
    FiniteDistribution p(omega3, {0.2, 0.3, 0.5});
    for (Event a = 0; a <= 7; ++a)
        REQUIRE(belief_from_mass(ma, a) == Catch::Approx(p.prob_of(a)).margin(1e-12));

    // the focused example
    std::vector<double> m(8, 0.0);
    m[W1] = 0.4;
    m[W1 | W2] = 0.6;
    MassFunction mf(omega3, m);
    REQUIRE(belief_from_mass(mf, W1 | W2) == Catch::Approx(1.0).margin(1e-15));
    REQUIRE(belief_from_mass(mf, W2) == 0.0);
}

TEST_CASE("belief is monotone and superadditive on disjoint events") {
    RngStream rng(23);
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<double> m(8);
        double sum = 0.0;
        for (double& v : m) {
            v = rng.next_double();
            sum += v;
        }
        for (double& v : m) v /= sum;
        m[7] += 1.0 - std::accumulate(m.begin(), m.end(), 0.0);  // exact renormalize
        MassFunction mf(omega3, m);
        for (Event a = 0; a <= 7; ++a) {
            for (Event b = 0; b <= 7; ++b) {
                if ((a & b) == a)  // a subseteq b
                    REQUIRE(belief_from_mass(mf, a) <= belief_from_mass(mf, b) + 1e-12);
                if ((a & b) == 0)
                    REQUIRE(belief_from_mass(mf, a | b) >=
                            belief_from_mass(mf, a) + belief_from_mass(mf, b) - 1e-12);
            }
        }
    }
}

TEST_CASE("subjectivist lower reproduces the two-dataset worked example") {
    EmpiricalEnsemble e({{"4", "4", "4", "5", "5", "5", "6", "6", "6"},
                         {"5", "5", "5", "5", "5", "5", "6", "6"}});
    SetFunction lo = subjectivist_lower(e);
    const auto& space = lo.space();
    REQUIRE(space.outcomes() == std::vector<std::string>{"4", "5", "6"});
    constexpr Event E4 = 0b001, E5 = 0b010, E6 = 0b100;

    // exact rational arithmetic: results are bit-identical to the quotients
    REQUIRE(lo.value(E4) == 1.0 / 3.0);
    REQUIRE(lo.value(E5) == 1.0 / 3.0);
    REQUIRE(lo.value(E6) == 1.0 / 4.0);
    REQUIRE(lo.value(E4 | E5) == 2.0 / 3.0);
    REQUIRE(lo.value(E5 | E6) == 2.0 / 3.0);
    REQUIRE(lo.value(E4 | E6) == 7.0 / 12.0);
    REQUIRE(lo.value(0) == 0.0);
    REQUIRE(lo.value(space.full_event()) == 1.0);
}

TEST_CASE("subjectivist single dataset reduces to the empirical distribution") {
    EmpiricalEnsemble one({{"a", "a", "b", "c"}});
    SetFunction lo = subjectivist_lower(one);
    FiniteDistribution emp = one.empirical(0);
    for (Event a = 0; a <= lo.space().full_event(); ++a)
        REQUIRE(lo.value(a) == Catch::Approx(emp.prob_of(a)).margin(1e-15));

    EmpiricalEnsemble twice({{"a", "a", "b", "c"}, {"a", "a", "b", "c"}});
    SetFunction lo2 = subjectivist_lower(twice);
    for (Event a = 0; a <= lo.space().full_event(); ++a)
        REQUIRE(lo2.value(a) == Catch::Approx(lo.value(a)).margin(1e-15));
}

TEST_CASE("subjectivist lower stays within [0,1] for disjoint datasets") {
    // disjoint near-deterministic datasets push the raw formula above 1
    EmpiricalEnsemble e({{"a", "a", "a"}, {"b", "b", "b"}, {"c"}});
    SetFunction lo = subjectivist_lower(e);
    REQUIRE(lo.value(0b011) == 1.0);  // clamped
    for (Event a = 0; a <= lo.space().full_event(); ++a) {
        REQUIRE(lo.value(a) >= 0.0);
        REQUIRE(lo.value(a) <= 1.0);
    }
}

TEST_CASE("subjectivist lower is monotone") {
    RngStream rng(31);
    EmpiricalEnsemble e({{"a", "b", "b", "c"}, {"b", "c", "c", "c", "d"}, {"a", "d"}});
    SetFunction lo = subjectivist_lower(e);
    for (Event a = 0; a <= lo.space().full_event(); ++a)
        for (std::size_t i = 0; i < lo.space().size(); ++i)
            REQUIRE(lo.value(a) <= lo.value(a | (Event{1} << i)) + 1e-12);
}

TEST_CASE("credal from likelihoods") {
    LikelihoodEnsemble single({FiniteDistribution(omega3, {0.5, 0.3, 0.2})});
    REQUIRE(credal_from_likelihoods(single).size() == 1);

    LikelihoodEnsemble dup({FiniteDistribution(omega3, {0.5, 0.3, 0.2}),
                            FiniteDistribution(omega3, {0.5, 0.3, 0.2})});
    REQUIRE(credal_from_likelihoods(dup).size() == 1);

    REQUIRE(credal_from_likelihoods(worked_ensemble()).size() == 3);
}

TEST_CASE("core samples on the simplex grid") {
    std::vector<double> vac(8, 0.0);
    vac[7] = 1.0;
    SetFunction vacuous(omega3, vac, SetFunctionKind::Lower);
    auto all = setfunction_to_core_samples(vacuous, 10);
    REQUIRE(all.size() == 66);  // C(10+2, 2) compositions

    std::vector<double> dirac(8);
    for (Event a = 0; a < 8; ++a) dirac[a] = (a & W1) ? 1.0 : 0.0;
    SetFunction d(omega3, dirac, SetFunctionKind::Lower);
    auto only = setfunction_to_core_samples(d, 10);
    REQUIRE(only.size() == 1);
    REQUIRE(only[0].prob(0) == 1.0);

    auto [lo, up] = possibility_pair(contour_from_likelihoods(worked_ensemble()));
    auto region = setfunction_to_core_samples(lo, 8);
    REQUIRE_FALSE(region.empty());
    bool found = false;
    for (const auto& p : region)
        if (std::fabs(p.prob(0) - 0.25) < 1e-12 && std::fabs(p.prob(1) - 0.5) < 1e-12)
            found = true;
    REQUIRE(found);
    for (const auto& p : region) REQUIRE(core_membership(lo, p, 1e-9));

    REQUIRE_THROWS_AS(setfunction_to_core_samples(vacuous, 500), std::domain_error);
}

TEST_CASE("core vertices recover the necessity core exactly") {
    auto [lo, up] = possibility_pair(contour_from_likelihoods(worked_ensemble()));
    CredalSet core = core_vertices(lo);
    REQUIRE(core.size() == 4);
    for (const auto& e : core.extremes()) REQUIRE(core_membership(lo, e, 1e-9));
    // the vertex hull's lower envelope reproduces the necessity table
    for (Event a = 0; a <= omega3.full_event(); ++a)
        REQUIRE(lower_envelope(core, a) == Catch::Approx(lo.value(a)).margin(1e-9));
}

TEST_CASE("setfunction csv export") {
    auto [lo, up] = possibility_pair(contour_from_likelihoods(worked_ensemble()));
    std::string csv = setfunction_pair_to_csv(lo, up);
    REQUIRE(csv.find("subset,lower,upper") == 0);
    REQUIRE(csv.find("\"{w2}\",0.25,1") != std::string::npos);
    REQUIRE(csv.find("\"{w1,w2,w3}\",1,1") != std::string::npos);
}

TEST_CASE("construction input validation") {
    REQUIRE_THROWS_AS(LikelihoodEnsemble({}), std::invalid_argument);
    REQUIRE_THROWS_AS(ContaminationModel(worked_ensemble(), {0.2}), std::invalid_argument);
    REQUIRE_THROWS_AS(ContaminationModel(worked_ensemble(), {0.2, 0.3, 0.0, 0.25}),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(EmpiricalEnsemble({}), std::invalid_argument);
    REQUIRE_THROWS_AS(EmpiricalEnsemble({{"a"}, {}}), std::invalid_argument);
    REQUIRE_THROWS_AS(PossibilityContour(omega3, {0.5, 0.9, 0.2}), std::invalid_argument);
}
