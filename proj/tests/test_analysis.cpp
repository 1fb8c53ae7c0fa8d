#include "slqc/analysis/budgets.hpp"
#include "slqc/analysis/lower_bound_experiment.hpp"
#include "slqc/analysis/markov.hpp"

#include <catch2/catch.hpp>

#include <cmath>

using namespace slqc;

TEST_CASE("NGD budgets", "[analysis][budgets]")
{
    const auto a = ngd_budget(0.1, 1.0, 1.0);
    CHECK(a.T == 100);
    CHECK(a.eta == Approx(0.1));
    CHECK(a.b == 0);

    const double e2 = std::exp(2.0);
    const auto glm = ngd_budget(0.1, e2, 2.0);
    CHECK(glm.T == 21840);
    CHECK(glm.eta == Approx(0.1 / e2));
    CHECK(glm.eta == Approx(0.01353).epsilon(1e-3));

    const auto one = ngd_budget(1.0, 1.0, 1.0);
    CHECK(one.T == 1);
    CHECK(one.eta == 1.0);
    CHECK(ngd_budget(0.1, 1.0, 0.0).T == 1);

    const auto sm = ngd_smooth_budget(0.01, 2.0, 3.0);
    CHECK(sm.T == 900);
    CHECK(sm.eta == Approx(0.1));

    CHECK_THROWS_AS(ngd_budget(0.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ngd_budget(0.1, -1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ngd_smooth_budget(0.1, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("budgets grow as eps shrinks", "[analysis][budgets]")
{
    std::uint64_t prev_T = 0, prev_b = 0;
    for (double eps = 1.0; eps > 1e-3; eps *= 0.7) {
        const auto s = sngd_budget(eps, 2.0, 1.0, 0.1, 1.0);
        REQUIRE(s.T >= prev_T);
        REQUIRE(s.b >= prev_b);
        prev_T = s.T;
        prev_b = s.b;
    }
}

TEST_CASE("SNGD minibatch bound", "[analysis][budgets]")
{
    // M^2 log(4T/delta) / (2 eps^2) = log(400000) / 0.02 = 644.97...
    CHECK(sngd_minibatch_bound(0.1, 0.1, 10000, 1.0) == 645);
    const double direct = std::log(4.0 * 10000 / 0.1) / (2.0 * 0.01);
    CHECK(direct > 644.0);
    CHECK(direct < 645.0);

    const auto b1 = static_cast<double>(sngd_minibatch_bound(0.4, 0.1, 10000, 1.0));
    const auto b2 = static_cast<double>(sngd_minibatch_bound(0.1, 0.1, 10000, 1.0));
    CHECK(b2 / b1 == Approx(16.0).epsilon(0.05));

    CHECK(sngd_minibatch_bound(0.1, 0.1, 10000, 0.0) == 0);
    const auto s = sngd_budget(0.1, 1.0, 1.0, 0.1, 0.0, 5);
    CHECK(s.b == 5);
    CHECK(s.provenance == "sngd");
    CHECK_THROWS(sngd_minibatch_bound(0.1, 0.1, 0, 1.0));
    CHECK_THROWS(sngd_minibatch_bound(0.1, 0.0, 10, 1.0));
}

TEST_CASE("noisy GLM sample bound", "[analysis][budgets]")
{
    CHECK(glm_sample_bound(1.0, std::exp(-1.0), 0.0) == 8);
    const double m = 8.0 * std::exp(4.0) * 9.0 / 0.25 * std::log(10.0);
    CHECK(glm_sample_bound(0.5, 0.1, 2.0) == static_cast<std::uint64_t>(std::ceil(m - 1e-9)));
    CHECK_THROWS(glm_sample_bound(0.1, 1.0, 1.0));
    CHECK_THROWS(glm_sample_bound(0.1, 0.0, 1.0));
}

TEST_CASE("lower-bound minibatch and all-linear probability", "[analysis][budgets]")
{
    CHECK(lower_bound_minibatch(0.1) == 2);
    CHECK(lower_bound_minibatch(0.05) == 4);
    CHECK(lower_bound_minibatch(0.3) == 1);
    CHECK(all_linear_probability(0.1) == Approx(0.81));

    double prev = 1.0;
    for (int i = 1; i <= 100; ++i) {
        const double eps = 0.001 * i;
        const double g = all_linear_probability(eps);
        REQUIRE(g <= prev);
        REQUIRE(g >= 0.8);
        prev = g;
    }
    CHECK(all_linear_probability(1e-6) == Approx(std::exp(-0.2)).epsilon(1e-5));
}

TEST_CASE("gambler's ruin absorption probability", "[analysis][markov]")
{
    CHECK(absorb_probability({0.2, 1}) == Approx(0.25));
    CHECK(absorb_probability({0.2, 9}) == Approx(std::pow(0.25, 9)));
    CHECK(absorb_probability({0.2, 0}) == 1.0);
    CHECK(absorb_probability({0.5, 7}) == 1.0);
    CHECK(absorb_probability({0.7, 3}) == 1.0);
    CHECK_THROWS(absorb_probability({0.0, 1}));
    CHECK_THROWS(absorb_probability({1.0, 1}));
}

TEST_CASE("Monte Carlo absorption agrees with the closed form", "[analysis][markov]")
{
    const Stream s(17);
    for (std::uint64_t i : {1ULL, 2ULL, 3ULL}) {
        const ChainSpec spec{0.2, i, 1000};
        const auto mc = absorb_probability_mc(spec, 100000, s.substream(i));
        CHECK(std::abs(mc.estimate - absorb_probability(spec)) <= 4.0 * mc.standard_error);
    }
    const ChainSpec spec{0.3, 2, 1000};
    const auto a = absorb_probability_mc(spec, 20000, s, 1);
    const auto b = absorb_probability_mc(spec, 20000, s, 3);
    CHECK(a.hits == b.hits);
    CHECK(absorb_probability_mc({0.2, 0}, 10, s).estimate == 1.0);
    CHECK_THROWS(absorb_probability_mc(spec, 0, s));
}

TEST_CASE("lower-bound experiment at eps = 0.05", "[analysis][lower_bound]")
{
    LowerBoundSettings settings;
    settings.eps = 0.05;
    settings.trials = 300;
    settings.T = 2000;
    const auto r = lower_bound_experiment(settings, Stream(23));
    CHECK(r.b == 4);
    CHECK(r.eta == Approx(0.05));
    CHECK(r.walk_distance == 19);
    CHECK(r.analytic_ceiling == Approx(std::pow(0.25, 19)));
    CHECK(r.negative_reference == Approx(std::pow(0.95, 4)));
    CHECK(r.hits == 0);
    CHECK(r.p_hat_ok);
    CHECK(r.negative_ok);
    CHECK(r.passed());
    CHECK(r.empirical_ceiling < 1e-6);

    settings.jobs = 2;
    const auto r2 = lower_bound_experiment(settings, Stream(23));
    CHECK(r2.batches == r.batches);
    CHECK(r2.negative_batches == r.negative_batches);
}
