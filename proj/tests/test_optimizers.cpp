#include "slqc/analysis/budgets.hpp"
#include "slqc/analysis/lower_bound_experiment.hpp"
#include "slqc/optimizers/baselines.hpp"
#include "slqc/optimizers/ngd.hpp"
#include "slqc/problems/basic.hpp"
#include "slqc/problems/cliff_plateau.hpp"
#include "slqc/problems/g_function.hpp"
#include "slqc/problems/noisy_glm.hpp"
#include "slqc/problems/perceptron.hpp"

#include <catch2/catch.hpp>

#include <cmath>

using namespace slqc;

namespace {

NgdConfig ngd_cfg(std::size_t T, double eta, Point x1)
{
    NgdConfig c;
    c.T = T;
    c.eta = eta;
    c.x1 = std::move(x1);
    return c;
}

/// Linear objective whose value turns NaN once x[0] drops below a threshold.
struct NanBelow {
    double threshold;
    std::size_t dim() const { return 1; }
    double value(const Point& x) const { return x[0] < threshold ? NAN : x[0]; }
    Point gradient(const Point&) const { return Point::Ones(1); }
};

} // namespace

TEST_CASE("NGD on a cone walks radially with step eta", "[optimizers][ngd]")
{
    const Cone cone(make_point({0.0, 0.0}));
    const auto tr = ngd(cone, ngd_cfg(12, 0.5, make_point({3.0, 4.0})));
    REQUIRE(tr.size() == 12);
    for (std::size_t t = 0; t < 10; ++t) {
        CHECK(tr.values[t] == Approx(5.0 - 0.5 * t).margin(1e-12));
        CHECK((tr.iterates[t + 1] - tr.iterates[t]).norm() == Approx(0.5).epsilon(1e-14));
        // direction stays radial
        CHECK(tr.iterates[t][0] * 4.0 == Approx(tr.iterates[t][1] * 3.0).margin(1e-12));
    }
    CHECK(tr.values[10] <= 1e-12);
    CHECK(tr.returned_value() <= 1e-12);
    CHECK(tr.batch_ids[0] == -1);
}

TEST_CASE("NGD skips the update at a vanishing gradient", "[optimizers][ngd]")
{
    const Cone cone(make_point({1.0, 1.0}));
    const auto tr = ngd(cone, ngd_cfg(5, 0.3, make_point({1.0, 1.0})));
    for (const auto& x : tr.iterates) CHECK(x == make_point({1.0, 1.0}));
    CHECK(tr.returned_index == 0);
}

TEST_CASE("NGD on g within the SLQC budget", "[optimizers][ngd]")
{
    const auto g = make_g();
    const Point x1 = make_point({10.0, 10.0});
    const auto budget = ngd_budget(0.1, 1.0, (x1 - g.minimizer()).norm());
    CHECK(budget.T == 80000);
    auto cfg = ngd_cfg(budget.T, budget.eta, x1);
    cfg.region = g.domain();
    const auto tr = ngd(g, cfg);
    CHECK(tr.returned_value() - g.min_value() <= 0.1);
    CHECK(tr.values.back() - g.min_value() <= 0.1);
    for (const auto& x : tr.iterates) REQUIRE(g.domain().contains(x));
}

TEST_CASE("NGD beats GD on the cliff-plateau function", "[optimizers][ngd]")
{
    const auto f = make_cliff_plateau();
    const auto tr = ngd(f, ngd_cfg(6400, 0.125, make_point({10.0})));
    CHECK(tr.returned_value() - f.min_value() <= 0.1);

    GradientConfig g;
    g.T = 6400;
    g.x1 = make_point({10.0});
    g.schedule = StepSchedule::constant(1e-3);
    const auto gtr = gd(f, g);
    CHECK(gtr.returned_value() - f.min_value() > 0.1);

    g.T = 10000;
    const auto long_run = gd(f, g);
    CHECK(std::abs(long_run.iterates.back()[0]) - f.half_valley() > f.params().valley_width);
}

TEST_CASE("projected NGD stays in the region", "[optimizers][ngd]")
{
    const Quadratic q(make_point({5.0, 5.0}));
    auto cfg = ngd_cfg(200, 0.2, make_point({0.0, 0.0}));
    cfg.region = FeasibleRegion::ball(make_point({0.0, 0.0}), 1.0);
    const auto tr = ngd(q, cfg);
    for (const auto& x : tr.iterates) REQUIRE(x.norm() <= 1.0 + 1e-12);
    const Point target = make_point({1.0, 1.0}) / std::sqrt(2.0);
    CHECK((tr.returned - target).norm() < 0.2);
}

TEST_CASE("potential decrease on above-eps steps", "[optimizers][ngd]")
{
    // Cone is 1-Lipschitz and convex, hence (eps, 1, x*)-SLQC everywhere.
    const Point xs = make_point({1.0, -2.0});
    const Cone cone(xs);
    const double eps = 0.1, kappa = 1.0, eta = eps / kappa;
    const Point x1 = xs + make_point({3.05, 4.0});
    const auto budget = ngd_budget(eps, kappa, (x1 - xs).norm());
    const auto tr = ngd(cone, ngd_cfg(budget.T, eta, x1));
    std::size_t above = 0, consecutive = 0, longest = 0;
    for (std::size_t t = 0; t + 1 < tr.size(); ++t) {
        if (tr.values[t] - 0.0 <= eps) {
            consecutive = 0;
            continue;
        }
        ++above;
        longest = std::max(longest, ++consecutive);
        const double before = (tr.iterates[t] - xs).squaredNorm();
        const double after = (tr.iterates[t + 1] - xs).squaredNorm();
        INFO("step " << t);
        REQUIRE(before - after >= eps * eps / (kappa * kappa));
    }
    CHECK(above > 40);
    CHECK(longest <= budget.T);
}

TEST_CASE("NGD iterates are invariant under positive scaling", "[optimizers][ngd]")
{
    const auto g = make_g();
    auto cfg = ngd_cfg(2000, 0.1, make_point({7.3, -2.1}));
    cfg.region = g.domain();
    const auto base = ngd(g, cfg);
    for (double c : {0.25, 4.0}) {
        const auto tr = ngd(Scaled<SigmoidSum2>(g, c), cfg);
        for (std::size_t t = 0; t < base.size(); ++t) REQUIRE(tr.iterates[t] == base.iterates[t]);
    }
    for (double c : {0.01, 100.0}) {
        const auto tr = ngd(Scaled<SigmoidSum2>(g, c), cfg);
        REQUIRE(tr.size() == base.size());
        for (std::size_t t = 0; t < base.size(); ++t) REQUIRE((tr.iterates[t] - base.iterates[t]).norm() <= 1e-10);
        CHECK(tr.returned_index == base.returned_index);
    }
}

TEST_CASE("SNGD on a zero-variance distribution reproduces NGD bit for bit", "[optimizers][sngd]")
{
    const auto g = make_g();
    const Degenerate<SigmoidSum2> dist(g, 2.0);
    SngdConfig s;
    s.T = 500;
    s.eta = 0.1;
    s.x1 = make_point({3.0, -4.0});
    s.b = 7;
    s.stream = Stream(9);
    const auto st = sngd(dist, s);
    const auto nt = ngd(g, static_cast<const NgdConfig&>(s));
    REQUIRE(st.size() == nt.size());
    for (std::size_t t = 0; t < st.size(); ++t) {
        REQUIRE(st.iterates[t] == nt.iterates[t]);
        REQUIRE(st.values[t] == nt.values[t]);
        REQUIRE(st.grad_norms[t] == nt.grad_norms[t]);
        REQUIRE(st.batch_ids[t] == static_cast<std::int64_t>(t));
    }
    CHECK(st.returned == nt.returned);
}

TEST_CASE("SNGD is reproducible from its stream", "[optimizers][sngd]")
{
    Stream p(4);
    const auto dist = make_noisy_glm(p, 3, 2.0);
    SngdConfig s;
    s.T = 300;
    s.eta = 0.05;
    s.x1 = Point::Zero(3);
    s.b = 10;
    s.stream = Stream(77);
    const auto a = sngd(dist, s);
    const auto b = sngd(dist, s);
    for (std::size_t t = 0; t < a.size(); ++t) REQUIRE(a.iterates[t] == b.iterates[t]);
    for (std::size_t t = 0; t + 1 < a.size(); ++t)
        if (a.grad_norms[t] > s.grad_tol) REQUIRE((a.iterates[t + 1] - a.iterates[t]).norm() == Approx(0.05).epsilon(1e-13));
    // returned follows the minibatch values, not the expected objective
    CHECK(a.returned_index == argmin_index(a.values));
    const auto ev = expected_values(dist, a);
    CHECK(ev.size() == a.size());
}

TEST_CASE("SNGD on noisy GLM with computed budgets", "[optimizers][sngd]")
{
    const double eps = 0.2, delta = 0.1, kappa = std::exp(2.0);
    int good = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Stream p = Stream(seed).substream(0);
        const auto dist = make_noisy_glm(p, 5, 2.0);
        const auto e = dist.expected();
        const auto budget = sngd_budget(eps, kappa, dist.planted().norm(), delta, dist.bound());
        SngdConfig s;
        s.T = budget.T;
        s.eta = budget.eta;
        s.x1 = Point::Zero(5);
        s.b = budget.b;
        s.stream = Stream(seed).substream(1);
        const auto tr = sngd(dist, s);
        if (e.value(tr.returned) - e.value(dist.planted()) <= 3.0 * eps) ++good;
    }
    CHECK(good >= 8);
}

TEST_CASE("SNGD on the lower-bound distribution never reaches [-5, -1]", "[optimizers][sngd]")
{
    LowerBoundSettings s;
    s.eps = 0.1;
    s.trials = 1000;
    s.T = 10000;
    const auto r = lower_bound_experiment(s, Stream(2024));
    CHECK(r.b == 2);
    CHECK(r.hits == 0);
}

TEST_CASE("direction-oracle NGD solves the margin perceptron", "[optimizers][oracle]")
{
    Stream s(8);
    auto [data, f] = make_perceptron(s, 5, 200, 0.2);
    const double eps = 0.1, kappa = 2.0 / data.gamma;
    const auto budget = ngd_budget(eps, kappa, data.planted.norm());
    const auto tr = ngd_with_oracle(f, ngd_cfg(budget.T, budget.eta, Point::Zero(5)));
    CHECK(tr.returned_value() <= eps);

    const auto at_opt = ngd_with_oracle(f, ngd_cfg(5, 0.01, data.planted));
    for (const auto& x : at_opt.iterates) CHECK(x == data.planted);
    CHECK(at_opt.returned_value() == 0.0);

    const Objective erased = Objective::from(Cone(make_point({0.0})));
    CHECK_THROWS_AS(ngd_with_oracle(erased, ngd_cfg(3, 0.1, make_point({1.0}))), std::invalid_argument);
}

TEST_CASE("perceptron oracle on an all-zero-label dataset", "[optimizers][oracle]")
{
    PerceptronDataset d;
    d.gamma = 0.1;
    d.planted = make_point({-1.0, 0.0});
    d.x = {make_point({0.5, 0.0}), make_point({0.3, 0.4}), make_point({0.2, -0.5})};
    d.y = {0.0, 0.0, 0.0};
    const PerceptronObjective f(d);
    const Point w = make_point({1.0, 1.0});
    // <w, x_i> = 0.5, 0.7, -0.3: the first two are misclassified
    CHECK(f.value(w) == Approx(2.0 / 3.0));
    const Point dir = f.direction(w);
    CHECK(dir[0] == Approx((0.5 + 0.3) / 3.0));
    CHECK(dir[1] == Approx((0.0 + 0.4) / 3.0));
    CHECK(f.value(make_point({-1.0, 0.0})) == 0.0);
}

TEST_CASE("GD closed form on x^2", "[optimizers][baselines]")
{
    const Quadratic q(make_point({0.0}));
    GradientConfig c;
    c.T = 30;
    c.x1 = make_point({1.0});
    c.schedule = StepSchedule::constant(0.1);
    const auto tr = gd(q, c);
    for (std::size_t t = 0; t < tr.size(); ++t) REQUIRE(tr.iterates[t][0] == Approx(std::pow(0.8, double(t))).epsilon(1e-12));
}

TEST_CASE("MSGD over the full support equals GD", "[optimizers][baselines]")
{
    std::vector<Quadratic> comps;
    for (int i = 0; i < 5; ++i) comps.emplace_back(make_point({double(i), -double(i)}), 0.5 + 0.1 * i);
    using D = FiniteDistribution<Quadratic>;
    const D dist(comps, 100.0, D::Sampling::without_replacement);
    GradientConfig c;
    c.T = 50;
    c.x1 = make_point({3.0, 1.0});
    c.schedule = StepSchedule::polynomial(0.05, 1e-2);
    c.b = 5;
    c.stream = Stream(3);
    const auto m = msgd(dist, c);
    const auto g = gd(dist.expected(), c);
    for (std::size_t t = 0; t < m.size(); ++t) REQUIRE(m.iterates[t] == g.iterates[t]);
}

TEST_CASE("step schedules", "[optimizers][config]")
{
    const auto p = StepSchedule::polynomial(0.01, 1e-4);
    CHECK(p.eta(0) == 0.01);
    CHECK(p.eta(10000) == Approx(0.01 * std::pow(2.0, -0.75)));
    CHECK(StepSchedule::constant(0.3).eta(999) == 0.3);
    CHECK_THROWS(StepSchedule::constant(0.1).with_momentum(1.0).validate());
    CHECK_THROWS(StepSchedule::constant(0.0).validate());

    NgdConfig bad = ngd_cfg(0, 0.1, make_point({1.0}));
    CHECK_THROWS_AS(bad.validate(1), std::invalid_argument);
    bad.T = 1;
    bad.eta = -1;
    CHECK_THROWS_AS(bad.validate(1), std::invalid_argument);
    CHECK_THROWS_AS(ngd(Cone(make_point({0.0, 0.0})), ngd_cfg(3, 0.1, make_point({1.0}))), std::invalid_argument);
    SngdConfig s;
    s.x1 = make_point({1.0});
    s.b = 0;
    CHECK_THROWS_AS(s.validate(1), std::invalid_argument);
}

TEST_CASE("Nesterov and SGD run and respect the stream", "[optimizers][baselines]")
{
    Stream p(12);
    const auto dist = make_noisy_glm(p, 4, 2.0);
    GradientConfig c;
    c.T = 400;
    c.x1 = Point::Zero(4);
    c.schedule = StepSchedule::constant(0.05).with_momentum(0.95);
    c.b = 20;
    c.stream = Stream(13);
    const auto a = nesterov(dist, c);
    const auto b = nesterov(dist, c);
    CHECK(a.iterates.back() == b.iterates.back());
    const auto e = dist.expected();
    CHECK(e.value(a.iterates.back()) < e.value(c.x1));
    const auto s1 = sgd(dist, c);
    CHECK(s1.size() == 400);
}

TEST_CASE("non-finite values abort with the partial trace", "[optimizers][errors]")
{
    const NanBelow f{-0.4};
    const auto tr = ngd(f, ngd_cfg(100, 0.3, make_point({1.0})));
    CHECK(tr.aborted);
    CHECK_FALSE(tr.abort_reason.empty());
    CHECK(tr.size() == 5);
    GradientConfig c;
    c.T = 100;
    c.x1 = make_point({1.0});
    c.schedule = StepSchedule::constant(1e10);
    const auto blow = gd(Quadratic(make_point({0.0}), 1.0), c);
    // x is multiplied by 1 - 2e10 each step until it overflows
    CHECK(blow.aborted);
    CHECK(blow.size() < 100);
}
