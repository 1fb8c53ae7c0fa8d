#include "slqc/io/dataset_json.hpp"
#include "slqc/io/experiment.hpp"
#include "slqc/io/report_json.hpp"
#include "slqc/io/trace_io.hpp"
#include "slqc/optimizers/ngd.hpp"
#include "slqc/problems/basic.hpp"

#include <catch2/catch.hpp>

#include <cmath>
#include <sstream>

using namespace slqc;
using io::json;

namespace {

OptTrace sample_trace()
{
    NgdConfig cfg;
    cfg.T = 25;
    cfg.eta = 0.3;
    cfg.x1 = make_point({1.0 / 3.0, -2.0, 1e-300});
    return ngd(Cone(make_point({0.1, 0.2, 0.3})), cfg);
}

json base_config()
{
    return json::parse(R"({
        "schema_version": 1,
        "problem": {"name": "g"},
        "optimizer": {"name": "ngd", "T": 50, "eta": 0.1, "x1": [10, 10]},
        "seed": 4,
        "trials": 2,
        "output": {"dir": "somewhere", "prefix": "p"}
    })");
}

} // namespace

TEST_CASE("non-finite reals survive JSON", "[io]")
{
    for (double v : {1.5, -0.0, double(INFINITY), -double(INFINITY)}) CHECK(io::real_from_json(io::real_to_json(v), "v") == v);
    CHECK(std::isnan(io::real_from_json(io::real_to_json(NAN), "v")));
    CHECK(io::real_to_json(INFINITY) == "inf");
    CHECK_THROWS(io::real_from_json(json("infinity"), "v"));
    CHECK_THROWS(io::point_from_json(json::parse("[1, \"a\"]"), "p"));
}

TEST_CASE("GLM dataset round trip", "[io][dataset]")
{
    Stream s(1);
    auto [data, f] = make_idealized_glm(s, 4, 30, 2.0);
    const json j = io::glm_dataset_to_json(data);
    const auto back = io::glm_dataset_from_json(json::parse(j.dump()));
    REQUIRE(back.m() == data.m());
    for (std::size_t i = 0; i < data.m(); ++i) {
        REQUIRE(back.samples[i].x == data.samples[i].x);
        REQUIRE(back.samples[i].y == data.samples[i].y);
    }
    CHECK(*back.planted == *data.planted);
    CHECK(back.W == data.W);
    CHECK(back.seed == data.seed);
    CHECK_NOTHROW(back.validate());

    json bad = j;
    bad["extra"] = 1;
    CHECK_THROWS(io::glm_dataset_from_json(bad));
    bad = j;
    bad["kind"] = "perceptron";
    CHECK_THROWS(io::glm_dataset_from_json(bad));
    bad = j;
    bad["schema_version"] = 2;
    CHECK_THROWS(io::glm_dataset_from_json(bad));
    CHECK_THROWS(io::glm_dataset_to_json(data, "other"));
}

TEST_CASE("perceptron dataset round trip", "[io][dataset]")
{
    Stream s(2);
    auto [data, f] = make_perceptron(s, 3, 40, 0.1);
    const auto back = io::perceptron_dataset_from_json(json::parse(io::perceptron_dataset_to_json(data).dump()));
    REQUIRE(back.m() == data.m());
    for (std::size_t i = 0; i < data.m(); ++i) {
        REQUIRE(back.x[i] == data.x[i]);
        REQUIRE(back.y[i] == data.y[i]);
    }
    CHECK(back.planted == data.planted);
    CHECK(back.gamma == data.gamma);
    CHECK_NOTHROW(back.validate());
}

TEST_CASE("trace CSV round trip is exact", "[io][trace]")
{
    const OptTrace tr = sample_trace();
    std::ostringstream os;
    io::write_trace_csv(os, tr);
    const std::string text = os.str();
    CHECK(text.rfind("t,value,grad_norm,x0,x1,x2\n", 0) == 0);
    CHECK(text.find('\r') == std::string::npos);

    std::istringstream is(text);
    const OptTrace back = io::read_trace_csv(is);
    REQUIRE(back.size() == tr.size());
    for (std::size_t t = 0; t < tr.size(); ++t) {
        REQUIRE(back.values[t] == tr.values[t]);
        REQUIRE(back.grad_norms[t] == tr.grad_norms[t]);
        REQUIRE(back.iterates[t] == tr.iterates[t]);
    }
    CHECK(back.returned_index == argmin_index(tr.values));

    std::ostringstream again;
    io::write_trace_csv(again, back);
    CHECK(again.str() == text);

    std::istringstream bad_header("a,b,c\n");
    CHECK_THROWS(io::read_trace_csv(bad_header));
    std::istringstream ragged("t,value,grad_norm,x0\n0,1,2\n");
    CHECK_THROWS(io::read_trace_csv(ragged));
}

TEST_CASE("trace JSON round trip", "[io][trace]")
{
    OptTrace tr = sample_trace();
    tr.grad_norms.back() = INFINITY;
    tr.aborted = true;
    tr.abort_reason = "test";
    const OptTrace back = io::trace_from_json(json::parse(io::trace_to_json(tr).dump()));
    CHECK(back.iterates == tr.iterates);
    CHECK(back.values == tr.values);
    CHECK(back.grad_norms == tr.grad_norms);
    CHECK(back.batch_ids == tr.batch_ids);
    CHECK(back.returned == tr.returned);
    CHECK(back.returned_index == tr.returned_index);
    CHECK(back.aborted);
    CHECK(back.abort_reason == "test");

    json j = io::trace_to_json(tr);
    j["values"].erase(0);
    CHECK_THROWS(io::trace_from_json(j));
}

TEST_CASE("report JSON", "[io][report]")
{
    SlqcReport r;
    r.holds = true;
    r.clause = SlqcClause::descent;
    r.margin = 0.25;
    const json j = io::to_json(r);
    CHECK(j["clause"] == "descent");
    CHECK(j["holds"] == true);
    CHECK(std::string(io::clause_name(SlqcClause::none)) == "none");

    SublevelReport sr;
    CHECK(io::to_json(sr)["counterexample"].is_null());
    sr.convex = false;
    sr.counterexample = SublevelViolation{make_point({0.0}), make_point({1.0}), make_point({0.5}), 0.5, 2.0};
    CHECK(io::to_json(sr)["counterexample"]["value_z"] == 2.0);

    LowerBoundSettings s;
    s.eps = 0.1;
    s.trials = 20;
    s.T = 200;
    const auto lb = lower_bound_experiment(s, Stream(5));
    const json lj = io::to_json(lb);
    CHECK(lj["passed"] == lb.passed());
    const auto back = io::lower_bound_report_from_json(json::parse(lj.dump()));
    CHECK(back.hits == lb.hits);
    CHECK(back.batches == lb.batches);
    CHECK(back.p_hat == lb.p_hat);
    CHECK(back.declared_ceiling == lb.declared_ceiling);
    CHECK(back.passed() == lb.passed());

    const json bj = io::to_json(ngd_budget(0.1, 1.0, 1.0));
    CHECK(bj["T"] == 100);
    CHECK(bj["provenance"] == "ngd-slqc");
}

TEST_CASE("experiment config parsing", "[io][config]")
{
    const auto c = io::experiment_from_json(base_config());
    CHECK(c.problem.name == "g");
    CHECK(c.optimizer.name == "ngd");
    CHECK(c.optimizer.T == 50);
    CHECK(*c.optimizer.x1 == make_point({10.0, 10.0}));
    CHECK(c.seed == 4);
    CHECK(c.trials == 2);
    CHECK(c.out_dir == "somewhere");
    CHECK(c.prefix == "p");
    CHECK_FALSE(c.target_eps);

    auto with = [](auto edit) {
        json j = base_config();
        edit(j);
        return j;
    };
    CHECK_THROWS(io::experiment_from_json(with([](json& j) { j["bogus"] = 1; })));
    CHECK_THROWS(io::experiment_from_json(with([](json& j) { j["optimizer"]["bogus"] = 1; })));
    CHECK_THROWS(io::experiment_from_json(with([](json& j) { j["problem"]["bogus"] = 1; })));
    CHECK_THROWS(io::experiment_from_json(with([](json& j) { j["output"]["bogus"] = 1; })));
    CHECK_THROWS(io::experiment_from_json(with([](json& j) { j["schema_version"] = 2; })));
    CHECK_THROWS(io::experiment_from_json(with([](json& j) { j.erase("schema_version"); })));
    CHECK_THROWS(io::experiment_from_json(with([](json& j) { j["problem"]["name"] = "nope"; })));
    CHECK_THROWS(io::experiment_from_json(with([](json& j) { j["optimizer"]["name"] = "adam"; })));
    CHECK_THROWS(io::experiment_from_json(with([](json& j) { j["optimizer"]["T"] = 0; })));
    CHECK_THROWS(io::experiment_from_json(with([](json& j) { j["optimizer"]["eta"] = -1.0; })));
    CHECK_THROWS(io::experiment_from_json(with([](json& j) { j["optimizer"]["T"] = "many"; })));
    CHECK_THROWS(io::experiment_from_json(with([](json& j) { j["trials"] = 0; })));
    CHECK_THROWS(io::experiment_from_json(with([](json& j) { j["sweep"] = {{"b", {1, 0}}}; })));
    CHECK_THROWS(io::experiment_from_json(
        with([](json& j) { j["optimizer"]["schedule"] = {{"kind", "cosine"}}; })));
    CHECK_THROWS(io::experiment_from_json(with([](json& j) {
        j["optimizer"]["region"] = {{"ball", {{"center", {0, 0}}, {"radius", 1}}}, {"box", json::object()}};
    })));

    const auto sw = io::experiment_from_json(with([](json& j) {
        j["optimizer"]["name"] = "sngd";
        j["sweep"] = {{"b", {1, 10}}, {"eta", {0.1}}};
        j["target_eps"] = 0.05;
        j["optimizer"]["region"] = {{"ball", {{"center", {0, 0}}, {"radius", 3}}}};
    }));
    CHECK(sw.sweep.b == std::vector<std::size_t>{1, 10});
    CHECK(*sw.target_eps == 0.05);
    CHECK(sw.optimizer.region->is_ball());

    const auto nest = io::experiment_from_json(with([](json& j) { j["optimizer"]["name"] = "nesterov"; }));
    CHECK(nest.optimizer.schedule.momentum == 0.95);
}

TEST_CASE("built problems run reproducibly", "[io][config]")
{
    for (const auto& name : io::problem_names()) {
        Stream rng(9);
        const auto p = io::build_problem({name, json::object()}, rng);
        CHECK(p.name == name);
        CHECK(p.dim >= 1);
        CHECK(p.stochastic() == (name == "noisy_glm" || name == "lower_bound"));
    }

    Stream r1(3), r2(3);
    const auto p1 = io::build_problem({"noisy_glm", json::object()}, r1);
    const auto p2 = io::build_problem({"noisy_glm", json::object()}, r2);
    io::OptimizerSpec o;
    o.name = "sngd";
    o.T = 50;
    o.eta = 0.1;
    const auto a = io::run_experiment_once(p1, o, 8, 0.1, Stream(1));
    const auto b = io::run_experiment_once(p2, o, 8, 0.1, Stream(1));
    CHECK(a.trace.values == b.trace.values);
    CHECK(a.expected == b.expected);
    CHECK(a.expected.size() == a.trace.size());

    Stream r3(0);
    const auto g = io::build_problem({"g", json::object()}, r3);
    o.name = "gd";
    o.x1 = make_point({1.0, 1.0});
    const auto d = io::run_experiment_once(g, o, 1, 0.1, Stream(1));
    CHECK(d.expected.empty());
    CHECK(d.trace.values.back() < d.trace.values.front());
}
