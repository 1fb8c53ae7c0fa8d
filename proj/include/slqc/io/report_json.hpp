#pragma once

#include "slqc/analysis/budgets.hpp"
#include "slqc/analysis/lower_bound_experiment.hpp"
#include "slqc/analysis/markov.hpp"
#include "slqc/io/json_util.hpp"
#include "slqc/properties/local.hpp"
#include "slqc/properties/quasiconvex.hpp"
#include "slqc/properties/slqc.hpp"

namespace slqc::io {

inline const char* clause_name(SlqcClause c)
{
    switch (c) {
    case SlqcClause::optimal: return "optimal";
    case SlqcClause::descent: return "descent";
    default: return "none";
    }
}

inline json to_json(const SlqcQuery& q)
{
    return {{"eps", q.eps}, {"kappa", q.kappa}, {"z", point_to_json(q.z)}, {"x", point_to_json(q.x)},
            {"use_oracle", q.use_oracle}};
}

inline json to_json(const SlqcReport& r)
{
    return {{"holds", r.holds},
            {"clause", clause_name(r.clause)},
            {"margin", real_to_json(r.margin)},
            {"grad_norm", real_to_json(r.grad_norm)},
            {"gap", real_to_json(r.gap)}};
}

inline json to_json(const SublevelReport& r)
{
    json j = {{"convex", r.convex}, {"trials", r.trials}, {"members_found", r.members_found}};
    if (r.counterexample) {
        const auto& c = *r.counterexample;
        j["counterexample"] = {{"x", point_to_json(c.x)},
                               {"y", point_to_json(c.y)},
                               {"z", point_to_json(c.z)},
                               {"lambda", c.lambda},
                               {"value_z", real_to_json(c.value_z)}};
    } else {
        j["counterexample"] = nullptr;
    }
    return j;
}

inline json to_json(const QuasiconvexGradReport& r)
{
    json j = {{"holds", r.holds}, {"trials", r.trials}};
    j["counterexample"] = r.counterexample ? json{{"x", point_to_json(r.counterexample->x)},
                                                  {"y", point_to_json(r.counterexample->y)},
                                                  {"inner", real_to_json(r.counterexample->inner)}}
                                           : json(nullptr);
    return j;
}

inline json to_json(const LocalCheckReport& r)
{
    json j = {{"holds", r.holds}, {"trials", r.trials}};
    j["counterexample"] = r.counterexample ? json{{"x", point_to_json(r.counterexample->x)},
                                                  {"y", point_to_json(r.counterexample->y)},
                                                  {"lhs", real_to_json(r.counterexample->lhs)},
                                                  {"rhs", real_to_json(r.counterexample->rhs)}}
                                           : json(nullptr);
    return j;
}

inline json to_json(const Budget& b)
{
    return {{"T", b.T}, {"eta", b.eta}, {"b", b.b}, {"provenance", b.provenance}};
}

inline json to_json(const MonteCarloEstimate& m)
{
    return {{"estimate", m.estimate}, {"standard_error", m.standard_error}, {"hits", m.hits}, {"trials", m.trials}};
}

inline json to_json(const LowerBoundReport& r)
{
    return {{"schema_version", 1},
            {"eps", r.eps},
            {"b", r.b},
            {"eta", r.eta},
            {"T", r.T},
            {"trials", r.trials},
            {"seed", r.seed},
            {"hits", r.hits},
            {"hit_fraction", r.hit_fraction},
            {"batches", r.batches},
            {"negative_batches", r.negative_batches},
            {"p_hat", r.p_hat},
            {"p_hat_se", r.p_hat_se},
            {"negative_fraction", r.negative_fraction},
            {"negative_reference", r.negative_reference},
            {"walk_distance", r.walk_distance},
            {"analytic_ceiling", r.analytic_ceiling},
            {"empirical_ceiling", r.empirical_ceiling},
            {"declared_ceiling", r.declared_ceiling},
            {"p_hat_ok", r.p_hat_ok},
            {"negative_ok", r.negative_ok},
            {"hits_ok", r.hits_ok},
            {"passed", r.passed()}};
}

inline LowerBoundReport lower_bound_report_from_json(const json& j)
{
    LowerBoundReport r;
    r.eps = require_key(j, "eps").get<double>();
    r.b = require_key(j, "b").get<std::uint64_t>();
    r.eta = require_key(j, "eta").get<double>();
    r.T = require_key(j, "T").get<std::size_t>();
    r.trials = require_key(j, "trials").get<std::uint64_t>();
    r.seed = require_key(j, "seed").get<std::uint64_t>();
    r.hits = require_key(j, "hits").get<std::uint64_t>();
    r.hit_fraction = require_key(j, "hit_fraction").get<double>();
    r.batches = require_key(j, "batches").get<std::uint64_t>();
    r.negative_batches = require_key(j, "negative_batches").get<std::uint64_t>();
    r.p_hat = require_key(j, "p_hat").get<double>();
    r.p_hat_se = require_key(j, "p_hat_se").get<double>();
    r.negative_fraction = require_key(j, "negative_fraction").get<double>();
    r.negative_reference = require_key(j, "negative_reference").get<double>();
    r.walk_distance = require_key(j, "walk_distance").get<std::uint64_t>();
    r.analytic_ceiling = require_key(j, "analytic_ceiling").get<double>();
    r.empirical_ceiling = require_key(j, "empirical_ceiling").get<double>();
    r.declared_ceiling = require_key(j, "declared_ceiling").get<double>();
    r.p_hat_ok = require_key(j, "p_hat_ok").get<bool>();
    r.negative_ok = require_key(j, "negative_ok").get<bool>();
    r.hits_ok = require_key(j, "hits_ok").get<bool>();
    return r;
}

} // namespace slqc::io
