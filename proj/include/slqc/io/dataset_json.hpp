#pragma once

#include "slqc/io/json_util.hpp"
#include "slqc/problems/glm.hpp"
#include "slqc/problems/perceptron.hpp"

#include <string>

namespace slqc::io {

constexpr int dataset_schema_version = 1;

/**
 * {"schema_version": 1, "kind": "glm" | "noisy_glm", "W": ..., "seed": ...,
 *  "planted": [...] | null, "samples": [{"x": [...], "y": ...}, ...]}
 */
inline json glm_dataset_to_json(const GlmDataset& d, const std::string& kind = "glm")
{
    if (kind != "glm" && kind != "noisy_glm") throw std::invalid_argument("glm dataset kind must be glm or noisy_glm");
    json j;
    j["schema_version"] = dataset_schema_version;
    j["kind"] = kind;
    j["W"] = d.W;
    j["seed"] = d.seed;
    j["planted"] = d.planted ? point_to_json(*d.planted) : json(nullptr);
    json s = json::array();
    for (const auto& smp : d.samples) s.push_back({{"x", point_to_json(smp.x)}, {"y", smp.y}});
    j["samples"] = std::move(s);
    return j;
}

inline void check_dataset_header(const json& j, std::initializer_list<const char*> kinds)
{
    if (require_key(j, "schema_version").get<int>() != dataset_schema_version)
        throw std::invalid_argument("dataset: unsupported schema_version");
    const auto kind = require_key(j, "kind").get<std::string>();
    for (const char* k : kinds)
        if (kind == k) return;
    throw std::invalid_argument("dataset: unexpected kind '" + kind + "'");
}

inline GlmDataset glm_dataset_from_json(const json& j)
{
    reject_unknown_keys(j, {"schema_version", "kind", "W", "seed", "planted", "samples"}, "glm dataset");
    check_dataset_header(j, {"glm", "noisy_glm"});
    GlmDataset d;
    d.W = require_key(j, "W").get<double>();
    d.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("planted") && !j["planted"].is_null()) d.planted = point_from_json(j["planted"], "planted");
    for (const auto& s : require_key(j, "samples")) {
        reject_unknown_keys(s, {"x", "y"}, "glm sample");
        d.samples.push_back({point_from_json(require_key(s, "x"), "sample x"), require_key(s, "y").get<double>()});
    }
    return d;
}

/**
 * {"schema_version": 1, "kind": "perceptron", "gamma": ..., "seed": ...,
 *  "planted": [...], "samples": [{"x": [...], "y": 0|1}, ...]}
 */
inline json perceptron_dataset_to_json(const PerceptronDataset& d)
{
    json j;
    j["schema_version"] = dataset_schema_version;
    j["kind"] = "perceptron";
    j["gamma"] = d.gamma;
    j["seed"] = d.seed;
    j["planted"] = point_to_json(d.planted);
    json s = json::array();
    for (std::size_t i = 0; i < d.m(); ++i) s.push_back({{"x", point_to_json(d.x[i])}, {"y", d.y[i]}});
    j["samples"] = std::move(s);
    return j;
}

inline PerceptronDataset perceptron_dataset_from_json(const json& j)
{
    reject_unknown_keys(j, {"schema_version", "kind", "gamma", "seed", "planted", "samples"}, "perceptron dataset");
    check_dataset_header(j, {"perceptron"});
    PerceptronDataset d;
    d.gamma = require_key(j, "gamma").get<double>();
    d.seed = j.value("seed", std::uint64_t{0});
    d.planted = point_from_json(require_key(j, "planted"), "planted");
    for (const auto& s : require_key(j, "samples")) {
        reject_unknown_keys(s, {"x", "y"}, "perceptron sample");
        d.x.push_back(point_from_json(require_key(s, "x"), "sample x"));
        d.y.push_back(require_key(s, "y").get<double>());
    }
    return d;
}

} // namespace slqc::io
