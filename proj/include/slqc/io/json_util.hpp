#pragma once

#include "slqc/core/point.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace slqc::io {

using json = nlohmann::json;

inline json point_to_json(const Point& x)
{
    json a = json::array();
    for (Eigen::Index i = 0; i < x.size(); ++i) a.push_back(x[i]);
    return a;
}

inline Point point_from_json(const json& a, const char* what)
{
    if (!a.is_array()) throw std::invalid_argument(std::string(what) + ": expected an array of numbers");
    Point x(static_cast<Eigen::Index>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i].is_number()) throw std::invalid_argument(std::string(what) + ": expected an array of numbers");
        x[static_cast<Eigen::Index>(i)] = a[i].get<double>();
    }
    return x;
}

/// Non-finite doubles are written as strings ("inf", "-inf", "nan"); JSON has no literal for them.
inline json real_to_json(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

inline double real_from_json(const json& v, const char* what)
{
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    }
    throw std::invalid_argument(std::string(what) + ": expected a number");
}

inline const json& require_key(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(std::string("missing key '") + key + "'");
    return j.at(key);
}

/// Throws on any key of `j` not in `allowed`.
inline void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where)
{
    if (!j.is_object()) throw std::invalid_argument(where + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed)
            if (it.key() == a) ok = true;
        if (!ok) throw std::invalid_argument(where + ": unknown key '" + it.key() + "'");
    }
}

} // namespace slqc::io
