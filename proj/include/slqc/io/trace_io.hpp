#pragma once

#include "slqc/core/trace.hpp"
#include "slqc/io/json_util.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace slqc::io {

/// %.17g, '.' decimal point regardless of locale; round-trips every finite double.
inline std::string format_real(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s(buf);
    for (auto& c : s)
        if (c == ',') c = '.';
    return s;
}

/// Columns: t,value,grad_norm,x0,x1,...; '\n' line endings.
inline void write_trace_csv(std::ostream& os, const OptTrace& tr)
{
    const std::size_t d = tr.iterates.empty() ? 0 : dim_of(tr.iterates.front());
    os << "t,value,grad_norm";
    for (std::size_t i = 0; i < d; ++i) os << ",x" << i;
    os << '\n';
    for (std::size_t t = 0; t < tr.size(); ++t) {
        os << t << ',' << format_real(tr.values[t]) << ',' << format_real(tr.grad_norms[t]);
        for (std::size_t i = 0; i < d; ++i) os << ',' << format_real(tr.iterates[t][static_cast<Eigen::Index>(i)]);
        os << '\n';
    }
}

/// Reads iterates, values and grad_norms back; batch ids and the returned point are not part of the CSV.
inline OptTrace read_trace_csv(std::istream& is)
{
    OptTrace tr;
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("trace csv: empty input");
    std::size_t cols = 1;
    for (char c : line) cols += c == ',' ? 1 : 0;
    if (cols < 3 || line.rfind("t,value,grad_norm", 0) != 0) throw std::invalid_argument("trace csv: bad header");
    const std::size_t d = cols - 3;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> v;
        while (std::getline(ss, cell, ',')) v.push_back(std::stod(cell));
        if (v.size() != cols) throw std::invalid_argument("trace csv: ragged row");
        if (static_cast<std::size_t>(v[0]) != tr.size()) throw std::invalid_argument("trace csv: non-consecutive t");
        tr.values.push_back(v[1]);
        tr.grad_norms.push_back(v[2]);
        Point x(static_cast<Eigen::Index>(d));
        for (std::size_t i = 0; i < d; ++i) x[static_cast<Eigen::Index>(i)] = v[3 + i];
        tr.iterates.push_back(std::move(x));
        tr.batch_ids.push_back(-1);
    }
    if (!tr.values.empty()) {
        tr.returned_index = argmin_index(tr.values);
        tr.returned = tr.iterates[tr.returned_index];
    }
    return tr;
}

inline json trace_to_json(const OptTrace& tr)
{
    json j;
    j["schema_version"] = 1;
    json it = json::array();
    for (const auto& x : tr.iterates) it.push_back(point_to_json(x));
    j["iterates"] = std::move(it);
    json v = json::array(), g = json::array();
    for (double a : tr.values) v.push_back(real_to_json(a));
    for (double a : tr.grad_norms) g.push_back(real_to_json(a));
    j["values"] = std::move(v);
    j["grad_norms"] = std::move(g);
    j["batch_ids"] = tr.batch_ids;
    j["returned"] = point_to_json(tr.returned);
    j["returned_index"] = tr.returned_index;
    j["aborted"] = tr.aborted;
    j["abort_reason"] = tr.abort_reason;
    return j;
}

inline OptTrace trace_from_json(const json& j)
{
    reject_unknown_keys(j,
                        {"schema_version", "iterates", "values", "grad_norms", "batch_ids", "returned",
                         "returned_index", "aborted", "abort_reason"},
                        "trace");
    if (require_key(j, "schema_version").get<int>() != 1) throw std::invalid_argument("trace: unsupported schema_version");
    OptTrace tr;
    for (const auto& x : require_key(j, "iterates")) tr.iterates.push_back(point_from_json(x, "iterate"));
    for (const auto& v : require_key(j, "values")) tr.values.push_back(real_from_json(v, "value"));
    for (const auto& v : require_key(j, "grad_norms")) tr.grad_norms.push_back(real_from_json(v, "grad_norm"));
    tr.batch_ids = require_key(j, "batch_ids").get<std::vector<std::int64_t>>();
    tr.returned = point_from_json(require_key(j, "returned"), "returned");
    tr.returned_index = require_key(j, "returned_index").get<std::size_t>();
    tr.aborted = require_key(j, "aborted").get<bool>();
    tr.abort_reason = j.value("abort_reason", std::string{});
    const std::size_t n = tr.iterates.size();
    if (tr.values.size() != n || tr.grad_norms.size() != n || tr.batch_ids.size() != n)
        throw std::invalid_argument("trace: column lengths differ");
    return tr;
}

} // namespace slqc::io
