#include "qkm/eval/table.hpp"

#include <algorithm>
#include <cstdio>

#include "json.hpp"

namespace qkm::eval {

ComparisonTable method_comparison_table(std::span<const MethodResult> results) {
    ComparisonTable t;
    for (const auto& r : results) {
        if (std::find(t.datasets.begin(), t.datasets.end(), r.dataset) == t.datasets.end()) {
            t.datasets.push_back(r.dataset);
        }
        auto row = std::find_if(t.rows.begin(), t.rows.end(), [&](const ComparisonRow& x) { return x.method == r.method; });
        if (row == t.rows.end()) {
            t.rows.push_back({r.method, {}, std::nullopt});
            row = std::prev(t.rows.end());
        }
        row->accuracy[r.dataset] = r.accuracy;
        if (r.depth) row->depth = r.depth;
    }
    return t;
}

std::string to_csv(const ComparisonTable& t) {
    std::string out = "method";
    for (const auto& d : t.datasets) out += "," + d;
    out += ",depth\n";
    char buf[32];
    for (const auto& row : t.rows) {
        out += row.method;
        for (const auto& d : t.datasets) {
            out += ',';
            if (auto it = row.accuracy.find(d); it != row.accuracy.end()) {
                std::snprintf(buf, sizeof buf, "%.4f", it->second);
                out += buf;
            }
        }
        out += ',';
        if (row.depth) out += std::to_string(*row.depth);
        out += '\n';
    }
    return out;
}

std::string to_json(const ComparisonTable& t) {
    nlohmann::ordered_json j;
    j["datasets"] = t.datasets;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json r;
        r["method"] = row.method;
        r["accuracy"] = nlohmann::ordered_json::object();
        for (const auto& d : t.datasets) {
            if (auto it = row.accuracy.find(d); it != row.accuracy.end()) r["accuracy"][d] = it->second;
        }
        r["depth"] = row.depth ? nlohmann::ordered_json(*row.depth) : nlohmann::ordered_json(nullptr);
        j["rows"].push_back(std::move(r));
    }
    return j.dump(2);
}

}  // namespace qkm::eval
