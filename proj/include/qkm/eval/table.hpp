#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qkm/eval/accuracy.hpp"

namespace qkm::eval {

struct MethodResult {
    std::string method;
    std::string dataset;
    double accuracy = 0.0;
    std::optional<int> depth;  // elementary circuit depth; none for classical
};

struct ComparisonRow {
    std::string method;
    std::map<std::string, double> accuracy;  // by dataset
    std::optional<int> depth;
};

/// One row per method and one accuracy column per dataset, both in order of
/// first appearance. A repeated (method, dataset) pair keeps the last value.
struct ComparisonTable {
    std::vector<std::string> datasets;
    std::vector<ComparisonRow> rows;
};

ComparisonTable method_comparison_table(std::span<const MethodResult> results);

/// Header `method,<dataset>...,depth`; missing cells are empty.
std::string to_csv(const ComparisonTable& table);

/// {"datasets": [...], "rows": [{"method", "accuracy": {...}, "depth"}]},
/// missing depth as null.
std::string to_json(const ComparisonTable& table);

}  // namespace qkm::eval
