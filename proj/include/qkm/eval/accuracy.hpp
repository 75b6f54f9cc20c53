#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qkm::eval {

/// Best label matching of a clustering.
struct AccuracyReport {
    double accuracy = 0.0;
    std::size_t matched = 0;
    std::size_t total = 0;
    std::vector<int> cluster_ids;                     // rows of `confusion`, ascending
    std::vector<int> label_ids;                       // columns of `confusion`, ascending
    std::vector<std::vector<std::size_t>> confusion;  // [cluster][label] counts
    /// Matched label per cluster; std::nullopt for clusters left unmatched
    /// when there are more clusters than labels.
    std::map<int, std::optional<int>> mapping;
};

/// Searches every injective cluster -> label mapping (at most 8 distinct
/// clusters) and keeps the one with the most agreements; ties keep the first
/// found in lexicographic order. With more clusters than labels, each label
/// is used by at most one cluster and the rest match nothing.
/// Throws std::invalid_argument for a length mismatch, empty input or more
/// than 8 clusters.
AccuracyReport accuracy(std::span<const int> predicted, std::span<const int> truth);

/// Cluster indices as signed integer labels.
std::vector<int> as_labels(std::span<const std::size_t> assignment);

/// accuracy(a, b) with b taken as labels.
double agreement(std::span<const int> a, std::span<const int> b);

}  // namespace qkm::eval
