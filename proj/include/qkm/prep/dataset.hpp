#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace qkm::prep {

using FeatureVector = std::vector<double>;

/// Feature vectors with optional integer labels and preprocessing flags.
///
/// Invariants: every row has the same dimension and only finite entries;
/// labels, when present, have one entry per row; `normalized` implies every
/// row has Euclidean norm 1 within 1e-9.
struct Dataset {
    std::vector<FeatureVector> vectors;
    std::optional<std::vector<int>> labels;
    bool standardized = false;
    bool normalized = false;
    std::vector<std::string> warnings;

    std::size_t size() const noexcept { return vectors.size(); }
    std::size_t dims() const noexcept { return vectors.empty() ? 0 : vectors.front().size(); }
    bool empty() const noexcept { return vectors.empty(); }

    /// Throws qkm::DataError if an invariant is broken.
    void check() const;
};

/// Zero mean, unit population variance per column. Zero-variance columns
/// become all zeros and add a warning. Needs at least two vectors.
Dataset standardize(Dataset d);

/// Scales every vector to unit Euclidean norm. A zero vector throws
/// qkm::DataError naming its row.
Dataset normalize(Dataset d);

/// True when every vector has norm 1 within `tolerance`.
bool is_unit_norm(const Dataset& d, double tolerance = 1e-9);

/// Keeps only the listed feature columns, in the given order.
Dataset select_features(Dataset d, std::span<const std::size_t> columns);

/// Rows whose label is in `keep`. Throws qkm::DataError when labels are
/// absent; an empty result carries a warning.
Dataset filter_labels(Dataset d, const std::set<int>& keep);

/// filter_labels with the conventional MNIST digit subset as default.
Dataset filter_mnist_digits(Dataset d, const std::set<int>& keep = {0, 3, 4, 7});

/// `n` i.i.d. standard-normal vectors of `dims` entries, then standardized.
Dataset generate_random_dataset(std::size_t n, std::size_t dims, std::uint64_t seed);

}  // namespace qkm::prep
