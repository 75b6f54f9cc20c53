#include "qkm/prep/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qkm/error.hpp"
#include "qkm/rng.hpp"

namespace qkm::prep {

void Dataset::check() const {
    const std::size_t d = dims();
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (vectors[i].size() != d) throw DataError("row " + std::to_string(i) + " has inconsistent dimension");
        for (double v : vectors[i]) {
            if (!std::isfinite(v)) throw DataError("row " + std::to_string(i) + " has a non-finite entry");
        }
    }
    if (labels && labels->size() != vectors.size()) throw DataError("label count does not match row count");
    if (normalized && !is_unit_norm(*this)) throw DataError("dataset flagged normalized but has non-unit rows");
}

Dataset standardize(Dataset d) {
    if (d.size() < 2) throw std::invalid_argument("standardize needs at least two vectors");
    const std::size_t n = d.size();
    for (std::size_t j = 0; j < d.dims(); ++j) {
        double mean = 0.0;
        for (const auto& v : d.vectors) mean += v[j];
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (const auto& v : d.vectors) var += (v[j] - mean) * (v[j] - mean);
        var /= static_cast<double>(n);
        const double sd = std::sqrt(var);
        double scale = 0.0;
        for (const auto& v : d.vectors) scale = std::max(scale, std::abs(v[j]));
        // Relative cutoff: a constant column can leave round-off variance.
        if (sd <= 1e-12 * scale || sd == 0.0) {
            for (auto& v : d.vectors) v[j] = 0.0;
            d.warnings.push_back("column " + std::to_string(j) + " has zero variance; set to 0");
            continue;
        }
        for (auto& v : d.vectors) v[j] = (v[j] - mean) / sd;
    }
    d.standardized = true;
    d.normalized = false;
    return d;
}

Dataset normalize(Dataset d) {
    for (std::size_t i = 0; i < d.size(); ++i) {
        auto& v = d.vectors[i];
        double sq = 0.0;
        for (double x : v) sq += x * x;
        const double norm = std::sqrt(sq);
        if (norm == 0.0) throw DataError("cannot normalize zero vector at row " + std::to_string(i));
        for (double& x : v) x /= norm;
    }
    d.normalized = true;
    return d;
}

bool is_unit_norm(const Dataset& d, double tolerance) {
    for (const auto& v : d.vectors) {
        double sq = 0.0;
        for (double x : v) sq += x * x;
        if (std::abs(std::sqrt(sq) - 1.0) > tolerance) return false;
    }
    return true;
}

Dataset select_features(Dataset d, std::span<const std::size_t> columns) {
    if (columns.empty()) throw std::invalid_argument("feature selection is empty");
    for (std::size_t c : columns) {
        if (c >= d.dims()) throw std::out_of_range("feature column " + std::to_string(c) + " out of range");
    }
    for (auto& v : d.vectors) {
        FeatureVector picked;
        picked.reserve(columns.size());
        for (std::size_t c : columns) picked.push_back(v[c]);
        v = std::move(picked);
    }
    d.standardized = false;
    d.normalized = false;
    return d;
}

Dataset filter_labels(Dataset d, const std::set<int>& keep) {
    if (!d.labels) throw DataError("label filter requires labels");
    Dataset out;
    out.labels.emplace();
    out.standardized = d.standardized;
    out.normalized = d.normalized;
    out.warnings = d.warnings;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const int y = (*d.labels)[i];
        if (keep.count(y) != 0) {
            out.vectors.push_back(std::move(d.vectors[i]));
            out.labels->push_back(y);
        }
    }
    if (out.empty()) out.warnings.push_back("label filter removed every row");
    // The statistics of a strict subset differ from the whole.
    if (out.size() != d.size()) out.standardized = false;
    return out;
}

Dataset filter_mnist_digits(Dataset d, const std::set<int>& keep) { return filter_labels(std::move(d), keep); }

Dataset generate_random_dataset(std::size_t n, std::size_t dims, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("random dataset needs at least two vectors");
    if (dims < 1) throw std::invalid_argument("random dataset needs at least one dimension");
    Rng rng(seed);
    Dataset d;
    d.vectors.assign(n, FeatureVector(dims));
    for (auto& v : d.vectors) {
        for (double& x : v) x = rng.normal();
    }
    return standardize(std::move(d));
}

}  // namespace qkm::prep
