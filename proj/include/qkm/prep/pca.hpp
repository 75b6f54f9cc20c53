#pragma once

#include <cstddef>
#include <vector>

#include "qkm/prep/dataset.hpp"

namespace qkm::prep {

/// Principal axes of a dataset.
struct PcaModel {
    FeatureVector mean;
    std::vector<FeatureVector> components;  // unit eigenvectors, descending eigenvalue
    std::vector<double> eigenvalues;        // population covariance eigenvalues
    double total_variance = 0.0;            // trace of the covariance
    int iterations = 0;                     // power iterations spent, all components

    /// Centered coordinates of `d` on the components. Labels are kept.
    Dataset project(const Dataset& d) const;
};

/// Power iteration with deflation on the centered population covariance.
/// Each component stops when successive iterates differ by less than 1e-10
/// (or after 10000 steps) and is signed so its first nonzero entry is
/// positive; entries under 1e-8 of the largest count as zero. Needs at least 3 vectors and `components` <= dimension.
/// Rank-0 data (every point identical) throws qkm::DataError.
PcaModel fit_pca(const Dataset& d, std::size_t components);

/// fit_pca(d, 2).project(d).
Dataset pca_2d(const Dataset& d);

}  // namespace qkm::prep
