#include "qkm/prep/pca.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qkm/error.hpp"
#include "qkm/rng.hpp"

namespace qkm::prep {

namespace {

constexpr double kTolerance = 1e-10;
constexpr int kMaxIterations = 10000;

double dot(const FeatureVector& a, const FeatureVector& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void scale(FeatureVector& v, double f) {
    for (double& x : v) x *= f;
}

// Removes the projections on `basis` (unit vectors), twice for stability.
void orthogonalize(FeatureVector& v, const std::vector<FeatureVector>& basis) {
    for (int pass = 0; pass < 2; ++pass) {
        for (const auto& b : basis) {
            const double p = dot(v, b);
            for (std::size_t i = 0; i < v.size(); ++i) v[i] -= p * b[i];
        }
    }
}

// Entries below 1e-8 of the largest are convergence residue, not signal.
void fix_sign(FeatureVector& v) {
    double largest = 0.0;
    for (double x : v) largest = std::max(largest, std::abs(x));
    for (double x : v) {
        if (std::abs(x) > 1e-8 * largest) {
            if (x < 0.0) scale(v, -1.0);
            return;
        }
    }
}

}  // namespace

Dataset PcaModel::project(const Dataset& d) const {
    if (d.dims() != mean.size()) throw std::invalid_argument("PCA model dimension does not match dataset");
    Dataset out;
    out.labels = d.labels;
    out.warnings = d.warnings;
    out.vectors.reserve(d.size());
    FeatureVector centered(mean.size());
    for (const auto& v : d.vectors) {
        for (std::size_t j = 0; j < v.size(); ++j) centered[j] = v[j] - mean[j];
        FeatureVector p(components.size());
        for (std::size_t c = 0; c < components.size(); ++c) p[c] = dot(centered, components[c]);
        out.vectors.push_back(std::move(p));
    }
    return out;
}

PcaModel fit_pca(const Dataset& d, std::size_t components) {
    if (d.size() < 3) throw std::invalid_argument("PCA needs at least 3 vectors");
    const std::size_t dim = d.dims();
    if (dim < 2) throw std::invalid_argument("PCA needs at least 2 dimensions");
    if (components < 1 || components > dim) throw std::invalid_argument("PCA component count out of range");

    PcaModel model;
    model.mean.assign(dim, 0.0);
    for (const auto& v : d.vectors) {
        for (std::size_t j = 0; j < dim; ++j) model.mean[j] += v[j];
    }
    scale(model.mean, 1.0 / static_cast<double>(d.size()));

    std::vector<double> cov(dim * dim, 0.0);
    FeatureVector c(dim);
    for (const auto& v : d.vectors) {
        for (std::size_t j = 0; j < dim; ++j) c[j] = v[j] - model.mean[j];
        for (std::size_t i = 0; i < dim; ++i) {
            if (c[i] == 0.0) continue;
            double* row = &cov[i * dim];
            for (std::size_t j = i; j < dim; ++j) row[j] += c[i] * c[j];
        }
    }
    const double inv_n = 1.0 / static_cast<double>(d.size());
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = i; j < dim; ++j) {
            cov[i * dim + j] *= inv_n;
            cov[j * dim + i] = cov[i * dim + j];
        }
        model.total_variance += cov[i * dim + i];
    }
    double max_diag = 0.0;
    for (std::size_t i = 0; i < dim; ++i) max_diag = std::max(max_diag, cov[i * dim + i]);
    if (max_diag == 0.0) throw DataError("PCA of rank-0 data: every point is identical");

    auto multiply = [&](const FeatureVector& v) {
        FeatureVector out(dim, 0.0);
        for (std::size_t i = 0; i < dim; ++i) {
            const double* row = &cov[i * dim];
            double s = 0.0;
            for (std::size_t j = 0; j < dim; ++j) s += row[j] * v[j];
            out[i] = s;
        }
        return out;
    };

    Rng rng(0x5EED0FC0u);
    for (std::size_t k = 0; k < components; ++k) {
        FeatureVector v(dim);
        for (double& x : v) x = rng.normal();
        orthogonalize(v, model.components);
        scale(v, 1.0 / std::sqrt(dot(v, v)));

        double lambda = 0.0;
        for (int it = 0; it < kMaxIterations; ++it) {
            ++model.iterations;
            FeatureVector w = multiply(v);
            orthogonalize(w, model.components);
            const double len = std::sqrt(dot(w, w));
            if (len <= 1e-14 * max_diag) {
                // Null space reached; any unit vector orthogonal to the
                // previous components is an eigenvector for eigenvalue 0.
                lambda = 0.0;
                break;
            }
            scale(w, 1.0 / len);
            double diff = 0.0;
            for (std::size_t i = 0; i < dim; ++i) diff = std::max(diff, std::abs(w[i] - v[i]));
            v = std::move(w);
            lambda = len;
            if (diff < kTolerance) break;
        }
        fix_sign(v);
        if (lambda != 0.0) lambda = std::max(0.0, dot(v, multiply(v)));
        model.components.push_back(std::move(v));
        model.eigenvalues.push_back(lambda);
    }
    return model;
}

Dataset pca_2d(const Dataset& d) { return fit_pca(d, 2).project(d); }

}  // namespace qkm::prep
