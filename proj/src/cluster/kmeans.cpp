#include "qkm/cluster/kmeans.hpp"

#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qkm/circuits/distance.hpp"
#include "qkm/circuits/interference.hpp"
#include "qkm/circuits/negative_rotation.hpp"
#include "qkm/error.hpp"
#include "qkm/prep/polar.hpp"
#include "qkm/rng.hpp"

namespace qkm::cluster {

WinQueue::WinQueue(std::size_t k) : pending_(k) {
    if (k == 0) throw std::invalid_argument("tournament needs at least one centroid");
    std::iota(pending_.begin(), pending_.end(), std::size_t{0});
}

WinQueue::WinQueue(std::vector<std::size_t> order) : pending_(std::move(order)) {
    if (pending_.empty()) throw std::invalid_argument("tournament needs at least one centroid");
}

std::pair<std::size_t, std::size_t> WinQueue::pop_pair() {
    if (size() < 2) throw std::logic_error("tournament already decided");
    const std::size_t a = pending_[head_];
    const std::size_t b = pending_[head_ + 1];
    head_ += 2;
    return {a, b};
}

void WinQueue::push(std::size_t winner) { pending_.push_back(winner); }

std::size_t WinQueue::winner() const {
    if (!done()) throw std::logic_error("tournament not finished");
    return pending_[head_];
}

std::size_t tournament_nearest(const FeatureVector& t, const CentroidSet& centroids, const BinaryComparator& better,
                               std::optional<std::vector<std::size_t>> order) {
    WinQueue queue = order ? WinQueue(std::move(*order)) : WinQueue(centroids.k());
    while (!queue.done()) {
        const auto [i, j] = queue.pop_pair();
        queue.push(better(t, centroids, i, j) ? i : j);
    }
    return queue.winner();
}

CentroidSet init_centroids(const Dataset& d, std::size_t k, std::uint64_t seed) {
    if (k < 2) throw std::invalid_argument("k must be at least 2");
    if (k > d.size()) throw std::invalid_argument("k exceeds the number of vectors");
    std::vector<std::size_t> idx(d.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    Rng rng(seed);
    CentroidSet out;
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.uniform_index(idx.size() - i));
        std::swap(idx[i], idx[j]);
        out.centroids.push_back(d.vectors[idx[i]]);
    }
    return out;
}

Assignment assign_all(const Dataset& d, const CentroidSet& centroids, const NearestOracle& nearest) {
    Assignment a(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) a[i] = nearest(i, d.vectors[i], centroids);
    return a;
}

CentroidSet recompute_centroids(const Dataset& d, const Assignment& a, const CentroidSet& previous,
                                bool renormalize) {
    if (a.size() != d.size()) throw std::invalid_argument("assignment length does not match dataset");
    const std::size_t k = previous.k();
    const std::size_t dims = d.dims();
    std::vector<FeatureVector> sums(k, FeatureVector(dims, 0.0));
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (a[i] >= k) throw std::invalid_argument("assignment refers to a missing centroid");
        for (std::size_t j = 0; j < dims; ++j) sums[a[i]][j] += d.vectors[i][j];
        ++counts[a[i]];
    }
    CentroidSet out;
    for (std::size_t c = 0; c < k; ++c) {
        if (counts[c] == 0) {
            out.centroids.push_back(previous.centroids[c]);
            continue;
        }
        FeatureVector m = std::move(sums[c]);
        for (double& x : m) x /= static_cast<double>(counts[c]);
        if (renormalize) {
            double sq = 0.0;
            for (double x : m) sq += x * x;
            if (sq == 0.0) {
                out.centroids.push_back(previous.centroids[c]);
                continue;
            }
            const double n = std::sqrt(sq);
            for (double& x : m) x /= n;
        }
        out.centroids.push_back(std::move(m));
    }
    return out;
}

double within_cluster_ss(const Dataset& d, const Assignment& a, const CentroidSet& centroids) {
    double s = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const auto& v = d.vectors[i];
        const auto& c = centroids.centroids.at(a.at(i));
        for (std::size_t j = 0; j < v.size(); ++j) s += (v[j] - c[j]) * (v[j] - c[j]);
    }
    return s;
}

namespace {

constexpr std::array<std::pair<Method, std::string_view>, 6> kMethodNames{{
    {Method::InterferenceBasic, "interference-basic"},
    {Method::InterferenceOptimized, "interference-optimized"},
    {Method::NegativeRotations, "negative-rotations"},
    {Method::Destructive, "destructive"},
    {Method::SwapTest, "swaptest"},
    {Method::Classical, "classical"},
}};

prep::PolarAngle polar_of(const FeatureVector& v) {
    if (v.size() != 2 || (v[0] == 0.0 && v[1] == 0.0)) {
        throw DataError("angle-based methods need nonzero 2-D vectors and centroids");
    }
    return prep::to_polar(v);
}

template <typename Distance>
std::size_t argmin_distance(const FeatureVector& t, const CentroidSet& c, Distance dist) {
    std::size_t best = 0;
    double best_d = dist(t, c.centroids[0], 0);
    for (std::size_t j = 1; j < c.k(); ++j) {
        const double dj = dist(t, c.centroids[j], j);
        if (dj < best_d) {
            best = j;
            best_d = dj;
        }
    }
    return best;
}

}  // namespace

std::string_view to_string(Method m) {
    for (const auto& [method, name] : kMethodNames) {
        if (method == m) return name;
    }
    throw std::invalid_argument("unknown method");
}

Method parse_method(std::string_view name) {
    for (const auto& [method, n] : kMethodNames) {
        if (n == name) return method;
    }
    throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

bool is_angle_based(Method m) {
    return m == Method::InterferenceBasic || m == Method::InterferenceOptimized || m == Method::NegativeRotations;
}

bool uses_circuits(Method m) { return m != Method::Classical; }

NearestOracle make_nearest_oracle(Method method, sim::ShotMode shots, std::uint64_t seed, std::size_t iteration) {
    switch (method) {
        case Method::Classical:
            return [](std::size_t, const FeatureVector& t, const CentroidSet& c) {
                return argmin_distance(t, c, [](const FeatureVector& a, const FeatureVector& b, std::size_t) {
                    return circuits::euclidean_distance(a, b);
                });
            };
        case Method::Destructive:
        case Method::SwapTest:
            return [=](std::size_t index, const FeatureVector& t, const CentroidSet& c) {
                return argmin_distance(t, c, [&](const FeatureVector& a, const FeatureVector& b, std::size_t j) {
                    const std::uint64_t s = derive_seed(seed, {iteration, index, j * c.k()});
                    return method == Method::Destructive ? circuits::destructive_distance(a, b, shots, s).distance
                                                         : circuits::swaptest_distance(a, b, shots, s);
                });
            };
        case Method::NegativeRotations:
            return [=](std::size_t index, const FeatureVector& t, const CentroidSet& c) {
                std::vector<prep::PolarAngle> angles;
                angles.reserve(c.k());
                for (const auto& centroid : c.centroids) angles.push_back(polar_of(centroid));
                return circuits::nearest_by_negative_rotation(polar_of(t), angles, shots,
                                                              derive_seed(seed, {iteration, index, 0}));
            };
        case Method::InterferenceBasic:
        case Method::InterferenceOptimized: {
            const auto variant = method == Method::InterferenceBasic ? circuits::InterferenceVariant::Basic
                                                                      : circuits::InterferenceVariant::Optimized;
            return [=](std::size_t index, const FeatureVector& t, const CentroidSet& c) {
                const BinaryComparator better = [&](const FeatureVector& v, const CentroidSet& cs, std::size_t i,
                                                    std::size_t j) {
                    const circuits::InterferenceInputs in{polar_of(v), polar_of(cs.centroids[i]),
                                                          polar_of(cs.centroids[j])};
                    const std::uint64_t s = derive_seed(seed, {iteration, index, i * cs.k() + j});
                    return circuits::interference_decision(in, variant, shots, s) ==
                           circuits::BinaryWinner::Centroid1;
                };
                return tournament_nearest(t, c, better);
            };
        }
    }
    throw std::invalid_argument("unknown method");
}

KMeansTrace kmeans(const Dataset& d, std::size_t k, const KMeansOptions& options) {
    if (d.empty()) throw DataError("k-means on an empty dataset");
    d.check();
    const Method m = options.method;
    if (m != Method::Classical && d.dims() != 2) {
        throw DataError(std::string(to_string(m)) + " needs 2-D vectors, got " + std::to_string(d.dims()));
    }
    if (is_angle_based(m) && !prep::is_unit_norm(d)) {
        throw DataError(std::string(to_string(m)) + " needs unit-norm vectors; normalize the dataset first");
    }
    const bool renormalize = options.renormalize.value_or(is_angle_based(m));

    KMeansTrace trace;
    CentroidSet centroids = init_centroids(d, k, options.seed);
    Assignment assignment = assign_all(d, centroids, make_nearest_oracle(m, options.shots, options.seed, 0));
    trace.steps.push_back({centroids, assignment});
    for (std::size_t it = 1; it <= options.max_iters; ++it) {
        centroids = recompute_centroids(d, assignment, centroids, renormalize);
        Assignment next = assign_all(d, centroids, make_nearest_oracle(m, options.shots, options.seed, it));
        trace.iterations = it;
        const bool same = next == assignment;
        trace.steps.push_back({centroids, next});
        assignment = std::move(next);
        if (same) {
            trace.converged = true;
            break;
        }
    }
    return trace;
}

}  // namespace qkm::cluster
