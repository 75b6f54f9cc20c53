#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qkm/prep/dataset.hpp"
#include "qkm/sim/measurement.hpp"

namespace qkm::cluster {

using prep::Dataset;
using prep::FeatureVector;

struct CentroidSet {
    std::vector<FeatureVector> centroids;

    std::size_t k() const noexcept { return centroids.size(); }
    bool operator==(const CentroidSet&) const = default;
};

/// cluster_of[i] is the centroid index of vector i.
using Assignment = std::vector<std::size_t>;

/// Pending centroid indices of one elimination tournament. Two indices are
/// taken from the front, the winner goes to the back.
class WinQueue {
  public:
    /// 0, 1, ..., k-1. Throws std::invalid_argument for k == 0.
    explicit WinQueue(std::size_t k);
    /// A caller-chosen initial order.
    explicit WinQueue(std::vector<std::size_t> order);

    std::size_t size() const noexcept { return pending_.size() - head_; }
    bool done() const noexcept { return size() == 1; }
    std::pair<std::size_t, std::size_t> pop_pair();
    void push(std::size_t winner);
    std::size_t winner() const;

  private:
    std::vector<std::size_t> pending_;
    std::size_t head_ = 0;
};

/// Returns true when centroid `i` beats centroid `j` for test vector `t`.
using BinaryComparator =
    std::function<bool(const FeatureVector& t, const CentroidSet& centroids, std::size_t i, std::size_t j)>;

/// Pairwise elimination until one centroid is left; K - 1 comparator calls.
std::size_t tournament_nearest(const FeatureVector& t, const CentroidSet& centroids, const BinaryComparator& better,
                               std::optional<std::vector<std::size_t>> order = std::nullopt);

/// Nearest centroid of vector `index`.
using NearestOracle = std::function<std::size_t(std::size_t index, const FeatureVector& t, const CentroidSet& c)>;

/// k distinct rows chosen uniformly without replacement (partial
/// Fisher-Yates on the row indices). Throws std::invalid_argument for k < 2
/// or k above the dataset size.
CentroidSet init_centroids(const Dataset& d, std::size_t k, std::uint64_t seed);

Assignment assign_all(const Dataset& d, const CentroidSet& centroids, const NearestOracle& nearest);

/// Cluster means. An empty cluster keeps `previous.centroids[j]`; with
/// `renormalize` every centroid is scaled to unit norm (a zero mean keeps the
/// previous centroid).
CentroidSet recompute_centroids(const Dataset& d, const Assignment& a, const CentroidSet& previous,
                                bool renormalize);

/// Sum over vectors of the squared distance to their centroid.
double within_cluster_ss(const Dataset& d, const Assignment& a, const CentroidSet& centroids);

enum class Method { InterferenceBasic, InterferenceOptimized, NegativeRotations, Destructive, SwapTest, Classical };

std::string_view to_string(Method m);
/// Accepts the names printed by to_string(). Throws std::invalid_argument.
Method parse_method(std::string_view name);
/// Interference and negative-rotation methods work on polar angles only.
bool is_angle_based(Method m);
bool uses_circuits(Method m);

struct KMeansOptions {
    Method method = Method::Classical;
    std::uint64_t seed = 0;
    sim::ShotMode shots = sim::ShotMode::exact();
    std::size_t max_iters = 100;
    /// Defaults to is_angle_based(method).
    std::optional<bool> renormalize;
};

struct KMeansStep {
    CentroidSet centroids;
    Assignment assignment;
};

/// steps[0] is the initial assignment to the seeded centroids; each later
/// step recomputes the centroids and reassigns.
struct KMeansTrace {
    std::vector<KMeansStep> steps;
    bool converged = false;
    std::size_t iterations = 0;

    const Assignment& final_assignment() const { return steps.back().assignment; }
    const CentroidSet& final_centroids() const { return steps.back().centroids; }
};

/// Nearest-centroid rule of a method. Sampled circuits use the sub-seed
/// derive_seed(seed, {iteration, vector, i * K + j}) per execution (j = 0
/// for single-register methods).
NearestOracle make_nearest_oracle(Method method, sim::ShotMode shots, std::uint64_t seed, std::size_t iteration);

/// Lloyd iterations until the assignment stops changing or `max_iters`
/// recompute steps have run. Throws std::invalid_argument for a bad k and
/// qkm::DataError when the data does not suit the method (angle-based
/// methods need 2-D unit-norm rows, the distance circuits 2-D rows).
KMeansTrace kmeans(const Dataset& d, std::size_t k, const KMeansOptions& options);

}  // namespace qkm::cluster
