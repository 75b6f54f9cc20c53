#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qkm/cluster/kmeans.hpp"
#include "qkm/prep/dataset.hpp"
#include "qkm/prep/polar.hpp"
#include "qkm/sim/measurement.hpp"

namespace qkm::cli {

inline constexpr std::string_view kReportSchemaVersion = "1.0.0";

enum class DatasetKind { Random, Iris, MnistPca, Csv };

std::string_view to_string(DatasetKind k);
DatasetKind parse_dataset(std::string_view name);

struct ExperimentConfig {
    cluster::Method method = cluster::Method::Classical;
    DatasetKind dataset = DatasetKind::Iris;
    std::optional<std::filesystem::path> csv;  // required for csv, optional MNIST override
    std::optional<std::string> label_column;
    std::optional<std::vector<std::size_t>> features;  // iris and csv only
    std::size_t k = 2;
    std::uint64_t seed = 0;
    sim::ShotMode shots = sim::ShotMode::exact();
    std::size_t repeats = 10;
    std::size_t max_iters = 100;
    std::optional<bool> renormalize_centroids;
    std::optional<std::filesystem::path> out;
    std::set<int> digits{0, 3, 4, 7};
    std::size_t random_size = 100;

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;
};

/// The dataset after the standard preprocessing:
///   random     100 standard-normal 2-D points (seeded by `seed`), standardized, normalized
///   iris       features (default 0,1), standardized, normalized
///   mnist-pca  PCA to 2-D on every image, digit filter, standardized, normalized
///   csv        optional feature selection, standardized, normalized
prep::Dataset prepare_dataset(const ExperimentConfig& config);

/// Sub-seed of repeat r.
std::uint64_t repeat_seed(std::uint64_t seed, std::size_t repeat);

/// Elementary depth of the method's circuit on the canonical comparison
/// (test vector at theta_t, centroids at theta_c1 and theta_c2, unit length).
/// Classical has no circuit.
std::optional<int> method_depth(cluster::Method m, prep::PolarAngle theta_t, prep::PolarAngle theta_c1,
                                prep::PolarAngle theta_c2);

/// Canonical input: 45 deg, 0 deg, 180 deg.
std::optional<int> method_depth(cluster::Method m);

struct ExperimentResult {
    nlohmann::ordered_json report;
    prep::Dataset dataset;
    std::vector<cluster::KMeansTrace> traces;
    std::size_t best_repeat = 0;
};

/// Runs kmeans `repeats` times. Labelled datasets report accuracy against
/// the labels; unlabelled ones report agreement with the exact-mode run of
/// the same method and repeat seed.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// x,y,cluster,label rows of the best repeat (label empty when absent).
std::string points_csv(const ExperimentResult& result);

/// `report.json` -> `report.points.csv`.
std::filesystem::path points_path(const std::filesystem::path& report_path);

/// Radians, or degrees with a "deg" suffix ("45deg", "0.5").
/// Throws std::invalid_argument.
prep::PolarAngle parse_angle(std::string_view text);

struct DepthRow {
    cluster::Method method;
    int depth;
};

struct DepthReport {
    std::vector<DepthRow> rows;  // every circuit method
    bool basic_gt_optimized = false;
    bool optimized_gt_destructive = false;
    bool destructive_gt_negative = false;
    bool negative_is_two = false;

    bool ordering_holds() const {
        return basic_gt_optimized && optimized_gt_destructive && destructive_gt_negative && negative_is_two;
    }
    int depth_of(cluster::Method m) const;
};

DepthReport depth_report(prep::PolarAngle theta_t, prep::PolarAngle theta_c1, prep::PolarAngle theta_c2);

std::string format_depth_report(const DepthReport& r);

}  // namespace qkm::cli
