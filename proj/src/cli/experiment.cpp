#include "qkm/cli/experiment.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qkm/circuits/distance.hpp"
#include "qkm/circuits/interference.hpp"
#include "qkm/circuits/negative_rotation.hpp"
#include "qkm/error.hpp"
#include "qkm/eval/accuracy.hpp"
#include "qkm/prep/builtin.hpp"
#include "qkm/prep/csv.hpp"
#include "qkm/prep/pca.hpp"
#include "qkm/rng.hpp"
#include "qkm/sim/circuit.hpp"

namespace qkm::cli {

using cluster::Method;
using nlohmann::ordered_json;

std::string_view to_string(DatasetKind k) {
    switch (k) {
        case DatasetKind::Random: return "random";
        case DatasetKind::Iris: return "iris";
        case DatasetKind::MnistPca: return "mnist-pca";
        case DatasetKind::Csv: return "csv";
    }
    return "?";
}

DatasetKind parse_dataset(std::string_view name) {
    for (auto k : {DatasetKind::Random, DatasetKind::Iris, DatasetKind::MnistPca, DatasetKind::Csv}) {
        if (to_string(k) == name) return k;
    }
    throw std::invalid_argument("unknown dataset '" + std::string(name) + "' (random, iris, mnist-pca, csv)");
}

void ExperimentConfig::validate() const {
    if (k < 2) throw std::invalid_argument("--k must be at least 2");
    if (repeats < 1) throw std::invalid_argument("--repeats must be at least 1");
    if (dataset == DatasetKind::Csv && !csv) throw std::invalid_argument("--dataset csv needs --csv PATH");
    if (features && (dataset == DatasetKind::Random || dataset == DatasetKind::MnistPca)) {
        throw std::invalid_argument("--features applies to iris and csv datasets only");
    }
    if (features && features->empty()) throw std::invalid_argument("--features is empty");
    if (digits.empty()) throw std::invalid_argument("--digits is empty");
    if (random_size < 2) throw std::invalid_argument("random dataset needs at least 2 vectors");
}

prep::Dataset prepare_dataset(const ExperimentConfig& cfg) {
    prep::Dataset d;
    switch (cfg.dataset) {
        case DatasetKind::Random:
            return prep::normalize(prep::generate_random_dataset(cfg.random_size, 2, cfg.seed));
        case DatasetKind::Iris: {
            d = prep::load_iris();
            const std::vector<std::size_t> cols = cfg.features.value_or(std::vector<std::size_t>{0, 1});
            for (std::size_t c : cols) {
                if (c >= d.dims()) throw std::invalid_argument("feature " + std::to_string(c) + " out of range");
            }
            d = prep::select_features(std::move(d), cols);
            break;
        }
        case DatasetKind::MnistPca: {
            d = prep::load_mnist(cfg.csv.value_or(prep::default_mnist_path()));
            d = prep::filter_mnist_digits(prep::pca_2d(d), cfg.digits);
            if (d.empty()) throw DataError("digit filter left no MNIST rows");
            break;
        }
        case DatasetKind::Csv: {
            prep::CsvOptions opts;
            opts.label_column = cfg.label_column;
            d = prep::load_csv(*cfg.csv, opts);
            if (d.empty()) throw DataError("CSV has no data rows");
            if (cfg.features) {
                for (std::size_t c : *cfg.features) {
                    if (c >= d.dims()) throw DataError("feature " + std::to_string(c) + " out of range");
                }
                d = prep::select_features(std::move(d), *cfg.features);
            }
            break;
        }
    }
    return prep::normalize(prep::standardize(std::move(d)));
}

std::uint64_t repeat_seed(std::uint64_t seed, std::size_t repeat) { return derive_seed(seed, {repeat}); }

namespace {

std::vector<double> unit(prep::PolarAngle a) { return {std::cos(a.value()), std::sin(a.value())}; }

int elementary_depth(const sim::Circuit& c) { return sim::depth(sim::decompose_to_elementary(c)); }

ordered_json config_json(const ExperimentConfig& c) {
    ordered_json j;
    j["method"] = std::string(cluster::to_string(c.method));
    j["dataset"] = std::string(to_string(c.dataset));
    j["csv"] = c.csv ? ordered_json(c.csv->generic_string()) : ordered_json(nullptr);
    j["label_column"] = c.label_column ? ordered_json(*c.label_column) : ordered_json(nullptr);
    j["features"] = c.features ? ordered_json(*c.features) : ordered_json(nullptr);
    j["k"] = c.k;
    j["seed"] = c.seed;
    j["shots"] = c.shots.is_exact() ? ordered_json("exact") : ordered_json(*c.shots.shots());
    j["repeats"] = c.repeats;
    j["max_iters"] = c.max_iters;
    j["renormalize_centroids"] = c.renormalize_centroids.value_or(cluster::is_angle_based(c.method));
    j["digits"] = std::vector<int>(c.digits.begin(), c.digits.end());
    return j;
}

struct Stats {
    double mean = 0.0;
    double stddev = 0.0;
    double min = 0.0;
    double max = 0.0;
};

Stats stats(const std::vector<double>& v) {
    Stats s;
    s.min = s.max = v.front();
    for (double x : v) {
        s.mean += x;
        s.min = std::min(s.min, x);
        s.max = std::max(s.max, x);
    }
    s.mean /= static_cast<double>(v.size());
    for (double x : v) s.stddev += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(s.stddev / static_cast<double>(v.size()));
    return s;
}

}  // namespace

std::optional<int> method_depth(Method m, prep::PolarAngle t, prep::PolarAngle c1, prep::PolarAngle c2) {
    const circuits::InterferenceInputs in{t, c1, c2};
    switch (m) {
        case Method::Classical: return std::nullopt;
        case Method::InterferenceBasic:
            return elementary_depth(circuits::complete_interference(circuits::build_basic_interference_circuit(in)));
        case Method::InterferenceOptimized:
            return elementary_depth(circuits::complete_interference(circuits::build_optimized_interference_circuit(in)));
        case Method::NegativeRotations: {
            const prep::PolarAngle cs[] = {c1, c2};
            return elementary_depth(circuits::build_negative_rotation_circuit(t, cs));
        }
        case Method::Destructive:
            return elementary_depth(circuits::build_destructive_distance_circuit(unit(t), unit(c1)).circuit);
        case Method::SwapTest:
            return elementary_depth(circuits::build_swaptest_circuit(unit(t), unit(c1)).circuit);
    }
    return std::nullopt;
}

std::optional<int> method_depth(Method m) {
    return method_depth(m, prep::PolarAngle::degrees(45), prep::PolarAngle::degrees(0),
                        prep::PolarAngle::degrees(180));
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    ExperimentResult res;
    res.dataset = prepare_dataset(cfg);
    const prep::Dataset& d = res.dataset;
    if (cfg.k > d.size()) throw std::invalid_argument("--k exceeds the number of vectors");
    const bool labelled = d.labels.has_value();

    ordered_json report;
    report["schema_version"] = std::string(kReportSchemaVersion);
    report["config"] = config_json(cfg);
    ordered_json dj;
    dj["name"] = std::string(to_string(cfg.dataset));
    dj["rows"] = d.size();
    dj["dims"] = d.dims();
    dj["labelled"] = labelled;
    dj["standardized"] = d.standardized;
    dj["normalized"] = d.normalized;
    dj["warnings"] = d.warnings;
    report["dataset"] = dj;
    const auto depth = method_depth(cfg.method);
    report["circuit_depth"] = depth ? ordered_json(*depth) : ordered_json(nullptr);

    std::vector<double> scores;
    std::size_t converged = 0;
    ordered_json repeats = ordered_json::array();
    for (std::size_t r = 0; r < cfg.repeats; ++r) {
        cluster::KMeansOptions opts;
        opts.method = cfg.method;
        opts.seed = repeat_seed(cfg.seed, r);
        opts.shots = cfg.shots;
        opts.max_iters = cfg.max_iters;
        opts.renormalize = cfg.renormalize_centroids;
        cluster::KMeansTrace trace = cluster::kmeans(d, cfg.k, opts);
        const std::vector<int> pred = eval::as_labels(trace.final_assignment());

        ordered_json rj;
        rj["repeat"] = r;
        rj["seed"] = opts.seed;
        rj["converged"] = trace.converged;
        rj["iterations"] = trace.iterations;
        double score = 0.0;
        if (labelled) {
            const eval::AccuracyReport acc = eval::accuracy(pred, *d.labels);
            score = acc.accuracy;
            rj["accuracy"] = score;
            ordered_json mapping = ordered_json::object();
            for (const auto& [cluster_id, label] : acc.mapping) {
                mapping[std::to_string(cluster_id)] = label ? ordered_json(*label) : ordered_json(nullptr);
            }
            rj["label_mapping"] = mapping;
        } else {
            std::vector<int> reference = pred;
            if (!cfg.shots.is_exact()) {
                cluster::KMeansOptions exact = opts;
                exact.shots = sim::ShotMode::exact();
                reference = eval::as_labels(cluster::kmeans(d, cfg.k, exact).final_assignment());
            }
            score = eval::agreement(pred, reference);
            rj["agreement_vs_exact"] = score;
        }
        rj["final_centroids"] = trace.final_centroids().centroids;
        ordered_json steps = ordered_json::array();
        for (const auto& step : trace.steps) steps.push_back(step.assignment);
        rj["assignments"] = steps;
        repeats.push_back(std::move(rj));

        if (scores.empty() || score > scores[res.best_repeat]) res.best_repeat = r;
        scores.push_back(score);
        converged += trace.converged ? 1 : 0;
        res.traces.push_back(std::move(trace));
    }
    report["repeats"] = std::move(repeats);

    const Stats s = stats(scores);
    ordered_json sj;
    const std::string key = labelled ? "accuracy" : "agreement";
    sj[key + "_mean"] = s.mean;
    sj[key + "_stddev"] = s.stddev;
    sj[key + "_min"] = s.min;
    sj[key + "_max"] = s.max;
    sj["best_repeat"] = res.best_repeat;
    sj["converged_repeats"] = converged;
    report["summary"] = sj;
    if (cfg.out) {
        ordered_json oj;
        oj["points_csv"] = points_path(*cfg.out).filename().generic_string();
        report["outputs"] = oj;
    }
    res.report = std::move(report);
    return res;
}

std::string points_csv(const ExperimentResult& r) {
    std::ostringstream out;
    out.precision(17);
    out << "x,y,cluster,label\n";
    const prep::Dataset& d = r.dataset;
    const cluster::Assignment& a = r.traces.at(r.best_repeat).final_assignment();
    for (std::size_t i = 0; i < d.size(); ++i) {
        out << d.vectors[i][0] << ',' << (d.dims() > 1 ? d.vectors[i][1] : 0.0) << ',' << a[i] << ',';
        if (d.labels) out << (*d.labels)[i];
        out << '\n';
    }
    return out.str();
}

std::filesystem::path points_path(const std::filesystem::path& report_path) {
    std::filesystem::path p = report_path;
    if (p.extension() == ".json") p.replace_extension();
    p += ".points.csv";
    return p;
}

prep::PolarAngle parse_angle(std::string_view text) {
    bool degrees = false;
    if (text.size() > 3 && text.substr(text.size() - 3) == "deg") {
        degrees = true;
        text.remove_suffix(3);
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw std::invalid_argument("bad angle '" + std::string(text) + "' (radians, or degrees with 'deg')");
    }
    return degrees ? prep::PolarAngle::degrees(value) : prep::PolarAngle::radians(value);
}

int DepthReport::depth_of(Method m) const {
    for (const auto& row : rows) {
        if (row.method == m) return row.depth;
    }
    throw std::invalid_argument("method has no circuit depth");
}

DepthReport depth_report(prep::PolarAngle t, prep::PolarAngle c1, prep::PolarAngle c2) {
    DepthReport r;
    for (Method m : {Method::InterferenceBasic, Method::InterferenceOptimized, Method::Destructive, Method::SwapTest,
                     Method::NegativeRotations}) {
        r.rows.push_back({m, *method_depth(m, t, c1, c2)});
    }
    const int basic = r.depth_of(Method::InterferenceBasic);
    const int optimized = r.depth_of(Method::InterferenceOptimized);
    const int destructive = r.depth_of(Method::Destructive);
    const int negative = r.depth_of(Method::NegativeRotations);
    r.basic_gt_optimized = basic > optimized;
    r.optimized_gt_destructive = optimized > destructive;
    r.destructive_gt_negative = destructive > negative;
    r.negative_is_two = negative == 2;
    return r;
}

std::string format_depth_report(const DepthReport& r) {
    std::ostringstream out;
    out << "method                  depth\n";
    for (const auto& row : r.rows) {
        std::string name(cluster::to_string(row.method));
        name.resize(24, ' ');
        out << name << row.depth << '\n';
    }
    auto mark = [](bool ok) { return ok ? "PASS" : "FAIL"; };
    out << "basic > optimized        " << mark(r.basic_gt_optimized) << '\n';
    out << "optimized > destructive  " << mark(r.optimized_gt_destructive) << '\n';
    out << "destructive > negative   " << mark(r.destructive_gt_negative) << '\n';
    out << "negative == 2            " << mark(r.negative_is_two) << '\n';
    return out.str();
}

}  // namespace qkm::cli
