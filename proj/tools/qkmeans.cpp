// qkmeans: quantum k-means experiments on a statevector simulator.
//
//   qkmeans run --method destructive --dataset iris --k 3 --seed 7 --out r.json
//   qkmeans depth [--theta-t 45deg --theta-c1 0deg --theta-c2 180deg]
//   qkmeans pca --csv mnist.csv --label-column 0 --out mnist_2d.csv
//   qkmeans compare --datasets iris,random --out table
//
// Exit codes: 0 success, 1 configuration error, 2 data error.

#include <charconv>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qkm/cli/experiment.hpp"
#include "qkm/error.hpp"
#include "qkm/eval/table.hpp"
#include "qkm/prep/csv.hpp"
#include "qkm/prep/pca.hpp"

namespace {

using namespace qkm;

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const std::size_t comma = s.find(',', start);
        const std::string part = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!part.empty()) out.push_back(part);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

template <typename Int>
Int parse_int(const std::string& s, const char* what) {
    Int v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
        throw std::invalid_argument(std::string("bad ") + what + " '" + s + "'");
    }
    return v;
}

sim::ShotMode parse_shots(const std::string& s) {
    if (s == "exact") return sim::ShotMode::exact();
    const auto n = parse_int<std::uint64_t>(s, "--shots");
    if (n == 0) throw std::invalid_argument("--shots must be positive or 'exact'");
    return sim::ShotMode::sampled(n);
}

bool parse_bool(const std::string& s) {
    if (s == "true") return true;
    if (s == "false") return false;
    throw std::invalid_argument("--renormalize-centroids takes true or false");
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out << text;
    if (!out) throw DataError("failed writing " + path.string());
}

struct RunArgs {
    std::string method = "classical";
    std::string dataset = "iris";
    std::string csv;
    std::string label_column;
    std::string features;
    std::size_t k = 2;
    std::uint64_t seed = 0;
    std::string shots = "exact";
    std::size_t repeats = 10;
    std::size_t max_iters = 100;
    std::string renormalize;
    std::string out;
    std::string digits = "0,3,4,7";
};

void add_run_options(CLI::App* app, RunArgs& a, bool with_method) {
    if (with_method) {
        app->add_option("--method", a.method,
                        "interference-basic | interference-optimized | negative-rotations | destructive | swaptest | "
                        "classical")
            ->capture_default_str();
        app->add_option("--dataset", a.dataset, "random | iris | mnist-pca | csv")->capture_default_str();
        app->add_option("--k", a.k, "number of clusters")->capture_default_str();
    }
    app->add_option("--csv", a.csv, "CSV file for --dataset csv, or an MNIST CSV for mnist-pca");
    app->add_option("--label-column", a.label_column, "label column of --csv: index or header name");
    app->add_option("--features", a.features, "comma-separated feature columns (iris, csv)");
    app->add_option("--seed", a.seed, "run seed")->capture_default_str();
    app->add_option("--shots", a.shots, "shots per circuit or 'exact'")->capture_default_str();
    app->add_option("--repeats", a.repeats, "seeded repeats")->capture_default_str();
    app->add_option("--max-iters", a.max_iters, "maximum Lloyd iterations")->capture_default_str();
    app->add_option("--renormalize-centroids", a.renormalize, "true | false (default: true for angle-based methods)");
    app->add_option("--out", a.out, "output path");
    app->add_option("--digits", a.digits, "MNIST digits kept")->capture_default_str();
}

cli::ExperimentConfig to_config(const RunArgs& a) {
    cli::ExperimentConfig c;
    c.method = cluster::parse_method(a.method);
    c.dataset = cli::parse_dataset(a.dataset);
    if (!a.csv.empty()) c.csv = a.csv;
    if (!a.label_column.empty()) c.label_column = a.label_column;
    if (!a.features.empty()) {
        std::vector<std::size_t> f;
        for (const auto& s : split(a.features)) f.push_back(parse_int<std::size_t>(s, "--features entry"));
        c.features = f;
    }
    c.k = a.k;
    c.seed = a.seed;
    c.shots = parse_shots(a.shots);
    c.repeats = a.repeats;
    c.max_iters = a.max_iters;
    if (!a.renormalize.empty()) c.renormalize_centroids = parse_bool(a.renormalize);
    if (!a.out.empty()) c.out = a.out;
    c.digits.clear();
    for (const auto& s : split(a.digits)) c.digits.insert(parse_int<int>(s, "--digits entry"));
    c.validate();
    return c;
}

int cmd_run(const RunArgs& a) {
    const cli::ExperimentConfig cfg = to_config(a);
    const cli::ExperimentResult r = cli::run_experiment(cfg);
    const std::string json = r.report.dump(2) + "\n";
    if (cfg.out) {
        write_file(*cfg.out, json);
        write_file(cli::points_path(*cfg.out), cli::points_csv(r));
    } else {
        std::cout << json;
    }
    return 0;
}

int cmd_depth(const std::string& t, const std::string& c1, const std::string& c2) {
    const cli::DepthReport r = cli::depth_report(cli::parse_angle(t), cli::parse_angle(c1), cli::parse_angle(c2));
    std::cout << cli::format_depth_report(r);
    return 0;
}

int cmd_pca(const std::string& in, const std::string& label, std::size_t components, const std::string& out) {
    if (label.empty()) throw std::invalid_argument("pca needs --label-column");
    prep::CsvOptions opts;
    opts.label_column = label;
    const prep::Dataset d = prep::load_csv(in, opts);
    const prep::Dataset reduced = prep::fit_pca(d, components).project(d);
    const std::string text = prep::to_csv(reduced);
    if (out.empty()) {
        std::cout << text;
    } else {
        write_file(out, text);
    }
    return 0;
}

std::size_t default_k(cli::DatasetKind d) {
    switch (d) {
        case cli::DatasetKind::Iris: return 3;
        case cli::DatasetKind::MnistPca: return 4;
        default: return 2;
    }
}

int cmd_compare(RunArgs a, const std::string& methods, const std::string& datasets, bool k_given) {
    std::vector<eval::MethodResult> results;
    const std::string out = a.out;
    a.out.clear();
    for (const auto& ds : split(datasets)) {
        for (const auto& m : split(methods)) {
            a.method = m;
            a.dataset = ds;
            cli::ExperimentConfig cfg = to_config(a);
            if (!k_given) cfg.k = default_k(cfg.dataset);
            const cli::ExperimentResult r = cli::run_experiment(cfg);
            const auto& s = r.report["summary"];
            const double score = r.dataset.labels ? s["accuracy_mean"].get<double>() : s["agreement_mean"].get<double>();
            results.push_back({m, ds, score, cli::method_depth(cfg.method)});
        }
    }
    const eval::ComparisonTable table = eval::method_comparison_table(results);
    if (out.empty()) {
        std::cout << eval::to_csv(table);
    } else {
        write_file(out + ".csv", eval::to_csv(table));
        write_file(out + ".json", eval::to_json(table) + "\n");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum k-means on a statevector simulator"};
    app.require_subcommand(1);

    RunArgs run_args;
    CLI::App* run = app.add_subcommand("run", "cluster a dataset and write a JSON report");
    add_run_options(run, run_args, true);

    std::string theta_t = "45deg";
    std::string theta_c1 = "0deg";
    std::string theta_c2 = "180deg";
    CLI::App* depth = app.add_subcommand("depth", "elementary circuit depth of every method");
    depth->add_option("--theta-t", theta_t, "test vector angle")->capture_default_str();
    depth->add_option("--theta-c1", theta_c1, "centroid 1 angle")->capture_default_str();
    depth->add_option("--theta-c2", theta_c2, "centroid 2 angle")->capture_default_str();

    std::string pca_in;
    std::string pca_label;
    std::size_t pca_components = 2;
    std::string pca_out;
    CLI::App* pca = app.add_subcommand("pca", "project a labelled CSV onto its principal components");
    pca->add_option("--csv", pca_in, "input CSV")->required();
    pca->add_option("--label-column", pca_label, "label column: index or header name");
    pca->add_option("--components", pca_components, "number of components")->capture_default_str();
    pca->add_option("--out", pca_out, "output CSV (default: stdout)");

    RunArgs cmp_args;
    std::string cmp_methods =
        "interference-basic,interference-optimized,negative-rotations,destructive,swaptest,classical";
    std::string cmp_datasets = "iris,random";
    CLI::App* compare = app.add_subcommand("compare", "accuracy and depth table across methods and datasets");
    add_run_options(compare, cmp_args, false);
    compare->add_option("--methods", cmp_methods, "comma-separated methods")->capture_default_str();
    compare->add_option("--datasets", cmp_datasets, "comma-separated datasets")->capture_default_str();
    CLI::Option* cmp_k = compare->add_option("--k", cmp_args.k, "clusters (default: 3 iris, 4 mnist-pca, 2 otherwise)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*run) return cmd_run(run_args);
        if (*depth) return cmd_depth(theta_t, theta_c1, theta_c2);
        if (*pca) return cmd_pca(pca_in, pca_label, pca_components, pca_out);
        if (*compare) return cmd_compare(cmp_args, cmp_methods, cmp_datasets, cmp_k->count() > 0);
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 2;
    } catch (const DegenerateConfiguration& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
