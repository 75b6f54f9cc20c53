#include <gtest/gtest.h>
#include <zlib.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>

#include "qkm/error.hpp"
#include "qkm/prep/builtin.hpp"
#include "qkm/prep/csv.hpp"
#include "qkm/prep/dataset.hpp"
#include "qkm/prep/pca.hpp"
#include "qkm/prep/polar.hpp"
#include "qkm/rng.hpp"

using namespace qkm;
using namespace qkm::prep;

namespace {

Dataset make(std::vector<FeatureVector> v) {
    Dataset d;
    d.vectors = std::move(v);
    return d;
}

double column_mean(const Dataset& d, std::size_t j) {
    double s = 0;
    for (const auto& v : d.vectors) s += v[j];
    return s / static_cast<double>(d.size());
}

double column_var(const Dataset& d, std::size_t j) {
    const double m = column_mean(d, j);
    double s = 0;
    for (const auto& v : d.vectors) s += (v[j] - m) * (v[j] - m);
    return s / static_cast<double>(d.size());
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("qkm_test_" + std::to_string(::getpid()) + "_" + name);
}

// Eigenvalues of a symmetric 3x3 matrix from its characteristic polynomial
// det(A - x I) = -x^3 + c2 x^2 - c1 x + c0, solved with the trigonometric
// form of the cubic.
std::array<double, 3> cubic_eigenvalues(const std::array<std::array<double, 3>, 3>& a) {
    const double c2 = a[0][0] + a[1][1] + a[2][2];
    const double c1 = a[0][0] * a[1][1] + a[0][0] * a[2][2] + a[1][1] * a[2][2] - a[0][1] * a[1][0] -
                      a[0][2] * a[2][0] - a[1][2] * a[2][1];
    const double c0 = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                      a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                      a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    // x^3 - c2 x^2 + c1 x - c0 = 0, substitute x = y + c2/3.
    const double p = c1 - c2 * c2 / 3;
    const double q = -2 * c2 * c2 * c2 / 27 + c2 * c1 / 3 - c0;
    const double r = 2 * std::sqrt(-p / 3);
    const double phi = std::acos(std::clamp(3 * q / (p * r), -1.0, 1.0)) / 3;
    std::array<double, 3> x{};
    for (int k = 0; k < 3; ++k) x[static_cast<std::size_t>(k)] = r * std::cos(phi - 2 * std::numbers::pi * k / 3) + c2 / 3;
    std::sort(x.begin(), x.end(), std::greater<>());
    return x;
}

// Unit eigenvector for eigenvalue lambda: cross product of two rows of A - lambda I.
std::array<double, 3> eigenvector(const std::array<std::array<double, 3>, 3>& a, double lambda) {
    std::array<std::array<double, 3>, 3> m = a;
    for (int i = 0; i < 3; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] -= lambda;
    std::array<double, 3> best{};
    double best_n = -1;
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            const auto& u = m[static_cast<std::size_t>(i)];
            const auto& v = m[static_cast<std::size_t>(j)];
            std::array<double, 3> c{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
            const double n = std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]);
            if (n > best_n) {
                best_n = n;
                best = c;
            }
        }
    }
    for (double& x : best) x /= best_n;
    return best;
}

}  // namespace

TEST(Standardize, TwoPointColumn) {
    const Dataset d = standardize(make({{0.0}, {2.0}}));
    EXPECT_NEAR(d.vectors[0][0], -1.0, 1e-12);
    EXPECT_NEAR(d.vectors[1][0], 1.0, 1e-12);
    EXPECT_TRUE(d.standardized);
}

TEST(Standardize, MeanZeroVarianceOneAndIdempotent) {
    Rng rng(1);
    std::vector<FeatureVector> v;
    for (int i = 0; i < 50; ++i) v.push_back({3 + 2 * rng.normal(), -7 + 0.1 * rng.normal(), rng.uniform01()});
    const Dataset once = standardize(make(v));
    for (std::size_t j = 0; j < 3; ++j) {
        EXPECT_NEAR(column_mean(once, j), 0.0, 1e-9);
        EXPECT_NEAR(column_var(once, j), 1.0, 1e-9);
    }
    const Dataset twice = standardize(once);
    for (std::size_t i = 0; i < once.size(); ++i)
        for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(once.vectors[i][j], twice.vectors[i][j], 1e-9);
}

TEST(Standardize, ConstantColumnBecomesZeroWithWarning) {
    const Dataset d = standardize(make({{5.0, 1.0}, {5.0, 2.0}, {5.0, 3.0}}));
    for (const auto& v : d.vectors) EXPECT_EQ(v[0], 0.0);
    ASSERT_EQ(d.warnings.size(), 1U);
    const Dataset r = standardize(make({{0.1, 1.0}, {0.1, 2.0}, {0.1, 3.0}}));
    for (const auto& v : r.vectors) EXPECT_EQ(v[0], 0.0);
    EXPECT_THROW(standardize(make({{1.0}})), std::invalid_argument);
}

TEST(Normalize, Examples) {
    const Dataset d = normalize(make({{3.0, 4.0}, {0.70710678118654752, 0.70710678118654752}}));
    EXPECT_NEAR(d.vectors[0][0], 0.6, 1e-15);
    EXPECT_NEAR(d.vectors[0][1], 0.8, 1e-15);
    EXPECT_NEAR(d.vectors[1][0], 0.70710678118654752, 1e-15);
    EXPECT_TRUE(d.normalized);
    EXPECT_TRUE(is_unit_norm(d));
    EXPECT_NO_THROW(d.check());
}

TEST(Normalize, ZeroVectorNamesRow) {
    try {
        normalize(make({{1.0, 0.0}, {0.0, 0.0}}));
        FAIL() << "expected DataError";
    } catch (const DataError& e) {
        EXPECT_NE(std::string(e.what()).find("row 1"), std::string::npos);
    }
}

TEST(Polar, Examples) {
    EXPECT_NEAR(to_polar(std::vector<double>{1.0, 0.0}).value(), 0.0, 1e-15);
    EXPECT_NEAR(to_polar(std::vector<double>{0.7071, 0.7071}).value(), std::numbers::pi / 4, 1e-12);
    EXPECT_NEAR(to_polar(std::vector<double>{-1.0, 0.0}).value(), std::numbers::pi, 1e-15);
    EXPECT_NEAR(to_polar(std::vector<double>{-1.0, -0.0}).value(), std::numbers::pi, 1e-15);
    EXPECT_THROW(to_polar(std::vector<double>{0.0, 0.0}), std::invalid_argument);
    EXPECT_THROW(to_polar(std::vector<double>{1.0, 0.0, 0.0}), std::invalid_argument);
}

TEST(Polar, ScaleInvariantAfterNormalize) {
    Rng rng(2);
    for (int i = 0; i < 100; ++i) {
        const FeatureVector v{rng.normal() * 10, rng.normal() * 10};
        const Dataset n = normalize(make({v}));
        EXPECT_NEAR(to_polar(n.vectors[0]).value(), to_polar(v).value(), 1e-12);
    }
}

TEST(Polar, WrapsIntoHalfOpenRange) {
    EXPECT_NEAR(PolarAngle::radians(-std::numbers::pi).value(), std::numbers::pi, 1e-15);
    EXPECT_NEAR(PolarAngle::radians(3 * std::numbers::pi).value(), std::numbers::pi, 1e-12);
    EXPECT_NEAR(PolarAngle::degrees(270).value(), -std::numbers::pi / 2, 1e-12);
}

TEST(AngularDifference, Examples) {
    EXPECT_NEAR(angular_difference(0.0, std::numbers::pi), std::numbers::pi, 1e-15);
    EXPECT_NEAR(angular_difference(std::numbers::pi / 4, std::numbers::pi / 4), 0.0, 1e-15);
    EXPECT_NEAR(angular_difference(-3.0, 3.0), 2 * std::numbers::pi - 6, 1e-12);
}

TEST(AngularDifference, AgreesWithNaiveWrapAndIsAMetric) {
    auto naive = [](double a, double b) {
        double d = a - b;
        while (d > std::numbers::pi) d -= 2 * std::numbers::pi;
        while (d < -std::numbers::pi) d += 2 * std::numbers::pi;
        return std::abs(d);
    };
    Rng rng(3);
    for (int i = 0; i < 500; ++i) {
        const double a = (rng.uniform01() - 0.5) * 20;
        const double b = (rng.uniform01() - 0.5) * 20;
        const double c = (rng.uniform01() - 0.5) * 20;
        EXPECT_NEAR(angular_difference(a, b), naive(a, b), 1e-12);
        EXPECT_NEAR(angular_difference(a, b), angular_difference(b, a), 1e-15);
        EXPECT_LE(angular_difference(a, c), angular_difference(a, b) + angular_difference(b, c) + 1e-12);
        EXPECT_GE(angular_difference(a, b), 0.0);
        EXPECT_LE(angular_difference(a, b), std::numbers::pi);
    }
}

TEST(Pca, CollinearPointsAlongDiagonal) {
    const PcaModel m = fit_pca(make({{0, 0}, {1, 1}, {2, 2}, {3, 3}}), 2);
    EXPECT_NEAR(m.components[0][0], 0.70710678118654752, 1e-9);
    EXPECT_NEAR(m.components[0][1], 0.70710678118654752, 1e-9);
    EXPECT_NEAR(m.eigenvalues[1], 0.0, 1e-12);
    EXPECT_NEAR(m.eigenvalues[0], 2.5, 1e-9);
    EXPECT_GT(m.components[1][0], 0.0);
}

TEST(Pca, DiagonalCovarianceKeepsLeadingAxes) {
    std::vector<FeatureVector> v;
    for (int sx : {-1, 1})
        for (int sy : {-1, 1})
            for (int sz : {-1, 1}) v.push_back({2.0 * sx, 1.0 * sy, 0.5 * sz});
    const PcaModel m = fit_pca(make(v), 2);
    EXPECT_NEAR(m.eigenvalues[0], 4.0, 1e-9);
    EXPECT_NEAR(m.eigenvalues[1], 1.0, 1e-9);
    EXPECT_NEAR(m.components[0][0], 1.0, 1e-9);
    EXPECT_NEAR(m.components[1][1], 1.0, 1e-9);
    const Dataset p = pca_2d(make(v));
    for (std::size_t i = 0; i < v.size(); ++i) {
        EXPECT_NEAR(p.vectors[i][0], v[i][0], 1e-9);
        EXPECT_NEAR(p.vectors[i][1], v[i][1], 1e-9);
    }
}

TEST(Pca, MatchesCharacteristicPolynomialOn3D) {
    Rng rng(4);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<FeatureVector> v;
        for (int i = 0; i < 40; ++i) {
            const double a = rng.normal() * 3, b = rng.normal(), c = rng.normal() * 0.3;
            v.push_back({a + 0.5 * b, b - 0.2 * a + c, 0.3 * a + c + 1.0});
        }
        const Dataset d = make(v);
        std::array<std::array<double, 3>, 3> cov{};
        std::array<double, 3> mean{};
        for (const auto& x : v)
            for (std::size_t j = 0; j < 3; ++j) mean[j] += x[j] / 40;
        for (const auto& x : v)
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = 0; j < 3; ++j) cov[i][j] += (x[i] - mean[i]) * (x[j] - mean[j]) / 40;
        const auto ev = cubic_eigenvalues(cov);
        const PcaModel m = fit_pca(d, 3);
        for (std::size_t k = 0; k < 3; ++k) {
            EXPECT_NEAR(m.eigenvalues[k], ev[k], 1e-8 * ev[0]);
            const auto e = eigenvector(cov, ev[k]);
            double dot = 0;
            for (std::size_t j = 0; j < 3; ++j) dot += e[j] * m.components[k][j];
            EXPECT_NEAR(std::abs(dot), 1.0, 1e-8);
        }
        EXPECT_GE(m.eigenvalues[0], m.eigenvalues[1]);
    }
}

TEST(Pca, SignConventionAndOrdering) {
    Rng rng(9);
    std::vector<FeatureVector> v;
    for (int i = 0; i < 30; ++i) v.push_back({rng.normal(), -2 * rng.normal(), rng.normal() * 0.5, rng.normal()});
    const PcaModel m = fit_pca(make(v), 4);
    for (const auto& c : m.components) {
        const auto first = std::find_if(c.begin(), c.end(), [](double x) { return std::abs(x) > 1e-6; });
        EXPECT_GT(*first, 0.0);
    }
    const Dataset p = m.project(make(v));
    EXPECT_GE(column_var(p, 0), column_var(p, 1));
}

TEST(Pca, ReconstructionErrorEqualsDiscardedVariance) {
    Rng rng(12);
    std::vector<FeatureVector> basis(3, FeatureVector(6));
    for (auto& b : basis)
        for (double& x : b) x = rng.normal();
    std::vector<FeatureVector> v;
    for (int i = 0; i < 60; ++i) {
        FeatureVector x(6, 0.0);
        const double w[3] = {3 * rng.normal(), 1.5 * rng.normal(), 0.4 * rng.normal()};
        for (int k = 0; k < 3; ++k)
            for (std::size_t j = 0; j < 6; ++j) x[j] += w[k] * basis[static_cast<std::size_t>(k)][j];
        v.push_back(x);
    }
    const Dataset d = make(v);
    const PcaModel m = fit_pca(d, 2);
    const Dataset p = m.project(d);
    double err = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t j = 0; j < 6; ++j) {
            double rec = m.mean[j];
            for (std::size_t c = 0; c < 2; ++c) rec += p.vectors[i][c] * m.components[c][j];
            err += (d.vectors[i][j] - rec) * (d.vectors[i][j] - rec);
        }
    }
    err /= static_cast<double>(d.size());
    EXPECT_NEAR(err, m.total_variance - m.eigenvalues[0] - m.eigenvalues[1], 1e-8);
    // Inner products inside the kept subspace are preserved.
    for (std::size_t a = 0; a < 5; ++a) {
        for (std::size_t b = 0; b < 5; ++b) {
            double proj = 0, sub = 0;
            for (std::size_t c = 0; c < 2; ++c) proj += p.vectors[a][c] * p.vectors[b][c];
            for (std::size_t c = 0; c < 2; ++c) {
                double ua = 0, ub = 0;
                for (std::size_t j = 0; j < 6; ++j) {
                    ua += (d.vectors[a][j] - m.mean[j]) * m.components[c][j];
                    ub += (d.vectors[b][j] - m.mean[j]) * m.components[c][j];
                }
                sub += ua * ub;
            }
            EXPECT_NEAR(proj, sub, 1e-9);
        }
    }
}

TEST(Pca, Errors) {
    EXPECT_THROW(fit_pca(make({{1, 2}, {3, 4}}), 2), std::invalid_argument);
    EXPECT_THROW(fit_pca(make({{1}, {2}, {3}}), 1), std::invalid_argument);
    EXPECT_THROW(fit_pca(make({{1, 2}, {1, 2}, {1, 2}}), 2), DataError);
}

TEST(RandomDataset, DeterministicStandardized) {
    const Dataset a = generate_random_dataset(100, 2, 7);
    const Dataset b = generate_random_dataset(100, 2, 7);
    EXPECT_EQ(a.vectors, b.vectors);
    EXPECT_EQ(a.size(), 100U);
    EXPECT_EQ(a.dims(), 2U);
    EXPECT_FALSE(a.labels.has_value());
    for (std::size_t j = 0; j < 2; ++j) EXPECT_NEAR(column_mean(a, j), 0.0, 1e-9);
    EXPECT_NE(generate_random_dataset(100, 2, 8).vectors, a.vectors);
}

TEST(Csv, IrisResourceWithFeatureFilter) {
    const Dataset iris = load_iris();
    EXPECT_EQ(iris.size(), 150U);
    EXPECT_EQ(iris.dims(), 4U);
    ASSERT_TRUE(iris.labels.has_value());
    EXPECT_EQ(std::set<int>(iris.labels->begin(), iris.labels->end()), (std::set<int>{0, 1, 2}));
    const std::size_t cols[] = {0, 1};
    const Dataset two = select_features(iris, cols);
    EXPECT_EQ(two.dims(), 2U);
    EXPECT_DOUBLE_EQ(two.vectors[0][0], 5.1);
    EXPECT_DOUBLE_EQ(two.vectors[0][1], 3.5);
}

TEST(Csv, RaggedRowNamesLine) {
    try {
        parse_csv("1,2\n3,4\n5\n");
        FAIL() << "expected DataError";
    } catch (const DataError& e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }
    EXPECT_THROW(parse_csv("1,2\n3,x\n"), DataError);
}

TEST(Csv, LabelsAbsentUnlessRequested) {
    const Dataset d = parse_csv("1,2,0\n3,4,1\n");
    EXPECT_FALSE(d.labels.has_value());
    EXPECT_EQ(d.dims(), 3U);
}

TEST(Csv, LabelColumnByIndexNameAndNegativeIndex) {
    const std::string text = "a,b,cls\n1,2,0\n3,4,1\n";
    CsvOptions by_name;
    by_name.label_column = "cls";
    const Dataset n = parse_csv(text, by_name);
    EXPECT_EQ(n.dims(), 2U);
    EXPECT_EQ(*n.labels, (std::vector<int>{0, 1}));
    CsvOptions by_index;
    by_index.label_column = "-1";
    EXPECT_EQ(*parse_csv(text, by_index).labels, (std::vector<int>{0, 1}));
    CsvOptions first;
    first.label_column = "0";
    const Dataset f = parse_csv("7,0.5,0.25\n3,1.5,2.5\n", first);
    EXPECT_EQ(*f.labels, (std::vector<int>{7, 3}));
    EXPECT_DOUBLE_EQ(f.vectors[1][1], 2.5);
    CsvOptions missing;
    missing.label_column = "species";
    EXPECT_THROW(parse_csv(text, missing), DataError);
    missing.label_column = "5";
    EXPECT_THROW(parse_csv(text, missing), DataError);
}

TEST(Csv, TextLabelsCodedByFirstAppearance) {
    CsvOptions o;
    o.label_column = "-1";
    const Dataset d = parse_csv("1,2,b\n3,4,a\n5,6,b\n", o);
    EXPECT_EQ(*d.labels, (std::vector<int>{0, 1, 0}));
    EXPECT_EQ(d.size(), 3U);
}

TEST(Csv, FileAndGzipRoundTrip) {
    Dataset d = make({{1.25, -2.5}, {1e-3, 4.0}});
    d.labels = std::vector<int>{3, 4};
    const std::string text = to_csv(d);
    const auto plain = temp_file("plain.csv");
    {
        std::ofstream(plain) << text;
    }
    CsvOptions o;
    o.label_column = "label";
    const Dataset back = load_csv(plain, o);
    EXPECT_EQ(back.vectors, d.vectors);
    EXPECT_EQ(back.labels, d.labels);

    const auto gz = temp_file("packed.csv.gz");
    gzFile f = gzopen(gz.string().c_str(), "wb");
    ASSERT_NE(f, nullptr);
    gzwrite(f, text.data(), static_cast<unsigned>(text.size()));
    gzclose(f);
    EXPECT_EQ(load_csv(gz, o).vectors, d.vectors);
    std::filesystem::remove(plain);
    std::filesystem::remove(gz);
    EXPECT_THROW(load_csv(temp_file("does_not_exist.csv"), o), DataError);
}

TEST(MnistFilter, KeepsRequestedDigits) {
    Dataset d = make({{0}, {1}, {2}, {3}, {4}, {7}, {9}, {0}});
    d.labels = std::vector<int>{0, 1, 2, 3, 4, 7, 9, 0};
    const Dataset f = filter_mnist_digits(d);
    EXPECT_EQ(*f.labels, (std::vector<int>{0, 3, 4, 7, 0}));
    EXPECT_EQ(filter_labels(d, {0, 1, 2, 3, 4, 7, 9}).vectors, d.vectors);
    const Dataset none = filter_labels(d, {5});
    EXPECT_TRUE(none.empty());
    EXPECT_FALSE(none.warnings.empty());
    EXPECT_THROW(filter_mnist_digits(make({{1}})), DataError);
}

TEST(MnistFilter, BundledSubsetHasFiveHundredPerDigit) {
    const Dataset d = load_mnist(default_mnist_path());
    EXPECT_EQ(d.size(), 5000U);
    EXPECT_EQ(d.dims(), 784U);
    const Dataset f = filter_mnist_digits(d);
    EXPECT_EQ(f.size(), 2000U);
    for (int digit : {0, 3, 4, 7}) EXPECT_EQ(std::count(f.labels->begin(), f.labels->end(), digit), 500);
}
