#pragma once

#include <filesystem>
#include <string_view>

#include "qkm/prep/dataset.hpp"

namespace qkm::prep {

/// Fisher's Iris data as CSV text with a header row; the last column is the
/// species name.
std::string_view iris_csv();

/// 150 rows, 4 features, labels 0 = setosa, 1 = versicolor, 2 = virginica.
Dataset load_iris();

/// Location of the bundled MNIST subset (5000 images, 500 per digit,
/// label + 784 pixel columns, gzip). Overridden by $QKM_DATA_DIR.
std::filesystem::path default_mnist_path();

/// Flattened MNIST CSV: first column the digit, then 784 pixels. Headerless
/// or with a header; ".gz" is decompressed.
Dataset load_mnist(const std::filesystem::path& path);

}  // namespace qkm::prep
