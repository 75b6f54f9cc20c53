#include "qkm/prep/builtin.hpp"

#include <cstdlib>

#include "qkm/error.hpp"
#include "qkm/prep/csv.hpp"

#ifndef QKM_DATA_DIR
#define QKM_DATA_DIR "data"
#endif

namespace qkm::prep {

Dataset load_iris() {
    CsvOptions opts;
    opts.header = HeaderMode::Present;
    opts.label_column = "species";
    Dataset d = parse_csv(iris_csv(), opts);
    d.warnings.clear();
    return d;
}

std::filesystem::path default_mnist_path() {
    if (const char* dir = std::getenv("QKM_DATA_DIR"); dir != nullptr && *dir != '\0') {
        return std::filesystem::path(dir) / "mnist_5k.csv.gz";
    }
    return std::filesystem::path(QKM_DATA_DIR) / "mnist_5k.csv.gz";
}

Dataset load_mnist(const std::filesystem::path& path) {
    CsvOptions opts;
    opts.label_column = "0";
    Dataset d = load_csv(path, opts);
    if (d.dims() != 784) {
        throw DataError("MNIST CSV must have 785 columns (label + 784 pixels), found " + std::to_string(d.dims() + 1));
    }
    return d;
}

}  // namespace qkm::prep
