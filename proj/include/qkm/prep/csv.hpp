#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "qkm/prep/dataset.hpp"

namespace qkm::prep {

enum class HeaderMode { Auto, Present, Absent };

struct CsvOptions {
    HeaderMode header = HeaderMode::Auto;
    /// Column holding integer class labels: a 0-based index (negative counts
    /// from the end, -1 is the last column) or a header name. Non-numeric
    /// labels are coded 0, 1, ... in order of first appearance.
    std::optional<std::string> label_column;
};

/// Comma-separated, decimal-point floats, optional single header row.
/// Throws qkm::DataError for ragged rows or non-numeric cells (naming the
/// 1-based line) and for a label column that does not exist.
Dataset parse_csv(std::string_view text, const CsvOptions& options = {});

/// Reads `path`; files ending in ".gz" are decompressed transparently.
Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options = {});

/// Reads the whole file, decompressing ".gz". Throws qkm::DataError if the
/// file cannot be opened.
std::string read_text_file(const std::filesystem::path& path);

/// Writes features (and a trailing `label` column when present) with a
/// header row `f0,f1,...`. Values use 17 significant digits.
std::string to_csv(const Dataset& d);

}  // namespace qkm::prep
