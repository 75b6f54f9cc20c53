#pragma once

#include <stdexcept>
#include <string>

namespace qkm {

// Bad arguments (indices, counts, flags) are reported with
// std::invalid_argument / std::out_of_range. The types below cover the two
// conditions callers usually want to tell apart.

/// Malformed or unusable input data: ragged CSV rows, zero vectors, missing
/// labels, unreadable files.
class DataError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An interference comparison with no constructive-branch mass; there is
/// nothing to compare.
class DegenerateConfiguration : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace qkm
