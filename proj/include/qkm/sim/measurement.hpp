#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qkm/sim/circuit.hpp"
#include "qkm/sim/state_vector.hpp"

namespace qkm::sim {

/// How outcome distributions are read: analytically from the statevector
/// (exact) or from a finite number of seeded shots.
class ShotMode {
  public:
    static ShotMode exact() { return ShotMode(std::nullopt); }
    /// Throws std::invalid_argument for zero shots.
    static ShotMode sampled(std::uint64_t shots);

    bool is_exact() const noexcept { return !shots_; }
    std::optional<std::uint64_t> shots() const noexcept { return shots_; }

    bool operator==(const ShotMode&) const = default;

  private:
    explicit ShotMode(std::optional<std::uint64_t> shots) : shots_(shots) {}
    std::optional<std::uint64_t> shots_;
};

/// Outcome weights over `num_bits` measured bits. Outcome index k is read
/// MSB first: bit j of the bitstring is the j-th measured qubit.
class MeasurementHistogram {
  public:
    static MeasurementHistogram exact(int num_bits, std::vector<double> probabilities);
    static MeasurementHistogram sampled(int num_bits, std::vector<std::uint64_t> counts);

    int num_bits() const noexcept { return num_bits_; }
    std::size_t num_outcomes() const noexcept { return values_.size(); }
    bool is_exact() const noexcept { return !shots_; }
    std::optional<std::uint64_t> shots() const noexcept { return shots_; }

    /// Raw weight: a count in sampled mode, a probability in exact mode.
    double value(std::size_t outcome) const { return values_.at(outcome); }

    /// Weight divided by the total (shots, or 1 in exact mode).
    double probability(std::size_t outcome) const;

    /// Total probability of outcomes whose bit `bit` (0 = most significant)
    /// equals `value`.
    double marginal(int bit, int value) const;

    /// Nonzero outcomes keyed by bitstring.
    std::map<std::string, double> to_map() const;

  private:
    MeasurementHistogram(int num_bits, std::vector<double> values, std::optional<std::uint64_t> shots);

    int num_bits_;
    std::vector<double> values_;
    std::optional<std::uint64_t> shots_;
};

/// `index` as `num_bits` characters, most significant first.
std::string bitstring(std::size_t index, int num_bits);

/// |a_i|^2 for every basis index.
std::vector<double> probabilities(const StateVector& state);

/// Nonzero probabilities keyed by bitstring.
std::map<std::string, double> probability_map(const StateVector& state);

MeasurementHistogram exact_histogram(const StateVector& state);

/// Multinomial draw of `shots` outcomes. Each shot maps a uniform draw u to
/// the first basis index whose cumulative probability exceeds u. Identical
/// (state, shots, seed) give identical histograms. Throws for shots == 0.
MeasurementHistogram sample_shots(const StateVector& state, std::uint64_t shots, std::uint64_t seed);

/// Histogram restricted to `qubits`, in the listed order.
MeasurementHistogram marginalize(const MeasurementHistogram& full, std::span<const int> qubits);

/// Runs `circuit` from |0...0> and reads its measured qubits in `mode`.
MeasurementHistogram execute(const Circuit& circuit, ShotMode mode, std::uint64_t seed);

}  // namespace qkm::sim
