#include "qkm/sim/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qkm/rng.hpp"

namespace qkm::sim {

ShotMode ShotMode::sampled(std::uint64_t shots) {
    if (shots == 0) throw std::invalid_argument("shot count must be at least 1");
    return ShotMode(shots);
}

MeasurementHistogram::MeasurementHistogram(int num_bits, std::vector<double> values,
                                           std::optional<std::uint64_t> shots)
    : num_bits_(num_bits), values_(std::move(values)), shots_(shots) {
    if (num_bits < 1 || values_.size() != (std::size_t{1} << num_bits)) {
        throw std::invalid_argument("histogram size does not match bit count");
    }
}

MeasurementHistogram MeasurementHistogram::exact(int num_bits, std::vector<double> probabilities) {
    return MeasurementHistogram(num_bits, std::move(probabilities), std::nullopt);
}

MeasurementHistogram MeasurementHistogram::sampled(int num_bits, std::vector<std::uint64_t> counts) {
    std::uint64_t total = 0;
    for (auto c : counts) total += c;
    if (total == 0) throw std::invalid_argument("sampled histogram needs at least one shot");
    return MeasurementHistogram(num_bits, std::vector<double>(counts.begin(), counts.end()), total);
}

double MeasurementHistogram::probability(std::size_t outcome) const {
    const double v = values_.at(outcome);
    return shots_ ? v / static_cast<double>(*shots_) : v;
}

double MeasurementHistogram::marginal(int bit, int value) const {
    if (bit < 0 || bit >= num_bits_) throw std::out_of_range("histogram bit out of range");
    const std::size_t m = std::size_t{1} << (num_bits_ - 1 - bit);
    double sum = 0.0;
    for (std::size_t k = 0; k < values_.size(); ++k) {
        if (((k & m) != 0) == (value != 0)) sum += values_[k];
    }
    return shots_ ? sum / static_cast<double>(*shots_) : sum;
}

std::map<std::string, double> MeasurementHistogram::to_map() const {
    std::map<std::string, double> out;
    for (std::size_t k = 0; k < values_.size(); ++k) {
        if (values_[k] != 0.0) out.emplace(bitstring(k, num_bits_), values_[k]);
    }
    return out;
}

std::string bitstring(std::size_t index, int num_bits) {
    std::string s(static_cast<std::size_t>(num_bits), '0');
    for (int b = 0; b < num_bits; ++b) {
        if ((index >> (num_bits - 1 - b)) & 1U) s[static_cast<std::size_t>(b)] = '1';
    }
    return s;
}

std::vector<double> probabilities(const StateVector& state) {
    std::vector<double> p(state.size());
    for (std::size_t i = 0; i < state.size(); ++i) p[i] = std::norm(state[i]);
    return p;
}

std::map<std::string, double> probability_map(const StateVector& state) {
    return exact_histogram(state).to_map();
}

MeasurementHistogram exact_histogram(const StateVector& state) {
    return MeasurementHistogram::exact(state.num_qubits(), probabilities(state));
}

MeasurementHistogram sample_shots(const StateVector& state, std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) throw std::invalid_argument("shot count must be at least 1");
    const auto p = probabilities(state);
    std::vector<double> cumulative(p.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        acc += p[i];
        cumulative[i] = acc;
    }
    // Guard against round-off leaving the top of [0, 1) uncovered: the last
    // outcome with nonzero probability absorbs it.
    std::size_t last = p.size() - 1;
    while (last > 0 && p[last] == 0.0) --last;
    std::vector<std::uint64_t> counts(p.size(), 0);
    Rng rng(seed);
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = rng.uniform01() * acc;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        std::size_t k = it == cumulative.end() ? last : static_cast<std::size_t>(it - cumulative.begin());
        if (k > last) k = last;
        ++counts[k];
    }
    return MeasurementHistogram::sampled(state.num_qubits(), std::move(counts));
}

MeasurementHistogram marginalize(const MeasurementHistogram& full, std::span<const int> qubits) {
    const int n = full.num_bits();
    const int m = static_cast<int>(qubits.size());
    if (m < 1) throw std::invalid_argument("marginalize needs at least one qubit");
    for (int q : qubits) {
        if (q < 0 || q >= n) throw std::out_of_range("marginalized qubit out of range");
    }
    std::vector<double> values(std::size_t{1} << m, 0.0);
    for (std::size_t k = 0; k < full.num_outcomes(); ++k) {
        std::size_t r = 0;
        for (int j = 0; j < m; ++j) {
            const std::size_t bit = (k >> (n - 1 - qubits[static_cast<std::size_t>(j)])) & 1U;
            r |= bit << (m - 1 - j);
        }
        values[r] += full.value(k);
    }
    if (full.is_exact()) return MeasurementHistogram::exact(m, std::move(values));
    std::vector<std::uint64_t> counts(values.size());
    std::transform(values.begin(), values.end(), counts.begin(),
                   [](double v) { return static_cast<std::uint64_t>(std::llround(v)); });
    return MeasurementHistogram::sampled(m, std::move(counts));
}

MeasurementHistogram execute(const Circuit& circuit, ShotMode mode, std::uint64_t seed) {
    const StateVector state = run_circuit(circuit);
    const MeasurementHistogram full = mode.is_exact() ? exact_histogram(state) : sample_shots(state, *mode.shots(), seed);
    const auto& measured = circuit.measured_qubits();
    bool identity = static_cast<int>(measured.size()) == circuit.num_qubits();
    for (std::size_t i = 0; identity && i < measured.size(); ++i) identity = measured[i] == static_cast<int>(i);
    return identity ? full : marginalize(full, measured);
}

}  // namespace qkm::sim
