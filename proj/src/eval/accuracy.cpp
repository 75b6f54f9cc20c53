#include "qkm/eval/accuracy.hpp"

#include <algorithm>
#include <stdexcept>

namespace qkm::eval {

namespace {

std::vector<int> distinct(std::span<const int> v) {
    std::vector<int> out(v.begin(), v.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::size_t index_of(const std::vector<int>& ids, int id) {
    return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
}

struct Search {
    const std::vector<std::vector<std::size_t>>& confusion;
    std::size_t labels;
    std::vector<int> current;  // label column per cluster, -1 for none
    std::vector<bool> used;
    std::vector<int> best;
    std::size_t best_score = 0;
    bool found = false;

    void run(std::size_t cluster, std::size_t score, std::size_t free_slots) {
        if (cluster == confusion.size()) {
            if (!found || score > best_score) {
                best = current;
                best_score = score;
                found = true;
            }
            return;
        }
        for (std::size_t l = 0; l < labels; ++l) {
            if (used[l]) continue;
            used[l] = true;
            current[cluster] = static_cast<int>(l);
            run(cluster + 1, score + confusion[cluster][l], free_slots);
            used[l] = false;
        }
        // Leaving a cluster unmatched is only allowed while clusters
        // outnumber labels.
        if (free_slots > 0) {
            current[cluster] = -1;
            run(cluster + 1, score, free_slots - 1);
        }
    }
};

}  // namespace

AccuracyReport accuracy(std::span<const int> predicted, std::span<const int> truth) {
    if (predicted.size() != truth.size()) throw std::invalid_argument("prediction and label lengths differ");
    if (predicted.empty()) throw std::invalid_argument("accuracy of an empty clustering");

    AccuracyReport r;
    r.cluster_ids = distinct(predicted);
    r.label_ids = distinct(truth);
    if (r.cluster_ids.size() > 8) throw std::invalid_argument("accuracy supports at most 8 clusters");

    const std::size_t k = r.cluster_ids.size();
    const std::size_t l = r.label_ids.size();
    r.confusion.assign(k, std::vector<std::size_t>(l, 0));
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        ++r.confusion[index_of(r.cluster_ids, predicted[i])][index_of(r.label_ids, truth[i])];
    }

    Search s{r.confusion, l, std::vector<int>(k, -1), std::vector<bool>(l, false), {}, 0, false};
    s.run(0, 0, k > l ? k - l : 0);

    r.matched = s.best_score;
    r.total = predicted.size();
    r.accuracy = static_cast<double>(r.matched) / static_cast<double>(r.total);
    for (std::size_t c = 0; c < k; ++c) {
        const int col = s.best[c];
        r.mapping[r.cluster_ids[c]] = col < 0 ? std::nullopt : std::optional<int>(r.label_ids[static_cast<std::size_t>(col)]);
    }
    return r;
}

std::vector<int> as_labels(std::span<const std::size_t> assignment) {
    std::vector<int> out;
    out.reserve(assignment.size());
    for (std::size_t c : assignment) out.push_back(static_cast<int>(c));
    return out;
}

double agreement(std::span<const int> a, std::span<const int> b) { return accuracy(a, b).accuracy; }

}  // namespace qkm::eval
