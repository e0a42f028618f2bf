#pragma once

#include "ctmlab/distribution.hpp"
#include "ctmlab/market.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace ctmlab {

enum class AlignPolicy : uint8_t { Intersection, UnionZeroFill };

struct AlignmentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AlignedPair {
    std::vector<std::string> strings; // lexicographic
    std::vector<uint64_t> xs;
    std::vector<uint64_t> ys;
    AlignPolicy policy;
};

struct SpearmanResult {
    double rho = 0.0;
    size_t n = 0;
    bool degenerate = false; // a side was all-tied; rho undefined
};

// Restrict both distributions to k-bit strings and pair their counts.
inline AlignedPair align(const FrequencyDistribution& a,
                         const FrequencyDistribution& b, size_t k,
                         AlignPolicy policy = AlignPolicy::Intersection) {
    std::set<std::string> keys;
    for (const auto& [s, c] : a.counts)
        if (s.size() == k) keys.insert(s);
    std::set<std::string> keys_b;
    for (const auto& [s, c] : b.counts)
        if (s.size() == k) keys_b.insert(s);

    AlignedPair pair;
    pair.policy = policy;
    if (policy == AlignPolicy::Intersection) {
        for (const auto& s : keys)
            if (keys_b.count(s)) pair.strings.push_back(s);
    } else {
        std::set<std::string> all = keys;
        all.insert(keys_b.begin(), keys_b.end());
        pair.strings.assign(all.begin(), all.end());
    }
    if (pair.strings.empty()) {
        throw AlignmentError("empty alignment at k=" + std::to_string(k) + ": " +
                             std::to_string(keys.size()) + " strings on one side, " +
                             std::to_string(keys_b.size()) + " on the other");
    }
    for (const auto& s : pair.strings) {
        pair.xs.push_back(a.count_of(s));
        pair.ys.push_back(b.count_of(s));
    }
    return pair;
}

namespace detail {

// Average ranks, 1-based, ties sharing the mean of their positions.
inline std::vector<double> average_ranks(const std::vector<uint64_t>& v) {
    const size_t n = v.size();
    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(n);
    size_t i = 0;
    while (i < n) {
        size_t j = i;
        while (j < n && v[order[j]] == v[order[i]]) ++j;
        const double avg = (static_cast<double>(i + 1) + j) / 2.0;
        for (size_t k = i; k < j; ++k) ranks[order[k]] = avg;
        i = j;
    }
    return ranks;
}

inline double pearson(const std::vector<double>& x, const std::vector<double>& y,
                      bool& degenerate) {
    const size_t n = x.size();
    double mx = 0, my = 0;
    for (size_t i = 0; i < n; ++i) { mx += x[i]; my += y[i]; }
    mx /= n; my /= n;
    double sxy = 0, sxx = 0, syy = 0;
    for (size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        degenerate = true;
        return std::numeric_limits<double>::quiet_NaN();
    }
    degenerate = false;
    return sxy / std::sqrt(sxx * syy);
}

} // namespace detail

// Tie-corrected Spearman: averaged ranks per side, then product-moment
// correlation of the rank vectors (the 6*sum(d^2) shortcut is invalid
// under ties).
inline SpearmanResult spearman(const AlignedPair& pair) {
    const size_t n = pair.strings.size();
    if (n < 3) throw std::invalid_argument("spearman requires n >= 3 pairs");
    const auto rx = detail::average_ranks(pair.xs);
    const auto ry = detail::average_ranks(pair.ys);
    SpearmanResult res;
    res.n = n;
    res.rho = detail::pearson(rx, ry, res.degenerate);
    return res;
}

struct CompareCell {
    size_t k;
    std::optional<SpearmanResult> result;
    std::string note; // reason when absent/degenerate
};

// One "rho|n" cell per k: market tuple distribution vs the reference.
inline std::vector<CompareCell> compare_table(const BinarySequence& market,
                                              const FrequencyDistribution& reference,
                                              size_t k_lo, size_t k_hi,
                                              AlignPolicy policy = AlignPolicy::Intersection) {
    if (k_lo < 1 || k_hi > 16 || k_lo > k_hi)
        throw std::invalid_argument("invalid k range");
    std::vector<CompareCell> cells;
    for (size_t k = k_lo; k <= k_hi; ++k) {
        CompareCell cell{k, std::nullopt, ""};
        try {
            const FrequencyDistribution tuples = extract_tuples(market, k);
            const AlignedPair pair = align(tuples, reference, k, policy);
            if (pair.strings.size() < 3) {
                cell.note = "fewer than 3 aligned strings";
            } else {
                const SpearmanResult r = spearman(pair);
                cell.result = r;
                if (r.degenerate) cell.note = "degenerate ranks (a side is all-tied)";
            }
        } catch (const std::exception& e) {
            cell.note = e.what();
        }
        cells.push_back(std::move(cell));
    }
    return cells;
}

} // namespace ctmlab
