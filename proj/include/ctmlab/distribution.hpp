#pragma once

#include "ctmlab/census.hpp"
#include "ctmlab/machine.hpp"
#include "ctmlab/random.hpp"
#include "ctmlab/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ctmlab {

// String -> count map with its normalization denominator. Counts are kept
// exact; probabilities are a derived floating view. For TM distributions
// the denominator is the number of halting runs (Table-1 normalization),
// with the raw run total kept so the all-machines normalization stays
// recoverable.
struct FrequencyDistribution {
    std::map<std::string, uint64_t> counts;
    uint64_t total = 0;     // normalization denominator
    uint64_t raw_total = 0; // all runs/windows, 0 when same as total
    std::string source;

    double probability(const std::string& s) const {
        const auto it = counts.find(s);
        if (it == counts.end()) return 0.0;
        return static_cast<double>(it->second) / static_cast<double>(total);
    }

    // Exact rational comparison of two entries' probabilities.
    bool prob_equal(const std::string& a, const std::string& b) const {
        const auto ia = counts.find(a), ib = counts.find(b);
        const uint64_t ca = ia == counts.end() ? 0 : ia->second;
        const uint64_t cb = ib == counts.end() ? 0 : ib->second;
        return ca == cb; // shared denominator
    }

    uint64_t count_of(const std::string& s) const {
        const auto it = counts.find(s);
        return it == counts.end() ? 0 : it->second;
    }

    // Restriction to strings of one length, window totals preserved.
    FrequencyDistribution restrict_length(size_t k) const {
        FrequencyDistribution out;
        out.source = source + " | restricted to length " + std::to_string(k);
        for (const auto& [s, c] : counts) {
            if (s.size() == k) {
                out.counts.emplace(s, c);
                out.total += c;
            }
        }
        return out;
    }
};

struct SampledMode {
    uint64_t size;
    uint64_t seed;
};

struct ComplexityEstimate {
    std::string string;
    double k_ctm;       // bits
    double probability; // in (0, 1]
};

struct NotInSupportError : std::runtime_error {
    double min_probability; // smallest probability in the distribution
    NotInSupportError(const std::string& what, double min_p)
        : std::runtime_error(what), min_probability(min_p) {}
};

namespace detail {

struct DistPartial {
    std::map<std::string, uint64_t> counts;
    uint64_t halting = 0;
    uint64_t runs = 0;

    void merge(DistPartial&& other) {
        for (auto& [s, c] : other.counts) counts[s] += c;
        halting += other.halting;
        runs += other.runs;
    }

    void tally(const TransitionTable& table, uint64_t cutoff,
               const std::vector<Bit>& blanks) {
        for (Bit b : blanks) {
            ++runs;
            const SimResult r = simulate_full(table, cutoff, b, true);
            if (const auto* h = std::get_if<Halted>(&r.outcome)) {
                ++halting;
                ++counts[h->output];
            }
        }
    }
};

} // namespace detail

inline constexpr uint64_t kMinSampleSize = 10'000;

// The empirical distribution D(n): outputs of all (or a uniform sample of)
// halting (n,2) machines under the class's Busy Beaver cutoff, normalized
// by the number of halting runs.
inline FrequencyDistribution compute_D(MachineClass cls, uint64_t cutoff,
                                       BlankMode blank = BlankMode::Zero,
                                       unsigned workers = 1,
                                       uint32_t exhaustive_budget = kDefaultExhaustiveBudget) {
    if (cls.states > exhaustive_budget) {
        throw BudgetError("exhaustive D(" + std::to_string(cls.states) +
                          ") exceeds the budget; use sampled mode");
    }
    const uint64_t size = cls.rulespace_size();
    const auto blanks = detail::blanks_for(blank);

    std::vector<detail::DistPartial> partials(std::max(1u, workers));
    detail::shard_indices(size, workers, [&](unsigned w, uint64_t lo, uint64_t hi) {
        detail::DistPartial part;
        for (uint64_t i = lo; i < hi; ++i)
            part.tally(decode_machine(i, cls), cutoff, blanks);
        partials[w] = std::move(part);
    });

    detail::DistPartial merged;
    for (auto& p : partials) merged.merge(std::move(p));

    FrequencyDistribution dist;
    dist.counts = std::move(merged.counts);
    dist.total = merged.halting;
    dist.raw_total = merged.runs;
    std::ostringstream src;
    src << "tm (" << cls.states << ",2) exhaustive cutoff=" << cutoff
        << " blank=" << to_string(blank);
    dist.source = src.str();
    return dist;
}

// Sampled D(n): machine indices drawn uniformly from a counter-based
// seeded stream, so results are reproducible and worker-independent.
inline FrequencyDistribution compute_D(MachineClass cls, uint64_t cutoff,
                                       SampledMode mode,
                                       BlankMode blank = BlankMode::Zero,
                                       unsigned workers = 1) {
    if (mode.size < kMinSampleSize)
        throw std::invalid_argument("sampled mode requires size >= 10000");
    const uint64_t size = cls.rulespace_size();
    const auto blanks = detail::blanks_for(blank);

    std::vector<detail::DistPartial> partials(std::max(1u, workers));
    detail::shard_indices(mode.size, workers, [&](unsigned w, uint64_t lo, uint64_t hi) {
        detail::DistPartial part;
        for (uint64_t i = lo; i < hi; ++i) {
            const uint64_t index = bounded(counter_rng(mode.seed, i), size);
            part.tally(decode_machine(index, cls), cutoff, blanks);
        }
        partials[w] = std::move(part);
    });

    detail::DistPartial merged;
    for (auto& p : partials) merged.merge(std::move(p));

    FrequencyDistribution dist;
    dist.counts = std::move(merged.counts);
    dist.total = merged.halting;
    dist.raw_total = merged.runs;
    std::ostringstream src;
    src << "tm (" << cls.states << ",2) sampled size=" << mode.size
        << " seed=" << mode.seed << " cutoff=" << cutoff
        << " blank=" << to_string(blank);
    dist.source = src.str();
    return dist;
}

// Coding-theorem estimate: K(s) ~ -log2(P(s)), no additive correction.
inline ComplexityEstimate ctm_complexity(const std::string& s,
                                         const FrequencyDistribution& dist) {
    const auto it = dist.counts.find(s);
    if (it == dist.counts.end() || dist.total == 0) {
        uint64_t min_count = 0;
        for (const auto& [_, c] : dist.counts)
            min_count = (min_count == 0) ? c : std::min(min_count, c);
        const double min_p =
            dist.total ? static_cast<double>(min_count) / dist.total : 0.0;
        throw NotInSupportError("string \"" + s + "\" not in distribution support",
                                min_p);
    }
    const double p = static_cast<double>(it->second) / dist.total;
    return {s, -std::log2(p), p};
}

struct RankedString {
    std::string string;
    double probability;
    double rank; // 1-based, ties share their average rank
};

// Descending probability, ties broken (shorter, then lexicographic) for a
// stable listing; tied entries carry the average of their rank positions.
inline std::vector<RankedString> rank_distribution(const FrequencyDistribution& dist) {
    if (dist.counts.empty())
        throw std::invalid_argument("cannot rank an empty distribution");
    std::vector<std::pair<std::string, uint64_t>> items(dist.counts.begin(),
                                                        dist.counts.end());
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
        return a.first < b.first;
    });
    std::vector<RankedString> out;
    out.reserve(items.size());
    size_t i = 0;
    while (i < items.size()) {
        size_t j = i;
        while (j < items.size() && items[j].second == items[i].second) ++j;
        const double avg_rank = (static_cast<double>(i + 1) + j) / 2.0;
        for (size_t k = i; k < j; ++k) {
            out.push_back({items[k].first,
                           static_cast<double>(items[k].second) / dist.total,
                           avg_rank});
        }
        i = j;
    }
    return out;
}

} // namespace ctmlab
