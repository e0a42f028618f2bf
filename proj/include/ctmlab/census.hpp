#pragma once

#include "ctmlab/machine.hpp"
#include "ctmlab/simulate.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace ctmlab {

enum class BlankMode : uint8_t { Zero, One, Both };

inline std::string to_string(BlankMode m) {
    switch (m) {
        case BlankMode::Zero: return "zero";
        case BlankMode::One: return "one";
        default: return "both";
    }
}

// Largest class enumerated exhaustively without an explicit budget
// acknowledgment: n=3 is 7 529 536 machines, n=4 is ~1.1e10.
inline constexpr uint32_t kDefaultExhaustiveBudget = 3;

struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CensusReport {
    MachineClass cls;
    BlankMode blank;
    uint64_t total_machines = 0;
    uint64_t total_runs = 0; // machines, doubled under BlankMode::Both
    uint64_t halting = 0;
    uint64_t non_halting_proven = 0;
    uint64_t unresolved = 0;
    uint64_t cutoff_used = 0;
    uint64_t max_steps_observed = 0;
    uint64_t max_ones_observed = 0;
};

struct BusyBeaverRecord {
    uint32_t n = 0;
    uint64_t sigma = 0; // max ones written by a halting machine
    uint64_t s_max = 0; // max steps of a halting machine
    enum class Status { Exact, LowerBound } status = Status::LowerBound;
    std::string provenance; // "derived" or "configured"
};

namespace detail {

inline std::vector<Bit> blanks_for(BlankMode mode) {
    switch (mode) {
        case BlankMode::Zero: return {0};
        case BlankMode::One: return {1};
        default: return {0, 1};
    }
}

struct CensusPartial {
    uint64_t halting = 0, proven = 0, unresolved = 0;
    uint64_t max_steps = 0, max_ones = 0;

    void merge(const CensusPartial& other) {
        halting += other.halting;
        proven += other.proven;
        unresolved += other.unresolved;
        max_steps = std::max(max_steps, other.max_steps);
        max_ones = std::max(max_ones, other.max_ones);
    }
};

template <typename Fn>
inline void shard_indices(uint64_t count, unsigned workers, Fn&& body) {
    workers = std::max(1u, workers);
    if (workers == 1 || count < 2 * workers) {
        body(0, uint64_t{0}, count);
        return;
    }
    std::vector<std::thread> pool;
    const uint64_t chunk = (count + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const uint64_t lo = w * chunk;
        const uint64_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, w, lo, hi] { body(w, lo, hi); });
    }
    for (auto& t : pool) t.join();
}

} // namespace detail

// Simulates every machine in the class once per blank, with non-halt
// detectors classifying cutoff-hitters where possible. Sharding over
// index ranges keeps the merged report independent of worker count.
inline CensusReport run_census(MachineClass cls, uint64_t cutoff,
                               BlankMode blank = BlankMode::Zero,
                               unsigned workers = 1,
                               bool detectors = true,
                               uint32_t exhaustive_budget = kDefaultExhaustiveBudget) {
    if (cutoff < 1) throw std::invalid_argument("cutoff must be >= 1");
    if (cls.states > exhaustive_budget) {
        throw BudgetError("class (" + std::to_string(cls.states) +
                          ",2) exceeds the exhaustive budget; use sampled mode");
    }
    const uint64_t size = cls.rulespace_size();
    const auto blanks = detail::blanks_for(blank);

    std::vector<detail::CensusPartial> partials(std::max(1u, workers));
    detail::shard_indices(size, workers, [&](unsigned w, uint64_t lo, uint64_t hi) {
        detail::CensusPartial part;
        for (uint64_t i = lo; i < hi; ++i) {
            const TransitionTable table = decode_machine(i, cls);
            for (Bit b : blanks) {
                const SimResult r = simulate_full(table, cutoff, b, detectors);
                if (const auto* h = std::get_if<Halted>(&r.outcome)) {
                    ++part.halting;
                    part.max_steps = std::max(part.max_steps, h->steps);
                    part.max_ones = std::max(part.max_ones, h->ones);
                } else if (r.proof != NonHaltProof::None) {
                    ++part.proven;
                } else {
                    ++part.unresolved;
                }
            }
        }
        partials[w] = part;
    });

    detail::CensusPartial merged;
    for (const auto& p : partials) merged.merge(p);

    CensusReport report{cls, blank};
    report.total_machines = size;
    report.total_runs = size * blanks.size();
    report.halting = merged.halting;
    report.non_halting_proven = merged.proven;
    report.unresolved = merged.unresolved;
    report.cutoff_used = cutoff;
    report.max_steps_observed = merged.max_steps;
    report.max_ones_observed = merged.max_ones;
    return report;
}

// Known exact step bounds S(n,2); the n=4 value is the published constant
// (its exhaustive derivation is out of desk-scale budget).
inline constexpr uint64_t kKnownStepBound[] = {0, 1, 6, 21, 107};
inline constexpr uint32_t kMaxKnownStepBound = 4;
inline constexpr uint64_t kDefaultGuessCutoff = 500;

// Escalates cutoffs until the halting count and maxima stabilize across
// two consecutive censuses. Status is Exact when every non-halter was
// proven or a known-stable cutoff was reached.
inline BusyBeaverRecord busy_beaver(MachineClass cls,
                                    std::vector<uint64_t> cutoff_schedule = {},
                                    unsigned workers = 1) {
    if (cutoff_schedule.empty())
        cutoff_schedule = {2, 4, 8, 16, 32, 64, 128, 256};

    BusyBeaverRecord rec;
    rec.n = cls.states;
    rec.provenance = "derived";

    bool have_prev = false;
    CensusReport prev{cls, BlankMode::Zero};
    for (uint64_t cutoff : cutoff_schedule) {
        const CensusReport cur = run_census(cls, cutoff, BlankMode::Zero, workers);
        rec.sigma = cur.max_ones_observed;
        rec.s_max = cur.max_steps_observed;
        const bool known_stable =
            cls.states <= kMaxKnownStepBound && cutoff >= kKnownStepBound[cls.states];
        if (cur.unresolved == 0 || known_stable) {
            rec.status = BusyBeaverRecord::Status::Exact;
            return rec;
        }
        if (have_prev && cur.halting == prev.halting &&
            cur.max_steps_observed == prev.max_steps_observed &&
            cur.max_ones_observed == prev.max_ones_observed) {
            rec.status = BusyBeaverRecord::Status::LowerBound;
            return rec;
        }
        prev = cur;
        have_prev = true;
    }
    rec.status = BusyBeaverRecord::Status::LowerBound;
    return rec;
}

// Runtime cutoff for D(n): exact S(n,2) for n <= 4, educated guess beyond.
inline uint64_t cutoff_for(MachineClass cls,
                           uint64_t guess = kDefaultGuessCutoff) {
    if (cls.states <= kMaxKnownStepBound) return kKnownStepBound[cls.states];
    return guess;
}

struct HaltingFraction {
    MachineClass cls;
    double fraction;
};

inline HaltingFraction halting_fraction(const CensusReport& report) {
    return {report.cls,
            static_cast<double>(report.halting) /
                static_cast<double>(report.total_machines)};
}

} // namespace ctmlab
