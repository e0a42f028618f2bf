#pragma once

#include "ctmlab/machine.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

namespace ctmlab {

struct Halted {
    uint64_t steps;
    uint64_t ones;        // 1 bits on the visited segment
    std::string output;   // visited segment, min..max head offset
    friend bool operator==(const Halted&, const Halted&) = default;
};

struct CutoffExceeded {
    uint64_t cap;
    friend bool operator==(const CutoffExceeded&, const CutoffExceeded&) = default;
};

using RunOutcome = std::variant<Halted, CutoffExceeded>;

inline bool halted(const RunOutcome& r) { return std::holds_alternative<Halted>(r); }

enum class NonHaltProof : uint8_t {
    None,        // hit the cutoff, nothing proven
    BlankEscape, // translational runaway into fresh blanks
    ConfigCycle, // exact configuration repeated
};

struct SimResult {
    RunOutcome outcome;
    NonHaltProof proof = NonHaltProof::None;
};

namespace detail {

// Two-way tape with signed offsets. Unvisited cells read as the blank bit.
class Tape {
public:
    explicit Tape(Bit blank) : blank_(blank), cells_(64, blank), origin_(32) {}

    Bit read(int64_t pos) const {
        const int64_t i = pos + origin_;
        if (i < 0 || i >= static_cast<int64_t>(cells_.size())) return blank_;
        return cells_[static_cast<size_t>(i)];
    }

    void write(int64_t pos, Bit value) {
        int64_t i = pos + origin_;
        while (i < 0 || i >= static_cast<int64_t>(cells_.size())) {
            grow();
            i = pos + origin_;
        }
        cells_[static_cast<size_t>(i)] = value;
    }

private:
    void grow() {
        const size_t old = cells_.size();
        std::vector<Bit> next(old * 2, blank_);
        std::copy(cells_.begin(), cells_.end(), next.begin() + old / 2);
        cells_ = std::move(next);
        origin_ += static_cast<int64_t>(old / 2);
    }

    Bit blank_;
    std::vector<Bit> cells_;
    int64_t origin_;
};

// Per-state record of the last fresh-blank extension event in one
// direction. If the head returns to a fresh extension in the same state
// without ever having retreated past the previous event's cell, the
// configuration from that event repeats translated, so the machine
// never halts.
struct EscapeTracker {
    static constexpr int64_t kUnset = INT64_MIN;
    bool right; // direction this tracker watches
    std::vector<int64_t> event_pos;   // per state, last record position
    std::vector<int64_t> inner_reach; // farthest retreat since that event

    EscapeTracker(uint32_t states, bool right_side)
        : right(right_side),
          event_pos(states + 1, kUnset),
          inner_reach(states + 1, 0) {}

    // Returns true when the runaway pattern is proven. `retreat_ok` is
    // "head never moved to the inner side of the previous event cell".
    bool on_record(uint32_t state, int64_t pos) {
        const int64_t prev = event_pos[state];
        if (prev != kUnset) {
            const bool retreat_ok =
                right ? inner_reach[state] >= prev : inner_reach[state] <= prev;
            if (retreat_ok) return true;
        }
        event_pos[state] = pos;
        inner_reach[state] = pos;
        return false;
    }

    void on_step(int64_t head) {
        for (size_t s = 1; s < event_pos.size(); ++s) {
            if (event_pos[s] == kUnset) continue;
            if (right)
                inner_reach[s] = std::min(inner_reach[s], head);
            else
                inner_reach[s] = std::max(inner_reach[s], head);
        }
    }
};

// Packs (state, relative head, segment bits) into one key when the
// visited segment fits in 48 cells; wider configurations are skipped.
struct CycleTracker {
    std::unordered_set<unsigned __int128> seen;

    bool repeat(uint32_t state, int64_t head, int64_t lo, int64_t hi,
                const Tape& tape) {
        const int64_t width = hi - lo + 1;
        if (width > 48) return false;
        unsigned __int128 key = 0;
        for (int64_t p = lo; p <= hi; ++p) key = (key << 1) | tape.read(p);
        key |= static_cast<unsigned __int128>(width) << 48;
        key |= static_cast<unsigned __int128>(head - lo) << 56;
        key |= static_cast<unsigned __int128>(state) << 64;
        return !seen.insert(key).second;
    }
};

} // namespace detail

// Runs one machine from a tape of `blank` bits until a HaltWrite fires or
// `step_cap` steps have executed. The halting write lands at the head and
// does not move; output is the visited segment after that write. With
// `detect_nonhalt`, cutoff results may carry a non-halting proof.
inline SimResult simulate_full(const TransitionTable& table, uint64_t step_cap,
                               Bit blank = 0, bool detect_nonhalt = false) {
    detail::Tape tape(blank);
    detail::EscapeTracker escape_right(table.cls.states, true);
    detail::EscapeTracker escape_left(table.cls.states, false);
    detail::CycleTracker cycle;

    int64_t head = 0;
    int64_t lo = 0, hi = 0;
    uint32_t state = 1;

    if (detect_nonhalt) cycle.repeat(state, head, lo, hi, tape); // seed config

    for (uint64_t step = 1; step <= step_cap; ++step) {
        const Action& a = table.at(state, tape.read(head));
        if (const auto* h = std::get_if<HaltWrite>(&a)) {
            tape.write(head, h->write);
            std::string out;
            out.reserve(static_cast<size_t>(hi - lo + 1));
            uint64_t ones = 0;
            for (int64_t p = lo; p <= hi; ++p) {
                const Bit b = tape.read(p);
                ones += b;
                out.push_back(b ? '1' : '0');
            }
            return {Halted{step, ones, std::move(out)}, NonHaltProof::None};
        }
        const auto& s = std::get<Step>(a);
        tape.write(head, s.write);
        head += (s.move == Move::Right) ? 1 : -1;
        state = s.next;

        if (detect_nonhalt) {
            if (head > hi) {
                if (escape_right.on_record(state, head))
                    return {CutoffExceeded{step_cap}, NonHaltProof::BlankEscape};
            } else if (head < lo) {
                if (escape_left.on_record(state, head))
                    return {CutoffExceeded{step_cap}, NonHaltProof::BlankEscape};
            }
            escape_right.on_step(head);
            escape_left.on_step(head);
        }
        lo = std::min(lo, head);
        hi = std::max(hi, head);

        if (detect_nonhalt && cycle.repeat(state, head, lo, hi, tape))
            return {CutoffExceeded{step_cap}, NonHaltProof::ConfigCycle};
    }
    return {CutoffExceeded{step_cap}, NonHaltProof::None};
}

inline RunOutcome simulate(const TransitionTable& table, uint64_t step_cap,
                           Bit blank = 0) {
    if (step_cap < 1) throw std::invalid_argument("step_cap must be >= 1");
    return simulate_full(table, step_cap, blank).outcome;
}

} // namespace ctmlab
