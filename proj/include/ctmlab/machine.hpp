#pragma once

#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace ctmlab {

using Bit = uint8_t;

enum class Move : uint8_t { Left = 0, Right = 1 };

// One non-halting transition: write a bit, move the head, switch state.
// States are numbered 1..n.
struct Step {
    Bit write;
    Move move;
    uint32_t next;
    friend bool operator==(const Step&, const Step&) = default;
};

// Halting transition: write a bit at the head and stop without moving.
// Two of these per entry give the 4n+2 action radix.
struct HaltWrite {
    Bit write;
    friend bool operator==(const HaltWrite&, const HaltWrite&) = default;
};

using Action = std::variant<Step, HaltWrite>;

// The class (n,2): n states, 2 symbols, halting behavior not counted as
// a state. Rulespace size is (4n+2)^(2n).
struct MachineClass {
    uint32_t states;

    explicit MachineClass(uint32_t n) : states(n) {
        if (n < 1) throw std::invalid_argument("machine class requires n >= 1");
    }

    uint64_t action_count() const { return 4ULL * states + 2; }

    uint64_t rulespace_size() const {
        uint64_t size = 1;
        const uint64_t base = action_count();
        for (uint32_t i = 0; i < 2 * states; ++i) {
            if (size > std::numeric_limits<uint64_t>::max() / base)
                throw std::overflow_error("rulespace size exceeds 64 bits");
            size *= base;
        }
        return size;
    }

    friend bool operator==(const MachineClass&, const MachineClass&) = default;
};

// Full transition function of one machine, addressable by (state, read bit).
struct TransitionTable {
    MachineClass cls;
    std::vector<Action> entries; // slot 2*(state-1) + read

    const Action& at(uint32_t state, Bit read) const {
        return entries[2 * (state - 1) + read];
    }
    Action& at(uint32_t state, Bit read) {
        return entries[2 * (state - 1) + read];
    }

    friend bool operator==(const TransitionTable&, const TransitionTable&) = default;
};

namespace detail {

// Digit -> Action in base 4n+2. Digits 0..4n-1 are Step actions in
// lexicographic (write, move, next) order; digits 4n and 4n+1 are
// HaltWrite{0} and HaltWrite{1}.
inline Action digit_to_action(uint64_t digit, uint32_t n) {
    const uint64_t steps = 4ULL * n;
    if (digit < steps) {
        const Bit write = static_cast<Bit>(digit / (2 * n));
        const uint64_t rem = digit % (2 * n);
        const Move move = static_cast<Move>(rem / n);
        const uint32_t next = static_cast<uint32_t>(rem % n) + 1;
        return Step{write, move, next};
    }
    return HaltWrite{static_cast<Bit>(digit - steps)};
}

inline uint64_t action_to_digit(const Action& a, uint32_t n) {
    if (const auto* s = std::get_if<Step>(&a)) {
        if (s->write > 1 || s->next < 1 || s->next > n)
            throw std::invalid_argument("malformed Step action");
        return static_cast<uint64_t>(s->write) * (2 * n) +
               static_cast<uint64_t>(s->move) * n + (s->next - 1);
    }
    const auto& h = std::get<HaltWrite>(a);
    if (h.write > 1) throw std::invalid_argument("malformed HaltWrite action");
    return 4ULL * n + h.write;
}

} // namespace detail

// Mixed-radix decode of a machine index. Entry (state s, bit b) is digit
// 2(s-1)+b of the index in base 4n+2, least significant first.
inline TransitionTable decode_machine(uint64_t index, MachineClass cls) {
    const uint64_t size = cls.rulespace_size();
    if (index >= size) {
        std::ostringstream msg;
        msg << "machine index " << index << " out of range for (" << cls.states
            << ",2): rulespace size is " << size;
        throw std::out_of_range(msg.str());
    }
    TransitionTable table{cls, {}};
    table.entries.reserve(2 * cls.states);
    const uint64_t base = cls.action_count();
    for (uint32_t slot = 0; slot < 2 * cls.states; ++slot) {
        table.entries.push_back(detail::digit_to_action(index % base, cls.states));
        index /= base;
    }
    return table;
}

// Inverse of decode_machine.
inline uint64_t encode_machine(const TransitionTable& table) {
    const uint32_t n = table.cls.states;
    if (table.entries.size() != 2 * n)
        throw std::invalid_argument("transition table has wrong entry count");
    const uint64_t base = table.cls.action_count();
    uint64_t index = 0;
    for (size_t slot = table.entries.size(); slot-- > 0;) {
        index = index * base + detail::action_to_digit(table.entries[slot], n);
    }
    return index;
}

// Flip every Step's move direction. Involution; halting writes unchanged.
inline TransitionTable mirror(const TransitionTable& table) {
    TransitionTable out = table;
    for (Action& a : out.entries) {
        if (auto* s = std::get_if<Step>(&a))
            s->move = (s->move == Move::Left) ? Move::Right : Move::Left;
    }
    return out;
}

// Debug dump, one line per entry: "state,read -> write,move,next|HALT".
inline std::string dump_table(const TransitionTable& table) {
    std::ostringstream out;
    for (uint32_t s = 1; s <= table.cls.states; ++s) {
        for (Bit b = 0; b <= 1; ++b) {
            out << s << ',' << int(b) << " -> ";
            const Action& a = table.at(s, b);
            if (const auto* st = std::get_if<Step>(&a)) {
                out << int(st->write) << ','
                    << (st->move == Move::Left ? 'L' : 'R') << ',' << st->next;
            } else {
                out << int(std::get<HaltWrite>(a).write) << ",HALT";
            }
            out << '\n';
        }
    }
    return out.str();
}

} // namespace ctmlab
