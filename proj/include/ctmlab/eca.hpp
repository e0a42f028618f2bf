#pragma once

#include "ctmlab/distribution.hpp"
#include "ctmlab/random.hpp"

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ctmlab {

enum class Boundary : uint8_t { Cyclic, FixedZero };

struct SeededRandomInit {
    uint64_t seed = 0;
    double density = 0.5; // probability of a 1 cell
};

struct EcaConfig {
    uint32_t rule = 30;
    size_t width = 63;
    size_t steps = 63;
    Boundary boundary = Boundary::Cyclic;
    bool random_init = false; // false: single centered 1
    SeededRandomInit init{};
};

// rows[0] is the initial condition; steps more rows follow.
struct Evolution {
    std::vector<std::vector<Bit>> rows;
};

namespace detail {

inline std::vector<Bit> initial_row(const EcaConfig& cfg) {
    std::vector<Bit> row(cfg.width, 0);
    if (cfg.random_init) {
        const auto threshold = static_cast<uint64_t>(
            cfg.init.density * 18446744073709551615.0);
        for (size_t i = 0; i < cfg.width; ++i)
            row[i] = counter_rng(cfg.init.seed, i) < threshold ? 1 : 0;
    } else {
        row[cfg.width / 2] = 1;
    }
    return row;
}

} // namespace detail

// One synchronous update per row: new cell i is the rule bit indexed by
// the (left, self, right) neighborhood read as a 3-bit number.
inline Evolution evolve(const EcaConfig& cfg) {
    if (cfg.rule > 255) throw std::invalid_argument("ECA rule must be 0..255");
    if (cfg.width < 3) throw std::invalid_argument("ECA width must be >= 3");
    if (cfg.steps < 1) throw std::invalid_argument("ECA steps must be >= 1");

    Evolution ev;
    ev.rows.reserve(cfg.steps + 1);
    ev.rows.push_back(detail::initial_row(cfg));
    const size_t w = cfg.width;
    for (size_t t = 0; t < cfg.steps; ++t) {
        const auto& prev = ev.rows.back();
        std::vector<Bit> next(w);
        for (size_t i = 0; i < w; ++i) {
            Bit l, r;
            if (cfg.boundary == Boundary::Cyclic) {
                l = prev[(i + w - 1) % w];
                r = prev[(i + 1) % w];
            } else {
                l = i > 0 ? prev[i - 1] : 0;
                r = i + 1 < w ? prev[i + 1] : 0;
            }
            const unsigned idx = (l << 2) | (prev[i] << 1) | r;
            next[i] = (cfg.rule >> idx) & 1;
        }
        ev.rows.push_back(std::move(next));
    }
    return ev;
}

// Central column of a single-1 evolution, width padded so the light cone
// never reaches the boundary. Bit 0 is the seeded cell itself.
inline std::string central_column(uint32_t rule, size_t steps) {
    if (steps < 1) throw std::invalid_argument("steps must be >= 1");
    EcaConfig cfg;
    cfg.rule = rule;
    cfg.steps = steps;
    cfg.width = 2 * steps + 3;
    cfg.boundary = Boundary::FixedZero;
    const Evolution ev = evolve(cfg);
    const size_t center = cfg.width / 2;
    std::string out;
    out.reserve(steps + 1);
    for (const auto& row : ev.rows) out.push_back(row[center] ? '1' : '0');
    return out;
}

// Aggregated k-tuple distribution over the evolutions of a rule set.
// Every row (including the initial condition) is sliced into overlapping
// k-windows with step 1; counts merge across rows and rules.
inline FrequencyDistribution eca_tuple_distribution(
    const std::vector<uint32_t>& rules, size_t k, EcaConfig tmpl = {},
    bool slice_columns = false) {
    if (rules.empty()) throw std::invalid_argument("rule set must be non-empty");
    if (k < 1 || k > 16) throw std::invalid_argument("k must be in 1..16");

    FrequencyDistribution dist;
    for (uint32_t rule : rules) {
        EcaConfig cfg = tmpl;
        cfg.rule = rule;
        const Evolution ev = evolve(cfg);

        auto slice = [&](const std::string& line) {
            if (line.size() < k) return;
            for (size_t i = 0; i + k <= line.size(); ++i) {
                ++dist.counts[line.substr(i, k)];
                ++dist.total;
            }
        };

        if (slice_columns) {
            for (size_t c = 0; c < cfg.width; ++c) {
                std::string col;
                col.reserve(ev.rows.size());
                for (const auto& row : ev.rows) col.push_back(row[c] ? '1' : '0');
                slice(col);
            }
        } else {
            for (const auto& row : ev.rows) {
                std::string line;
                line.reserve(row.size());
                for (Bit b : row) line.push_back(b ? '1' : '0');
                slice(line);
            }
        }
    }

    std::ostringstream src;
    src << "eca rules=" << rules.size() << " k=" << k << " width=" << tmpl.width
        << " steps=" << tmpl.steps
        << " boundary=" << (tmpl.boundary == Boundary::Cyclic ? "cyclic" : "fixed0")
        << " init="
        << (tmpl.random_init
                ? "random seed=" + std::to_string(tmpl.init.seed)
                : std::string("single-1"))
        << " slice=" << (slice_columns ? "columns" : "rows");
    dist.source = src.str();
    return dist;
}

// All 256 elementary rules; the default reference distribution's rule set.
inline std::vector<uint32_t> all_eca_rules() {
    std::vector<uint32_t> rules(256);
    for (uint32_t i = 0; i < 256; ++i) rules[i] = i;
    return rules;
}

} // namespace ctmlab
