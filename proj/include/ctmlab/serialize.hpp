#pragma once

#include "ctmlab/census.hpp"
#include "ctmlab/distribution.hpp"
#include "ctmlab/eca.hpp"
#include "ctmlab/market.hpp"
#include "ctmlab/stats.hpp"

#include <json.hpp>

#include <cstdio>
#include <ostream>
#include <string>

namespace ctmlab {

// Probabilities are printed with 17 significant digits so that emitted
// files round-trip the underlying doubles byte-identically.
inline std::string format_probability(uint64_t count, uint64_t total) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g",
                  static_cast<double>(count) / static_cast<double>(total));
    return buf;
}

// Stable CSV layout: header + one row per string, lexicographic order.
inline void distribution_to_csv(const FrequencyDistribution& dist,
                                std::ostream& out) {
    out << "string,count,probability\n";
    for (const auto& [s, c] : dist.counts)
        out << s << ',' << c << ',' << format_probability(c, dist.total) << '\n';
}

inline nlohmann::ordered_json distribution_to_json(const FrequencyDistribution& dist) {
    nlohmann::ordered_json j;
    j["source"] = dist.source;
    j["total"] = dist.total;
    if (dist.raw_total && dist.raw_total != dist.total)
        j["raw_total"] = dist.raw_total;
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (const auto& [s, c] : dist.counts) {
        entries.push_back({{"string", s},
                           {"count", c},
                           {"probability", static_cast<double>(c) / dist.total}});
    }
    j["entries"] = std::move(entries);
    return j;
}

inline nlohmann::ordered_json census_to_json(const CensusReport& r) {
    return {{"states", r.cls.states},
            {"blank", to_string(r.blank)},
            {"total_machines", r.total_machines},
            {"total_runs", r.total_runs},
            {"halting", r.halting},
            {"non_halting_proven", r.non_halting_proven},
            {"unresolved", r.unresolved},
            {"cutoff_used", r.cutoff_used},
            {"max_steps_observed", r.max_steps_observed},
            {"max_ones_observed", r.max_ones_observed}};
}

inline nlohmann::ordered_json busy_beaver_to_json(const BusyBeaverRecord& r) {
    return {{"n", r.n},
            {"sigma", r.sigma},
            {"s_max", r.s_max},
            {"status",
             r.status == BusyBeaverRecord::Status::Exact ? "exact" : "lower-bound"},
            {"provenance", r.provenance}};
}

inline void walk_to_csv(const WalkSeries& w, std::ostream& out) {
    out << "index,value\n";
    for (size_t i = 0; i < w.values.size(); ++i)
        out << i << ',' << static_cast<int64_t>(w.values[i]) << '\n';
}

inline void compare_table_to_csv(const std::vector<CompareCell>& cells,
                                 std::ostream& out) {
    out << "k,rho,n,note\n";
    for (const auto& cell : cells) {
        out << cell.k << ',';
        if (cell.result && !cell.result->degenerate) {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", cell.result->rho);
            out << buf << ',' << cell.result->n;
        } else {
            out << ',' << (cell.result ? cell.result->n : 0);
        }
        out << ',' << cell.note << '\n';
    }
}

// Text table mirroring the "rho|n" cell layout.
inline void compare_table_pretty(const std::vector<CompareCell>& cells,
                                 std::ostream& out) {
    out << "k     rho|n\n";
    for (const auto& cell : cells) {
        out << cell.k << "     ";
        if (cell.result && !cell.result->degenerate) {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.2g", cell.result->rho);
            out << buf << '|' << cell.result->n;
        } else {
            out << "-" << (cell.note.empty() ? "" : " (" + cell.note + ")");
        }
        out << '\n';
    }
}

// Portable bitmap (P1) text for visual inspection of an evolution.
inline void evolution_to_pbm(const Evolution& ev, std::ostream& out) {
    out << "P1\n" << ev.rows[0].size() << ' ' << ev.rows.size() << '\n';
    for (const auto& row : ev.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out << ' ';
            out << int(row[i]);
        }
        out << '\n';
    }
}

} // namespace ctmlab
