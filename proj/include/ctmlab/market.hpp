#pragma once

#include "ctmlab/distribution.hpp"

#include <cstdint>
#include <iomanip>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ctmlab {

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PricePoint {
    std::string date;   // original text
    int64_t date_key;   // sortable yyyymmddHHMMSS-style key
    double close;
};

struct PriceSeries {
    std::vector<PricePoint> points;
    std::string label;
};

struct BinarySequence {
    std::string bits;
    std::string provenance;
};

struct WalkSeries {
    std::vector<double> values; // starts at 0, steps of +-1
};

struct CsvSchema {
    std::string date_col = "Date";
    std::string close_col = "Close";
    std::string date_format = "%Y-%m-%d";
};

namespace detail {

inline std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (char c : line) {
        if (c == '"') quoted = !quoted;
        else if (c == ',' && !quoted) { fields.push_back(field); field.clear(); }
        else field.push_back(c);
    }
    fields.push_back(field);
    return fields;
}

inline int64_t parse_date_key(const std::string& text, const std::string& format,
                              size_t row) {
    std::tm tm{};
    std::istringstream in(text);
    in >> std::get_time(&tm, format.c_str());
    if (in.fail()) {
        throw DataError("row " + std::to_string(row) + ": date \"" + text +
                        "\" does not match format \"" + format + "\"");
    }
    return (static_cast<int64_t>(tm.tm_year + 1900) * 10000LL +
            (tm.tm_mon + 1) * 100LL + tm.tm_mday) * 1000000LL +
           tm.tm_hour * 10000LL + tm.tm_min * 100LL + tm.tm_sec;
}

} // namespace detail

// Reads a header + data rows. Rows must already be date-sorted (checked,
// not silently re-sorted); duplicate dates are rejected; calendar gaps
// are fine.
inline PriceSeries ingest_csv(std::istream& in, const CsvSchema& schema,
                              const std::string& label = "") {
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty input: no header row");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto header = detail::split_csv_row(line);
    size_t date_idx = header.size(), close_idx = header.size();
    for (size_t i = 0; i < header.size(); ++i) {
        if (header[i] == schema.date_col) date_idx = i;
        if (header[i] == schema.close_col) close_idx = i;
    }
    if (date_idx == header.size())
        throw DataError("date column \"" + schema.date_col + "\" not found in header");
    if (close_idx == header.size())
        throw DataError("close column \"" + schema.close_col + "\" not found in header");

    PriceSeries series;
    series.label = label;
    size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = detail::split_csv_row(line);
        if (fields.size() <= std::max(date_idx, close_idx))
            throw DataError("row " + std::to_string(row) + ": too few columns");

        PricePoint pt;
        pt.date = fields[date_idx];
        pt.date_key = detail::parse_date_key(pt.date, schema.date_format, row);

        const std::string& close_text = fields[close_idx];
        size_t consumed = 0;
        try {
            pt.close = std::stod(close_text, &consumed);
        } catch (const std::exception&) {
            throw DataError("row " + std::to_string(row) + ": close \"" +
                            close_text + "\" is not numeric");
        }
        if (consumed != close_text.size())
            throw DataError("row " + std::to_string(row) + ": close \"" +
                            close_text + "\" is not numeric");
        if (pt.close <= 0)
            throw DataError("row " + std::to_string(row) + ": close must be > 0");

        if (!series.points.empty()) {
            const int64_t prev = series.points.back().date_key;
            if (pt.date_key == prev)
                throw DataError("row " + std::to_string(row) + ": duplicate date " +
                                pt.date);
            if (pt.date_key < prev)
                throw DataError("row " + std::to_string(row) + ": date " + pt.date +
                                " out of order");
        }
        series.points.push_back(std::move(pt));
    }
    return series;
}

// "1 for a rise, 0 otherwise": equality of consecutive closes encodes 0.
inline BinarySequence encode_directions(const PriceSeries& series) {
    if (series.points.size() < 2)
        throw DataError("need at least 2 price points to encode directions");
    BinarySequence seq;
    seq.bits.reserve(series.points.size() - 1);
    for (size_t i = 0; i + 1 < series.points.size(); ++i)
        seq.bits.push_back(series.points[i + 1].close > series.points[i].close ? '1'
                                                                               : '0');
    seq.provenance = series.label + " " + series.points.front().date + ".." +
                     series.points.back().date;
    return seq;
}

// Overlapping k-windows, step 1; total = |bits| - k + 1.
inline FrequencyDistribution extract_tuples(const BinarySequence& seq, size_t k) {
    if (k < 1 || k > 16) throw std::invalid_argument("k must be in 1..16");
    if (seq.bits.size() < k)
        throw DataError("sequence of length " + std::to_string(seq.bits.size()) +
                        " is shorter than k=" + std::to_string(k));
    FrequencyDistribution dist;
    for (size_t i = 0; i + k <= seq.bits.size(); ++i) {
        ++dist.counts[seq.bits.substr(i, k)];
        ++dist.total;
    }
    dist.source = "market tuples k=" + std::to_string(k) + " from " + seq.provenance;
    return dist;
}

// Fig.-1-style walk: +1 on a rise bit, -1 otherwise, starting at 0.
inline WalkSeries walk(const BinarySequence& seq) {
    if (seq.bits.empty()) throw DataError("cannot walk an empty sequence");
    WalkSeries w;
    w.values.reserve(seq.bits.size() + 1);
    w.values.push_back(0.0);
    for (char c : seq.bits)
        w.values.push_back(w.values.back() + (c == '1' ? 1.0 : -1.0));
    return w;
}

} // namespace ctmlab
