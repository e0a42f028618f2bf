#include "ctmlab/market.hpp"

#include <doctest.h>

#include <sstream>

using namespace ctmlab;

namespace {

PriceSeries series_of(std::initializer_list<double> closes) {
    PriceSeries s;
    int day = 1;
    for (double c : closes) {
        s.points.push_back({"2020-01-" + std::to_string(day), day, c});
        ++day;
    }
    return s;
}

} // namespace

TEST_CASE("ingest: well-formed file") {
    std::istringstream in("Date,Close\n2020-01-01,10\n2020-01-02,11.5\n2020-01-03,9\n");
    const PriceSeries s = ingest_csv(in, CsvSchema{});
    REQUIRE(s.points.size() == 3);
    CHECK(s.points[1].close == doctest::Approx(11.5));
    CHECK(s.points[2].date == "2020-01-03");
}

TEST_CASE("ingest: custom columns and date format") {
    std::istringstream in("ts,ignored,px\n01/02/2020,x,10\n02/02/2020,y,12\n");
    const PriceSeries s = ingest_csv(in, CsvSchema{"ts", "px", "%d/%m/%Y"});
    REQUIRE(s.points.size() == 2);
    CHECK(s.points[0].close == doctest::Approx(10));
}

TEST_CASE("ingest: non-numeric close names the row") {
    std::istringstream in("Date,Close\n2020-01-01,10\n2020-01-02,abc\n");
    CHECK_THROWS_WITH_AS(ingest_csv(in, CsvSchema{}),
                         doctest::Contains("row 3"), DataError);
}

TEST_CASE("ingest: out-of-order dates rejected, not re-sorted") {
    std::istringstream in("Date,Close\n2020-01-05,10\n2020-01-02,11\n");
    CHECK_THROWS_WITH_AS(ingest_csv(in, CsvSchema{}),
                         doctest::Contains("out of order"), DataError);
}

TEST_CASE("ingest: duplicate dates rejected") {
    std::istringstream in("Date,Close\n2020-01-01,10\n2020-01-01,11\n");
    CHECK_THROWS_WITH_AS(ingest_csv(in, CsvSchema{}),
                         doctest::Contains("duplicate"), DataError);
}

TEST_CASE("ingest: missing columns and non-positive closes") {
    std::istringstream a("When,Close\n2020-01-01,10\n");
    CHECK_THROWS_AS(ingest_csv(a, CsvSchema{}), DataError);
    std::istringstream b("Date,Close\n2020-01-01,0\n");
    CHECK_THROWS_AS(ingest_csv(b, CsvSchema{}), DataError);
}

TEST_CASE("encode_directions") {
    CHECK(encode_directions(series_of({1, 2, 3})).bits == "11");
    CHECK(encode_directions(series_of({3, 2, 2})).bits == "00"); // flat -> 0
    CHECK(encode_directions(series_of({1, 2, 1, 2})).bits == "101");
    CHECK_THROWS_AS(encode_directions(series_of({1})), DataError);
}

TEST_CASE("extract_tuples: the 13-bit example string with k=7") {
    const BinarySequence seq{"0111001100110", "example"};
    const FrequencyDistribution d = extract_tuples(seq, 7);
    CHECK(d.total == 7);
    CHECK(d.count_of("1100110") == 2);
    for (const char* w : {"0111001", "1110011", "1001100", "0011001", "0110011"})
        CHECK(d.count_of(w) == 1);
    CHECK(d.counts.size() == 6);
}

TEST_CASE("extract_tuples: degenerate and edge inputs") {
    CHECK(extract_tuples({"0000", ""}, 2).count_of("00") == 3);
    const FrequencyDistribution d = extract_tuples({"01", ""}, 2);
    CHECK(d.count_of("01") == 1);
    CHECK(d.total == 1);
    CHECK_THROWS_AS(extract_tuples({"01", ""}, 3), DataError);
    CHECK_THROWS_AS(extract_tuples({"01", ""}, 0), std::invalid_argument);
}

TEST_CASE("tuple totals: sum of counts = |bits| - k + 1") {
    const BinarySequence seq{"01101001110101101", ""};
    for (size_t k = 1; k <= 8; ++k) {
        const FrequencyDistribution d = extract_tuples(seq, k);
        uint64_t sum = 0;
        for (const auto& [s, c] : d.counts) sum += c;
        CHECK(sum == seq.bits.size() - k + 1);
        CHECK(sum == d.total);
    }
}

TEST_CASE("shift coherence: dropping the first bit removes one window") {
    const BinarySequence seq{"0110100111010", ""};
    const BinarySequence suffix{seq.bits.substr(1), ""};
    for (size_t k = 2; k <= 5; ++k) {
        const FrequencyDistribution full = extract_tuples(seq, k);
        const FrequencyDistribution cut = extract_tuples(suffix, k);
        CHECK(full.total == cut.total + 1);
        const std::string dropped = seq.bits.substr(0, k);
        for (const auto& [s, c] : full.counts)
            CHECK(c == cut.count_of(s) + (s == dropped ? 1 : 0));
    }
}

TEST_CASE("walk") {
    CHECK(walk({"11", ""}).values == std::vector<double>{0, 1, 2});
    CHECK(walk({"00", ""}).values == std::vector<double>{0, -1, -2});
    CHECK(walk({"10", ""}).values == std::vector<double>{0, 1, 0});
    CHECK_THROWS_AS(walk({"", ""}), DataError);
}

TEST_CASE("walk endpoint equals #1s - #0s") {
    const BinarySequence seq{"1101001011101", ""};
    const WalkSeries w = walk(seq);
    CHECK(w.values.size() == seq.bits.size() + 1);
    int64_t expected = 0;
    for (char c : seq.bits) expected += (c == '1') ? 1 : -1;
    CHECK(w.values.back() == doctest::Approx(expected));
}
