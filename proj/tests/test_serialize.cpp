#include "ctmlab/serialize.hpp"
#include "ctmlab/sha256.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace ctmlab;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "missing file: " << path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST_CASE("distribution CSV matches the golden D(1) file") {
    const FrequencyDistribution d = compute_D(MachineClass(1), 1);
    std::ostringstream out;
    distribution_to_csv(d, out);
    CHECK(out.str() == read_file(std::string(CTMLAB_SOURCE_DIR) + "/data/golden/d1.csv"));
}

TEST_CASE("distribution CSV matches the golden dual-blank D(2) file") {
    const FrequencyDistribution d = compute_D(MachineClass(2), 6, BlankMode::Both, 4);
    std::ostringstream out;
    distribution_to_csv(d, out);
    CHECK(out.str() ==
          read_file(std::string(CTMLAB_SOURCE_DIR) + "/data/golden/d2_dual_blank.csv"));
}

TEST_CASE("distribution JSON carries the source descriptor and totals") {
    const FrequencyDistribution d = compute_D(MachineClass(1), 1);
    const auto j = distribution_to_json(d);
    CHECK(j["total"] == 12);
    CHECK(j["raw_total"] == 36);
    CHECK(j["entries"].size() == 2);
    CHECK(j["source"].get<std::string>().find("(1,2)") != std::string::npos);
}

TEST_CASE("census and busy beaver JSON") {
    const auto cj = census_to_json(run_census(MachineClass(1), 10));
    CHECK(cj["halting"] == 12);
    CHECK(cj["total_machines"] == 36);
    const auto bj = busy_beaver_to_json(busy_beaver(MachineClass(2), {}, 4));
    CHECK(bj["sigma"] == 4);
    CHECK(bj["s_max"] == 6);
    CHECK(bj["status"] == "exact");
}

TEST_CASE("walk and compare-table CSV shapes") {
    std::ostringstream out;
    walk_to_csv(walk({"101", ""}), out);
    CHECK(out.str() == "index,value\n0,0\n1,1\n2,0\n3,1\n");

    std::vector<CompareCell> cells;
    cells.push_back({5, SpearmanResult{0.5, 30, false}, ""});
    cells.push_back({6, std::nullopt, "empty alignment"});
    std::ostringstream table;
    compare_table_to_csv(cells, table);
    CHECK(table.str() == "k,rho,n,note\n5,0.5,30,\n6,,0,empty alignment\n");
}

TEST_CASE("evolution exports as portable bitmap text") {
    EcaConfig cfg;
    cfg.rule = 204;
    cfg.width = 3;
    cfg.steps = 1;
    std::ostringstream out;
    evolution_to_pbm(evolve(cfg), out);
    CHECK(out.str() == "P1\n3 2\n0 1 0\n0 1 0\n");
}

TEST_CASE("the versioned cutoff config matches the built-in table") {
    std::istringstream in(read_file(std::string(CTMLAB_SOURCE_DIR) + "/data/cutoffs.json"));
    nlohmann::json j;
    in >> j;
    CHECK(j.at("default_guess_cutoff") == kDefaultGuessCutoff);
    const auto& bounds = j.at("known_step_bounds");
    REQUIRE(bounds.size() == kMaxKnownStepBound);
    for (const auto& e : bounds) {
        const uint32_t n = e.at("n").get<uint32_t>();
        REQUIRE(n <= kMaxKnownStepBound);
        CHECK(e.at("s").get<uint64_t>() == kKnownStepBound[n]);
        CHECK((e.at("provenance") == "derived" || e.at("provenance") == "configured"));
    }
}

TEST_CASE("sha256 known vectors") {
    CHECK(Sha256::of("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(Sha256::of("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    // streaming across block boundaries
    Sha256 h;
    const std::string m(200, 'a');
    h.update(m.data(), 100);
    h.update(m.data() + 100, 100);
    Sha256 whole;
    whole.update(m.data(), 200);
    CHECK(h.hex_digest() == whole.hex_digest());
}
