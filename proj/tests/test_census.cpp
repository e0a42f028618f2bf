#include "ctmlab/census.hpp"
#include "ctmlab/random.hpp"

#include <doctest.h>

using namespace ctmlab;

TEST_CASE("(1,2) census: 12 of 36 halt") {
    const CensusReport r = run_census(MachineClass(1), 10);
    CHECK(r.total_machines == 36);
    CHECK(r.total_runs == 36);
    CHECK(r.halting == 12);
    CHECK(r.halting + r.non_halting_proven + r.unresolved == r.total_runs);
    CHECK(r.max_steps_observed == 1);
    CHECK(r.max_ones_observed == 1);
}

TEST_CASE("(2,2) dual-blank census: 6088 halting runs") {
    const CensusReport r = run_census(MachineClass(2), 50, BlankMode::Both);
    CHECK(r.total_machines == 10000);
    CHECK(r.total_runs == 20000);
    CHECK(r.halting == 6088);
    CHECK(r.max_steps_observed == 6);
    CHECK(r.max_ones_observed == 4);
}

TEST_CASE("(2,2) halting count identical at cutoff 6 and cutoff 1000") {
    const CensusReport a = run_census(MachineClass(2), 6);
    const CensusReport b = run_census(MachineClass(2), 1000);
    CHECK(a.halting == b.halting);
    CHECK(a.halting == 3044);
}

TEST_CASE("census monotone in cutoff") {
    uint64_t prev = 0;
    for (uint64_t cutoff : {1, 2, 3, 4, 5, 6, 7}) {
        const CensusReport r = run_census(MachineClass(2), cutoff);
        CHECK(r.halting >= prev);
        CHECK(r.max_steps_observed <= cutoff);
        prev = r.halting;
    }
}

TEST_CASE("census is worker-count independent") {
    const CensusReport a = run_census(MachineClass(2), 10, BlankMode::Both, 1);
    const CensusReport b = run_census(MachineClass(2), 10, BlankMode::Both, 4);
    const CensusReport c = run_census(MachineClass(2), 10, BlankMode::Both, 16);
    CHECK(a.halting == b.halting);
    CHECK(a.halting == c.halting);
    CHECK(a.non_halting_proven == b.non_halting_proven);
    CHECK(a.non_halting_proven == c.non_halting_proven);
    CHECK(a.unresolved == c.unresolved);
    CHECK(a.max_steps_observed == c.max_steps_observed);
}

TEST_CASE("census refuses classes beyond the exhaustive budget") {
    CHECK_THROWS_AS(run_census(MachineClass(4), 10), BudgetError);
}

TEST_CASE("busy beaver n=1 and n=2") {
    const BusyBeaverRecord b1 = busy_beaver(MachineClass(1));
    CHECK(b1.sigma == 1);
    CHECK(b1.s_max == 1);
    CHECK(b1.status == BusyBeaverRecord::Status::Exact);

    const BusyBeaverRecord b2 = busy_beaver(MachineClass(2), {}, 4);
    CHECK(b2.sigma == 4);
    CHECK(b2.s_max == 6);
    CHECK(b2.status == BusyBeaverRecord::Status::Exact);
}

TEST_CASE("cutoff_for") {
    CHECK(cutoff_for(MachineClass(1)) == 1);
    CHECK(cutoff_for(MachineClass(2)) == 6);
    CHECK(cutoff_for(MachineClass(3)) == 21);
    CHECK(cutoff_for(MachineClass(4)) == 107);
    CHECK(cutoff_for(MachineClass(5)) == 500);
    CHECK(cutoff_for(MachineClass(5), 1234) == 1234);
}

TEST_CASE("detector soundness: proven non-halters still run at 10x the cutoff") {
    // spot check over a sample of (2,2) machines
    const MachineClass c2(2);
    uint64_t seed = 99;
    int proven_seen = 0;
    for (int i = 0; i < 2000; ++i) {
        const uint64_t idx = bounded(splitmix64(seed), c2.rulespace_size());
        const TransitionTable t = decode_machine(idx, c2);
        const SimResult r = simulate_full(t, 6, 0, true);
        if (r.proof != NonHaltProof::None) {
            ++proven_seen;
            CHECK(!halted(simulate(t, 60)));
        }
    }
    CHECK(proven_seen > 0);
}

TEST_CASE("halting fraction") {
    const HaltingFraction f1 = halting_fraction(run_census(MachineClass(1), 10));
    CHECK(f1.fraction == doctest::Approx(1.0 / 3.0));
    const HaltingFraction f2 =
        halting_fraction(run_census(MachineClass(2), 10, BlankMode::Both));
    CHECK(f2.fraction == doctest::Approx(0.6088));
}
