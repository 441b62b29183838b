#include <doctest.h>

#include <set>

#include "mbsim/montecarlo.hpp"

using namespace mbsim;
using namespace mbsim::mc;

TEST_CASE("trial seeds are pairwise distinct") {
    std::set<uint64_t> seeds;
    for (int i = 0; i < 10000; ++i) seeds.insert(derive_trial_seed(321, i));
    CHECK(seeds.size() == 10000);
}

TEST_CASE("wilson interval matches the frozen score computation") {
    auto w = wilson_interval(90, 100);
    CHECK(w.lo == doctest::Approx(0.8256).epsilon(2e-3));
    CHECK(w.hi == doctest::Approx(0.9448).epsilon(2e-3));
    auto all = wilson_interval(10, 10);
    CHECK(all.hi == doctest::Approx(1.0));
    CHECK(all.lo > 0.6);
    auto none = wilson_interval(0, 10);
    CHECK(none.lo == doctest::Approx(0.0));
}

TEST_CASE("unobstructed matching batch wins every trial in 4 rounds") {
    BatchSpec spec;
    spec.game.board = Board::bipartite(4, 4);
    spec.game.smart = Player::Maker;
    spec.game.target = Target::PerfectMatching;
    spec.game.random_bias = 0;
    spec.trials = 10;
    spec.master_seed = 77;
    auto result = run_batch(spec);
    CHECK(result.aggregate.win_rate == doctest::Approx(1.0));
    CHECK(result.aggregate.rounds_mean == doctest::Approx(4.0));
    CHECK(result.aggregate.verification_failures == 0);
}

TEST_CASE("batches are reproducible and worker-count independent") {
    BatchSpec spec;
    spec.game.board = Board::complete(40);
    spec.game.smart = Player::Maker;
    spec.game.target = Target::HamiltonCycle;
    spec.game.random_bias = 8;
    spec.trials = 12;
    spec.master_seed = 2024;
    spec.parallelism = 1;
    auto a = run_batch(spec);
    spec.parallelism = 4;
    auto b = run_batch(spec);
    CHECK(records_to_jsonl(a.records) == records_to_jsonl(b.records));
    CHECK(a.aggregate.wins == b.aggregate.wins);
    CHECK(a.aggregate.rounds_mean == b.aggregate.rounds_mean);
}

TEST_CASE("sweeps produce one row per grid point") {
    BatchSpec base;
    base.game.board = Board::complete(30);
    base.game.smart = Player::Maker;
    base.game.target = Target::HamiltonCycle;
    base.game.random_bias = 2;
    base.trials = 4;
    base.master_seed = 5;
    std::vector<GridPoint> grid;
    for (double b : {2.0, 5.0}) {
        GridPoint p;
        p.overrides["bias"] = b;
        grid.push_back(p);
    }
    auto rows = sweep(base, grid);
    REQUIRE(rows.size() == 2);

    std::vector<GridPoint> m_grid;
    for (double m : {1.0, 2.0, 4.0}) {
        GridPoint p;
        p.overrides["m"] = m;
        m_grid.push_back(p);
    }
    BatchSpec iso = base;
    iso.game.smart = Player::Breaker;
    iso.game.target = Target::PositiveMinDegree;
    iso.game.random_bias = 1;
    auto rows_m = sweep(iso, m_grid);
    CHECK(rows_m.size() == 3);

    CHECK_THROWS_AS(sweep(base, {}), EmptyGrid);
}

TEST_CASE("verification rejects corrupted witnesses") {
    GameSpec spec;
    spec.board = Board::complete(20);
    spec.smart = Player::Maker;
    spec.target = Target::HamiltonCycle;
    spec.random_bias = 2;
    spec.seed = 90;
    TrialOutcome out = run_game(spec);
    REQUIRE(out.winner == Player::Maker);
    std::string why;
    CHECK(verify_outcome(spec, out, &why));
    std::swap(out.witness.cycle[0], out.witness.cycle[1]);
    CHECK(!verify_outcome(spec, out, &why));
    CHECK(!why.empty());
}

TEST_CASE("lemma statistics are aggregated with pass counts") {
    BatchSpec spec;
    spec.game.board = Board::complete(60);
    spec.game.smart = Player::Maker;
    spec.game.target = Target::HamiltonCycle;
    spec.game.random_bias = 12;
    spec.game.epsilon = 0.2;
    spec.trials = 8;
    spec.master_seed = 11;
    auto result = run_batch(spec);
    REQUIRE(result.aggregate.lemma_stat_counts.count("breaker_max_degree_ok"));
    auto [pass, total] = result.aggregate.lemma_stat_counts["breaker_max_degree_ok"];
    CHECK(total == 8);
    CHECK(pass >= 0);
}

TEST_CASE("win rate is non-increasing in the random Breaker's bias") {
    BatchSpec base;
    base.game.board = Board::complete(150);
    base.game.smart = Player::Maker;
    base.game.target = Target::HamiltonCycle;
    base.game.random_bias = 10;
    base.game.epsilon = 0.2;
    base.trials = 40;
    base.master_seed = 31337;
    std::vector<GridPoint> grid;
    for (double b : {20.0, 55.0, 70.0}) {
        GridPoint p;
        p.overrides["bias"] = b;
        grid.push_back(p);
    }
    auto rows = sweep(base, grid);
    REQUIRE(rows.size() == 3);
    for (size_t i = 0; i + 1 < rows.size(); ++i) {
        // non-increasing up to Wilson overlap
        CHECK(rows[i + 1].aggregate.wilson.lo <= rows[i].aggregate.wilson.hi);
    }
    CHECK(rows.front().aggregate.win_rate >= rows.back().aggregate.win_rate);
}

TEST_CASE("csv emission uses the fixed header") {
    CHECK(aggregate_csv_header() ==
          "n,bias,epsilon,k,trials,wins,win_rate,wilson_lo,wilson_hi,rounds_mean,rounds_max,"
          "forfeits");
    GameSpec spec;
    spec.board = Board::complete(10);
    spec.random_bias = 3;
    Aggregate agg;
    agg.trials = 4;
    agg.wins = 3;
    agg.win_rate = 0.75;
    std::string row = aggregate_csv_row(spec, agg);
    CHECK(row.substr(0, 5) == "10,3,");
    CHECK(std::count(row.begin(), row.end(), ',') == 11);  // 12 fields
}
