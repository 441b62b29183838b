#include <doctest.h>

#include <map>

#include "mbsim/box_games.hpp"
#include "mbsim/montecarlo.hpp"

using namespace mbsim;
using namespace mbsim::box;

namespace {

// test helper: hand the adversary specific elements
void block(BoxState& st, int box, int count) {
    for (int e = 0; e < st.size && count > 0; ++e) {
        int idx = st.element_index(box, e);
        if (st.owner[idx] == 0) {
            st.owner[idx] = 2;
            --st.free_cnt[box];
            ++st.boxmaker_cnt[box];
            --count;
        }
    }
}

}  // namespace

TEST_CASE("two boxes of one element each are exhausted in one collector move") {
    BoxState st(2, 1, 1);
    Rng rng(3);
    auto claimed = boxbreaker_random_move(st, 2, rng);
    CHECK(claimed.size() == 2);
    CHECK(st.exhausted());
    CHECK(box_winner(st) == BoxOutcome::BoxBreakerWin);
}

TEST_CASE("a single box receives every claim") {
    BoxState st(1, 5, 1);
    Rng rng(4);
    boxbreaker_random_move(st, 3, rng);
    CHECK(st.boxbreaker_cnt[0] == 3);
}

TEST_CASE("collector hits boxes in proportion to their free counts") {
    // free counts 5, 10, 2, 10: first-hit frequency within 2% of the law
    const int trials = 100000;
    std::map<int, int> hits;
    for (int t = 0; t < trials; ++t) {
        BoxState st(4, 10, 1);
        block(st, 0, 5);
        block(st, 2, 8);
        Rng rng(mc::derive_trial_seed(500, t));
        auto claimed = boxbreaker_random_move(st, 1, rng);
        ++hits[claimed.at(0) / st.size];
    }
    const double total = 27.0;
    CHECK(hits[0] / static_cast<double>(trials) == doctest::Approx(5 / total).epsilon(0.11));
    CHECK(hits[1] / static_cast<double>(trials) == doctest::Approx(10 / total).epsilon(0.11));
    CHECK(hits[2] / static_cast<double>(trials) == doctest::Approx(2 / total).epsilon(0.11));
    CHECK(hits[3] / static_cast<double>(trials) == doctest::Approx(10 / total).epsilon(0.11));
}

TEST_CASE("greedy adversary attacks the scarcest untouched box") {
    BoxState st(3, 5, 1);
    block(st, 0, 2);  // free 3
    block(st, 1, 4);  // free 1
    auto one = boxmaker_greedy_move(st, 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0] / st.size == 1);

    BoxState st2(3, 5, 1);
    block(st2, 0, 2);
    block(st2, 1, 4);
    auto four = boxmaker_greedy_move(st2, 4);
    REQUIRE(four.size() == 4);
    CHECK(four[0] / st2.size == 1);  // empties box 1
    CHECK(four[1] / st2.size == 0);  // then eats the 3 free of box 0
    CHECK(four[2] / st2.size == 0);
    CHECK(four[3] / st2.size == 0);
}

TEST_CASE("greedy adversary falls back to the lowest touched box") {
    BoxState st(2, 3, 1);
    Rng rng(8);
    // touch both boxes
    while (st.boxbreaker_cnt[0] == 0 || st.boxbreaker_cnt[1] == 0)
        boxbreaker_random_move(st, 1, rng);
    auto claimed = boxmaker_greedy_move(st, 1);
    REQUIRE(claimed.size() == 1);
    CHECK(claimed[0] / st.size == 0);
}

TEST_CASE("winner detection") {
    BoxState fresh(3, 4, 1);
    CHECK(box_winner(fresh) == BoxOutcome::Undecided);

    BoxState won(2, 4, 1);
    Rng rng(5);
    while (box_winner(won) == BoxOutcome::Undecided) boxbreaker_random_move(won, 1, rng);
    CHECK(box_winner(won) == BoxOutcome::BoxBreakerWin);

    BoxState dead(2, 4, 4);
    block(dead, 0, 1);  // box 0: 3 free + 0 collector < quota 4
    CHECK(box_winner(dead) == BoxOutcome::BoxMakerWin);
}

TEST_CASE("quota-half milestone logging") {
    BoxState st(1, 4, 2);
    block(st, 0, 1);  // 3 free
    Rng rng(6);
    boxbreaker_random_move(st, 1, rng);  // collector's first element, half of quota 2
    CHECK(st.half_quota_free_log[0] == 3);
    CHECK(dbox_milestone_check(st));  // 2*3 >= 4

    BoxState low(1, 4, 2);
    block(low, 0, 3);  // only 1 free
    boxbreaker_random_move(low, 1, rng);
    CHECK(low.half_quota_free_log[0] == 1);
    CHECK(!dbox_milestone_check(low));

    BoxState never(2, 4, 2);
    CHECK_THROWS_AS(dbox_milestone_check(never), MilestoneUnlogged);
}

TEST_CASE("sub-box coverage forces the quota everywhere") {
    for (uint64_t seed = 1; seed <= 50; ++seed) {
        auto res = run_box_game(4, 8, 1, 3, 2, splitmix64(seed * 17));
        if (res.subboxes_touched) CHECK(res.outcome == BoxOutcome::BoxBreakerWin);
    }
}

TEST_CASE("element conservation per box") {
    BoxState st(5, 6, 2);
    Rng rng(9);
    for (int round = 0; round < 10 && !st.exhausted(); ++round) {
        boxmaker_greedy_move(st, 1);
        boxbreaker_random_move(st, 2, rng);
        for (int b = 0; b < st.boxes; ++b)
            CHECK(st.free_cnt[b] + st.boxbreaker_cnt[b] + st.boxmaker_cnt[b] == st.size);
    }
}

TEST_CASE("collector win rate grows with its bias") {
    auto rate = [](int b) {
        int wins = 0;
        const int trials = 150;
        for (int t = 0; t < trials; ++t)
            if (run_box_game(20, 10, 1, b, 1, mc::derive_trial_seed(42, t)).outcome ==
                BoxOutcome::BoxBreakerWin)
                ++wins;
        return static_cast<double>(wins) / trials;
    };
    double r1 = rate(1), r4 = rate(4), r12 = rate(12);
    CHECK(r1 <= r4 + 0.05);
    CHECK(r4 <= r12 + 0.05);
    CHECK(r12 > 0.5);
}
