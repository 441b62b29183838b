#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mbsim/rng.hpp"

namespace mbsim::box {

struct MilestoneUnlogged : std::logic_error {
    using std::logic_error::logic_error;
};

enum class BoxOutcome { BoxBreakerWin, BoxMakerWin, Undecided };

// Position of the auxiliary box game: n boxes of s elements. The random
// side ("boxbreaker"; the collector in the d-variant) wants a quota of
// elements in every box, the adversary ("boxmaker") blocks. Elements are
// concrete so the d-variant's sub-box partition can be tracked.
struct BoxState {
    int boxes = 0;
    int size = 0;
    int quota = 1;  // 1 for the plain game, d for the d-variant

    // owner per element: 0 free, 1 boxbreaker (collector), 2 boxmaker
    std::vector<uint8_t> owner;
    std::vector<int> free_cnt, boxbreaker_cnt, boxmaker_cnt;
    // free count logged the moment the collector reached ceil(quota/2)
    // in a box; -1 while unlogged
    std::vector<int> half_quota_free_log;
    // sub-box partition (d-variant): sub_of[element] in [0, quota)
    std::vector<int> sub_of;
    std::vector<std::vector<int>> sub_collector_cnt;  // per box, per sub-box

    BoxState(int n, int s, int d = 1);

    int element_index(int box, int elem) const { return box * size + elem; }
    long long total_free() const;
    bool exhausted() const { return total_free() == 0; }
};

// Claim `count` free elements uniformly at random (without replacement)
// for the collector side; truncates when fewer remain.
std::vector<int> boxbreaker_random_move(BoxState& st, int count, Rng& rng);

// Adversary: claim free elements from the box untouched by the collector
// with the fewest free elements, lowest index on ties; if every box is
// touched, lowest-index box with free elements.
std::vector<int> boxmaker_greedy_move(BoxState& st, int count);

BoxOutcome box_winner(const BoxState& st);

// After a finished d-variant game: did every box still hold at least s/2
// free elements at the moment the collector reached quota/2 there?
// Throws MilestoneUnlogged if some box never got that far.
bool dbox_milestone_check(const BoxState& st);

// Sub-box reduction: true iff the collector touched every sub-box.
bool all_subboxes_touched(const BoxState& st);

struct BoxGameResult {
    BoxOutcome outcome = BoxOutcome::Undecided;
    long long rounds = 0;
    bool milestone_pass = false;   // d-variant only, valid on collector wins
    bool milestone_logged = false;
    bool subboxes_touched = false;
};

// Play one full game: boxmaker greedy (bias a) first each round, then the
// random collector (bias b). Ends at a decided position or an empty board.
BoxGameResult run_box_game(int boxes, int size, int a, int b, int quota, uint64_t seed);

}  // namespace mbsim::box
