#include "mbsim/box_games.hpp"

namespace mbsim::box {

BoxState::BoxState(int n, int s, int d) : boxes(n), size(s), quota(d) {
    if (n < 1 || s < 1 || d < 1 || d > s)
        throw std::invalid_argument("box game needs n, s >= 1 and 1 <= d <= s");
    owner.assign(static_cast<size_t>(n) * s, 0);
    free_cnt.assign(n, s);
    boxbreaker_cnt.assign(n, 0);
    boxmaker_cnt.assign(n, 0);
    half_quota_free_log.assign(n, -1);
    // Sub-box sizes differ by at most one when d does not divide s.
    sub_of.assign(s, 0);
    int elem = 0;
    for (int sub = 0; sub < d; ++sub) {
        int len = s / d + (sub < s % d ? 1 : 0);
        for (int i = 0; i < len; ++i) sub_of[elem++] = sub;
    }
    sub_collector_cnt.assign(n, std::vector<int>(d, 0));
}

long long BoxState::total_free() const {
    long long total = 0;
    for (int c : free_cnt) total += c;
    return total;
}

std::vector<int> boxbreaker_random_move(BoxState& st, int count, Rng& rng) {
    std::vector<int> claimed;
    for (int i = 0; i < count; ++i) {
        long long total = st.total_free();
        if (total == 0) break;
        long long pick = static_cast<long long>(rng.below(static_cast<uint64_t>(total)));
        int box = 0;
        while (pick >= st.free_cnt[box]) pick -= st.free_cnt[box++];
        int elem = -1;
        for (int e = 0; e < st.size; ++e) {
            if (st.owner[st.element_index(box, e)] != 0) continue;
            if (pick-- == 0) {
                elem = e;
                break;
            }
        }
        const int pre_free = st.free_cnt[box];
        st.owner[st.element_index(box, elem)] = 1;
        --st.free_cnt[box];
        ++st.boxbreaker_cnt[box];
        ++st.sub_collector_cnt[box][st.sub_of[elem]];
        const int half = (st.quota + 1) / 2;
        if (st.boxbreaker_cnt[box] == half && st.half_quota_free_log[box] == -1)
            st.half_quota_free_log[box] = pre_free;
        claimed.push_back(st.element_index(box, elem));
    }
    return claimed;
}

std::vector<int> boxmaker_greedy_move(BoxState& st, int count) {
    std::vector<int> claimed;
    for (int i = 0; i < count; ++i) {
        int box = -1;
        for (int b = 0; b < st.boxes; ++b) {
            if (st.boxbreaker_cnt[b] != 0 || st.free_cnt[b] == 0) continue;
            if (box == -1 || st.free_cnt[b] < st.free_cnt[box]) box = b;
        }
        if (box == -1) {
            for (int b = 0; b < st.boxes; ++b)
                if (st.free_cnt[b] > 0) {
                    box = b;
                    break;
                }
        }
        if (box == -1) break;
        for (int e = 0; e < st.size; ++e) {
            int idx = st.element_index(box, e);
            if (st.owner[idx] == 0) {
                st.owner[idx] = 2;
                --st.free_cnt[box];
                ++st.boxmaker_cnt[box];
                claimed.push_back(idx);
                break;
            }
        }
    }
    return claimed;
}

BoxOutcome box_winner(const BoxState& st) {
    bool all_met = true;
    for (int b = 0; b < st.boxes; ++b) {
        if (st.boxbreaker_cnt[b] + st.free_cnt[b] < st.quota) return BoxOutcome::BoxMakerWin;
        if (st.boxbreaker_cnt[b] < st.quota) all_met = false;
    }
    return all_met ? BoxOutcome::BoxBreakerWin : BoxOutcome::Undecided;
}

bool dbox_milestone_check(const BoxState& st) {
    for (int b = 0; b < st.boxes; ++b)
        if (st.half_quota_free_log[b] == -1)
            throw MilestoneUnlogged("box " + std::to_string(b) +
                                    " never reached half its quota");
    for (int b = 0; b < st.boxes; ++b)
        if (2 * st.half_quota_free_log[b] < st.size) return false;
    return true;
}

bool all_subboxes_touched(const BoxState& st) {
    for (const auto& subs : st.sub_collector_cnt)
        for (int c : subs)
            if (c == 0) return false;
    return true;
}

BoxGameResult run_box_game(int boxes, int size, int a, int b, int quota, uint64_t seed) {
    BoxState st(boxes, size, quota);
    Rng rng(seed);
    BoxGameResult res;
    while (true) {
        ++res.rounds;
        boxmaker_greedy_move(st, a);
        boxbreaker_random_move(st, b, rng);
        res.outcome = box_winner(st);
        if (res.outcome != BoxOutcome::Undecided || st.exhausted()) break;
    }
    if (res.outcome == BoxOutcome::Undecided) res.outcome = box_winner(st);
    res.subboxes_touched = all_subboxes_touched(st);
    res.milestone_logged = true;
    for (int i = 0; i < st.boxes; ++i)
        if (st.half_quota_free_log[i] == -1) res.milestone_logged = false;
    res.milestone_pass = res.milestone_logged && [&] {
        for (int i = 0; i < st.boxes; ++i)
            if (2 * st.half_quota_free_log[i] < st.size) return false;
        return true;
    }();
    return res;
}

}  // namespace mbsim::box
