#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "mbsim/engine.hpp"

namespace mbsim {

// A strategy's view of the board: a clique on a vertex subset or the
// bipartite graph between two subsets. Edges outside the view are ignored.
struct SubBoard {
    enum class Kind { Clique, Bipartite };
    Kind kind = Kind::Clique;
    std::vector<int> left;   // clique vertices, or the left part
    std::vector<int> right;  // bipartite right part
    std::vector<uint8_t> in_left, in_right;

    static SubBoard clique(int total_vertices, std::vector<int> verts);
    static SubBoard bipartite(int total_vertices, std::vector<int> l, std::vector<int> r);

    bool contains(int v) const {
        return in_left[static_cast<size_t>(v)] || in_right[static_cast<size_t>(v)];
    }
    bool has_edge(int u, int v) const {
        if (u == v) return false;
        if (kind == Kind::Clique) return in_left[u] && in_left[v];
        return (in_left[u] && in_right[v]) || (in_left[v] && in_right[u]);
    }
    int size() const { return static_cast<int>(left.size() + right.size()); }
};

// Halves for playing the matching game inside a complete board: disjoint
// halves of size floor(n/2); one leftover vertex when n is odd.
struct EmbeddedHalves {
    std::vector<int> half_a, half_b;
    std::optional<int> leftover;
};
EmbeddedHalves embed_halves(int n);

// Hamilton-cycle builder: grow a long path with a look-ahead degree rule,
// then close it through endpoint rotations and absorb the leftover
// vertices one by one.
class PathCycleStrategy final : public Strategy {
public:
    PathCycleStrategy(SubBoard sub, double epsilon);

    std::string name() const override { return "s_ham"; }
    Player side() const override { return Player::Maker; }
    StrategyStep next(const GameGraph& g) override;
    void final_stats(const GameGraph& g, std::map<std::string, bool>& out) const override;

    // Test hook: adopt an existing position (path must be Maker's).
    void adopt_path(const GameGraph& g, const std::vector<int>& path);

    int grow_threshold() const { return t1_; }
    int residue() const { return stop_; }
    const std::vector<int>& cycle() const { return cycle_; }
    long long replans() const { return replans_; }

private:
    enum class Phase { PathGrow, Close, Absorb, Finished };

    StrategyStep grow_step(const GameGraph& g);
    StrategyStep close_step(const GameGraph& g);
    StrategyStep absorb_step(const GameGraph& g);
    StrategyStep continue_plan(const GameGraph& g);
    StrategyStep finish_cycle(std::vector<int> cycle);

    bool plan_rotation(const GameGraph& g);
    int r_degree(const GameGraph& g, int u, int exclude = -1) const;
    void move_to_path(int v);

    SubBoard sub_;
    double eps_;
    int t1_ = 1, t2_ = 1, t3_ = 1, stop_ = 1;
    int grow_target_ = 2;
    Phase phase_ = Phase::PathGrow;
    std::vector<int> path_;
    std::vector<uint8_t> in_path_;
    std::vector<int> r_verts_;  // sorted, vertices of the view not on the path
    std::vector<int> cycle_;
    std::vector<std::pair<int, int>> plan_;
    size_t plan_next_ = 0;
    std::vector<int> planned_cycle_;
    long long replans_ = 0;
    bool early_close_ = false;
};

// Matching builder: greedy matching on untouched pairs, a repair pass for
// vertices starved of free edges, then a planned perfect matching on the
// residue (re-planned, with repair swaps, whenever the plan dies).
class MatchingStrategy final : public Strategy {
public:
    MatchingStrategy(SubBoard sub, double epsilon, double alpha);

    std::string name() const override { return "s_pm"; }
    Player side() const override { return Player::Maker; }
    StrategyStep next(const GameGraph& g) override;
    void final_stats(const GameGraph& g, std::map<std::string, bool>& out) const override;

    // Test hook: adopt a stage-two position (planned matching + residue).
    void adopt_position(const GameGraph& g,
                        const std::vector<std::pair<int, int>>& planned_matching);

    int residue_per_side() const { return residue_; }
    const std::vector<int>& residue_left() const { return r_left_; }
    std::vector<std::pair<int, int>> repaired_matching() const;

private:
    enum class Stage { Greedy, Repair, Residue, Finished };

    StrategyStep greedy_step(const GameGraph& g);
    StrategyStep repair_step(const GameGraph& g);
    StrategyStep residue_step(const GameGraph& g);
    void enter_repair(const GameGraph& g);
    int free_into(const GameGraph& g, int v, const std::vector<int>& pool) const;
    // One repair swap for v: claim {v,u}, rotate w into the residue.
    std::optional<StrategyStep> swap_out(const GameGraph& g, int v, bool maximize_partner);

    SubBoard sub_;
    double eps_;
    double alpha_;
    int side_size_ = 0;
    int residue_ = 1;         // ceil(side^alpha), floored at 1
    int repair_threshold_ = 1;
    int partner_threshold_ = 1;
    Stage stage_ = Stage::Greedy;
    long long greedy_remaining_ = 0;
    std::vector<int> match_planned_;   // current planning matching P, -1 when unmatched
    std::vector<int> match_final_;     // repaired matching P', grows into the witness
    std::vector<int> r_left_, r_right_;  // residue vertices per side, sorted
    std::vector<int> repair_queue_;
    size_t repair_next_ = 0;
    long long residue_swaps_ = 0;
};

// k-connectivity builder: pairwise matchings between the parts, a Hamilton
// cycle inside each part, then k attachment edges for each leftover vertex.
class KConnectivityStrategy final : public Strategy {
public:
    KConnectivityStrategy(int n, int k, double epsilon, double alpha);

    std::string name() const override { return "s_k"; }
    Player side() const override { return Player::Maker; }
    StrategyStep next(const GameGraph& g) override;
    void final_stats(const GameGraph& g, std::map<std::string, bool>& out) const override;

    const std::vector<std::vector<int>>& parts() const { return parts_; }
    const std::vector<int>& leftover() const { return leftover_; }

private:
    StrategyStep attach_step(const GameGraph& g);

    int n_, k_;
    double eps_ = 0.2;
    std::vector<std::vector<int>> parts_;
    std::vector<int> leftover_;
    std::vector<uint8_t> in_leftover_;
    std::vector<std::unique_ptr<Strategy>> schedule_;
    std::vector<std::string> schedule_labels_;
    size_t active_ = 0;
    std::vector<int> attach_done_;
    size_t attach_vertex_ = 0;
};

// Uniform random play for the nominally smart side (baselines, self-tests).
class RandomStrategy final : public Strategy {
public:
    RandomStrategy(Player side, uint64_t seed) : side_(side), rng_(splitmix64(seed ^ 0x52414E44ULL)) {}
    std::string name() const override { return "random"; }
    Player side() const override { return side_; }
    StrategyStep next(const GameGraph& g) override;

private:
    Player side_;
    Rng rng_;
};

}  // namespace mbsim
