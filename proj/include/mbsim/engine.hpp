#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mbsim/graph_core.hpp"
#include "mbsim/rng.hpp"

namespace mbsim {

struct StrategyMismatch : std::logic_error {
    using std::logic_error::logic_error;
};

enum class Player : uint8_t { Maker, Breaker };
enum class Target : uint8_t { HamiltonCycle, PerfectMatching, KConnectivity, PositiveMinDegree };
enum class MoveOrder : uint8_t { BreakerFirst, MakerFirst };

const char* player_name(Player p);
const char* target_name(Target t);
Target target_from_name(const std::string& s);

// One game: who plays smart, the random side's bias, the goal, the seed.
struct GameSpec {
    Board board = Board::complete(4);
    Player smart = Player::Maker;
    int random_bias = 1;       // b (random Breaker) or m (random Maker); 0 allowed for tests
    int smart_bias = 1;
    MoveOrder move_order = MoveOrder::BreakerFirst;
    Target target = Target::HamiltonCycle;
    int k = 2;                 // k-connectivity target
    double epsilon = 0.2;
    double alpha = 0.25;       // matching-strategy residue exponent
    uint64_t seed = 1;
    std::optional<long long> round_cap;
    std::string strategy = "auto";     // s_ham | s_pm | s_k | auto
    std::string breaker = "isolation"; // isolation | random (smart-Breaker games)
    double c = 0.75;                   // isolation round-budget constant
    bool paper_faithful = false;       // lowest-id target selection for isolation

    std::string to_config() const;
    static GameSpec from_config(const std::string& text);
};

struct ClaimRecord {
    long long round;
    Player player;
    int u, v;
};

std::string transcript_to_jsonl(const std::vector<ClaimRecord>& transcript);
std::vector<ClaimRecord> transcript_from_jsonl(const std::string& text);

// What a strategy built; validated independently after the game.
struct Witness {
    std::vector<int> cycle;                     // Hamilton cycle (vertex order)
    std::vector<std::vector<int>> cycles;       // one per part (k-connectivity)
    std::vector<std::pair<int, int>> matching;  // perfect / near-perfect matching
    int isolated_vertex = -1;                   // Breaker isolation
};

struct StrategyStep {
    enum class Kind { Claim, Forfeit, Done };
    Kind kind = Kind::Forfeit;
    int u = -1, v = -1;
    bool completes = false;  // claim that finishes the strategy's goal

    static StrategyStep claim(int u, int v, bool completes = false) {
        return {Kind::Claim, u, v, completes};
    }
    static StrategyStep forfeit() { return {Kind::Forfeit, -1, -1, false}; }
    static StrategyStep done() { return {Kind::Done, -1, -1, false}; }
};

// A smart player. One call per turn; the engine applies the claim.
class Strategy {
public:
    virtual ~Strategy() = default;
    virtual std::string name() const = 0;
    virtual Player side() const = 0;
    virtual StrategyStep next(const GameGraph& g) = 0;
    virtual const Witness& witness() const { return witness_; }
    // Stage-transition labels produced since the last drain.
    std::vector<std::string> drain_milestones() {
        auto out = std::move(milestones_);
        milestones_.clear();
        return out;
    }
    // Strategy-specific end-of-game statistics (named pass/fail flags).
    virtual void final_stats(const GameGraph&, std::map<std::string, bool>&) const {}

protected:
    void milestone(std::string label) { milestones_.push_back(std::move(label)); }
    Witness witness_;
    std::vector<std::string> milestones_;
};

std::unique_ptr<Strategy> make_strategy(const GameSpec& spec);

struct TrialOutcome {
    Player winner = Player::Breaker;
    long long rounds = 0;
    bool forfeit = false;
    std::vector<std::pair<std::string, long long>> milestones;
    struct FinalStats {
        int max_deg_maker = 0;
        int max_deg_breaker = 0;
        long long maker_edges = 0;
        long long breaker_edges = 0;
        long long free_edges = 0;
    } final_stats;
    Witness witness;
    std::map<std::string, bool> lemma_stats;
    std::vector<ClaimRecord> transcript;  // filled only when recorded
    PlainGraph maker_graph;               // Maker's final subgraph
};

struct RunOptions {
    bool record_transcript = false;
    bool check_invariants = false;
    // Called after every completed round (both sides moved).
    std::function<void(long long round, const GameGraph&)> round_observer;
    // Called before each random-Maker claim is applied (u, v, graph-before).
    std::function<void(int u, int v, const GameGraph&)> maker_claim_observer;
};

// Claim min(count, free) distinct free edges uniformly without replacement.
std::vector<std::pair<int, int>> random_move(GameGraph& g, Player who, long long count,
                                             Rng& rng);

// Play one full game. Deterministic in (spec, strategy, seed).
TrialOutcome run_game(const GameSpec& spec, Strategy& strategy, const RunOptions& opts = {});

// Convenience: build the strategy from the spec and play.
TrialOutcome run_game(const GameSpec& spec, const RunOptions& opts = {});

}  // namespace mbsim
