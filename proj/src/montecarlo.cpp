#include "mbsim/montecarlo.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "mbsim/analysis.hpp"

namespace mbsim::mc {

namespace {
constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr uint64_t kSweepSalt = 0xC2B2AE3D27D4EB4FULL;
}  // namespace

uint64_t derive_trial_seed(uint64_t master_seed, int index) {
    return splitmix64(master_seed + kGolden * (static_cast<uint64_t>(index) + 1));
}

WilsonInterval wilson_interval(long long wins, long long trials) {
    WilsonInterval w;
    if (trials <= 0) return w;
    const double z = 1.96;
    const double z2 = z * z;
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(wins) / n;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    w.lo = std::max(0.0, center - half);
    w.hi = std::min(1.0, center + half);
    return w;
}

std::string records_to_jsonl(const std::vector<TrialRecord>& records) {
    std::ostringstream out;
    for (const TrialRecord& r : records) {
        nlohmann::json j;
        j["index"] = r.index;
        j["seed"] = r.seed;
        j["winner"] = r.winner == Player::Maker ? "maker" : "breaker";
        j["rounds"] = r.rounds;
        j["forfeit"] = r.forfeit;
        nlohmann::json ms = nlohmann::json::array();
        for (auto& [label, round] : r.milestones) ms.push_back({{"label", label}, {"round", round}});
        j["milestones"] = ms;
        out << j.dump() << "\n";
    }
    return out.str();
}

namespace {

bool validate_cycle_witness(const PlainGraph& maker, const std::vector<int>& cycle,
                            std::string* why) {
    if (!analysis::validate_hamilton_cycle(maker, cycle)) {
        if (why) *why = "claimed cycle is not a spanning cycle of Maker's graph";
        return false;
    }
    return true;
}

bool validate_matching_witness(const PlainGraph& maker, const GameSpec& spec,
                               const std::vector<std::pair<int, int>>& matching,
                               std::string* why) {
    const int required = spec.board.kind == Board::Kind::Bipartite
                             ? spec.board.n0
                             : spec.board.vertex_count() / 2;
    if (static_cast<int>(matching.size()) != required) {
        if (why) *why = "claimed matching has the wrong size";
        return false;
    }
    std::vector<uint8_t> used(maker.n, 0);
    for (auto [u, v] : matching) {
        if (u < 0 || v < 0 || u >= maker.n || v >= maker.n || used[u] || used[v] ||
            !maker.has_edge(u, v)) {
            if (why) *why = "claimed matching is not a matching of Maker's graph";
            return false;
        }
        used[u] = used[v] = 1;
    }
    // Independent recomputation (polynomial for the bipartite shapes here).
    auto oracle = analysis::has_matching_of_size(maker, required);
    if (oracle.verdict != analysis::Verdict::Yes) {
        if (why) *why = "matching oracle refutes the claimed win";
        return false;
    }
    return true;
}

bool validate_subcycle(const PlainGraph& maker, const std::vector<int>& cycle, std::string* why) {
    if (cycle.size() < 3) {
        if (why) *why = "degenerate part cycle";
        return false;
    }
    std::vector<uint8_t> seen(maker.n, 0);
    for (int v : cycle) {
        if (v < 0 || v >= maker.n || seen[v]) {
            if (why) *why = "part cycle repeats or leaves the board";
            return false;
        }
        seen[v] = 1;
    }
    for (size_t i = 0; i < cycle.size(); ++i)
        if (!maker.has_edge(cycle[i], cycle[(i + 1) % cycle.size()])) {
            if (why) *why = "part cycle uses a non-Maker edge";
            return false;
        }
    return true;
}

}  // namespace

bool verify_outcome(const GameSpec& spec, const TrialOutcome& outcome, std::string* why) {
    const PlainGraph& maker = outcome.maker_graph;
    if (spec.smart == Player::Breaker) {
        if (outcome.winner == Player::Breaker && outcome.witness.isolated_vertex >= 0) {
            int v = outcome.witness.isolated_vertex;
            if (v >= maker.n || maker.degree(v) != 0) {
                if (why) *why = "claimed isolated vertex touches a Maker edge";
                return false;
            }
        }
        return true;  // Maker wins here are decided by the oracle itself
    }
    if (outcome.winner != Player::Maker) return true;
    switch (spec.target) {
        case Target::HamiltonCycle: {
            if (!validate_cycle_witness(maker, outcome.witness.cycle, why)) return false;
            if (maker.n <= 64) {
                // The full checker can still come back Unevaluated above its
                // search cap; only a definite No contradicts the witness.
                auto rep = analysis::is_hamiltonian(maker);
                if (rep.verdict == analysis::Verdict::No) {
                    if (why) *why = "exact Hamiltonicity oracle refutes the claimed win";
                    return false;
                }
            }
            return true;
        }
        case Target::PerfectMatching:
            return validate_matching_witness(maker, spec, outcome.witness.matching, why);
        case Target::KConnectivity: {
            for (const auto& cyc : outcome.witness.cycles)
                if (!validate_subcycle(maker, cyc, why)) return false;
            auto rep = analysis::k_connected(maker, spec.k);
            if (rep.verdict != analysis::Verdict::Yes) {
                if (why) *why = "connectivity oracle refutes the claimed win";
                return false;
            }
            return true;
        }
        case Target::PositiveMinDegree:
            return maker.min_degree() >= 1;
    }
    return true;
}

BatchResult run_batch(const BatchSpec& spec) {
    if (spec.trials < 1) throw std::invalid_argument("trials must be >= 1");
    const int workers = std::max(1, std::min(spec.parallelism, spec.trials));

    std::vector<TrialOutcome> outcomes(static_cast<size_t>(spec.trials));
    std::vector<uint64_t> seeds(static_cast<size_t>(spec.trials));
    std::atomic<int> cursor{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto work = [&]() {
        while (true) {
            int i = cursor.fetch_add(1);
            if (i >= spec.trials) break;
            try {
                GameSpec game = spec.game;
                game.seed = derive_trial_seed(spec.master_seed, i);
                seeds[static_cast<size_t>(i)] = game.seed;
                outcomes[static_cast<size_t>(i)] = run_game(game);
            } catch (...) {
                std::scoped_lock lk(failure_mutex);
                if (!failure) failure = std::current_exception();
                break;
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    BatchResult result;
    Aggregate& agg = result.aggregate;
    agg.trials = spec.trials;
    long long rounds_total = 0;
    for (int i = 0; i < spec.trials; ++i) {
        const TrialOutcome& out = outcomes[static_cast<size_t>(i)];
        if (spec.verify) {
            std::string why;
            if (!verify_outcome(spec.game, out, &why)) {
                GameSpec game = spec.game;
                game.seed = seeds[static_cast<size_t>(i)];
                RunOptions ro;
                ro.record_transcript = true;
                TrialOutcome replay = run_game(game, ro);
                std::cerr << "verification failure on trial " << i << " (seed " << game.seed
                          << "): " << why << "\n"
                          << transcript_to_jsonl(replay.transcript);
                throw VerificationFailure("trial " + std::to_string(i) + ": " + why);
            }
        }
        TrialRecord rec;
        rec.index = i;
        rec.seed = seeds[static_cast<size_t>(i)];
        rec.winner = out.winner;
        rec.rounds = out.rounds;
        rec.forfeit = out.forfeit;
        rec.milestones = out.milestones;
        result.records.push_back(std::move(rec));

        if (out.winner == Player::Maker) {
            ++agg.maker_wins;
            agg.winning_rounds_max = std::max(agg.winning_rounds_max, out.rounds);
        }
        rounds_total += out.rounds;
        agg.rounds_max = std::max(agg.rounds_max, out.rounds);
        if (out.forfeit) ++agg.forfeit_count;
        for (auto& [label, pass] : out.lemma_stats) {
            auto& slot = agg.lemma_stat_counts[label];
            slot.first += pass ? 1 : 0;
            slot.second += 1;
        }
        for (auto& [label, round] : out.milestones) ++agg.milestone_counts[label];
    }
    agg.wins = agg.maker_wins;
    agg.win_rate = static_cast<double>(agg.wins) / static_cast<double>(agg.trials);
    agg.wilson = wilson_interval(agg.wins, agg.trials);
    agg.rounds_mean = static_cast<double>(rounds_total) / static_cast<double>(agg.trials);
    agg.verification_failures = 0;
    return result;
}

namespace {

void apply_override(GameSpec& game, const std::string& key, double value) {
    if (key == "n") {
        game.board = Board::complete(static_cast<int>(value));
    } else if (key == "n0") {
        game.board = Board::bipartite(static_cast<int>(value),
                                      game.board.kind == Board::Kind::Bipartite
                                          ? game.board.n1
                                          : static_cast<int>(value));
    } else if (key == "n1") {
        game.board = Board::bipartite(
            game.board.kind == Board::Kind::Bipartite ? game.board.n0 : static_cast<int>(value),
            static_cast<int>(value));
    } else if (key == "bias" || key == "b" || key == "m") {
        game.random_bias = static_cast<int>(value);
    } else if (key == "epsilon") {
        game.epsilon = value;
    } else if (key == "k") {
        game.k = static_cast<int>(value);
    } else if (key == "alpha") {
        game.alpha = value;
    } else if (key == "c") {
        game.c = value;
    } else {
        throw std::invalid_argument("unknown sweep key '" + key + "'");
    }
}

}  // namespace

std::vector<SweepRow> sweep(const BatchSpec& base, const std::vector<GridPoint>& grid) {
    if (grid.empty()) throw EmptyGrid("sweep grid is empty");
    std::vector<SweepRow> rows;
    for (size_t r = 0; r < grid.size(); ++r) {
        BatchSpec spec = base;
        for (auto& [key, value] : grid[r].overrides) apply_override(spec.game, key, value);
        spec.master_seed = splitmix64(base.master_seed + kSweepSalt * (r + 1));
        SweepRow row;
        row.point = grid[r];
        row.aggregate = run_batch(spec).aggregate;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string aggregate_csv_header() {
    return "n,bias,epsilon,k,trials,wins,win_rate,wilson_lo,wilson_hi,rounds_mean,rounds_max,"
           "forfeits";
}

std::string aggregate_csv_row(const GameSpec& spec, const Aggregate& agg) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%d,%d,%g,%d,%lld,%lld,%.6f,%.6f,%.6f,%.3f,%lld,%lld",
                  spec.board.n0, spec.random_bias, spec.epsilon,
                  spec.target == Target::KConnectivity ? spec.k : 0, agg.trials, agg.wins,
                  agg.win_rate, agg.wilson.lo, agg.wilson.hi, agg.rounds_mean, agg.rounds_max,
                  agg.forfeit_count);
    return std::string(buf);
}

}  // namespace mbsim::mc
