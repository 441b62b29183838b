#include "mbsim/engine.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mbsim/analysis.hpp"

namespace mbsim {

const char* player_name(Player p) { return p == Player::Maker ? "maker" : "breaker"; }

const char* target_name(Target t) {
    switch (t) {
        case Target::HamiltonCycle: return "hamilton_cycle";
        case Target::PerfectMatching: return "perfect_matching";
        case Target::KConnectivity: return "k_connectivity";
        case Target::PositiveMinDegree: return "positive_min_degree";
    }
    return "?";
}

Target target_from_name(const std::string& s) {
    if (s == "hamilton_cycle" || s == "ham") return Target::HamiltonCycle;
    if (s == "perfect_matching" || s == "pm") return Target::PerfectMatching;
    if (s == "k_connectivity" || s == "kconn") return Target::KConnectivity;
    if (s == "positive_min_degree" || s == "isolate") return Target::PositiveMinDegree;
    throw std::invalid_argument("unknown target '" + s + "'");
}

std::string GameSpec::to_config() const {
    std::ostringstream out;
    out << "board=";
    if (board.kind == Board::Kind::Complete)
        out << "complete " << board.n0 << "\n";
    else
        out << "bipartite " << board.n0 << " " << board.n1 << "\n";
    out << "smart=" << player_name(smart) << "\n";
    out << "random_bias=" << random_bias << "\n";
    out << "smart_bias=" << smart_bias << "\n";
    out << "move_order=" << (move_order == MoveOrder::BreakerFirst ? "breaker_first" : "maker_first")
        << "\n";
    out << "target=" << target_name(target) << "\n";
    out << "k=" << k << "\n";
    out << "epsilon=" << epsilon << "\n";
    out << "alpha=" << alpha << "\n";
    out << "seed=" << seed << "\n";
    if (round_cap) out << "round_cap=" << *round_cap << "\n";
    out << "strategy=" << strategy << "\n";
    out << "breaker=" << breaker << "\n";
    out << "c=" << c << "\n";
    out << "paper_faithful=" << (paper_faithful ? "true" : "false") << "\n";
    return out.str();
}

GameSpec GameSpec::from_config(const std::string& text) {
    GameSpec spec;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("bad config line: " + line);
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        if (key == "board") {
            std::istringstream bv(value);
            std::string kind;
            bv >> kind;
            if (kind == "complete") {
                int n;
                bv >> n;
                spec.board = Board::complete(n);
            } else if (kind == "bipartite") {
                int a, b;
                bv >> a >> b;
                spec.board = Board::bipartite(a, b);
            } else {
                throw std::invalid_argument("bad board value: " + value);
            }
        } else if (key == "smart") {
            spec.smart = (value == "maker") ? Player::Maker : Player::Breaker;
        } else if (key == "random_bias") {
            spec.random_bias = std::stoi(value);
        } else if (key == "smart_bias") {
            spec.smart_bias = std::stoi(value);
        } else if (key == "move_order") {
            spec.move_order =
                (value == "maker_first") ? MoveOrder::MakerFirst : MoveOrder::BreakerFirst;
        } else if (key == "target") {
            spec.target = target_from_name(value);
        } else if (key == "k") {
            spec.k = std::stoi(value);
        } else if (key == "epsilon") {
            spec.epsilon = std::stod(value);
        } else if (key == "alpha") {
            spec.alpha = std::stod(value);
        } else if (key == "seed") {
            spec.seed = std::stoull(value);
        } else if (key == "round_cap") {
            spec.round_cap = std::stoll(value);
        } else if (key == "strategy") {
            spec.strategy = value;
        } else if (key == "breaker") {
            spec.breaker = value;
        } else if (key == "c") {
            spec.c = std::stod(value);
        } else if (key == "paper_faithful") {
            spec.paper_faithful = (value == "true" || value == "1");
        } else {
            throw std::invalid_argument("unknown config key '" + key + "'");
        }
    }
    return spec;
}

std::string transcript_to_jsonl(const std::vector<ClaimRecord>& transcript) {
    std::ostringstream out;
    for (const ClaimRecord& r : transcript) {
        nlohmann::json j;
        j["round"] = r.round;
        j["player"] = r.player == Player::Maker ? "M" : "B";
        j["edge"] = {r.u, r.v};
        out << j.dump() << "\n";
    }
    return out.str();
}

std::vector<ClaimRecord> transcript_from_jsonl(const std::string& text) {
    std::vector<ClaimRecord> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line);
        ClaimRecord r;
        r.round = j.at("round").get<long long>();
        r.player = j.at("player").get<std::string>() == "M" ? Player::Maker : Player::Breaker;
        r.u = j.at("edge")[0].get<int>();
        r.v = j.at("edge")[1].get<int>();
        out.push_back(r);
    }
    return out;
}

std::vector<std::pair<int, int>> random_move(GameGraph& g, Player who, long long count,
                                             Rng& rng) {
    std::vector<std::pair<int, int>> claimed;
    Owner owner = who == Player::Maker ? Owner::Maker : Owner::Breaker;
    for (long long i = 0; i < count && g.free_count() > 0; ++i) {
        long long idx = static_cast<long long>(rng.below(static_cast<uint64_t>(g.free_count())));
        long long id = g.free_edge_at(idx);
        auto [u, v] = g.edge_endpoints(id);
        g.claim_by_id(id, owner);
        claimed.emplace_back(u, v);
    }
    return claimed;
}

namespace {

// Generic end-of-game lemma statistics for random-Breaker games.
void breaker_degree_stats(const GameSpec& spec, const GameGraph& g,
                          std::map<std::string, bool>& stats) {
    bool deg_ok = true;
    for (int v = 0; v < g.vertex_count(); ++v) {
        double cap = (1.0 - spec.epsilon / 2.0) * g.board().board_degree(v);
        if (g.breaker_degree(v) > cap + 1e-9) deg_ok = false;
    }
    stats["breaker_max_degree_ok"] = deg_ok;

    // Free-density between sampled polynomial-size disjoint sets. Only
    // meaningful while Breaker holds at most a (1 - 5eps/6) share.
    double share = static_cast<double>(g.breaker_count()) /
                   static_cast<double>(g.universe_size());
    if (share <= 1.0 - 5.0 * spec.epsilon / 6.0 + 1e-9) {
        const int n = g.vertex_count();
        const int size = std::max(2, static_cast<int>(std::ceil(std::sqrt(n))));
        Rng sample_rng(splitmix64(spec.seed ^ 0xFEEDFACEULL));
        bool ok = true;
        for (int rep = 0; rep < 10 && 2 * size <= n; ++rep) {
            std::vector<int> pool(n);
            for (int i = 0; i < n; ++i) pool[i] = i;
            for (int i = 0; i < 2 * size; ++i) {
                int j = i + static_cast<int>(sample_rng.below(static_cast<uint64_t>(n - i)));
                std::swap(pool[i], pool[j]);
            }
            std::vector<int> xs(pool.begin(), pool.begin() + size);
            std::vector<int> ys(pool.begin() + size, pool.begin() + 2 * size);
            long long pairs = 0, free_pairs = 0;
            for (int x : xs)
                for (int y : ys) {
                    if (!g.board().is_edge(x, y)) continue;
                    ++pairs;
                    if (g.is_free(x, y)) ++free_pairs;
                }
            if (pairs > 0 &&
                static_cast<double>(free_pairs) < spec.epsilon / 3.0 * static_cast<double>(pairs))
                ok = false;
        }
        stats["free_pairs_ok"] = ok;
    }
}

bool maker_won_by_final_graph(const GameSpec& spec, const PlainGraph& maker) {
    switch (spec.target) {
        case Target::PositiveMinDegree:
            return maker.n > 0 && maker.min_degree() >= 1;
        case Target::HamiltonCycle: {
            analysis::HamiltonCaps caps;
            caps.fast_cap = std::max(caps.fast_cap, maker.n);  // degree certificates at any n
            auto rep = analysis::is_hamiltonian(maker, caps);
            return rep.verdict == analysis::Verdict::Yes;  // unverified counts as a loss
        }
        case Target::KConnectivity:
            return analysis::k_connected(maker, spec.k).verdict == analysis::Verdict::Yes;
        case Target::PerfectMatching: {
            int required = maker.n / 2;
            auto rep = analysis::has_matching_of_size(maker, required);
            return rep.verdict == analysis::Verdict::Yes;
        }
    }
    return false;
}

}  // namespace

TrialOutcome run_game(const GameSpec& spec, Strategy& strategy, const RunOptions& opts) {
    if (strategy.side() != spec.smart)
        throw StrategyMismatch("strategy plays " + std::string(player_name(strategy.side())) +
                               " but the spec's smart player is " + player_name(spec.smart));
    if (spec.random_bias < 0) throw std::invalid_argument("random_bias must be >= 0");
    if (spec.smart_bias < 1) throw std::invalid_argument("smart_bias must be >= 1");

    GameGraph g(spec.board);
    Rng rng(spec.seed);
    const Player random_side = spec.smart == Player::Maker ? Player::Breaker : Player::Maker;
    const long long cap = spec.round_cap.value_or(std::max<long long>(1, g.universe_size()));

    TrialOutcome out;
    bool smart_done = false;
    bool smart_forfeited = false;
    long long round = 0;

    auto push_milestones = [&]() {
        for (auto& label : strategy.drain_milestones()) out.milestones.emplace_back(label, round);
    };

    auto do_random = [&]() {
        for (long long i = 0; i < spec.random_bias && g.free_count() > 0; ++i) {
            long long idx =
                static_cast<long long>(rng.below(static_cast<uint64_t>(g.free_count())));
            long long id = g.free_edge_at(idx);
            auto [u, v] = g.edge_endpoints(id);
            if (random_side == Player::Maker && opts.maker_claim_observer)
                opts.maker_claim_observer(u, v, g);
            g.claim_by_id(id, random_side == Player::Maker ? Owner::Maker : Owner::Breaker);
            if (opts.record_transcript) out.transcript.push_back({round, random_side, u, v});
        }
    };

    auto do_smart = [&]() {
        for (int i = 0; i < spec.smart_bias; ++i) {
            if (g.free_count() == 0) return;
            if (smart_forfeited) {
                // A forfeited smart Breaker keeps the game total by playing
                // random singles; a forfeited smart Maker already ended it.
                random_move(g, spec.smart, 1, rng);
                return;
            }
            StrategyStep step = strategy.next(g);
            push_milestones();
            switch (step.kind) {
                case StrategyStep::Kind::Claim:
                    if (!g.is_free(step.u, step.v))
                        throw std::logic_error("strategy claimed a non-free edge");
                    g.claim(step.u, step.v,
                            spec.smart == Player::Maker ? Owner::Maker : Owner::Breaker);
                    if (opts.record_transcript)
                        out.transcript.push_back({round, spec.smart, step.u, step.v});
                    if (step.completes) {
                        smart_done = true;
                        return;
                    }
                    break;
                case StrategyStep::Kind::Forfeit:
                    smart_forfeited = true;
                    out.forfeit = true;
                    out.milestones.emplace_back("forfeit", round);
                    if (spec.smart == Player::Breaker) random_move(g, spec.smart, 1, rng);
                    return;
                case StrategyStep::Kind::Done:
                    smart_done = true;
                    return;
            }
        }
    };

    while (true) {
        if (round >= cap) break;
        ++round;
        const Player first =
            spec.move_order == MoveOrder::BreakerFirst ? Player::Breaker : Player::Maker;
        for (Player side : {first, first == Player::Breaker ? Player::Maker : Player::Breaker}) {
            if (side == random_side)
                do_random();
            else
                do_smart();
            if (smart_done) break;
            if (smart_forfeited && spec.smart == Player::Maker) break;
        }
        if (opts.check_invariants) g.check_invariants();
        if (opts.round_observer) opts.round_observer(round, g);
        if (smart_done) break;
        if (smart_forfeited && spec.smart == Player::Maker) break;
        if (g.free_count() == 0) break;
    }

    out.rounds = round;
    push_milestones();
    out.witness = strategy.witness();
    out.maker_graph = g.owner_subgraph(Owner::Maker);
    out.final_stats.max_deg_maker = g.max_degree(Owner::Maker);
    out.final_stats.max_deg_breaker = g.max_degree(Owner::Breaker);
    out.final_stats.maker_edges = g.maker_count();
    out.final_stats.breaker_edges = g.breaker_count();
    out.final_stats.free_edges = g.free_count();

    if (spec.smart == Player::Maker) {
        out.winner = smart_done ? Player::Maker : Player::Breaker;
        breaker_degree_stats(spec, g, out.lemma_stats);
    } else {
        if (smart_done)
            out.winner = Player::Breaker;  // isolation certified by the strategy
        else
            out.winner =
                maker_won_by_final_graph(spec, out.maker_graph) ? Player::Maker : Player::Breaker;
    }
    strategy.final_stats(g, out.lemma_stats);
    return out;
}

TrialOutcome run_game(const GameSpec& spec, const RunOptions& opts) {
    auto strategy = make_strategy(spec);
    return run_game(spec, *strategy, opts);
}

}  // namespace mbsim
