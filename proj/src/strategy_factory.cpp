#include "mbsim/breaker_strategies.hpp"
#include "mbsim/engine.hpp"
#include "mbsim/maker_strategies.hpp"

namespace mbsim {

std::unique_ptr<Strategy> make_strategy(const GameSpec& spec) {
    if (spec.smart == Player::Breaker) {
        if (spec.breaker == "isolation") return std::make_unique<IsolationStrategy>(spec);
        if (spec.breaker == "random")
            return std::make_unique<RandomStrategy>(Player::Breaker, spec.seed);
        throw std::invalid_argument("unknown breaker strategy '" + spec.breaker + "'");
    }
    const int n = spec.board.vertex_count();
    std::string which = spec.strategy;
    if (which == "random") return std::make_unique<RandomStrategy>(Player::Maker, spec.seed);
    if (which == "auto") {
        switch (spec.target) {
            case Target::HamiltonCycle: which = "s_ham"; break;
            case Target::PerfectMatching: which = "s_pm"; break;
            case Target::KConnectivity: which = "s_k"; break;
            case Target::PositiveMinDegree:
                throw std::invalid_argument("no builder for a smart-Maker min-degree game");
        }
    }
    if (which == "s_ham") {
        if (spec.board.kind != Board::Kind::Complete)
            throw std::invalid_argument("s_ham plays on a complete board");
        std::vector<int> verts(n);
        for (int v = 0; v < n; ++v) verts[v] = v;
        return std::make_unique<PathCycleStrategy>(SubBoard::clique(n, verts), spec.epsilon);
    }
    if (which == "s_pm") {
        if (spec.board.kind == Board::Kind::Bipartite) {
            if (spec.board.n0 != spec.board.n1)
                throw std::invalid_argument("s_pm needs equal parts");
            std::vector<int> l, r;
            for (int v = 0; v < spec.board.n0; ++v) l.push_back(v);
            for (int v = spec.board.n0; v < n; ++v) r.push_back(v);
            return std::make_unique<MatchingStrategy>(SubBoard::bipartite(n, l, r), spec.epsilon,
                                                      spec.alpha);
        }
        // Complete board: play the matching game between two fixed halves
        // and ignore every non-crossing edge.
        EmbeddedHalves halves = embed_halves(n);
        return std::make_unique<MatchingStrategy>(
            SubBoard::bipartite(n, halves.half_a, halves.half_b), spec.epsilon, spec.alpha);
    }
    if (which == "s_k") {
        if (spec.board.kind != Board::Kind::Complete)
            throw std::invalid_argument("s_k plays on a complete board");
        return std::make_unique<KConnectivityStrategy>(n, spec.k, spec.epsilon, spec.alpha);
    }
    throw std::invalid_argument("unknown strategy '" + which + "'");
}

}  // namespace mbsim
