#include "mbsim/pipeline.hpp"

#include <algorithm>
#include <cmath>

namespace mbsim::pipeline {

TournamentAssignment build_tournament(int n) {
    if (n < 2) throw std::invalid_argument("tournament needs n >= 2");
    TournamentAssignment t;
    t.n = n;
    t.boxes.assign(n, {});
    const int half = (n - 1) / 2;
    for (int v = 0; v < n; ++v)
        for (int step = 1; step <= half; ++step) t.boxes[v].emplace_back(v, (v + step) % n);
    if (n % 2 == 0) {
        // Antipodal pairs split by parity of the lower endpoint.
        for (int u = 0; u < n / 2; ++u) {
            int v = u + n / 2;
            if (u % 2 == 0)
                t.boxes[u].emplace_back(u, v);
            else
                t.boxes[v].emplace_back(v, u);
        }
    }
    return t;
}

DiracVerdict dirac_fast_path(const PlainGraph& g) {
    if (g.n >= 3 && 2 * g.min_degree() >= g.n) return DiracVerdict::Yes;
    return DiracVerdict::Maybe;
}

analysis::CheckReport certify_hamiltonian(const PlainGraph& g) {
    analysis::HamiltonCaps caps;
    caps.fast_cap = std::max(caps.fast_cap, g.n);  // degree certificates at any size
    return analysis::is_hamiltonian(g, caps);
}

double AnalysisConstants::expander_delta(int k) { return std::pow(13.0 * k * M_E, -6.0); }

double AnalysisConstants::bias_amplitude(int k) {
    const double d = box_degree(k);
    const double delta = expander_delta(k);
    return std::max(21.0 * d * d, (9.0 - 6.0 * std::log(delta)) / delta);
}

namespace {

bool phase_holds(const std::string& label, const PlainGraph& maker, const PipelineSpec& spec,
                 bool& evaluated) {
    evaluated = true;
    if (label == "expander" || label == "strong_expander") {
        int r = label == "expander" ? spec.expander_r : spec.strong_r;
        double c = label == "expander" ? spec.expander_c : spec.strong_c;
        auto rep = analysis::is_expander(maker, r, c);
        if (rep.verdict == analysis::Verdict::SampledYes) evaluated = false;
        return rep.verdict == analysis::Verdict::Yes ||
               rep.verdict == analysis::Verdict::SampledYes;
    }
    if (label == "connected") return analysis::is_connected(maker);
    if (label == "hamiltonian") {
        auto rep = certify_hamiltonian(maker);
        if (rep.verdict == analysis::Verdict::Unevaluated) {
            evaluated = false;
            return false;
        }
        return rep.verdict == analysis::Verdict::Yes;
    }
    if (label == "k_connected")
        return analysis::k_connected(maker, spec.k).verdict == analysis::Verdict::Yes;
    return false;
}

}  // namespace

MilestoneReport track_milestones(const PipelineSpec& spec) {
    MilestoneReport report;
    if (spec.k <= 1) {
        report.phases = {{"expander"}, {"connected"}, {"hamiltonian"}};
    } else {
        report.phases = {{"expander"}, {"strong_expander"}, {"k_connected"}};
    }
    PipelineSpec params = spec;
    if (params.k >= 2) {
        if (params.strong_r < 0)
            params.strong_r = std::max(1, (params.n + params.k) / (4 * params.k));
        if (params.strong_c < 0) params.strong_c = 2.0 * params.k;
    }

    GameSpec game;
    game.board = Board::complete(spec.n);
    game.smart = Player::Breaker;
    game.random_bias = spec.m;
    game.target = spec.k <= 1 ? Target::HamiltonCycle : Target::KConnectivity;
    game.k = std::max(2, spec.k);
    game.epsilon = spec.epsilon;
    game.seed = spec.seed;
    game.breaker = spec.breaker;
    game.c = spec.budget_c;

    std::vector<long long> checkpoints = spec.checkpoints;
    if (checkpoints.empty()) {
        long long horizon =
            game.board.universe_size() / std::max(1, spec.m + 1) + 2;
        for (long long c = 1; c <= horizon; c *= 2) checkpoints.push_back(c);
        checkpoints.push_back(horizon);
    }
    std::sort(checkpoints.begin(), checkpoints.end());

    size_t next_phase = 0;
    bool connected_seen = spec.k > 1;  // booster counting is a Hamiltonicity-path notion
    const bool count_boosters = spec.k <= 1 && spec.n <= 24;

    auto evaluate = [&](long long round, const GameGraph& g) {
        if (next_phase >= report.phases.size()) return;
        PlainGraph maker = g.owner_subgraph(Owner::Maker);
        while (next_phase < report.phases.size()) {
            Phase& ph = report.phases[next_phase];
            bool evaluated = true;
            bool holds = phase_holds(ph.label, maker, params, evaluated);
            if (!evaluated) ph.fully_evaluated = false;
            if (!holds) break;
            ph.achieved = true;
            ph.round = round;
            if (ph.label == "connected") connected_seen = true;
            ++next_phase;
        }
    };

    RunOptions opts;
    std::vector<long long> marks = checkpoints;
    size_t next_mark = 0;
    opts.round_observer = [&](long long round, const GameGraph& g) {
        bool due = false;
        while (next_mark < marks.size() && marks[next_mark] <= round) {
            due = due || marks[next_mark] == round;
            ++next_mark;
        }
        if (due) evaluate(round, g);
    };
    if (count_boosters) {
        opts.maker_claim_observer = [&](int u, int v, const GameGraph& g) {
            if (!connected_seen) return;
            report.boosters_evaluated = true;
            PlainGraph maker = g.owner_subgraph(Owner::Maker);
            auto ham = analysis::is_hamiltonian(maker, {24, 24});
            if (ham.verdict != analysis::Verdict::No) return;
            PlainGraph plus = maker;
            plus.add_edge(u, v);
            auto ham_plus = analysis::is_hamiltonian(plus, {24, 24});
            if (ham_plus.verdict == analysis::Verdict::Yes ||
                analysis::longest_path_length(plus) > analysis::longest_path_length(maker))
                ++report.boosters_claimed;
        };
    }

    report.outcome = run_game(game, opts);

    // Final evaluation at the end of the game regardless of checkpoints.
    {
        PlainGraph maker = report.outcome.maker_graph;
        while (next_phase < report.phases.size()) {
            Phase& ph = report.phases[next_phase];
            bool evaluated = true;
            bool holds = phase_holds(ph.label, maker, params, evaluated);
            if (!evaluated) ph.fully_evaluated = false;
            if (!holds) break;
            ph.achieved = true;
            ph.round = report.outcome.rounds;
            ++next_phase;
        }
    }
    return report;
}

}  // namespace mbsim::pipeline
