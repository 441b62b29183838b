#include "mbsim/breaker_strategies.hpp"

#include <cmath>

namespace mbsim {

IsolationStrategy::IsolationStrategy(const GameSpec& spec)
    : paper_faithful_(spec.paper_faithful) {
    const int n = spec.board.vertex_count();
    const int m = std::max(1, spec.random_bias);
    budget_ = static_cast<long long>(
        std::ceil(spec.c * static_cast<double>(n) * std::log(static_cast<double>(n)) / m));
    budget_ = std::max<long long>(budget_, 1);
}

StrategyStep IsolationStrategy::next(const GameGraph& g) {
    ++rounds_used_;
    if (rounds_used_ > budget_) {
        milestone("budget_exhausted");
        return StrategyStep::forfeit();
    }
    if (target_ == -1 || g.maker_degree(target_) > 0) {
        int pick = -1, pick_db = -1;
        for (int v = 0; v < g.vertex_count(); ++v) {
            if (g.maker_degree(v) != 0) continue;
            if (paper_faithful_) {
                pick = v;
                break;
            }
            if (g.breaker_degree(v) > pick_db) {
                pick = v;
                pick_db = g.breaker_degree(v);
            }
        }
        if (pick == -1) {
            milestone("no_free_vertex");
            return StrategyStep::forfeit();
        }
        target_ = pick;
        ++attempts_;
    }
    int partner = -1;
    for (int w : g.free_neighbors(target_))
        if (partner == -1 || w < partner) partner = w;
    if (partner == -1) return StrategyStep::done();  // already isolated
    const bool completes =
        g.breaker_degree(target_) + 1 == g.board().board_degree(target_);
    if (completes) {
        witness_.isolated_vertex = target_;
        milestone("isolated");
    }
    return StrategyStep::claim(std::min(target_, partner), std::max(target_, partner), completes);
}

double attempt_success_probability_bound(long long n, double eps) {
    if (n < 3) throw std::invalid_argument("attempt bound needs n >= 3");
    if (eps <= 0.0 || eps >= 0.25)
        throw std::invalid_argument("attempt bound needs eps in (0, 1/4)");
    return std::pow(std::log(static_cast<double>(n)), -(1.0 - 4.0 * eps));
}

}  // namespace mbsim
