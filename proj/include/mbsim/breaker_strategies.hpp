#pragma once

#include "mbsim/engine.hpp"

namespace mbsim {

// Vertex isolation: pick a vertex untouched by Maker and claim its edges
// one per round; restart on a fresh vertex whenever Maker touches the
// target. Succeeds when some vertex has all board edges claimed by
// Breaker, i.e. it is isolated in Maker's final graph.
class IsolationStrategy final : public Strategy {
public:
    IsolationStrategy(const GameSpec& spec);

    std::string name() const override { return "isolation"; }
    Player side() const override { return Player::Breaker; }
    StrategyStep next(const GameGraph& g) override;

    int attempts() const { return attempts_; }
    long long round_budget() const { return budget_; }
    int target() const { return target_; }

private:
    long long budget_ = 0;
    long long rounds_used_ = 0;
    int target_ = -1;
    int attempts_ = 0;
    bool paper_faithful_ = false;
};

// Lower bound on the probability that a single isolation attempt runs to
// completion: 1 / (ln n)^(1-4*eps), for eps in (0, 1/4).
double attempt_success_probability_bound(long long n, double eps);

}  // namespace mbsim
