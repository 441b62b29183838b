#pragma once

#include <map>
#include <string>
#include <vector>

#include "mbsim/engine.hpp"

namespace mbsim::mc {

struct EmptyGrid : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct VerificationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Per-trial seed: splitmix64(master + GOLDEN * (index + 1)); bijective in
// the index at fixed master, so trial seeds are pairwise distinct.
uint64_t derive_trial_seed(uint64_t master_seed, int index);

struct WilsonInterval {
    double lo = 0.0, hi = 1.0;
};
// Score interval at z = 1.96.
WilsonInterval wilson_interval(long long wins, long long trials);

struct BatchSpec {
    GameSpec game;
    int trials = 1;
    uint64_t master_seed = 1;
    bool verify = true;  // every claimed win re-checked by an exact oracle
    int parallelism = 1;
};

struct TrialRecord {
    int index = 0;
    uint64_t seed = 0;
    Player winner = Player::Breaker;
    long long rounds = 0;
    bool forfeit = false;
    std::vector<std::pair<std::string, long long>> milestones;
};

std::string records_to_jsonl(const std::vector<TrialRecord>& records);

struct Aggregate {
    long long wins = 0;  // smart-side target wins: Maker wins, or Breaker wins when smart
    long long maker_wins = 0;
    long long trials = 0;
    double win_rate = 0.0;
    WilsonInterval wilson;
    double rounds_mean = 0.0;
    long long rounds_max = 0;
    long long winning_rounds_max = 0;
    long long forfeit_count = 0;
    std::map<std::string, std::pair<long long, long long>> lemma_stat_counts;  // pass/total
    std::map<std::string, long long> milestone_counts;
    long long verification_failures = 0;
};

struct BatchResult {
    Aggregate aggregate;
    std::vector<TrialRecord> records;
};

// Run `trials` independent games with derived seeds. Deterministic in
// (spec, master_seed) regardless of the worker count: results are keyed
// by trial index and reduced in index order. Throws VerificationFailure
// (with a transcript dump on stderr) if a claimed win fails its oracle.
BatchResult run_batch(const BatchSpec& spec);

// Validate a finished game against the independent checkers: the witness
// must be a genuine structure of Maker's final graph, and where a
// polynomial oracle exists the property is recomputed from scratch.
bool verify_outcome(const GameSpec& spec, const TrialOutcome& outcome, std::string* why);

// One grid point: overrides applied to the base game spec.
struct GridPoint {
    std::map<std::string, double> overrides;  // keys: n, n0, n1, bias, epsilon, k, alpha, c
    std::string label;
};

struct SweepRow {
    GridPoint point;
    Aggregate aggregate;
};

std::vector<SweepRow> sweep(const BatchSpec& base, const std::vector<GridPoint>& grid);

// Fixed-header CSV for aggregates (one row per sweep point or batch).
std::string aggregate_csv_header();
std::string aggregate_csv_row(const GameSpec& spec, const Aggregate& agg);

}  // namespace mbsim::mc
